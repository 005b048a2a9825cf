use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::simplex::{monotone_maps, vertex_list, SimplexCategory};
use crate::error::{Error, Result};
use crate::fincat::constructions::opposite;
use crate::fincat::{CatFunctor, FiniteCategory, FiniteGroup};
use crate::semidirect::{inclusion_iota, semidirect, GroupAction, SemidirectCategory};
use crate::setval::{lan, lan_map, DiagramMap, SetDiagram};

/// The group `{1, σ}`.
pub fn c2() -> FiniteGroup {
    FiniteGroup::new(vec!["1".into(), "σ".into()], vec![vec![0, 1], vec![1, 0]]).expect("C2")
}

/// `𝓕(f)(k) = n − f(m − k)` for `f: [m] → [n]`.
pub fn flip(f: &[usize], n: usize) -> Vec<usize> {
    let m = f.len() - 1;
    (0..=m).map(|k| n - f[m - k]).collect()
}

/// A monotone map `[m] → [n]` with a sign that must equal the direction of
/// `f` unless `f` is constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonotonePair {
    pub f: Vec<usize>,
    pub target: usize,
    pub t: i8,
}

impl MonotonePair {
    pub fn new(f: Vec<usize>, target: usize, t: i8) -> Result<Self> {
        if f.is_empty() || f.iter().any(|&v| v > target) || !(t == 1 || t == -1) {
            return Err(Error::malformed("monotone pair", "bad map or sign"));
        }
        let inc = f.windows(2).all(|w| w[0] <= w[1]);
        let dec = f.windows(2).all(|w| w[0] >= w[1]);
        if !inc && !dec {
            return Err(Error::invalid("monotone pair", "map is not monotone"));
        }
        if let Some(sign) = Self::direction(&f) {
            if sign != t {
                return Err(Error::invalid("monotone pair", "sign disagrees with the direction of the map"));
            }
        }
        Ok(MonotonePair { f, target, t })
    }

    /// `sgn f`, or `None` for a constant map.
    pub fn direction(f: &[usize]) -> Option<i8> {
        f.windows(2).find(|w| w[0] != w[1]).map(|w| if w[0] < w[1] { 1 } else { -1 })
    }

    /// `(f,t)∘(f',t') = (f∘f', tt')`.
    pub fn compose(&self, other: &MonotonePair) -> Result<MonotonePair> {
        if other.target + 1 != self.f.len() {
            return Err(Error::invalid("monotone pair composite", "endpoints do not match"));
        }
        MonotonePair::new(other.f.iter().map(|&k| self.f[k]).collect(), self.target, self.t * other.t)
    }

    pub fn name(&self) -> String {
        let s = if self.t > 0 { '+' } else { '-' };
        format!("{}>{}:{}:{s}", self.f.len() - 1, self.target, vertex_list(&self.f))
    }
}

/// `∇≤N` in both presentations with the comparison isomorphism, plus the data
/// needed to move between `∇`-presheaves and simplicial sets with involution.
#[derive(Clone, Debug)]
pub struct Nabla {
    pub delta: SimplexCategory,
    /// `C₂` acting on `Δ≤N` by `𝓕`.
    pub action: GroupAction,
    pub semidirect: SemidirectCategory,
    /// The category of monotone pairs.
    pub pairs: Arc<FiniteCategory>,
    pub pair_data: Vec<MonotonePair>,
    /// `(φ,1) ↦ (φ,+)`, `(φ,σ) ↦ (φ∘τ, −)`.
    pub iso: CatFunctor,
    pub iota: CatFunctor,
    /// `∇≤N^op`, the shape of truncated real simplicial sets.
    pub opposite: Arc<FiniteCategory>,
    pub iota_op: CatFunctor,
    flip_op: CatFunctor,
}

pub fn build_nabla(dim: usize) -> Result<Nabla> {
    let delta = SimplexCategory::new(dim);
    let d = delta.category().clone();
    let action = GroupAction::from_maps(c2(), d.clone(), |g| {
        let objs = (0..d.num_objects()).collect();
        let mors = (0..d.num_morphisms())
            .map(|m| if g == 0 { m } else { delta.index(d.tgt(m), &flip(delta.function(m), d.tgt(m))).unwrap() })
            .collect();
        (objs, mors)
    })?;
    let sd = semidirect(&action);

    let mut pair_data = Vec::new();
    let mut lookup: HashMap<MonotonePair, usize> = HashMap::new();
    let mut mors = Vec::new();
    for m in 0..=dim {
        for n in 0..=dim {
            let inc = monotone_maps(m, n);
            let dec = inc.iter().map(|f| (0..=m).map(|k| f[m - k]).collect::<Vec<_>>());
            let all = inc.iter().cloned().map(|f| (f, 1)).chain(dec.map(|f| (f, -1)));
            for (f, t) in all {
                let p = MonotonePair::new(f, n, t)?;
                lookup.insert(p.clone(), pair_data.len());
                mors.push((p.name(), m, n));
                pair_data.push(p);
            }
        }
    }
    let ids = (0..=dim).map(|k| lookup[&MonotonePair { f: (0..=k).collect(), target: k, t: 1 }]).collect();
    let pairs = Arc::new(FiniteCategory::new((0..=dim).map(|k| format!("[{k}]")).collect(), mors, ids, |g, f| {
        pair_data[g].compose(&pair_data[f]).ok().and_then(|h| lookup.get(&h).copied())
    })?);

    let iso_mors = (0..sd.category.num_morphisms())
        .map(|x| {
            let (phi, g) = sd.pair(x);
            let f = delta.function(phi);
            let m = f.len() - 1;
            let p = if g == 0 {
                MonotonePair { f: f.to_vec(), target: d.tgt(phi), t: 1 }
            } else {
                MonotonePair { f: (0..=m).map(|k| f[m - k]).collect(), target: d.tgt(phi), t: -1 }
            };
            lookup[&p]
        })
        .collect();
    let iso = CatFunctor::new(sd.category.clone(), pairs.clone(), (0..=dim).collect(), iso_mors)?;
    if !iso.is_injective_on_morphisms() || pairs.num_morphisms() != sd.category.num_morphisms() {
        return Err(Error::Internal("the two presentations of ∇ are not isomorphic".into()));
    }
    let iota = inclusion_iota(&sd);
    let op = Arc::new(opposite(&sd.category));
    let iota_op =
        CatFunctor::new_unchecked(delta.opposite().clone(), op.clone(), iota.obj_map().to_vec(), iota.mor_map().to_vec())?;
    let flip_op = CatFunctor::new_unchecked(
        delta.opposite().clone(),
        delta.opposite().clone(),
        action.rho(1).obj_map().to_vec(),
        action.rho(1).mor_map().to_vec(),
    )?;
    Ok(Nabla { delta, action, semidirect: sd, pairs, pair_data, iso, iota, opposite: op, iota_op, flip_op })
}

impl Nabla {
    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    /// Index of `(id_[n], σ)` in `∇` (and `∇^op`).
    pub fn sigma(&self, n: usize) -> usize {
        let d = self.delta.category();
        self.semidirect.morphism(d.identity(n), 1)
    }

    pub fn hom_count(&self, m: usize, n: usize) -> usize {
        self.semidirect.category.hom(m, n).len()
    }

    /// The representable `∇`-presheaf `hom_∇(−, [k])`.
    pub fn representable(&self, k: usize) -> SetDiagram {
        SetDiagram::representable(self.opposite.clone(), k)
    }

    /// `A^op`: the same simplices with `α` acting as `𝓕(α)*`.
    pub fn reversed(&self, a: &SetDiagram) -> Result<SetDiagram> {
        a.restrict(&self.flip_op)
    }

    /// `X ↦ (ι*X, σ)` with `σ_n = (id_[n], σ)*`, viewed as a map `(ι*X)^op → ι*X`.
    /// Fails if `σ` is not natural or not an involution.
    pub fn to_involutive(&self, x: &SetDiagram) -> Result<(Arc<SetDiagram>, DiagramMap)> {
        if x.shape() != &self.opposite {
            return Err(Error::invalid("real simplicial set", "not a diagram over ∇^op"));
        }
        let a = Arc::new(x.restrict(&self.iota_op)?);
        let rev = Arc::new(self.reversed(&a)?);
        let components = (0..=self.dim()).map(|n| x.map(self.sigma(n)).to_vec()).collect();
        let sigma = DiagramMap::new_unchecked(rev, a.clone(), components)?;
        self.check_involution(&a, &sigma)?;
        Ok((a, sigma))
    }

    fn check_involution(&self, a: &Arc<SetDiagram>, sigma: &DiagramMap) -> Result<()> {
        if sigma.target() != a || **sigma.source() != self.reversed(a)? {
            return Err(Error::invalid("involution", "must be a map from the reversed simplicial set"));
        }
        if let Some(m) = sigma.first_unnatural() {
            return Err(Error::invalid("involution", format!("square fails at `{}`", self.delta.category().morphism_name(m))));
        }
        for n in 0..=self.dim() {
            let s = sigma.component(n);
            if (0..s.len()).any(|x| s[s[x]] != x) {
                return Err(Error::invalid("involution", format!("σ_{n} does not square to the identity")));
            }
        }
        Ok(())
    }

    /// `(A, σ) ↦ X` with `(α,1)* = α*` and `(α,σ)* = σ_m ∘ α*` for `α: [m] → [n]`.
    pub fn from_involutive(&self, a: &Arc<SetDiagram>, sigma: &DiagramMap) -> Result<SetDiagram> {
        self.check_involution(a, sigma)?;
        let maps = (0..self.opposite.num_morphisms())
            .map(|x| {
                let (phi, g) = self.semidirect.pair(x);
                let alpha = a.map(phi);
                if g == 0 {
                    alpha.to_vec()
                } else {
                    let m = self.delta.category().src(phi);
                    alpha.iter().map(|&y| sigma.apply(m, y)).collect()
                }
            })
            .collect();
        SetDiagram::new(self.opposite.clone(), a.sets().to_vec(), maps)
    }

    /// Morphisms `α: [m] → [n]` of `Δ≤N` where
    /// `(α,1)* ∘ (id_[n],σ)* ≠ (id_[m],σ)* ∘ (𝓕(α),1)*` on `x`.
    pub fn sigma_square_failures(&self, x: &SetDiagram) -> Vec<String> {
        let d = self.delta.category();
        (0..d.num_morphisms())
            .filter(|&alpha| {
                let (m, n) = (d.src(alpha), d.tgt(alpha));
                let a1 = self.semidirect.morphism(alpha, 0);
                let fa1 = self.semidirect.morphism(self.action.rho(1).mor(alpha), 0);
                (0..x.size(n)).any(|e| x.apply(a1, x.apply(self.sigma(n), e)) != x.apply(self.sigma(m), x.apply(fa1, e)))
            })
            .map(|alpha| d.morphism_name(alpha).to_string())
            .collect()
    }

    /// `σ` on the `n`-simplices of a real simplicial set.
    pub fn sigma_action<'a>(&self, x: &'a SetDiagram, n: usize) -> &'a [usize] {
        x.map(self.sigma(n))
    }

    /// Levelwise injective with a free `σ` action off the image. The freeness
    /// condition is evaluated on all simplices and again on non-degenerate
    /// ones only; disagreement is reported as an internal error.
    pub fn is_normal_mono(&self, f: &DiagramMap) -> Result<bool> {
        if f.shape() != &self.opposite {
            return Err(Error::invalid("normal monomorphism", "not a map of real simplicial sets"));
        }
        if !f.is_injective() {
            return Ok(false);
        }
        let y = f.target();
        let under = y.restrict(&self.iota_op)?;
        let mut all = true;
        let mut nondeg = true;
        for n in 0..=self.dim() {
            let mut hit = vec![false; y.size(n)];
            for &v in f.component(n) {
                hit[v] = true;
            }
            let s = self.sigma_action(y, n);
            for v in (0..y.size(n)).filter(|&v| !hit[v] && s[v] == v) {
                all = false;
                if !self.delta.is_degenerate(&under, n, v) {
                    nondeg = false;
                }
            }
        }
        if all != nondeg {
            return Err(Error::Internal(
                "free-action check on all simplices disagrees with the check on non-degenerate simplices".into(),
            ));
        }
        Ok(all)
    }

    /// `ι_!` of a map of truncated simplicial sets.
    pub fn induce(&self, f: &DiagramMap) -> Result<DiagramMap> {
        let from = lan(&self.iota_op, f.source())?;
        let to = lan(&self.iota_op, f.target())?;
        lan_map(&from, &to, f)
    }

    /// `ι_!(∂Δⁿ → Δⁿ)` for `n ≤ N`, each checked to be a normal monomorphism.
    pub fn generating_cofibrations(&self) -> Result<Vec<DiagramMap>> {
        let mut out = Vec::new();
        for n in 0..=self.dim() {
            let g = self.induce(&self.delta.boundary_inclusion(n))?;
            if !self.is_normal_mono(&g)? {
                return Err(Error::Internal(format!("generator {n} is not a normal monomorphism")));
            }
            out.push(g);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts_double() {
        let nb = build_nabla(2).unwrap();
        assert!(nb.semidirect.category.is_valid());
        assert!(nb.pairs.is_valid());
        assert_eq!(nb.hom_count(0, 0), 2);
        assert_eq!(nb.hom_count(1, 1), 6);
        for m in 0..=2 {
            for n in 0..=2 {
                assert_eq!(nb.hom_count(m, n), 2 * nb.delta.category().hom(m, n).len());
            }
        }
    }

    #[test]
    fn constant_pairs_carry_either_sign() {
        assert!(MonotonePair::new(vec![1, 1], 2, -1).is_ok());
        assert!(MonotonePair::new(vec![0, 1], 1, -1).is_err());
        assert!(MonotonePair::new(vec![0, 2, 1], 2, 1).is_err());
        let rev = MonotonePair::new(vec![1, 0], 1, -1).unwrap();
        let id = rev.compose(&rev).unwrap();
        assert_eq!(id, MonotonePair { f: vec![0, 1], target: 1, t: 1 });
    }

    #[test]
    fn representable_roundtrip() {
        let nb = build_nabla(2).unwrap();
        let x = nb.representable(1);
        assert_eq!(x.size(1), 6);
        let (a, s) = nb.to_involutive(&x).unwrap();
        assert_eq!(a.size(1), 6);
        assert_eq!(nb.from_involutive(&a, &s).unwrap(), x);
    }

    #[test]
    fn trivial_involution_on_a_point() {
        let nb = build_nabla(2).unwrap();
        let a = Arc::new(nb.delta.standard_simplex(0));
        let rev = Arc::new(nb.reversed(&a).unwrap());
        let s = DiagramMap::new(rev, a.clone(), (0..3).map(|_| vec![0]).collect()).unwrap();
        let x = nb.from_involutive(&a, &s).unwrap();
        assert!(x.violations().is_empty());
    }

    #[test]
    fn non_involutive_sigma_is_rejected() {
        let nb = build_nabla(1).unwrap();
        let a = Arc::new(nb.delta.standard_simplex(1));
        let rev = Arc::new(nb.reversed(&a).unwrap());
        // identity on Δ^1 does not commute with the face reindexing
        let s = DiagramMap::new_unchecked(rev, a.clone(), (0..2).map(|k| (0..a.size(k)).collect()).collect()).unwrap();
        assert!(nb.from_involutive(&a, &s).is_err());
    }

    #[test]
    fn generators_are_normal() {
        let nb = build_nabla(2).unwrap();
        let gens = nb.generating_cofibrations().unwrap();
        assert_eq!(gens[0].source().total_size(), 0);
        assert_eq!(gens[0].target().size(0), 2);
        let s = nb.sigma_action(gens[0].target(), 0);
        assert_eq!(s, &[1, 0]);
    }

    #[test]
    fn missing_fixed_vertex_is_not_normal() {
        let nb = build_nabla(1).unwrap();
        // a point with trivial involution; the empty subobject misses a fixed vertex
        let a = Arc::new(nb.delta.standard_simplex(0));
        let rev = Arc::new(nb.reversed(&a).unwrap());
        let s = DiagramMap::new(rev, a.clone(), vec![vec![0], vec![0]]).unwrap();
        let y = Arc::new(nb.from_involutive(&a, &s).unwrap());
        let empty = Arc::new(SetDiagram::empty(nb.opposite.clone()));
        let f = DiagramMap::new(empty, y.clone(), vec![vec![], vec![]]).unwrap();
        assert!(!nb.is_normal_mono(&f).unwrap());
        assert!(nb.is_normal_mono(&DiagramMap::identity(&y)).unwrap());
    }
}
