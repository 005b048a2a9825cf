//! Group actions on finite categories, semidirect products `C⋊G`, the
//! inclusion `ι: C → C⋊G`, and a checker for the coproduct formula for
//! `ι*ι_!`.

mod lan;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::constructions::opposite;
use crate::fincat::{CatFunctor, FiniteCategory, FiniteGroup};

pub use lan::{
    check_semidirect_hypotheses, comma_partition, verify_lan_formula, CommaPartition, ElementVerdict, HypothesisReport,
    LanFormulaReport,
};

/// A left action `g ↦ ρ_g` of a finite group by automorphisms of a category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    target: Arc<FiniteCategory>,
    rho: Vec<CatFunctor>,
}

impl GroupAction {
    /// Checks `ρ_e = id` and `ρ_g ∘ ρ_h = ρ_{gh}`; invertibility follows.
    pub fn new(group: FiniteGroup, target: Arc<FiniteCategory>, rho: Vec<CatFunctor>) -> Result<Self> {
        if rho.len() != group.order() {
            return Err(Error::malformed("action", "one functor per group element is required"));
        }
        for (g, r) in rho.iter().enumerate() {
            if r.dom() != &target || r.cod() != &target {
                return Err(Error::invalid("action", format!("ρ_{} is not an endofunctor", group.name(g))));
            }
        }
        if rho[group.identity()] != CatFunctor::identity(target.clone()) {
            return Err(Error::invalid("action", "the identity element does not act trivially"));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if rho[h].then(&rho[g])? != rho[group.mul(g, h)] {
                    return Err(Error::invalid(
                        "action",
                        format!("ρ_{} ∘ ρ_{} ≠ ρ_{}", group.name(g), group.name(h), group.name(group.mul(g, h))),
                    ));
                }
            }
        }
        Ok(GroupAction { group, target, rho })
    }

    pub fn trivial(group: FiniteGroup, target: Arc<FiniteCategory>) -> Self {
        let rho = vec![CatFunctor::identity(target.clone()); group.order()];
        GroupAction { group, target, rho }
    }

    /// Builds `ρ_g` from index maps `(objects, morphisms)` produced per element.
    pub fn from_maps(
        group: FiniteGroup,
        target: Arc<FiniteCategory>,
        maps: impl Fn(usize) -> (Vec<usize>, Vec<usize>),
    ) -> Result<Self> {
        let rho = (0..group.order())
            .map(|g| {
                let (o, m) = maps(g);
                CatFunctor::new(target.clone(), target.clone(), o, m)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, target, rho)
    }

    /// An action on a discrete category by permuting its objects;
    /// `perm(g)[a]` is the image of object `a`.
    pub fn permuting_objects(
        group: FiniteGroup,
        target: Arc<FiniteCategory>,
        perm: impl Fn(usize) -> Vec<usize>,
    ) -> Result<Self> {
        let t = target.clone();
        GroupAction::from_maps(group, target, |g| {
            let p = perm(g);
            let m = (0..t.num_morphisms()).map(|f| t.identity(p[t.src(f)])).collect();
            (p, m)
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn rho(&self, g: usize) -> &CatFunctor {
        &self.rho[g]
    }

    /// The same group acting on `C^op` by `ρ_g^op`.
    pub fn opposite(&self) -> GroupAction {
        let op = Arc::new(opposite(&self.target));
        let rho = self
            .rho
            .iter()
            .map(|r| CatFunctor::new_unchecked(op.clone(), op.clone(), r.obj_map().to_vec(), r.mor_map().to_vec()).unwrap())
            .collect();
        GroupAction { group: self.group.clone(), target: op, rho }
    }

    /// `G^op` acting on `C^op` by `κ_g = (ρ_{g⁻¹})^op`.
    pub fn kappa(&self) -> GroupAction {
        let op = self.opposite();
        let rho = (0..self.group.order()).map(|g| op.rho[self.group.inverse(g)].clone()).collect();
        GroupAction { group: self.group.opposite(), target: op.target, rho }
    }
}

/// `C⋊G` with its morphisms stored as pairs: morphism `(φ, g)` has index
/// `φ·|G| + g`, identifier `(φ,g)`, source `ρ_{g⁻¹}(src φ)` and target `tgt φ`.
#[derive(Clone, Debug)]
pub struct SemidirectCategory {
    pub category: Arc<FiniteCategory>,
    pub action: GroupAction,
}

impl SemidirectCategory {
    pub fn pair(&self, m: usize) -> (usize, usize) {
        let n = self.action.group.order();
        (m / n, m % n)
    }

    pub fn morphism(&self, phi: usize, g: usize) -> usize {
        phi * self.action.group.order() + g
    }
}

/// Composition `(φ,g)∘(ψ,h) = (φ∘ρ_g(ψ), gh)`.
pub fn semidirect(action: &GroupAction) -> SemidirectCategory {
    let (c, grp) = (&*action.target, &action.group);
    let n = grp.order();
    let mut mors = Vec::with_capacity(c.num_morphisms() * n);
    for phi in 0..c.num_morphisms() {
        for g in 0..n {
            let name = format!("({},{})", c.morphism_name(phi), grp.name(g));
            let src = action.rho[grp.inverse(g)].obj(c.src(phi));
            mors.push((name, src, c.tgt(phi)));
        }
    }
    let ids = (0..c.num_objects()).map(|a| c.identity(a) * n + grp.identity()).collect();
    let category = FiniteCategory::new(c.objects().to_vec(), mors, ids, |x, y| {
        let (phi, g) = (x / n, x % n);
        let (psi, h) = (y / n, y % n);
        let comp = c.try_compose(phi, action.rho[g].mor(psi))?;
        Some(comp * n + grp.mul(g, h))
    })
    .expect("semidirect product table");
    SemidirectCategory { category: Arc::new(category), action: action.clone() }
}

/// `ι(φ) = (φ, e)`, the identity on objects.
pub fn inclusion_iota(sd: &SemidirectCategory) -> CatFunctor {
    let c = &sd.action.target;
    let e = sd.action.group.identity();
    CatFunctor::new_unchecked(
        c.clone(),
        sd.category.clone(),
        (0..c.num_objects()).collect(),
        (0..c.num_morphisms()).map(|phi| sd.morphism(phi, e)).collect(),
    )
    .unwrap()
}

/// `C^op ⋊_κ G^op` together with the contravariant isomorphism
/// `(φ,g)^op ↦ (ρ_{g⁻¹}^op(φ^op), g^op)` from `(C⋊G)^op`.
pub fn opposite_semidirect(action: &GroupAction) -> Result<(SemidirectCategory, CatFunctor)> {
    let sd = semidirect(action);
    let kd = semidirect(&action.kappa());
    let op = Arc::new(opposite(&sd.category));
    let grp = &action.group;
    let mor_map = (0..op.num_morphisms())
        .map(|m| {
            let (phi, g) = sd.pair(m);
            kd.morphism(action.rho[grp.inverse(g)].mor(phi), g)
        })
        .collect();
    let iso = CatFunctor::new(op.clone(), kd.category.clone(), (0..op.num_objects()).collect(), mor_map)?;
    if !(iso.is_injective_on_morphisms() && iso.is_injective_on_objects()) {
        return Err(Error::Internal("opposite semidirect comparison is not bijective".into()));
    }
    Ok((kd, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::all_permutations;
    use crate::fincat::constructions::*;

    fn swap_ab() -> GroupAction {
        let c = Arc::new(discrete(&["a", "b"]));
        GroupAction::permuting_objects(FiniteGroup::cyclic(2), c, |g| if g == 0 { vec![0, 1] } else { vec![1, 0] }).unwrap()
    }

    #[test]
    fn trivial_action_counts() {
        let c = Arc::new(walking_arrow());
        let g = FiniteGroup::cyclic(3);
        let sd = semidirect(&GroupAction::trivial(g, c.clone()));
        assert!(sd.category.is_valid());
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(sd.category.hom(a, b).len(), c.hom(a, b).len() * 3);
            }
        }
    }

    #[test]
    fn swap_on_two_points() {
        let sd = semidirect(&swap_ab());
        let c = &sd.category;
        assert!(c.is_valid());
        assert_eq!(c.num_morphisms(), 4);
        let crossing = c.hom(0, 1).len() + c.hom(1, 0).len();
        assert_eq!(crossing, 2);
        let m = c.morphism_index("(id_b,g)").unwrap();
        assert_eq!((c.src(m), c.tgt(m)), (0, 1));
    }

    #[test]
    fn iota_is_faithful_not_full() {
        let sd = semidirect(&swap_ab());
        let iota = inclusion_iota(&sd);
        assert!(iota.violations().is_empty());
        assert!(iota.is_faithful());
        assert!(!iota.is_full());
    }

    #[test]
    fn rejects_non_homomorphism() {
        let c = Arc::new(discrete(&["a", "b", "c"]));
        // a 3-cycle cannot be the image of an element of order 2
        let err =
            GroupAction::permuting_objects(FiniteGroup::cyclic(2), c, |g| if g == 0 { vec![0, 1, 2] } else { vec![1, 2, 0] });
        assert!(err.is_err());
    }

    #[test]
    fn kappa_variant_is_contravariantly_isomorphic() {
        let c = Arc::new(discrete(&["a", "b", "c"]));
        let s3 = FiniteGroup::symmetric(3);
        let perms = all_permutations(3);
        let act = GroupAction::permuting_objects(s3, c, |g| perms[g].clone()).unwrap();
        let (kd, iso) = opposite_semidirect(&act).unwrap();
        assert!(kd.category.is_valid());
        assert_eq!(iso.dom().num_morphisms(), 18);
    }
}
