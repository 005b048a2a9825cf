use std::sync::Arc;

use serde::Serialize;

use super::{is_equivariant, is_inv_cofibration, l_inv, EquivariantFunctor, InvolutiveCategory};
use crate::catmodel::{is_acyclic_fibration, is_isofibration, squares, LiftingSquare};
use crate::error::{Error, Result};
use crate::fincat::constructions::{codiscrete, discrete, empty, ordinal, terminal};
use crate::fincat::{enumerate_functors, CatFunctor};

/// An involutive category whose involution is the identity on objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaggerCategory(InvolutiveCategory);

impl DaggerCategory {
    pub fn new(x: InvolutiveCategory) -> Result<Self> {
        if x.fixed_objects().len() != x.base().num_objects() {
            return Err(Error::invalid("dagger category", "involution moves an object"));
        }
        Ok(DaggerCategory(x))
    }

    pub fn inner(&self) -> &InvolutiveCategory {
        &self.0
    }
}

/// The full subcategory on `τ`-fixed objects with its inclusion.
pub fn dagger_r(x: &InvolutiveCategory) -> (DaggerCategory, CatFunctor) {
    let fixed = x.fixed_objects();
    let (sub, mors) = x.base().full_subcategory(&fixed);
    let sub = Arc::new(sub);
    let pos = |m: usize| mors.binary_search(&m).expect("τ preserves the fixed subcategory");
    let tau_m = (0..mors.len()).map(|k| pos(x.tau_mor(mors[k]))).collect();
    let inv = InvolutiveCategory::from_maps(sub.clone(), (0..fixed.len()).collect(), tau_m).expect("restricted involution");
    let inc = CatFunctor::new(sub, x.base().clone(), fixed, mors).expect("inclusion of fixed objects");
    (DaggerCategory(inv), inc)
}

/// `R p` on fixed-object subcategories.
pub fn dagger_r_map(p: &EquivariantFunctor) -> Result<CatFunctor> {
    let (rx, ix) = dagger_r(&p.source);
    let (ry, iy) = dagger_r(&p.target);
    let objects = (0..rx.0.base().num_objects())
        .map(|a| {
            let b = p.functor.obj(ix.obj(a));
            (0..ry.0.base().num_objects()).find(|&c| iy.obj(c) == b).expect("fixed objects go to fixed objects")
        })
        .collect();
    let morphisms = (0..rx.0.base().num_morphisms())
        .map(|k| {
            let m = p.functor.mor(ix.mor(k));
            (0..ry.0.base().num_morphisms()).find(|&c| iy.mor(c) == m).unwrap()
        })
        .collect();
    CatFunctor::new(rx.0.base().clone(), ry.0.base().clone(), objects, morphisms)
}

/// A codiscrete category with the involution permuting objects by `perm`.
pub fn involutive_codiscrete(names: &[&str], perm: &[usize]) -> Result<InvolutiveCategory> {
    let c = Arc::new(codiscrete(names));
    let n = names.len();
    let morphisms = (0..n * n).map(|k| perm[k % n] * n + perm[k / n]).collect();
    InvolutiveCategory::from_maps(c, perm.to_vec(), morphisms)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaggerReport {
    pub p_isofib: bool,
    #[serde(rename = "Rp_isofib")]
    pub rp_isofib: bool,
}

/// Variants of the dagger counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DaggerVariant {
    /// `X = {x, x′, y}` with `x ↔ x′` over the dagger category `Y = {z, y}`.
    Swap,
    /// Both involutions the identity on objects.
    Trivial,
    /// `Y = {z, z′, y}` with `z ↔ z′` and `p` equivariant.
    FreshTarget,
}

pub fn reproduce_dagger_counterexample(variant: DaggerVariant) -> Result<DaggerReport> {
    let (x, y, objs) = match variant {
        DaggerVariant::Swap => {
            (involutive_codiscrete(&["x", "x'", "y"], &[1, 0, 2])?, involutive_codiscrete(&["z", "y"], &[0, 1])?, vec![0, 0, 1])
        }
        DaggerVariant::Trivial => {
            (involutive_codiscrete(&["x", "x'", "y"], &[0, 1, 2])?, involutive_codiscrete(&["z", "y"], &[0, 1])?, vec![0, 0, 1])
        }
        DaggerVariant::FreshTarget => (
            involutive_codiscrete(&["x", "x'", "y"], &[1, 0, 2])?,
            involutive_codiscrete(&["z", "z'", "y"], &[1, 0, 2])?,
            vec![0, 1, 2],
        ),
    };
    let (n, ny) = (x.base().num_objects(), y.base().num_objects());
    let morphisms = (0..n * n).map(|k| objs[k / n] * ny + objs[k % n]).collect();
    let p = CatFunctor::new(x.base().clone(), y.base().clone(), objs, morphisms)?;
    let p = EquivariantFunctor::new(x, y, p)?;
    let rp = dagger_r_map(&p)?;
    Ok(DaggerReport { p_isofib: is_isofibration(&p.functor), rp_isofib: is_isofibration(&rp) })
}

/// Small involutive categories with at most three objects.
pub fn involutive_corpus() -> Vec<(String, InvolutiveCategory)> {
    let pt = Arc::new(terminal());
    let mut out = vec![
        ("empty".to_string(), InvolutiveCategory::identity_involution(Arc::new(empty())).unwrap()),
        ("pt".to_string(), InvolutiveCategory::identity_involution(pt.clone()).unwrap()),
        ("L(pt)".to_string(), l_inv(&pt)),
        (
            "pt+L(pt)".to_string(),
            InvolutiveCategory::from_maps(Arc::new(discrete(&["a", "b", "c"])), vec![1, 0, 2], vec![1, 0, 2]).unwrap(),
        ),
        ("[1]^rev".to_string(), {
            let a = Arc::new(ordinal(1));
            InvolutiveCategory::from_names(a, &[("0", "1"), ("1", "0")], &[("0->1", "0->1")]).unwrap()
        }),
        ("[2]^rev".to_string(), {
            let a = Arc::new(ordinal(2));
            InvolutiveCategory::from_names(
                a,
                &[("0", "2"), ("1", "1"), ("2", "0")],
                &[("0->1", "1->2"), ("1->2", "0->1"), ("0->2", "0->2")],
            )
            .unwrap()
        }),
    ];
    for (name, names, perm) in [
        ("E^dagger", vec!["a", "b"], vec![0, 1]),
        ("E^swap", vec!["a", "b"], vec![1, 0]),
        ("K3^dagger", vec!["a", "b", "c"], vec![0, 1, 2]),
        ("K3^swap", vec!["a", "b", "c"], vec![1, 0, 2]),
    ] {
        out.push((name.to_string(), involutive_codiscrete(&names, &perm).unwrap()));
    }
    out
}

/// Every equivariant functor between corpus members.
pub fn equivariant_functors(corpus: &[(String, InvolutiveCategory)], budget: usize) -> Result<Vec<EquivariantFunctor>> {
    let mut out = Vec::new();
    for (_, a) in corpus {
        for (_, b) in corpus {
            for f in enumerate_functors(a.base(), b.base(), budget)? {
                if is_equivariant(a, b, &f) {
                    out.push(EquivariantFunctor { source: a.clone(), target: b.clone(), functor: f });
                }
            }
        }
    }
    Ok(out)
}

/// Equivariant lifting: every equivariant square from `i` to some `p ∈ tests`
/// has an equivariant diagonal.
pub fn has_equivariant_llp(i: &EquivariantFunctor, tests: &[EquivariantFunctor], budget: usize) -> Result<bool> {
    for p in tests {
        for sq in squares(&i.functor, &p.functor, budget)? {
            if !is_equivariant(&i.source, &p.source, &sq.top) || !is_equivariant(&i.target, &p.target, &sq.bottom) {
                continue;
            }
            let sq = LiftingSquare::new(sq.i, sq.p, sq.top, sq.bottom)?;
            let accept = |l: &CatFunctor| is_equivariant(&i.target, &p.source, l);
            if sq.lifts(budget, Some(1), &accept)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExerciseReport {
    pub maps_checked: usize,
    pub acyclic_fibrations: usize,
    pub cofibrations: usize,
    pub disagreements: Vec<String>,
}

/// Compares the free-action characterization of cofibrations with lifting
/// against all equivariant acyclic fibrations in `corpus`.
pub fn check_exercise(corpus: &[(String, InvolutiveCategory)], budget: usize) -> Result<ExerciseReport> {
    let all = equivariant_functors(corpus, budget)?;
    let acyclic: Vec<EquivariantFunctor> = all.iter().filter(|p| is_acyclic_fibration(&p.functor)).cloned().collect();
    let name = |x: &InvolutiveCategory| corpus.iter().find(|(_, c)| c == x).map(|(n, _)| n.clone()).unwrap_or_default();
    let mut disagreements = Vec::new();
    let mut cofibrations = 0;
    for f in &all {
        let criterion = is_inv_cofibration(f);
        cofibrations += criterion as usize;
        if criterion != has_equivariant_llp(f, &acyclic, budget)? {
            disagreements.push(format!(
                "{} → {} with object map {:?}: criterion says {criterion}",
                name(&f.source),
                name(&f.target),
                f.functor.obj_map()
            ));
        }
    }
    Ok(ExerciseReport { maps_checked: all.len(), acyclic_fibrations: acyclic.len(), cofibrations, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_dagger_counterexample() {
        let r = reproduce_dagger_counterexample(DaggerVariant::Swap).unwrap();
        assert_eq!(r, DaggerReport { p_isofib: true, rp_isofib: false });
        let t = reproduce_dagger_counterexample(DaggerVariant::Trivial).unwrap();
        assert_eq!(t, DaggerReport { p_isofib: true, rp_isofib: true });
        let f = reproduce_dagger_counterexample(DaggerVariant::FreshTarget).unwrap();
        assert!(f.p_isofib);
    }

    #[test]
    fn dagger_r_of_swap_is_single_object() {
        let x = involutive_codiscrete(&["x", "x'", "y"], &[1, 0, 2]).unwrap();
        let (d, inc) = dagger_r(&x);
        assert_eq!(d.inner().base().objects(), &["y".to_string()]);
        assert!(inc.is_full());
        let t = involutive_codiscrete(&["x", "y"], &[0, 1]).unwrap();
        assert_eq!(dagger_r(&t).0.inner(), &t);
    }

    #[test]
    fn dagger_r_of_cofree_is_the_diagonal() {
        let a = Arc::new(crate::fincat::constructions::walking_iso());
        let r = super::super::r_inv(&a);
        let (d, _) = dagger_r(&r);
        assert_eq!(d.inner().base().num_objects(), 2);
        assert!(DaggerCategory::new(d.inner().clone()).is_ok());
    }

    #[test]
    fn corpus_is_valid() {
        for (name, c) in involutive_corpus() {
            assert!(c.base().is_valid(), "{name}");
            assert!(c.base().num_objects() <= 3);
        }
    }

    #[test]
    fn exercise_agrees_with_bounded_lifting() {
        let r = check_exercise(&involutive_corpus(), 200_000).unwrap();
        assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
        assert!(r.acyclic_fibrations > 0 && r.cofibrations > 0);
    }
}
