//! Categories with anti-involution: the free and cofree involutive categories
//! on a category, equivariant functors, the dagger core, and the
//! characterization of cofibrations of involutive categories.

mod adjoint;
mod dagger;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::constructions::opposite;
use crate::fincat::{coproduct, product, CatFunctor, FiniteCategory};

pub use adjoint::{check_inv_adjunctions, InvAdjunctionEntry, InvAdjunctionReport};
pub use dagger::{
    check_exercise, dagger_r, dagger_r_map, equivariant_functors, has_equivariant_llp, involutive_codiscrete, involutive_corpus,
    reproduce_dagger_counterexample, DaggerCategory, DaggerReport, DaggerVariant, ExerciseReport,
};

/// A category `X` with `τ: X^op → X` such that `τ^op τ = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveCategory {
    base: Arc<FiniteCategory>,
    tau: CatFunctor,
}

impl InvolutiveCategory {
    pub fn new(base: Arc<FiniteCategory>, tau: CatFunctor) -> Result<Self> {
        if **tau.dom() != opposite(&base) || tau.cod() != &base {
            return Err(Error::invalid("involution", "τ must be a functor X^op → X"));
        }
        if let Some(v) = tau.violations().into_iter().next() {
            return Err(Error::invalid("involution", format!("{v:?}")));
        }
        if let Some(m) = (0..base.num_morphisms()).find(|&m| tau.mor(tau.mor(m)) != m) {
            return Err(Error::invalid(
                "involution",
                format!("τ(τ({})) is not `{}`", base.morphism_name(m), base.morphism_name(m)),
            ));
        }
        Ok(InvolutiveCategory { base, tau })
    }

    /// `τ` given by index maps on objects and morphisms.
    pub fn from_maps(base: Arc<FiniteCategory>, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self> {
        let op = Arc::new(opposite(&base));
        let tau = CatFunctor::new(op, base.clone(), objects, morphisms)?;
        InvolutiveCategory::new(base, tau)
    }

    /// `τ` given by identifier pairs; identities may be left implicit.
    pub fn from_names(base: Arc<FiniteCategory>, objects: &[(&str, &str)], morphisms: &[(&str, &str)]) -> Result<Self> {
        let op = Arc::new(opposite(&base));
        let tau = CatFunctor::from_names(op, base.clone(), objects, morphisms)?;
        InvolutiveCategory::new(base, tau)
    }

    /// `τ` acting by the identity on indices; valid only when `X = X^op` that way.
    pub fn identity_involution(base: Arc<FiniteCategory>) -> Result<Self> {
        let n = base.num_objects();
        let m = base.num_morphisms();
        Self::from_maps(base, (0..n).collect(), (0..m).collect())
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn tau(&self) -> &CatFunctor {
        &self.tau
    }

    pub fn tau_obj(&self, a: usize) -> usize {
        self.tau.obj(a)
    }

    pub fn tau_mor(&self, m: usize) -> usize {
        self.tau.mor(m)
    }

    pub fn fixed_objects(&self) -> Vec<usize> {
        (0..self.base.num_objects()).filter(|&a| self.tau.obj(a) == a).collect()
    }
}

/// A functor `f` with `τ ∘ f^op = f ∘ τ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantFunctor {
    pub source: InvolutiveCategory,
    pub target: InvolutiveCategory,
    pub functor: CatFunctor,
}

pub fn is_equivariant(source: &InvolutiveCategory, target: &InvolutiveCategory, f: &CatFunctor) -> bool {
    (0..source.base.num_objects()).all(|a| target.tau_obj(f.obj(a)) == f.obj(source.tau_obj(a)))
        && (0..source.base.num_morphisms()).all(|m| target.tau_mor(f.mor(m)) == f.mor(source.tau_mor(m)))
}

impl EquivariantFunctor {
    pub fn new(source: InvolutiveCategory, target: InvolutiveCategory, functor: CatFunctor) -> Result<Self> {
        if functor.dom() != source.base() || functor.cod() != target.base() {
            return Err(Error::invalid("equivariant functor", "endpoints do not match"));
        }
        if !is_equivariant(&source, &target, &functor) {
            return Err(Error::invalid("equivariant functor", "f does not commute with the involutions"));
        }
        Ok(EquivariantFunctor { source, target, functor })
    }

    pub fn identity(x: &InvolutiveCategory) -> Self {
        EquivariantFunctor { source: x.clone(), target: x.clone(), functor: CatFunctor::identity(x.base.clone()) }
    }
}

/// `L X = X ⊔ X^op` with the swap.
pub fn l_inv(x: &Arc<FiniteCategory>) -> InvolutiveCategory {
    let op = Arc::new(opposite(x));
    let sum = coproduct(x, &op);
    let (n, m) = (x.num_objects(), x.num_morphisms());
    let objects = (0..2 * n).map(|a| if a < n { a + n } else { a - n }).collect();
    let morphisms = (0..2 * m).map(|f| if f < m { f + m } else { f - m }).collect();
    InvolutiveCategory::from_maps(sum.category, objects, morphisms).expect("swap on X ⊔ X^op")
}

/// `R X = X × X^op` with `(a,b) ↦ (b,a)`.
pub fn r_inv(x: &Arc<FiniteCategory>) -> InvolutiveCategory {
    let op = Arc::new(opposite(x));
    let prod = product(x, &op);
    let (n, m) = (x.num_objects(), x.num_morphisms());
    let objects = (0..n * n).map(|o| (o % n) * n + o / n).collect();
    let morphisms = (0..m * m).map(|f| (f % m) * m + f / m).collect();
    InvolutiveCategory::from_maps(prod.category, objects, morphisms).expect("swap on X × X^op")
}

pub fn forget_inv(x: &InvolutiveCategory) -> Arc<FiniteCategory> {
    x.base.clone()
}

/// `L u = u ⊔ u^op`.
pub fn l_inv_map(u: &CatFunctor) -> Result<EquivariantFunctor> {
    let (a, b) = (l_inv(u.dom()), l_inv(u.cod()));
    let (n, m) = (u.dom().num_objects(), u.dom().num_morphisms());
    let (n2, m2) = (u.cod().num_objects(), u.cod().num_morphisms());
    let objects = (0..2 * n).map(|o| if o < n { u.obj(o) } else { u.obj(o - n) + n2 }).collect();
    let morphisms = (0..2 * m).map(|f| if f < m { u.mor(f) } else { u.mor(f - m) + m2 }).collect();
    let f = CatFunctor::new(a.base.clone(), b.base.clone(), objects, morphisms)?;
    EquivariantFunctor::new(a, b, f)
}

/// Injective on objects, with `τ` fixing no object outside the image.
pub fn is_inv_cofibration(f: &EquivariantFunctor) -> bool {
    let y = &f.target;
    if !f.functor.is_injective_on_objects() {
        return false;
    }
    let mut hit = vec![false; y.base.num_objects()];
    for a in 0..f.source.base.num_objects() {
        hit[f.functor.obj(a)] = true;
    }
    (0..y.base.num_objects()).all(|b| hit[b] || y.tau_obj(b) != b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    #[test]
    fn l_and_r_sizes() {
        let a = Arc::new(walking_arrow());
        let l = l_inv(&a);
        let r = r_inv(&a);
        assert_eq!(l.base().num_objects(), 4);
        assert_eq!(r.base().num_objects(), 4);
        assert!(l.base().is_valid() && r.base().is_valid());
        let f = l.base().morphism_index("f").unwrap();
        assert_eq!(l.base().morphism_name(l.tau_mor(f)), "f'");
        let e = Arc::new(empty());
        assert_eq!(l_inv(&e).base().num_objects(), 0);
    }

    #[test]
    fn forget_gives_sum_and_product() {
        let a = Arc::new(walking_arrow());
        let op = Arc::new(opposite(&a));
        assert_eq!(*forget_inv(&l_inv(&a)), *coproduct(&a, &op).category);
        assert_eq!(*forget_inv(&r_inv(&a)), *product(&a, &op).category);
    }

    #[test]
    fn cofibration_examples() {
        let pt = Arc::new(terminal());
        let two = l_inv(&pt);
        let e = Arc::new(empty());
        let empty_inv = InvolutiveCategory::identity_involution(e.clone()).unwrap();
        let to_two = CatFunctor::new(e.clone(), two.base().clone(), vec![], vec![]).unwrap();
        assert!(is_inv_cofibration(&EquivariantFunctor::new(empty_inv.clone(), two, to_two).unwrap()));
        let pt_inv = InvolutiveCategory::identity_involution(pt.clone()).unwrap();
        let to_pt = CatFunctor::new(e, pt, vec![], vec![]).unwrap();
        assert!(!is_inv_cofibration(&EquivariantFunctor::new(empty_inv, pt_inv.clone(), to_pt).unwrap()));
        assert!(is_inv_cofibration(&EquivariantFunctor::identity(&pt_inv)));
    }

    #[test]
    fn arrow_has_no_identity_involution_but_reverses() {
        let a = Arc::new(walking_arrow());
        assert!(InvolutiveCategory::identity_involution(a.clone()).is_err());
        let rev = InvolutiveCategory::from_names(a, &[("a", "b"), ("b", "a")], &[("f", "f")]).unwrap();
        assert!(rev.fixed_objects().is_empty());
    }
}
