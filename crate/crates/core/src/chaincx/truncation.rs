use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{ComplexMap, FiniteComplex};
use super::field::Field;
use super::matrix::{cokernel_projection, Matrix};
use crate::error::Result;

/// Drops every degree below zero.
pub fn naive_truncate<F: Field>(c: &FiniteComplex<F>) -> FiniteComplex<F> {
    match c.window() {
        Some((_, hi)) if hi >= 0 => {
            let dims = (0..=hi).map(|k| c.dim(k)).collect();
            FiniteComplex::new(0, dims, (0..hi).map(|k| c.d(k)).collect()).expect("sub-complex")
        }
        _ => FiniteComplex::zero(),
    }
}

pub fn naive_truncate_map<F: Field>(f: &ComplexMap<F>) -> Result<ComplexMap<F>> {
    let (s, t) = (naive_truncate(f.source()), naive_truncate(f.target()));
    let maps = f.degrees().into_iter().filter(|&k| k >= 0).map(|k| (k, f.at(k))).collect();
    ComplexMap::new(s, t, maps)
}

/// Degree 0 of the homotopy truncation: a projection `Q: C^0 → coker d^{-1}`
/// and a section `s` with `Q·s = 1`.
struct Cokernel<F> {
    projection: Matrix<F>,
    section: Matrix<F>,
}

fn cokernel_at_zero<F: Field>(c: &FiniteComplex<F>) -> Cokernel<F> {
    let projection = cokernel_projection(c.dim(0), &c.boundaries(0));
    let section = projection.right_inverse().expect("cokernel projection is surjective");
    Cokernel { projection, section }
}

/// Keeps degrees above zero and replaces degree 0 by `coker(d^{-1})`.
pub fn homotopy_truncate<F: Field>(c: &FiniteComplex<F>) -> FiniteComplex<F> {
    let hi = match c.window() {
        Some((_, hi)) if hi >= 0 => hi,
        _ => return FiniteComplex::zero(),
    };
    let q = cokernel_at_zero(c);
    let mut dims = vec![q.projection.rows()];
    dims.extend((1..=hi).map(|k| c.dim(k)));
    let mut diffs: Vec<Matrix<F>> = Vec::new();
    if hi >= 1 {
        // d^0 kills the boundaries, so it factors through the projection
        diffs.push(&c.d(0) * &q.section);
        diffs.extend((1..hi).map(|k| c.d(k)));
    }
    FiniteComplex::new(0, dims, diffs).expect("truncation of a complex")
}

pub fn homotopy_truncate_map<F: Field>(f: &ComplexMap<F>) -> Result<ComplexMap<F>> {
    let (s, t) = (homotopy_truncate(f.source()), homotopy_truncate(f.target()));
    let Some(hi) = s.window().into_iter().chain(t.window()).map(|w| w.1).max() else {
        return Ok(ComplexMap::zero(&s, &t));
    };
    let (qs, qt) = (cokernel_at_zero(f.source()), cokernel_at_zero(f.target()));
    let mut maps = BTreeMap::from([(0, &(&qt.projection * &f.at(0)) * &qs.section)]);
    maps.extend((1..=hi).map(|k| (k, f.at(k))));
    ComplexMap::new(s, t, maps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationReport {
    pub p: u32,
    pub acyclic_fib: bool,
    #[serde(rename = "FR_acyclic_fib")]
    pub fr_acyclic_fib: bool,
    pub naive_image_epi: bool,
    pub naive_image_quasi_iso: bool,
    pub homotopy_image_zero: bool,
    pub homotopy_image_quasi_iso: bool,
}

/// The ground field in degrees −1 and 0 with the identity differential.
pub fn identity_cone<F: Field>() -> FiniteComplex<F> {
    FiniteComplex::new(-1, vec![1, 1], vec![Matrix::identity(1)]).expect("cone")
}

/// Runs `C → 0` through both truncations, where `C` is [`identity_cone`].
pub fn reproduce_truncation_counterexample<F: Field>() -> Result<TruncationReport> {
    let c = identity_cone::<F>();
    let f = ComplexMap::zero(&c, &FiniteComplex::zero());
    let naive = naive_truncate_map(&f)?;
    let homotopy = homotopy_truncate_map(&f)?;
    let acyclic_fib = f.is_degreewise_epi() && f.is_quasi_iso();
    Ok(TruncationReport {
        p: F::characteristic(),
        acyclic_fib,
        fr_acyclic_fib: naive.is_degreewise_epi() && naive.is_quasi_iso(),
        naive_image_epi: naive.is_degreewise_epi(),
        naive_image_quasi_iso: naive.is_quasi_iso(),
        homotopy_image_zero: homotopy.source().is_zero() && homotopy.target().is_zero(),
        homotopy_image_quasi_iso: homotopy.is_quasi_iso(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::field::Fp;
    use super::*;

    type F = Fp<3>;

    #[test]
    fn nonnegative_complexes_are_fixed() {
        let d = Matrix::from_rows(&[vec![F::new(1), F::new(2)]]).unwrap();
        let c = FiniteComplex::new(0, vec![2, 1], vec![d]).unwrap();
        assert_eq!(naive_truncate(&c), c);
        assert_eq!(homotopy_truncate(&c), c);
    }

    #[test]
    fn truncations_of_the_cone() {
        let c = identity_cone::<F>();
        assert_eq!(naive_truncate(&c), FiniteComplex::concentrated(0, 1));
        assert!(homotopy_truncate(&c).is_zero());
    }

    #[test]
    fn counterexample_over_three() {
        let r = reproduce_truncation_counterexample::<F>().unwrap();
        assert!(r.acyclic_fib && !r.fr_acyclic_fib);
        assert!(r.naive_image_epi && !r.naive_image_quasi_iso);
        assert!(r.homotopy_image_zero && r.homotopy_image_quasi_iso);
    }

    #[test]
    fn homotopy_truncation_keeps_nonnegative_homology() {
        // F^2 in degree −1 onto one line of F^2 in degree 0, then F^2 → F
        let d0 = Matrix::from_rows(&[vec![F::new(1), F::new(0)], vec![F::new(0), F::new(0)]]).unwrap();
        let d1 = Matrix::from_rows(&[vec![F::new(0), F::new(1)]]).unwrap();
        let c = FiniteComplex::new(-1, vec![2, 2, 1], vec![d0, d1]).unwrap();
        let t = homotopy_truncate(&c);
        assert_eq!(t.homology_dims(), vec![(0, c.homology_dim(0)), (1, c.homology_dim(1))]);
        assert_eq!(t.dim(0), 1);
    }
}
