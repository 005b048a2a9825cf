use std::collections::BTreeMap;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A bounded cochain complex `C^lo → … → C^hi` of finite-dimensional
/// vector spaces; the differential raises degree.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteComplex<F> {
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[k]: C^{lo+k} → C^{lo+k+1}`.
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> FiniteComplex<F> {
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(Error::malformed("complex", "one differential between each pair of adjacent degrees"));
        }
        for (k, d) in diffs.iter().enumerate() {
            if (d.rows(), d.cols()) != (dims[k + 1], dims[k]) {
                return Err(Error::malformed("complex", format!("d^{} must be {}x{}", lo + k as i32, dims[k + 1], dims[k])));
            }
        }
        for k in 1..diffs.len() {
            if !(&diffs[k] * &diffs[k - 1]).is_zero() {
                return Err(Error::invalid("complex", format!("d^{} ∘ d^{} ≠ 0", lo + k as i32, lo + k as i32 - 1)));
            }
        }
        Ok(FiniteComplex { lo, dims, diffs })
    }

    pub fn zero() -> Self {
        FiniteComplex { lo: 0, dims: vec![], diffs: vec![] }
    }

    /// `F^dim` in a single degree.
    pub fn concentrated(degree: i32, dim: usize) -> Self {
        FiniteComplex { lo: degree, dims: vec![dim], diffs: vec![] }
    }

    /// The window `[lo, hi]`, or `None` when no degree is stored.
    pub fn window(&self) -> Option<(i32, i32)> {
        (!self.dims.is_empty()).then(|| (self.lo, self.lo + self.dims.len() as i32 - 1))
    }

    pub fn dim(&self, deg: i32) -> usize {
        let k = deg - self.lo;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^deg: C^deg → C^{deg+1}`, zero outside the window.
    pub fn d(&self, deg: i32) -> Matrix<F> {
        let k = deg - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            Matrix::zeros(self.dim(deg + 1), self.dim(deg))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// A basis of `ker d^deg`.
    pub fn cycles(&self, deg: i32) -> Vec<Vec<F>> {
        self.d(deg).nullspace()
    }

    /// A basis of `im d^{deg-1}`.
    pub fn boundaries(&self, deg: i32) -> Vec<Vec<F>> {
        self.d(deg - 1).column_basis()
    }

    pub fn homology_dim(&self, deg: i32) -> usize {
        self.cycles(deg).len() - self.d(deg - 1).rank()
    }

    /// `(degree, dim H^degree)` across the window.
    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        match self.window() {
            None => vec![],
            Some((lo, hi)) => (lo..=hi).map(|k| (k, self.homology_dim(k))).collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().iter().all(|&(_, h)| h == 0)
    }

    /// The complex on degrees `[lo, hi]`, padding with zeros.
    pub fn widen(&self, lo: i32, hi: i32) -> Self {
        let dims: Vec<usize> = (lo..=hi).map(|k| self.dim(k)).collect();
        let diffs = (lo..hi).map(|k| self.d(k)).collect();
        FiniteComplex { lo, dims, diffs }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let Some((lo, hi)) = union_window(self, o) else { return Self::zero() };
        let dims = (lo..=hi).map(|k| self.dim(k) + o.dim(k)).collect();
        let diffs = (lo..hi).map(|k| self.d(k).direct_sum(&o.d(k))).collect();
        FiniteComplex { lo, dims, diffs }
    }
}

pub(crate) fn union_window<F: Field>(a: &FiniteComplex<F>, b: &FiniteComplex<F>) -> Option<(i32, i32)> {
    match (a.window(), b.window()) {
        (None, None) => None,
        (Some(w), None) | (None, Some(w)) => Some(w),
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
    }
}

/// A cochain map, one matrix per degree of the joint window.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMap<F> {
    source: FiniteComplex<F>,
    target: FiniteComplex<F>,
    maps: BTreeMap<i32, Matrix<F>>,
}

impl<F: Field> ComplexMap<F> {
    /// Degrees missing from `maps` are taken to be zero.
    pub fn new(source: FiniteComplex<F>, target: FiniteComplex<F>, mut maps: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let window = union_window(&source, &target);
        if let Some((&k, _)) = maps.iter().find(|(&k, _)| window.is_none_or(|(lo, hi)| k < lo || k > hi)) {
            return Err(Error::malformed("complex map", format!("degree {k} is outside both complexes")));
        }
        if let Some((lo, hi)) = window {
            for k in lo..=hi {
                let m = maps.entry(k).or_insert_with(|| Matrix::zeros(target.dim(k), source.dim(k)));
                if (m.rows(), m.cols()) != (target.dim(k), source.dim(k)) {
                    return Err(Error::malformed("complex map", format!("f^{k} must be {}x{}", target.dim(k), source.dim(k))));
                }
            }
            for k in lo..hi {
                if &maps[&(k + 1)] * &source.d(k) != &target.d(k) * &maps[&k] {
                    return Err(Error::invalid("complex map", format!("f does not commute with d^{k}")));
                }
            }
        }
        Ok(ComplexMap { source, target, maps })
    }

    pub fn identity(c: &FiniteComplex<F>) -> Self {
        let maps = c.window().map_or(BTreeMap::new(), |(lo, hi)| (lo..=hi).map(|k| (k, Matrix::identity(c.dim(k)))).collect());
        ComplexMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn zero(source: &FiniteComplex<F>, target: &FiniteComplex<F>) -> Self {
        ComplexMap::new(source.clone(), target.clone(), BTreeMap::new()).expect("zero map")
    }

    pub fn source(&self) -> &FiniteComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &FiniteComplex<F> {
        &self.target
    }

    pub fn at(&self, deg: i32) -> Matrix<F> {
        self.maps.get(&deg).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(deg), self.source.dim(deg)))
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.maps.keys().copied().collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ComplexMap<F>) -> Result<ComplexMap<F>> {
        if self.target != g.source {
            return Err(Error::invalid("complex map", "maps do not compose"));
        }
        let keys: Vec<i32> = self.maps.keys().chain(g.maps.keys()).copied().collect();
        let maps = keys.into_iter().map(|k| (k, &g.at(k) * &self.at(k))).filter(|(_, m)| m.rows() + m.cols() > 0).collect();
        ComplexMap::new(self.source.clone(), g.target.clone(), maps)
    }

    pub fn is_degreewise_epi(&self) -> bool {
        self.maps.iter().all(|(&k, m)| m.rank() == self.target.dim(k))
    }

    pub fn is_degreewise_mono(&self) -> bool {
        self.maps.iter().all(|(&k, m)| m.rank() == self.source.dim(k))
    }

    /// Rank of `H^deg(f)`: cycles of the source pushed forward, modulo target boundaries.
    pub fn homology_rank(&self, deg: i32) -> usize {
        let f = self.at(deg);
        let n = self.target.dim(deg);
        let bd = self.target.boundaries(deg);
        let pushed: Vec<Vec<F>> = self.source.cycles(deg).iter().map(|z| f.apply(z)).collect();
        let both: Vec<Vec<F>> = bd.iter().cloned().chain(pushed).collect();
        Matrix::from_columns(n, &both).rank() - bd.len()
    }

    /// Whether every `H^k(f)` is bijective.
    pub fn is_quasi_iso(&self) -> bool {
        self.maps.keys().all(|&k| {
            let (hs, ht) = (self.source.homology_dim(k), self.target.homology_dim(k));
            hs == ht && self.homology_rank(k) == hs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::Fp;
    use super::*;

    type F = Fp<2>;

    /// `F` in degrees −1 and 0 with the identity differential.
    fn cone() -> FiniteComplex<F> {
        FiniteComplex::new(-1, vec![1, 1], vec![Matrix::identity(1)]).unwrap()
    }

    #[test]
    fn zero_and_cone_are_acyclic() {
        assert!(FiniteComplex::<F>::zero().homology_dims().is_empty());
        assert_eq!(cone().homology_dims(), vec![(-1, 0), (0, 0)]);
        assert_eq!(FiniteComplex::<F>::concentrated(0, 2).homology_dims(), vec![(0, 2)]);
    }

    #[test]
    fn d_squared_is_checked() {
        let d = Matrix::identity(1);
        assert!(FiniteComplex::<F>::new(0, vec![1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn epi_mono_and_quasi_iso() {
        let c = cone();
        let z = FiniteComplex::zero();
        let to_zero = ComplexMap::zero(&c, &z);
        assert!(to_zero.is_degreewise_epi() && to_zero.is_quasi_iso() && !to_zero.is_degreewise_mono());
        let from_zero = ComplexMap::zero(&z, &c);
        assert!(from_zero.is_degreewise_mono());
        assert!(ComplexMap::identity(&c).is_quasi_iso());
        let k = FiniteComplex::<F>::concentrated(0, 1);
        let k2 = FiniteComplex::<F>::concentrated(0, 2);
        let diag = ComplexMap::new(k.clone(), k2, [(0, Matrix::from_columns(2, &[vec![F::new(1), F::new(1)]]))].into()).unwrap();
        assert!(diag.is_degreewise_mono() && !diag.is_degreewise_epi() && !diag.is_quasi_iso());
        assert!(!ComplexMap::zero(&k, &k).is_quasi_iso());
    }

    #[test]
    fn non_chain_maps_are_rejected() {
        let c = cone();
        let f = ComplexMap::new(c.clone(), c, [(-1, Matrix::identity(1)), (0, Matrix::zeros(1, 1))].into());
        assert!(f.is_err());
    }
}
