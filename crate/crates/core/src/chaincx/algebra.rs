use std::sync::Arc;

use serde::Serialize;

use super::field::{count_vectors, Field};
use super::matrix::{cokernel_projection, Matrix};
use crate::error::{Error, Result};

/// A finite-dimensional associative unital algebra given by structure
/// constants `e_i e_j = Σ_k c_{ijk} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra<F> {
    dim: usize,
    constants: Vec<F>,
    unit: Vec<F>,
}

fn basis_vector<F: Field>(n: usize, k: usize) -> Vec<F> {
    (0..n).map(|i| if i == k { F::one() } else { F::zero() }).collect()
}

impl<F: Field> FiniteAlgebra<F> {
    /// `constants[(i·dim + j)·dim + k] = c_{ijk}`.
    pub fn new(dim: usize, constants: Vec<F>, unit: Vec<F>) -> Result<Self> {
        if constants.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::malformed("algebra", "expected dim³ structure constants and a unit vector"));
        }
        let a = FiniteAlgebra { dim, constants, unit };
        for i in 0..dim {
            let ei = basis_vector(dim, i);
            if a.mul(&a.unit, &ei) != ei || a.mul(&ei, &a.unit) != ei {
                return Err(Error::invalid("algebra", format!("the unit does not act as the identity on e_{i}")));
            }
            for j in 0..dim {
                let ej = basis_vector(dim, j);
                for k in 0..dim {
                    let ek = basis_vector(dim, k);
                    if a.mul(&a.mul(&ei, &ej), &ek) != a.mul(&ei, &a.mul(&ej, &ek)) {
                        return Err(Error::invalid("algebra", format!("(e_{i} e_{j}) e_{k} ≠ e_{i} (e_{j} e_{k})")));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Builds constants from a product on basis indices.
    pub fn from_basis_product(dim: usize, unit: usize, prod: impl Fn(usize, usize) -> Option<usize>) -> Result<Self> {
        let mut c = vec![F::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if let Some(k) = prod(i, j) {
                    c[(i * dim + j) * dim + k] = F::one();
                }
            }
        }
        Self::new(dim, c, basis_vector(dim, unit))
    }

    /// The ground field.
    pub fn field() -> Self {
        Self::from_basis_product(1, 0, |_, _| Some(0)).unwrap()
    }

    /// `F[x]/(x^n)` on the basis `1, x, …, x^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        Self::from_basis_product(n, 0, |i, j| (i + j < n).then_some(i + j)).unwrap()
    }

    /// `F × F × ⋯` with `r` idempotents.
    pub fn split(r: usize) -> Self {
        let mut c = vec![F::zero(); r * r * r];
        for i in 0..r {
            c[(i * r + i) * r + i] = F::one();
        }
        Self::new(r, c, vec![F::one(); r]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = *o + a[i] * b[j] * self.constants[(i * n + j) * n + k];
                }
            }
        }
        out
    }

    /// The matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(a, &basis_vector(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// The matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|j| self.mul(&basis_vector(self.dim, j), a)).collect();
        Matrix::from_columns(self.dim, &cols)
    }
}

/// A unital algebra homomorphism `f: R → S` as a `dim S × dim R` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap<F> {
    source: Arc<FiniteAlgebra<F>>,
    target: Arc<FiniteAlgebra<F>>,
    matrix: Matrix<F>,
}

impl<F: Field> AlgebraMap<F> {
    pub fn new(source: Arc<FiniteAlgebra<F>>, target: Arc<FiniteAlgebra<F>>, matrix: Matrix<F>) -> Result<Self> {
        if (matrix.rows(), matrix.cols()) != (target.dim, source.dim) {
            return Err(Error::malformed("algebra map", "matrix shape does not match the algebras"));
        }
        if matrix.apply(&source.unit) != target.unit {
            return Err(Error::invalid("algebra map", "f(1) ≠ 1"));
        }
        for i in 0..source.dim {
            for j in 0..source.dim {
                let (ei, ej) = (basis_vector(source.dim, i), basis_vector(source.dim, j));
                let lhs = matrix.apply(&source.mul(&ei, &ej));
                let rhs = target.mul(&matrix.apply(&ei), &matrix.apply(&ej));
                if lhs != rhs {
                    return Err(Error::invalid("algebra map", format!("f(e_{i} e_{j}) ≠ f(e_{i}) f(e_{j})")));
                }
            }
        }
        Ok(AlgebraMap { source, target, matrix })
    }

    pub fn identity(a: Arc<FiniteAlgebra<F>>) -> Self {
        let n = a.dim;
        AlgebraMap { source: a.clone(), target: a, matrix: Matrix::identity(n) }
    }

    /// The unit map `F → S`.
    pub fn from_field(target: Arc<FiniteAlgebra<F>>) -> Self {
        let matrix = Matrix::from_columns(target.dim, std::slice::from_ref(&target.unit));
        AlgebraMap::new(Arc::new(FiniteAlgebra::field()), target, matrix).expect("unit map")
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra<F>> {
        &self.target
    }

    pub fn apply(&self, r: &[F]) -> Vec<F> {
        self.matrix.apply(r)
    }

    /// Whether `b_1..b_r` is a basis of `f*S` as a left `R`-module.
    pub fn is_free_basis(&self, basis: &[Vec<F>]) -> bool {
        let (r, s) = (self.source.dim, self.target.dim);
        let cols: Vec<Vec<F>> = basis
            .iter()
            .flat_map(|b| (0..r).map(move |c| (b, c)))
            .map(|(b, c)| self.target.mul(&self.apply(&basis_vector(r, c)), b))
            .collect();
        cols.len() == s && Matrix::from_columns(s, &cols).rank() == s
    }
}

/// A finite-dimensional left module, by the matrices of the basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Module<F> {
    algebra: Arc<FiniteAlgebra<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> Module<F> {
    pub fn new(algebra: Arc<FiniteAlgebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        if action.len() != algebra.dim || action.iter().any(|m| (m.rows(), m.cols()) != (dim, dim)) {
            return Err(Error::malformed("module", "one dim×dim matrix per basis element of the algebra"));
        }
        let m = Module { algebra, dim, action };
        if m.act(m.algebra.unit()) != Matrix::identity(dim) {
            return Err(Error::invalid("module", "the unit does not act as the identity"));
        }
        let n = m.algebra.dim;
        for i in 0..n {
            for j in 0..n {
                let prod = m.algebra.mul(&basis_vector(n, i), &basis_vector(n, j));
                if &m.action[i] * &m.action[j] != m.act(&prod) {
                    return Err(Error::invalid("module", format!("ρ(e_{i}) ρ(e_{j}) ≠ ρ(e_{i} e_{j})")));
                }
            }
        }
        Ok(m)
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(algebra: Arc<FiniteAlgebra<F>>) -> Self {
        let n = algebra.dim;
        let action = (0..n).map(|i| algebra.left_mult(&basis_vector(n, i))).collect();
        Module { algebra, dim: n, action }
    }

    /// `F^dim` over the ground field.
    pub fn vector_space(dim: usize) -> Self {
        Module { algebra: Arc::new(FiniteAlgebra::field()), dim, action: vec![Matrix::identity(dim)] }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// The matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[F]) -> Matrix<F> {
        a.iter().zip(&self.action).fold(Matrix::zeros(self.dim, self.dim), |acc, (&c, m)| acc.add(&m.scale(c)))
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let action = self.action.iter().zip(&o.action).map(|(a, b)| a.direct_sum(b)).collect();
        Module { algebra: self.algebra.clone(), dim: self.dim + o.dim, action }
    }

    pub fn is_linear(&self, target: &Module<F>, g: &Matrix<F>) -> bool {
        (g.rows(), g.cols()) == (target.dim, self.dim) && self.action.iter().zip(&target.action).all(|(a, b)| g * a == b * g)
    }
}

/// A basis of `hom(m, n)` as matrices.
pub fn hom_basis<F: Field>(m: &Module<F>, n: &Module<F>) -> Vec<Matrix<F>> {
    let (a, b) = (m.dim, n.dim);
    let cols: Vec<Vec<F>> = (0..a * b)
        .map(|u| {
            let x = Matrix::from_fn(b, a, |r, c| if r * a + c == u { F::one() } else { F::zero() });
            m.action.iter().zip(&n.action).flat_map(|(ra, rb)| (&x * ra).sub(&(rb * &x)).entries().to_vec()).collect()
        })
        .collect();
    let rows = m.action.len() * a * b;
    Matrix::from_columns(rows, &cols).nullspace().into_iter().map(|v| Matrix::from_vec(b, a, v).unwrap()).collect()
}

/// `f*N`: an `S`-module viewed over `R`.
pub fn restrict_scalars<F: Field>(f: &AlgebraMap<F>, n: &Module<F>) -> Result<Module<F>> {
    if n.algebra != f.target {
        return Err(Error::invalid("restriction", "module is not over the target algebra"));
    }
    let r = f.source.dim;
    let action = (0..r).map(|i| n.act(&f.apply(&basis_vector(r, i)))).collect();
    Module::new(f.source.clone(), n.dim, action)
}

/// `S ⊗_R M` presented as a quotient of `S ⊗ M` (index `s·dim M + m`).
#[derive(Clone, Debug)]
pub struct Induced<F> {
    pub module: Module<F>,
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

pub fn induce<F: Field>(f: &AlgebraMap<F>, m: &Module<F>) -> Result<Induced<F>> {
    if m.algebra != f.source {
        return Err(Error::invalid("induction", "module is not over the source algebra"));
    }
    let (s, r, d) = (f.target.dim, f.source.dim, m.dim);
    let mut relations = Vec::new();
    for b in 0..s {
        let eb = basis_vector(s, b);
        for c in 0..r {
            let ec = basis_vector(r, c);
            let moved = f.target.mul(&eb, &f.apply(&ec));
            for a in 0..d {
                let ea = basis_vector(d, a);
                let lhs = Matrix::from_columns(s, std::slice::from_ref(&moved))
                    .kron(&Matrix::from_columns(d, std::slice::from_ref(&ea)));
                let rhs =
                    Matrix::from_columns(s, std::slice::from_ref(&eb)).kron(&Matrix::from_columns(d, &[m.action[c].apply(&ea)]));
                relations.push(lhs.sub(&rhs).column(0));
            }
        }
    }
    let projection = cokernel_projection(s * d, &relations);
    let section = projection.right_inverse().ok_or_else(|| Error::Internal("cokernel projection is not surjective".into()))?;
    let id = Matrix::identity(d);
    let action = (0..s).map(|j| &(&projection * &f.target.left_mult(&basis_vector(s, j)).kron(&id)) * &section).collect();
    let module = Module::new(f.target.clone(), projection.rows(), action)?;
    Ok(Induced { module, projection, section })
}

/// `S ⊗_R g`.
pub fn induce_map<F: Field>(f: &AlgebraMap<F>, src: &Induced<F>, tgt: &Induced<F>, g: &Matrix<F>) -> Matrix<F> {
    let s = f.target.dim;
    &(&tgt.projection * &Matrix::identity(s).kron(g)) * &src.section
}

/// `hom_R(f*S, M)` as a subspace of `hom(S, M)` (index `b·dim M + a` for
/// the `a`-th coordinate of `φ(e_b)`), with `(s·φ)(x) = φ(x s)`.
#[derive(Clone, Debug)]
pub struct Coinduced<F> {
    pub module: Module<F>,
    pub inclusion: Matrix<F>,
    pub retraction: Matrix<F>,
}

pub fn coinduce<F: Field>(f: &AlgebraMap<F>, m: &Module<F>) -> Result<Coinduced<F>> {
    if m.algebra != f.source {
        return Err(Error::invalid("coinduction", "module is not over the source algebra"));
    }
    let (s, r, d) = (f.target.dim, f.source.dim, m.dim);
    // residual of φ(f(e_c) e_b) = e_c·φ(e_b) for the elementary φ with φ(e_b') = e_a'
    let cols: Vec<Vec<F>> = (0..s * d)
        .map(|u| {
            let (b0, a0) = (u / d, u % d);
            let phi = |x: &[F]| -> Vec<F> { (0..d).map(|a| if a == a0 { x[b0] } else { F::zero() }).collect() };
            let mut out = Vec::with_capacity(r * s * d);
            for c in 0..r {
                let fc = f.apply(&basis_vector(r, c));
                for b in 0..s {
                    let eb = basis_vector(s, b);
                    let lhs = phi(&f.target.mul(&fc, &eb));
                    let rhs = m.action[c].apply(&phi(&eb));
                    out.extend(lhs.iter().zip(&rhs).map(|(&x, &y)| x - y));
                }
            }
            out
        })
        .collect();
    let basis = Matrix::from_columns(r * s * d, &cols).nullspace();
    let inclusion = Matrix::from_columns(s * d, &basis);
    let retraction = inclusion.left_inverse().ok_or_else(|| Error::Internal("hom basis is dependent".into()))?;
    let id = Matrix::identity(d);
    let action =
        (0..s).map(|j| &(&retraction * &f.target.right_mult(&basis_vector(s, j)).transpose().kron(&id)) * &inclusion).collect();
    let module = Module::new(f.target.clone(), basis.len(), action)?;
    Ok(Coinduced { module, inclusion, retraction })
}

/// `hom_R(f*S, g)`.
pub fn coinduce_map<F: Field>(f: &AlgebraMap<F>, src: &Coinduced<F>, tgt: &Coinduced<F>, g: &Matrix<F>) -> Matrix<F> {
    let s = f.target.dim;
    &(&tgt.retraction * &Matrix::identity(s).kron(g)) * &src.inclusion
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCountEntry {
    /// `"induce"` compares `hom_S(S⊗M, N)` with `hom_R(M, f*N)`; `"coinduce"`
    /// compares `hom_R(f*N, M)` with `hom_S(N, hom_R(f*S, M))`.
    pub side: String,
    pub r_module_dim: usize,
    pub s_module_dim: usize,
    pub hom_dim_lhs: usize,
    pub hom_dim_rhs: usize,
    /// Element counts over the finite field.
    pub count_lhs: Option<u128>,
    pub count_rhs: Option<u128>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfRingsReport {
    pub passed: bool,
    pub entries: Vec<HomCountEntry>,
}

/// Compares both adjunctions on every pair drawn from the two corpora.
pub fn check_change_of_rings_counts<F: Field>(
    f: &AlgebraMap<F>,
    r_modules: &[Module<F>],
    s_modules: &[Module<F>],
) -> Result<ChangeOfRingsReport> {
    let mut entries = Vec::new();
    for m in r_modules {
        let ind = induce(f, m)?;
        let coind = coinduce(f, m)?;
        for n in s_modules {
            let res = restrict_scalars(f, n)?;
            for (side, lhs, rhs) in [
                ("induce", hom_basis(&ind.module, n).len(), hom_basis(m, &res).len()),
                ("coinduce", hom_basis(&res, m).len(), hom_basis(n, &coind.module).len()),
            ] {
                entries.push(HomCountEntry {
                    side: side.into(),
                    r_module_dim: m.dim,
                    s_module_dim: n.dim,
                    hom_dim_lhs: lhs,
                    hom_dim_rhs: rhs,
                    count_lhs: count_vectors::<F>(lhs),
                    count_rhs: count_vectors::<F>(rhs),
                    agree: lhs == rhs,
                });
            }
        }
    }
    Ok(ChangeOfRingsReport { passed: entries.iter().all(|e| e.agree), entries })
}

/// Every direct sum of copies of `pieces` with total dimension between 1
/// and `max_dim`.
pub fn direct_sums<F: Field>(pieces: &[Module<F>], max_dim: usize) -> Vec<Module<F>> {
    fn go<F: Field>(pieces: &[Module<F>], from: usize, acc: Option<Module<F>>, room: usize, out: &mut Vec<Module<F>>) {
        if let Some(m) = &acc {
            out.push(m.clone());
        }
        for k in from..pieces.len() {
            let p = &pieces[k];
            if p.dim <= room {
                let next = acc.as_ref().map_or(p.clone(), |m| m.direct_sum(p));
                go(pieces, k, Some(next), room - p.dim, out);
            }
        }
    }
    let mut out = Vec::new();
    go(pieces, 0, None, max_dim, &mut out);
    out
}

/// Modules of dimension at most `max_dim` over `F[x]/(x^n)`: direct sums of
/// the cyclic modules `F[x]/(x^j)`, `1 ≤ j ≤ n`.
pub fn truncated_polynomial_modules<F: Field>(n: usize, max_dim: usize) -> Vec<Module<F>> {
    let a = Arc::new(FiniteAlgebra::truncated_polynomial(n));
    let pieces: Vec<Module<F>> = (1..=n)
        .map(|j| {
            let shift = Matrix::from_fn(j, j, |r, c| if r == c + 1 { F::one() } else { F::zero() });
            let mut power = Matrix::identity(j);
            let mut action = Vec::new();
            for _ in 0..n {
                action.push(power.clone());
                power = &shift * &power;
            }
            Module::new(a.clone(), j, action).expect("cyclic module")
        })
        .collect();
    direct_sums(&pieces, max_dim)
}

/// Modules of dimension at most `max_dim` over `F[x]/(x²)`.
pub fn dual_number_modules<F: Field>(max_dim: usize) -> Vec<Module<F>> {
    truncated_polynomial_modules(2, max_dim)
}

/// Modules of dimension at most `max_dim` over `F^r`: sums of the simples.
pub fn split_modules<F: Field>(r: usize, max_dim: usize) -> Vec<Module<F>> {
    let a = Arc::new(FiniteAlgebra::split(r));
    let pieces: Vec<Module<F>> = (0..r)
        .map(|i| {
            let action = (0..r).map(|j| if i == j { Matrix::identity(1) } else { Matrix::zeros(1, 1) }).collect();
            Module::new(a.clone(), 1, action).expect("simple module")
        })
        .collect();
    direct_sums(&pieces, max_dim)
}

#[cfg(test)]
mod tests {
    use super::super::field::Fp;
    use super::*;

    type F = Fp<3>;

    fn dual() -> Arc<FiniteAlgebra<F>> {
        Arc::new(FiniteAlgebra::truncated_polynomial(2))
    }

    #[test]
    fn algebras_validate() {
        assert_eq!(FiniteAlgebra::<F>::truncated_polynomial(3).dim(), 3);
        assert_eq!(FiniteAlgebra::<F>::split(2).dim(), 2);
        // x as a unit for F[x]/(x²) fails
        assert!(FiniteAlgebra::<F>::from_basis_product(2, 1, |i, j| (i + j < 2).then_some(i + j)).is_err());
        assert!(FiniteAlgebra::<F>::new(1, vec![F::new(1)], vec![F::new(2)]).is_err());
    }

    #[test]
    fn module_corpora_count_partitions() {
        // partitions of 1, 2, 3 into parts of size at most 3
        assert_eq!(truncated_polynomial_modules::<F>(3, 3).len(), 6);
        assert_eq!(dual_number_modules::<F>(3).len(), 5);
        assert_eq!(split_modules::<F>(2, 3).len(), 9);
        assert!(truncated_polynomial_modules::<F>(3, 3).iter().all(|m| m.dim() <= 3));
    }

    #[test]
    fn identity_change_of_rings_is_trivial() {
        let a = dual();
        let id = AlgebraMap::identity(a.clone());
        let m = Module::regular(a);
        assert_eq!(restrict_scalars(&id, &m).unwrap(), m);
        assert_eq!(induce(&id, &m).unwrap().module.dim(), 2);
        assert_eq!(coinduce(&id, &m).unwrap().module.dim(), 2);
    }

    #[test]
    fn induction_from_the_field_doubles() {
        let f = AlgebraMap::from_field(dual());
        assert!(f.is_free_basis(&[vec![F::new(1), F::new(0)], vec![F::new(0), F::new(1)]]));
        let m = Module::vector_space(1);
        assert_eq!(induce(&f, &m).unwrap().module.dim(), 2);
        assert_eq!(coinduce(&f, &Module::vector_space(3)).unwrap().module.dim(), 6);
    }

    #[test]
    fn adjunction_counts_over_dual_numbers() {
        let f = AlgebraMap::from_field(dual());
        let rs: Vec<_> = (1..=3).map(Module::vector_space).collect();
        let report = check_change_of_rings_counts(&f, &rs, &dual_number_modules(3)).unwrap();
        assert!(report.passed, "{:?}", report.entries.iter().find(|e| !e.agree));
        assert_eq!(report.entries.len(), 3 * dual_number_modules::<F>(3).len() * 2);
    }

    #[test]
    fn non_free_restriction() {
        // F[x]/x² → F killing x: f*S = F is not free
        let a = dual();
        let f = AlgebraMap::new(a, Arc::new(FiniteAlgebra::field()), Matrix::from_rows(&[vec![F::new(1), F::new(0)]]).unwrap())
            .unwrap();
        assert!(!f.is_free_basis(&[vec![F::new(1)]]));
        let report =
            check_change_of_rings_counts(&f, &dual_number_modules(3), &[Module::vector_space(1), Module::vector_space(2)])
                .unwrap();
        assert!(report.passed);
    }

    #[test]
    fn module_axioms_checked() {
        let a = dual();
        assert!(Module::new(a, 1, vec![Matrix::identity(1), Matrix::identity(1)]).is_err());
    }
}
