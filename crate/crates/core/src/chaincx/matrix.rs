use std::fmt;
use std::ops::Mul;

use super::field::Field;

/// A dense `rows × cols` matrix acting on column vectors.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Matrix { rows, cols, data }
    }

    /// Row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Option<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// The matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.rows).map(|r| (0..self.cols).fold(F::zero(), |acc, c| acc + self[(r, c)] * v[c])).collect()
    }

    pub fn scale(&self, s: F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(&a, &b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-F::one()))
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Self::from_fn(self.rows, self.cols + o.cols, |r, c| if c < self.cols { self[(r, c)] } else { o[(r, c - self.cols)] })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        Self::from_fn(self.rows + o.rows, self.cols, |r, c| if r < self.rows { self[(r, c)] } else { o[(r - self.rows, c)] })
    }

    /// `self ⊗ o`, with row index `r·o.rows + r'`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| self[(r / o.rows, c / o.cols)] * o[(r % o.rows, c % o.cols)])
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        Self::from_fn(self.rows + o.rows, self.cols + o.cols, |r, c| match (r < self.rows, c < self.cols) {
            (true, true) => self[(r, c)],
            (false, false) => o[(r - self.rows, c - self.cols)],
            _ => F::zero(),
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else { continue };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv();
            for c in 0..m.cols {
                m[(row, c)] = m[(row, c)] * inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)];
                    for c in 0..m.cols {
                        let v = m[(row, c)];
                        m[(r, c)] = m[(r, c)] - factor * v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(k, f)];
                }
                v
            })
            .collect()
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_basis(&self) -> Vec<Vec<F>> {
        self.rref().1.into_iter().map(|c| self.column(c)).collect()
    }

    /// Some `x` with `self·x = b`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(k, self.cols)];
        }
        Some(x)
    }

    /// `X` with `self·X = b`, column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        let cols = (0..b.cols).map(|c| self.solve(&b.column(c))).collect::<Option<Vec<_>>>()?;
        Some(Matrix::from_columns(self.cols, &cols))
    }

    /// A left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> Option<Self> {
        self.transpose().solve_matrix(&Matrix::identity(self.cols)).map(|m| m.transpose())
    }

    /// A right inverse of a matrix with independent rows.
    pub fn right_inverse(&self) -> Option<Self> {
        self.solve_matrix(&Matrix::identity(self.rows))
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    out[(r, c)] = out[(r, c)] + a * o[(k, c)];
                }
            }
        }
        out
    }
}

/// A matrix `Q` with `ker Q` equal to the span of `columns` in `F^dim`;
/// it presents the quotient `F^dim / span` with `Q` surjective.
pub fn cokernel_projection<F: Field>(dim: usize, columns: &[Vec<F>]) -> Matrix<F> {
    let w = Matrix::from_columns(dim, columns);
    let rows = w.transpose().nullspace();
    Matrix::from_fn(rows.len(), dim, |r, c| rows[r][c])
}

#[cfg(test)]
mod tests {
    use super::super::field::Fp;
    use super::*;
    use num_traits::Zero;

    type F = Fp<5>;

    fn m(rows: &[&[i64]]) -> Matrix<F> {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&x| F::new(x)).collect()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverses() {
        let a = m(&[&[1, 1], &[0, 1], &[1, 0]]);
        let l = a.left_inverse().unwrap();
        assert_eq!(&l * &a, Matrix::identity(2));
        let r = a.transpose().right_inverse().unwrap();
        assert_eq!(&a.transpose() * &r, Matrix::identity(2));
        assert!(m(&[&[1, 0], &[1, 0]]).solve(&[F::new(1), F::new(2)]).is_none());
    }

    #[test]
    fn cokernel_kills_the_span() {
        let q = cokernel_projection(3, &[vec![F::new(1), F::new(1), F::new(0)]]);
        assert_eq!(q.rows(), 2);
        assert!(q.apply(&[F::new(1), F::new(1), F::new(0)]).iter().all(|x| x.is_zero()));
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn kron_shapes() {
        let a = m(&[&[1, 2]]);
        let b = Matrix::<F>::identity(2);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k[(1, 3)], F::new(2));
    }
}
