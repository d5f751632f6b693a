//! Dense exact linear algebra over the coefficient rings.
//!
//! Solving over dual numbers is layered on the field solver: for
//! `(M₀ + εM₁)(x₀ + εx₁) = b₀ + εb₁` solve `M₀x₀ = b₀`, then
//! `M₀x₁ = b₁ − M₁x₀`. Dual numbers have zero divisors, so no pivoting is
//! ever attempted on them directly.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{DualScalar, Ring, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<R>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rings over which the linear problems of this crate can be solved exactly.
pub trait Solvable: Ring {
    /// Reusable data for repeated solves against one invertible matrix.
    type Factor: Clone + fmt::Debug + Send + Sync;

    /// Prepares repeated solves; `Singular` unless the matrix is square and invertible.
    fn factor(m: &Matrix<Self>) -> Result<Self::Factor>;

    fn solve_factored(f: &Self::Factor, b: &[Self]) -> Vec<Self>;

    /// The unique solution of `m·x = b` for a possibly rectangular `m`.
    /// `Inconsistent` when none exists, `Singular` when it is not unique.
    fn solve(m: &Matrix<Self>, b: &[Self]) -> Result<Vec<Self>>;

    /// A basis of the solution module of `m·x = 0`.
    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>>;

    /// Whether `m` is square and invertible, without forming the inverse.
    fn is_invertible(m: &Matrix<Self>) -> bool;
}

/// Solves `m·x = b` exactly, see [`Solvable::solve`].
pub fn linear_solve<R: Solvable>(m: &Matrix<R>, b: &[R]) -> Result<Vec<R>> {
    R::solve(m, b)
}

/// Gauss–Jordan elimination of `[A | B]` over the Gaussian rationals.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    cols: usize,
    /// `(row, column)` of each pivot, by increasing column.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    fn reduce(a: &Matrix<Scalar>, extra: &[Vec<Scalar>]) -> Echelon {
        let cols = a.cols();
        let mut rows: Vec<Vec<Scalar>> = (0..a.rows())
            .map(|i| {
                let mut r = a.row(i).to_vec();
                r.extend(extra.iter().map(|col| col[i].clone()));
                r
            })
            .collect();
        let width = cols + extra.len();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let inv = rows[next][c].inverse().expect("nonzero pivot");
            for v in rows[next].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v = v.times(&inv);
                }
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for k in c..width {
                    if !pivot_row[k].is_zero() {
                        row[k] = row[k].minus(&factor.times(&pivot_row[k]));
                    }
                }
            }
            pivots.push((next, c));
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        Echelon { rows, cols, pivots }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether the augmented column `k` is consistent with the reduced system.
    fn consistent(&self, k: usize) -> bool {
        self.rows[self.rank()..]
            .iter()
            .all(|row| row[self.cols + k].is_zero())
    }

    /// Solution of column `k` with every free variable set to zero.
    fn particular(&self, k: usize) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.cols];
        for &(r, c) in &self.pivots {
            x[c] = self.rows[r][self.cols + k].clone();
        }
        x
    }

    fn kernel(&self) -> Vec<Vec<Scalar>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for &(r, c) in &self.pivots {
                    v[c] = self.rows[r][free].negated();
                }
                v
            })
            .collect()
    }
}

/// Rank of a matrix over the Gaussian rationals.
pub fn rank(m: &Matrix<Scalar>) -> usize {
    Echelon::reduce(m, &[]).rank()
}

/// Some solution of `m·x = b`, not necessarily unique.
pub fn particular_solution(m: &Matrix<Scalar>, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let e = Echelon::reduce(m, &[b.to_vec()]);
    if !e.consistent(0) {
        return Err(Error::Inconsistent);
    }
    Ok(e.particular(0))
}

pub fn inverse(m: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    if m.rows() != m.cols() {
        return Err(Error::Singular);
    }
    let n = m.rows();
    let unit: Vec<Vec<Scalar>> = (0..n)
        .map(|j| (0..n).map(|i| Scalar::from((i == j) as i64)).collect())
        .collect();
    let e = Echelon::reduce(m, &unit);
    if e.rank() < n {
        return Err(Error::Singular);
    }
    let columns: Vec<Vec<Scalar>> = (0..n).map(|k| e.particular(k)).collect();
    Ok(Matrix::from_columns(n, &columns))
}

impl Solvable for Scalar {
    type Factor = Matrix<Scalar>;

    fn factor(m: &Matrix<Self>) -> Result<Self::Factor> {
        inverse(m)
    }

    fn solve_factored(f: &Self::Factor, b: &[Self]) -> Vec<Self> {
        f.mul_vec(b)
    }

    fn solve(m: &Matrix<Self>, b: &[Self]) -> Result<Vec<Self>> {
        if b.len() != m.rows() {
            return Err(Error::DimensionMismatch(m.rows(), b.len()));
        }
        let e = Echelon::reduce(m, &[b.to_vec()]);
        if !e.consistent(0) {
            return Err(Error::Inconsistent);
        }
        if e.rank() < m.cols() {
            return Err(Error::Singular);
        }
        Ok(e.particular(0))
    }

    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>> {
        Ok(Echelon::reduce(m, &[]).kernel())
    }

    fn is_invertible(m: &Matrix<Self>) -> bool {
        m.rows() == m.cols() && rank(m) == m.rows()
    }
}

fn split(m: &Matrix<DualScalar>) -> (Matrix<Scalar>, Matrix<Scalar>) {
    (m.map(|c| c.body.clone()), m.map(|c| c.slope.clone()))
}

fn join(body: Vec<Scalar>, slope: Vec<Scalar>) -> Vec<DualScalar> {
    body.into_iter()
        .zip(slope)
        .map(|(b, s)| DualScalar::new(b, s))
        .collect()
}

fn residual(b1: &[Scalar], m1: &Matrix<Scalar>, x0: &[Scalar]) -> Vec<Scalar> {
    b1.iter()
        .zip(m1.mul_vec(x0))
        .map(|(b, mx)| b.minus(&mx))
        .collect()
}

#[derive(Clone, Debug)]
pub struct DualFactor {
    body_inverse: Matrix<Scalar>,
    slope: Matrix<Scalar>,
}

impl Solvable for DualScalar {
    type Factor = DualFactor;

    fn factor(m: &Matrix<Self>) -> Result<Self::Factor> {
        let (m0, m1) = split(m);
        Ok(DualFactor {
            body_inverse: inverse(&m0)?,
            slope: m1,
        })
    }

    fn solve_factored(f: &Self::Factor, b: &[Self]) -> Vec<Self> {
        let b0: Vec<Scalar> = b.iter().map(|c| c.body.clone()).collect();
        let b1: Vec<Scalar> = b.iter().map(|c| c.slope.clone()).collect();
        let x0 = f.body_inverse.mul_vec(&b0);
        let x1 = f.body_inverse.mul_vec(&residual(&b1, &f.slope, &x0));
        join(x0, x1)
    }

    fn solve(m: &Matrix<Self>, b: &[Self]) -> Result<Vec<Self>> {
        if b.len() != m.rows() {
            return Err(Error::DimensionMismatch(m.rows(), b.len()));
        }
        let (m0, m1) = split(m);
        let b0: Vec<Scalar> = b.iter().map(|c| c.body.clone()).collect();
        let b1: Vec<Scalar> = b.iter().map(|c| c.slope.clone()).collect();
        let x0 = Scalar::solve(&m0, &b0)?;
        let x1 = Scalar::solve(&m0, &residual(&b1, &m1, &x0))?;
        Ok(join(x0, x1))
    }

    /// Lifts a kernel basis of `M₀`; fails with `Inconsistent` when some
    /// kernel vector does not extend, i.e. the kernel is not free of the same rank.
    fn kernel(m: &Matrix<Self>) -> Result<Vec<Vec<Self>>> {
        let (m0, m1) = split(m);
        let k0 = Scalar::kernel(&m0)?;
        lift_kernel(&m0, &m1, k0)
    }

    fn is_invertible(m: &Matrix<Self>) -> bool {
        m.rows() == m.cols() && rank(&m.map(|c| c.body.clone())) == m.rows()
    }
}

impl DualFactor {
    /// Assembles a factor from a known inverse of the body.
    pub fn from_parts(body_inverse: Matrix<Scalar>, slope: Matrix<Scalar>) -> Self {
        DualFactor {
            body_inverse,
            slope,
        }
    }
}

/// Extends each `k₀ ∈ ker M₀` to `k₀ + εk₁ ∈ ker(M₀ + εM₁)` by solving
/// `M₀k₁ = −M₁k₀`, all right-hand sides in one elimination.
pub fn lift_kernel(
    m0: &Matrix<Scalar>,
    m1: &Matrix<Scalar>,
    k0: Vec<Vec<Scalar>>,
) -> Result<Vec<Vec<DualScalar>>> {
    let rhs: Vec<Vec<Scalar>> = k0
        .iter()
        .map(|k| m1.mul_vec(k).iter().map(Ring::negated).collect())
        .collect();
    let e = Echelon::reduce(m0, &rhs);
    k0.into_iter()
        .enumerate()
        .map(|(idx, k)| {
            if !e.consistent(idx) {
                return Err(Error::Inconsistent);
            }
            Ok(join(k, e.particular(idx)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from(v)
    }

    fn d(b: i64, e: i64) -> DualScalar {
        DualScalar::new(s(b), s(e))
    }

    #[test]
    fn identity_and_scalar_solves() {
        let b = vec![s(3), Scalar::gaussian(1, 2)];
        assert_eq!(linear_solve(&Matrix::identity(2), &b).unwrap(), b);
        let m = Matrix::from_rows(vec![vec![s(2)]]);
        assert_eq!(linear_solve(&m, &[s(1)]).unwrap(), vec![Scalar::rational(1, 2)]);
    }

    #[test]
    fn dual_solve_inverts_body_first() {
        let m = Matrix::from_rows(vec![vec![d(1, 1)]]);
        assert_eq!(linear_solve(&m, &[d(1, 0)]).unwrap(), vec![d(1, -1)]);
    }

    #[test]
    fn singular_and_inconsistent() {
        let m = Matrix::from_rows(vec![vec![s(1), s(1)], vec![s(2), s(2)]]);
        assert_eq!(linear_solve(&m, &[s(1), s(2)]), Err(Error::Singular));
        assert_eq!(linear_solve(&m, &[s(1), s(3)]), Err(Error::Inconsistent));
        let dm = Matrix::from_rows(vec![vec![d(0, 1)]]);
        assert_eq!(linear_solve(&dm, &[d(1, 0)]), Err(Error::Inconsistent));
        assert_eq!(linear_solve(&dm, &[d(0, 1)]), Err(Error::Singular));
    }

    #[test]
    fn overdetermined_consistent_system() {
        let m = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(1)], vec![s(1), s(1)]]);
        assert_eq!(linear_solve(&m, &[s(2), s(3), s(5)]).unwrap(), vec![s(2), s(3)]);
        assert_eq!(linear_solve(&m, &[s(2), s(3), s(4)]), Err(Error::Inconsistent));
    }

    #[test]
    fn kernels() {
        let m = Matrix::from_rows(vec![vec![s(1), s(2), s(3)]]);
        let k = Scalar::kernel(&m).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Ring::is_zero));
        }
        // (1 + ε, ε) has a free rank-one kernel over the dual numbers.
        let dm = Matrix::from_rows(vec![vec![d(1, 1), d(0, 1)]]);
        let dk = DualScalar::kernel(&dm).unwrap();
        assert_eq!(dk.len(), 1);
        assert!(dm.mul_vec(&dk[0]).iter().all(Ring::is_zero));
        // ε·x = 0 has kernel of body rank one that does not lift freely.
        let bad = Matrix::from_rows(vec![vec![d(0, 1)]]);
        assert_eq!(DualScalar::kernel(&bad), Err(Error::Inconsistent));
    }

    #[test]
    fn dual_factor_matches_direct_solve() {
        let m = Matrix::from_rows(vec![vec![d(2, 1), d(1, 0)], vec![d(0, 3), d(1, -1)]]);
        let b = vec![d(1, 2), d(-1, 5)];
        let f = DualScalar::factor(&m).unwrap();
        let x = DualScalar::solve_factored(&f, &b);
        assert_eq!(x, linear_solve(&m, &b).unwrap());
        assert_eq!(m.mul_vec(&x), b);
    }
}
