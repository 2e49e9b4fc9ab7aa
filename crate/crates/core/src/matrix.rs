//! Dense matrices over any [`Ring`], plus exact linear algebra over the
//! coefficient field and the graded series inverse used for polynomial and
//! bipartite matrices.

use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{AlgebraError, NotInvertibleReason, NotPolyInvertible};
use crate::ring::{GradedRing, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Square matrix of exact scalars.
pub type ScalarMatrix = Matrix<Coefficient>;

impl<R: Ring> Matrix<R> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl FnMut(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, R::plus)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip(other, R::minus)
    }

    fn zip(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.times(b);
                    let slot = out.get_mut(i, j);
                    *slot = slot.plus(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(R::negate)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.times(other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Assembles a block matrix; blocks in a row share a height and blocks
    /// in a column share a width.
    pub fn from_blocks(blocks: &[Vec<Self>]) -> Self {
        let heights: Vec<usize> = blocks.iter().map(|r| r.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = blocks.first().map_or(Vec::new(), |r| r.iter().map(|b| b.cols).collect());
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (row, &h) in blocks.iter().zip(&heights) {
            assert_eq!(row.len(), widths.len(), "ragged block grid");
            let mut c0 = 0;
            for (block, &w) in row.iter().zip(&widths) {
                assert_eq!((block.rows, block.cols), (h, w), "mismatched block sizes");
                for i in 0..h {
                    for j in 0..w {
                        out.set(r0 + i, c0 + j, block.get(i, j).clone());
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    /// The `h x w` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut out = Self::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }
}

impl ScalarMatrix {
    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.axpy_row(r, col, &factor);
                inv.axpy_row(r, col, &factor);
            }
        }
        Some(inv)
    }

    /// Solves the row system `x · self = b`; `None` when singular.
    pub fn solve_left(&self, b: &[Coefficient]) -> Option<Vec<Coefficient>> {
        assert!(self.is_square() && b.len() == self.rows);
        let n = self.rows;
        // x M = b  <=>  M^T x^T = b^T
        let mut a = self.transpose();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                rhs.swap(pivot, col);
            }
            let p = a.get(col, col).inv().expect("nonzero pivot");
            a.scale_row(col, &p);
            rhs[col] = &rhs[col] * &p;
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.axpy_row(r, col, &factor);
                let delta = &factor * &rhs[col];
                rhs[r] = &rhs[r] - &delta;
            }
        }
        Some(rhs)
    }

    pub fn determinant(&self) -> Coefficient {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Coefficient::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Coefficient::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &pinv;
                a.axpy_row(r, col, &factor);
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Coefficient) {
        for j in 0..self.cols {
            let v = self.get(r, j) * c;
            self.set(r, j, v);
        }
    }

    /// row[r] -= factor * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, factor: &Coefficient) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, j) - &(factor * s);
            self.set(r, j, v);
        }
    }
}

impl<R: GradedRing> Matrix<R> {
    /// The scalar matrix of constant terms, `M(0)`.
    pub fn constant_part(&self) -> ScalarMatrix {
        self.map(R::constant)
    }

    /// Maximum entry degree, `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.data.iter().filter_map(R::degree).max()
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        self.map(|e| e.homogeneous(d))
    }

    pub fn term_count(&self) -> usize {
        self.data.iter().map(R::term_count).sum()
    }
}

/// Options for [`series_inverse`].
#[derive(Clone, Copy, Debug)]
pub struct SeriesInverseLimits {
    /// Largest inverse degree searched.
    pub degree_cap: usize,
    /// Abort once a single homogeneous component carries more terms.
    pub term_budget: usize,
}

impl SeriesInverseLimits {
    pub fn with_cap(degree_cap: usize) -> Self {
        SeriesInverseLimits {
            degree_cap,
            term_budget: 200_000,
        }
    }
}

/// Inverse of a square graded matrix as a terminating geometric series,
/// checked exactly on both sides.
///
/// Writes `M = M(0)(I - A)` with `A` free of constants and accumulates the
/// homogeneous components `R_d = Σ_e A_e R_{d-e}` of `(I - A)^{-1} M(0)^{-1}`.
/// Since `R_d` only looks back `deg A` steps, a run of `deg A` zero
/// components proves every later component vanishes.
pub fn series_inverse<R: GradedRing>(
    m: &Matrix<R>,
    limits: SeriesInverseLimits,
) -> Result<Matrix<R>, NotPolyInvertible> {
    assert!(m.is_square(), "series inverse of a non-square matrix");
    let n = m.rows();
    let fail = |reason| NotPolyInvertible { reason };
    let c = m
        .constant_part()
        .inverse()
        .ok_or(fail(NotInvertibleReason::SingularConstantTerm))?;
    let c_ring: Matrix<R> = c.map(|x| R::from_scalar(x.clone()));
    let without_constants = m.sub(&m.constant_part().map(|x| R::from_scalar(x.clone()))).expect("same shape");
    let a = c_ring.mul(&without_constants).expect("same shape").neg();

    let Some(deg_a) = a.degree() else {
        return Ok(c_ring);
    };
    let a_parts: Vec<Matrix<R>> = (0..=deg_a).map(|e| a.homogeneous(e)).collect();

    let mut parts: Vec<Matrix<R>> = vec![c_ring];
    let mut zero_run = 0usize;
    let last = limits.degree_cap + deg_a;
    for d in 1..=last {
        let mut rd = Matrix::<R>::zeros(n, n);
        for e in 1..=deg_a.min(d) {
            if a_parts[e].is_zero() || parts[d - e].is_zero() {
                continue;
            }
            rd = rd.add(&a_parts[e].mul(&parts[d - e]).expect("square")).expect("square");
        }
        if rd.term_count() > limits.term_budget {
            return Err(fail(NotInvertibleReason::BudgetExhausted));
        }
        zero_run = if rd.is_zero() { zero_run + 1 } else { 0 };
        parts.push(rd);
        if zero_run == deg_a {
            let candidate = parts
                .iter()
                .fold(Matrix::<R>::zeros(n, n), |acc, p| acc.add(p).expect("square"));
            let id = Matrix::<R>::identity(n);
            let left = m.mul(&candidate).expect("square");
            let right = candidate.mul(m).expect("square");
            if left == id && right == id {
                return Ok(candidate);
            }
            return Err(fail(NotInvertibleReason::CapExhausted));
        }
    }
    Err(fail(NotInvertibleReason::CapExhausted))
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
