use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction<F> {
    /// Reduced row-echelon form (same shape as the input).
    pub rref: Matrix<F>,
    pub rank: usize,
    /// Pivot column of each nonzero row of `rref`, increasing.
    pub pivots: Vec<usize>,
    /// Columns span the right null space.
    pub kernel_basis: Matrix<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, c: F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| F::from_i64(v)));
        }
        Matrix::new(r, c, data)
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix::new(r, cols, data)
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn column_vector(v: &[F]) -> Self {
        Matrix::new(v.len(), 1, v.to_vec())
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix::new(rows, cols, (0..rows * cols).map(|_| F::random(rng)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self[(i, j)] == if i == j { F::one() } else { F::zero() })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, c: F) -> Self {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|&x| x * c).collect())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Matrix<F>, c: F) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        if c.is_zero() {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(F::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn hstack(parts: &[&Matrix<F>]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                m.row_mut(i)[off..off + p.cols].copy_from_slice(p.row(i));
            }
            off += p.cols;
        }
        m
    }

    /// Horizontal concatenation with an explicit row count (for possibly empty input).
    pub fn hstack_rows(rows: usize, parts: &[&Matrix<F>]) -> Self {
        if parts.is_empty() {
            Self::zeros(rows, 0)
        } else {
            Self::hstack(parts)
        }
    }

    pub fn vstack(parts: &[&Matrix<F>]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix::new(rows, cols, data)
    }

    pub fn vstack_cols(cols: usize, parts: &[&Matrix<F>]) -> Self {
        if parts.is_empty() {
            Self::zeros(0, cols)
        } else {
            Self::vstack(parts)
        }
    }

    pub fn block_diag(parts: &[&Matrix<F>]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let cols = self.cols;
            self.data[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + block.cols]
                .copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            m.row_mut(i).copy_from_slice(&self.row(r0 + i)[c0..c0 + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix::new(idx.len(), self.cols, data)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix<F>) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        (0..self.rows).fold(F::zero(), |acc, i| acc + self[(i, i)])
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting in column order.
    pub fn reduce(&self) -> Reduction<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let kernel_basis = kernel_from_rref(&m, &pivots);
        Reduction { rref: m, rank, pivots, kernel_basis }
    }

    /// In-place reduced row-echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv().expect("pivot is nonzero");
            for j in c..cols {
                self.data[r * cols + j] *= inv;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f.is_zero() {
                    continue;
                }
                let (pivot_row, target_row) = if i < r {
                    let (a, b) = self.data.split_at_mut(r * cols);
                    (&b[c..cols], &mut a[i * cols + c..(i + 1) * cols])
                } else {
                    let (a, b) = self.data.split_at_mut(i * cols);
                    (&a[r * cols + c..(r + 1) * cols], &mut b[c..cols])
                };
                for (t, &pv) in target_row.iter_mut().zip(pivot_row) {
                    *t -= f * pv;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            self.transpose().rref_in_place().len()
        } else {
            self.clone().rref_in_place().len()
        }
    }

    /// Columns span the right null space.
    pub fn kernel(&self) -> Matrix<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        kernel_from_rref(&m, &pivots)
    }

    /// Basis of the column space, chosen among the columns of `self` (greedy, left to right).
    pub fn column_space(&self) -> Matrix<F> {
        let pivots = self.pivot_columns();
        self.select_columns(&pivots)
    }

    /// Indices of a greedy maximal independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.clone().rref_in_place()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pv = m[(c, c)];
            det *= pv;
            let inv = pv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m[(i, c)] * inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m[(c, j)];
                    m[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Solves `self * x = b`. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
        if self.rows != b.rows {
            return Err(Error::Contract(format!(
                "solve: coefficient matrix has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::hstack(&[self, b]);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(n, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug[(r, n + j)];
            }
        }
        Ok(Some(x))
    }

    /// Solves and panics on inconsistency; for systems consistent by construction.
    pub fn solve_consistent(&self, b: &Matrix<F>) -> Matrix<F> {
        self.solve(b)
            .expect("shapes agree")
            .expect("linear system is consistent by construction")
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::hstack(&[self, &Matrix::identity(n)]);
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> Option<Matrix<F>> {
        let t = self.transpose();
        let x = t.solve(&Matrix::identity(self.cols)).ok()??;
        Some(x.transpose())
    }

    /// Right inverse of a matrix with independent rows.
    pub fn right_inverse(&self) -> Option<Matrix<F>> {
        self.solve(&Matrix::identity(self.rows)).ok()?
    }

    /// Standard basis vectors completing the columns of `self` (assumed independent) to a basis.
    pub fn complement(&self) -> Matrix<F> {
        let d = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(d)]);
        let pivots = aug.pivot_columns();
        let extra: Vec<usize> = pivots.iter().filter(|&&p| p >= self.cols).map(|&p| p - self.cols).collect();
        Matrix::identity(d).select_columns(&extra)
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Matrix<F>) -> bool {
        assert_eq!(self.rows, other.rows);
        if other.cols == 0 {
            return true;
        }
        let r = self.rank();
        Matrix::hstack(&[self, other]).rank() == r
    }

    /// Basis of the intersection of two column spans.
    pub fn intersect(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let a = self.column_space();
        let b = other.column_space();
        if a.cols == 0 || b.cols == 0 {
            return Matrix::zeros(self.rows, 0);
        }
        let k = Matrix::hstack(&[&a, &b.scale(-F::one())]).kernel();
        let coeffs = k.block(0, 0, a.cols, k.cols);
        (&a * &coeffs).column_space()
    }

    /// Characteristic polynomial `det(x I - self)`, coefficients from degree 0 up (monic).
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square(), "characteristic polynomial of non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h[(m, m - 1)].inv().expect("nonzero pivot");
            for i in m + 1..n {
                let u = h[(i, m - 1)] * t;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h[(m, j)];
                    h[(i, j)] -= u * v;
                }
                for r in 0..n {
                    let v = h[(r, i)];
                    h[(r, m)] += u * v;
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<Vec<F>> = vec![vec![F::one()]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut pm = vec![F::zero(); m + 1];
            for (k, &c) in prev.iter().enumerate() {
                pm[k + 1] += c;
                pm[k] -= h[(m - 1, m - 1)] * c;
            }
            let mut t = F::one();
            for i in 1..m {
                t *= h[(m - i, m - i - 1)];
                let coef = t * h[(m - i - 1, m - 1)];
                if coef.is_zero() {
                    continue;
                }
                for (k, &c) in polys[m - i - 1].iter().enumerate() {
                    pm[k] -= coef * c;
                }
            }
            polys.push(pm);
        }
        polys.pop().expect("at least the constant polynomial")
    }

    /// Roots in the prime field of the characteristic polynomial, without multiplicity.
    pub fn eigenvalues(&self) -> Vec<F> {
        let cp = self.charpoly();
        F::elements().filter(|&x| eval_poly(&cp, x).is_zero()).collect()
    }

    /// Whether some power of the matrix vanishes.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        let mut rank = p.rank();
        loop {
            if rank == 0 {
                return true;
            }
            p = &p * self;
            let r = p.rank();
            if r == rank {
                return false;
            }
            rank = r;
        }
    }
}

pub fn eval_poly<F: Field>(coeffs: &[F], x: F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
}

fn kernel_from_rref<F: Field>(rref: &Matrix<F>, pivots: &[usize]) -> Matrix<F> {
    let n = rref.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k[(f, col)] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            k[(p, col)] = -rref[(r, f)];
        }
    }
    k
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        let n = rhs.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect())
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::new(self.rows, self.cols, self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect())
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|&a| -a).collect())
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}
