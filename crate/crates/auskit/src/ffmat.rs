//! Dense linear algebra over prime fields.
//!
//! Vectors are `Vec<u32>` with entries reduced modulo `p`; matrices act on
//! column vectors. A [`Subspace`] stores its basis in reduced row echelon form,
//! which makes equality and hashing exact.

use crate::{Error, Result};
use std::fmt;

/// Largest accepted modulus.
pub const MAX_P: u32 = 251;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn check_field(p: u32) -> Result<()> {
    if is_prime(p) && p <= MAX_P {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{p} is not a supported prime modulus")))
    }
}

#[inline]
pub fn add(p: u32, a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(p: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(p: u32, a: u32, b: u32) -> u32 {
    a * b % p
}

#[inline]
pub fn neg(p: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(p: u32, mut a: u32, mut e: u64) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(p, r, a);
        }
        a = mul(p, a, a);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(p: u32, a: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero");
    pow(p, a, (p - 2) as u64)
}

/// Reduce a signed integer into `0..p`.
pub fn reduce(p: u32, v: i64) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[F{}; {}x{}]", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// The solution set `{x : a·x = b}` as particular solution plus kernel.
#[derive(Clone, Debug)]
pub struct Solution {
    /// `a.cols × b.cols`.
    pub particular: Mat,
    /// Rows form a basis of the kernel of `a`.
    pub kernel: Mat,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Build from signed rows; every row must have `cols` entries.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<i64>]) -> Result<Mat> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r.iter().map(|&v| reduce(p, v)));
        }
        Ok(Mat { p, rows: rows.len(), cols, data })
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p));
        Mat { p, rows, cols, data }
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { p, rows: rows.len(), cols, data }
    }

    pub fn column(v: &[u32], p: u32) -> Mat {
        Mat { p, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.p, self.rows)
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let mut out = vec![0u32; self.rows * o.cols];
        let mut acc = vec![0u64; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                for (j, &b) in orow.iter().enumerate() {
                    acc[j] += a * b as u64;
                }
                // keep the accumulator bounded for long inner dimensions
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for j in 0..o.cols {
                out[i * o.cols + j] = (acc[j] % p) as u32;
            }
        }
        Mat { p: self.p, rows: self.rows, cols: o.cols, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "matrix sum shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| add(p, a, b)).collect();
        Mat { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!(self.shape(), o.shape(), "matrix difference shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| sub(p, a, b)).collect();
        Mat { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| neg(p, a)).collect() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p;
        let c = c % p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul(p, a, c)).collect() }
    }

    /// `self + c·o`.
    pub fn axpy(&self, c: u32, o: &Mat) -> Mat {
        self.add(&o.scale(c))
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut r = Mat::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |t, i| add(self.p, t, self.get(i, i)))
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(p: u32, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            m.put(0, off, b);
            off += b.cols;
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(p: u32, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Mat { p, rows, cols, data }
    }

    pub fn block_diag(p: u32, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(p, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.put(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Copy `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Mat::zeros(self.p, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Reduced row echelon form with pivot columns.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.data[i * m.cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let iv = inv(p, m.data[r * m.cols + c]);
            if iv != 1 {
                for j in c..m.cols {
                    let v = &mut m.data[r * m.cols + j];
                    *v = mul(p, *v, iv);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.data[i * m.cols + c];
                if f == 0 {
                    continue;
                }
                let (lo, hi) = if i < r { (i, r) } else { (r, i) };
                let (a, b) = m.data.split_at_mut(hi * m.cols);
                let (row_i, row_r) = if i < r {
                    (&mut a[lo * m.cols..(lo + 1) * m.cols], &b[..m.cols])
                } else {
                    (&mut b[..m.cols], &a[lo * m.cols..(lo + 1) * m.cols] as &[u32])
                };
                for j in c..m.cols {
                    row_i[j] = sub(p, row_i[j], mul(p, f, row_r[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self·x = 0}`, one vector per row, in free-column order.
    pub fn kernel(&self) -> Mat {
        let rr = self.rref();
        kernel_from_rref(&rr, self.cols)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.p, n, &[self, &Mat::identity(self.p, n)]);
        let rr = aug.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rr.mat.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Row space as a subspace of `F_p^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rref(self.rref(), self.cols)
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }
}

fn kernel_from_rref(rr: &Rref, cols: usize) -> Mat {
    let p = rr.mat.p;
    let mut is_pivot = vec![false; cols];
    for &c in &rr.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Mat::zeros(p, free.len(), cols);
    for (i, &f) in free.iter().enumerate() {
        k.data[i * cols + f] = 1 % p;
        for (r, &pc) in rr.pivots.iter().enumerate() {
            k.data[i * cols + pc] = neg(p, rr.mat.get(r, f));
        }
    }
    k
}

/// Free (non-pivot) columns of a reduced matrix.
pub fn free_columns(rr: &Rref, cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in &rr.pivots {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// All `x` with `a·x = b`; `None` when inconsistent.
pub fn solve_all(a: &Mat, b: &Mat) -> Result<Option<Solution>> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!("solve_all: a has {} rows, b has {}", a.rows, b.rows)));
    }
    let n = a.cols;
    let aug = Mat::hstack(a.p, a.rows, &[a, b]);
    let rr = aug.rref();
    if rr.pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut part = Mat::zeros(a.p, n, b.cols);
    for (r, &pc) in rr.pivots.iter().enumerate() {
        for j in 0..b.cols {
            part.data[pc * b.cols + j] = rr.mat.get(r, n + j);
        }
    }
    // the kernel of a reads off the left block of the same reduction
    let left = Rref { mat: rr.mat.block(0, rr.mat.rows, 0, n), rank: rr.rank, pivots: rr.pivots.clone() };
    Ok(Some(Solution { particular: part, kernel: kernel_from_rref(&left, n) }))
}

/// Lexicographically smallest solution of `a·x = b` (single column), if any.
///
/// Reducing any particular solution against the RREF kernel basis zeroes the
/// kernel pivots, which is exactly the lexicographic minimum.
pub fn lex_min_solution(a: &Mat, b: &[u32]) -> Option<Vec<u32>> {
    let sol = solve_all(a, &Mat::column(b, a.p)).ok()??;
    let ker = sol.kernel.row_space();
    Some(ker.reduce(&sol.particular.col(0)))
}

/// A subspace of `F_p^n` held as its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis.row_vecs())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Dimension first, then lexicographic on the RREF rows.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.dim(), &self.basis.data).cmp(&(other.ambient, other.dim(), &other.basis.data))
    }
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Mat::zeros(p, 0, n), pivots: vec![] }
    }

    pub fn full(p: u32, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Mat::identity(p, n), pivots: (0..n).collect() }
    }

    fn from_rref(rr: Rref, n: usize) -> Subspace {
        let basis = rr.mat.block(0, rr.rank, 0, n);
        Subspace { ambient: n, basis, pivots: rr.pivots }
    }

    /// Span of the given vectors.
    pub fn span(p: u32, n: usize, vecs: &[Vec<u32>]) -> Subspace {
        Mat::from_row_vecs(p, n, vecs).row_space()
    }

    /// Build from a matrix already in RREF without zero rows. Fails if not canonical.
    pub fn from_basis(basis: Mat) -> Result<Subspace> {
        let rr = basis.rref();
        if rr.rank != basis.rows || rr.mat != basis {
            return Err(Error::Invalid("basis is not in reduced row echelon form".into()));
        }
        let n = basis.cols;
        Ok(Subspace::from_rref(rr, n))
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vecs(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient || self.p() != o.p() {
            return Err(Error::Dimension(format!("ambient mismatch: {} vs {}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                for (x, &b) in w.iter_mut().zip(self.basis.row(r)) {
                    *x = sub(p, *x, mul(p, c, b));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.dim() <= self.dim() && (0..o.dim()).all(|r| self.contains(o.basis.row(r)))
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let mut w = vec![0; self.ambient];
        for (r, &ci) in c.iter().enumerate() {
            for (x, &b) in w.iter_mut().zip(self.basis.row(r)) {
                *x = add(self.p(), *x, mul(self.p(), ci, b));
            }
        }
        (w == v).then_some(c)
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        Ok(Mat::vstack(self.p(), self.ambient, &[&self.basis, &o.basis]).row_space())
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let p = self.p();
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(p, self.ambient));
        }
        // x·U = y·V  <=>  [x, -y] lies in the left kernel of [U; V]
        let stacked = Mat::vstack(p, self.ambient, &[&self.basis, &o.basis]);
        let lk = stacked.transpose().kernel();
        let coeffs = lk.block(0, lk.rows, 0, self.dim());
        Ok(coeffs.mul(&self.basis).row_space())
    }

    /// Image under `x ↦ m·x`.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols, self.ambient);
        m.mul(&self.basis.transpose()).column_space()
    }

    /// Whether `m·U ⊆ U`.
    pub fn is_invariant(&self, m: &Mat) -> bool {
        (0..self.dim()).all(|r| self.contains(&m.mul_vec(self.basis.row(r))))
    }

    /// Projection onto a complement: returns `(section, projection)` where
    /// `projection: F^n → F^{n-d}` has kernel `self` and `section` picks the
    /// standard vectors at the non-pivot columns.
    pub fn quotient_map(&self) -> (Mat, Mat) {
        let p = self.p();
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let q = free.len();
        let mut sigma = Mat::zeros(p, n, q);
        for (j, &f) in free.iter().enumerate() {
            sigma.set(f, j, 1);
        }
        let mut pi = Mat::zeros(p, q, n);
        for (j, &f) in free.iter().enumerate() {
            pi.set(j, f, 1);
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            for (j, &f) in free.iter().enumerate() {
                pi.set(j, pc, neg(p, self.basis.get(r, f)));
            }
        }
        (sigma, pi)
    }
}

/// Gaussian binomial coefficient `(n choose k)_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(n: usize, q: u128) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// Every subspace of `F_p^n`, each once, ordered by dimension then RREF.
pub fn enumerate_subspaces(p: u32, n: usize, cap: u128) -> Result<Vec<Subspace>> {
    let total = subspace_count(n, p as u128);
    if total > cap {
        return Err(Error::CapExceeded { what: format!("subspaces of F_{p}^{n}"), needed: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: right of the own pivot, not in a pivot column
            let mut slots = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        slots.push((r, c));
                    }
                }
            }
            let count = (p as u64).pow(slots.len() as u32);
            for code in 0..count {
                let mut m = Mat::zeros(p, k, n);
                for (r, &pc) in pivots.iter().enumerate() {
                    m.set(r, pc, 1);
                }
                let mut x = code;
                for &(r, c) in slots.iter().rev() {
                    m.set(r, c, (x % p as u64) as u32);
                    x /= p as u64;
                }
                out.push(Subspace { ambient: n, basis: m, pivots: pivots.clone() });
            }
        }
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All vectors of `F_p^n` with first nonzero entry 1 (projective points).
pub fn projective_points(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(n as u32);
    (1..total).filter_map(move |code| {
        let mut v = vec![0u32; n];
        let mut x = code;
        for i in (0..n).rev() {
            v[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        (v.iter().find(|&&c| c != 0) == Some(&1)).then_some(v)
    })
}

/// Incrementally maintained echelon basis, for fast span-closure loops.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    n: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(p: u32, n: usize) -> Echelon {
        Echelon { p, n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = sub(p, *x, mul(p, c, b));
                }
            }
        }
    }

    /// Insert `v`; returns the reduced vector if it was new.
    pub fn insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let pc = w.iter().position(|&x| x != 0)?;
        let iv = inv(self.p, w[pc]);
        for x in w.iter_mut() {
            *x = mul(self.p, *x, iv);
        }
        self.rows.push((pc, w.clone()));
        Some(w)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn to_subspace(&self) -> Subspace {
        let vecs: Vec<Vec<u32>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        Subspace::span(self.p, self.n, &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, cols: usize, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(p, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let i = Mat::identity(2, 3);
        let r = i.rref();
        assert_eq!(r.mat, i);
        assert_eq!(r.rank, 3);
        let z = Mat::zeros(2, 2, 4);
        assert_eq!(z.rref().rank, 0);
        assert!(z.rref().mat.is_zero());
    }

    #[test]
    fn rref_all_ones() {
        let a = m(2, 2, &[&[1, 1], &[1, 1]]);
        let r = a.rref();
        assert_eq!(r.mat, m(2, 2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.mat.rref().mat, r.mat);
    }

    #[test]
    fn solve_single_equation() {
        let a = m(2, 2, &[&[1, 1]]);
        let b = m(2, 1, &[&[1]]);
        let s = solve_all(&a, &b).unwrap().unwrap();
        assert_eq!(s.particular.col(0), vec![1, 0]);
        assert_eq!(s.kernel.row_vecs(), vec![vec![1, 1]]);
        // brute force over F_2^2
        let sols: Vec<_> = (0..4u32)
            .map(|c| vec![c >> 1 & 1, c & 1])
            .filter(|x| (x[0] + x[1]) % 2 == 1)
            .collect();
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn solve_identity_and_zero() {
        let a = Mat::identity(5, 3);
        let b = m(5, 1, &[&[4], &[2], &[0]]);
        let s = solve_all(&a, &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert_eq!(s.kernel.rows(), 0);
        let z = Mat::zeros(3, 2, 3);
        let s = solve_all(&z, &Mat::zeros(3, 2, 1)).unwrap().unwrap();
        assert_eq!(s.kernel.rows(), 3);
        assert!(solve_all(&z, &m(3, 1, &[&[1], &[0]])).unwrap().is_none());
        assert!(solve_all(&z, &Mat::zeros(3, 3, 1)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, 2, &[&[1, 2], &[0, 1]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        assert!(m(3, 2, &[&[1, 2], &[2, 1]]).inverse().is_none());
    }

    #[test]
    fn subspace_lines_in_plane() {
        let u = Subspace::span(2, 2, &[vec![1, 0]]);
        let v = Subspace::span(2, 2, &[vec![1, 1]]);
        assert!(u.intersect(&v).unwrap().is_zero());
        assert!(u.sum(&v).unwrap().is_full());
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.sum(&u).unwrap(), u);
        let full = Subspace::full(2, 2);
        assert_eq!(u.intersect(&full).unwrap(), u);
        assert_eq!(u.sum(&full).unwrap(), full);
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(2, 1, 100).unwrap().len(), 2);
        assert_eq!(enumerate_subspaces(2, 2, 100).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(2, 4, 100).unwrap().len(), 67);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert!(enumerate_subspaces(2, 4, 10).is_err());
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let u = Subspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let (sigma, pi) = u.quotient_map();
        for v in u.basis_vecs() {
            assert!(pi.mul_vec(&v).iter().all(|&x| x == 0));
        }
        assert!(pi.mul(&sigma).is_identity());
    }

    #[test]
    fn lex_min() {
        let a = m(2, 3, &[&[1, 1, 1]]);
        assert_eq!(lex_min_solution(&a, &[1]).unwrap(), vec![0, 0, 1]);
        assert_eq!(lex_min_solution(&a, &[0]).unwrap(), vec![0, 0, 0]);
    }
}
