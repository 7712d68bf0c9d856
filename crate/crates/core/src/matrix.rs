//! Dense complex square matrices.
//!
//! Everything is complex even when the inputs are real. Eigenvalues come
//! from a Householder reduction to upper Hessenberg form followed by a
//! single-shift complex QR iteration with Wilkinson shifts; singular values
//! from one-sided (Hestenes) Jacobi, which diagonalizes `aᴴa` implicitly.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default cap on the dimension of a Kronecker product.
pub const DEFAULT_KRON_CAP: usize = 4096;

/// Deflation threshold for the QR iteration, relative to the neighbouring
/// diagonal entries.
const DEFLATION_RTOL: f64 = 1e-12;

/// Row-major `dim × dim` complex matrix with finite entries.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, found {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real rows. Panics on ragged or non-finite input,
    /// so it is meant for literals.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "ragged row");
            data.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::new(dim, data).expect("valid literal matrix")
    }

    /// Builds a matrix from complex rows, checking shape and finiteness.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = C64::new(v, 0.0);
        }
        m
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[i * dim + j] = C64::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius inner product `tr(selfᴴ · other)`.
    pub fn inner(&self, other: &Matrix) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `out = self · rhs`, reusing `out`'s allocation.
    pub fn mul_into(&self, rhs: &Matrix, out: &mut Matrix) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        if out.dim != n {
            *out = Matrix::zeros(n);
        }
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let dst = &mut out.data[i * n..(i + 1) * n];
            dst.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            for (k, &a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                for (d, &b) in dst.iter_mut().zip(rrow) {
                    *d += a * b;
                }
            }
        }
    }

    /// Column-major vectorization: entry `(i, j)` lands at `j·dim + i`.
    pub fn vec_col_major(&self) -> Vec<C64> {
        let n = self.dim;
        let mut v = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                v.push(self.data[i * n + j]);
            }
        }
        v
    }

    pub fn from_vec_col_major(dim: usize, v: &[C64]) -> Result<Self> {
        if v.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: v.len(),
            });
        }
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            for i in 0..dim {
                m.data[i * dim + j] = v[j * dim + i];
            }
        }
        Ok(m)
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let n = self.dim;
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Rows as nested vectors, mostly for serialization and debugging.
    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        self.mul_into(rhs, &mut out);
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Which submultiplicative norm the bound machinery uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Induced 2-norm (largest singular value).
    #[default]
    Spectral,
    /// Frobenius norm; cheaper, looser.
    Frobenius,
}

impl NormKind {
    pub fn eval(self, a: &Matrix) -> f64 {
        match self {
            NormKind::Spectral => op_norm(a),
            NormKind::Frobenius => a.frobenius_norm(),
        }
    }
}

/// Spectral norm: the largest singular value.
pub fn op_norm(a: &Matrix) -> f64 {
    let n = a.dim;
    let cols: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| a.data[i * n + j]).collect())
        .collect();
    jacobi_svd(cols, false)
        .singular_values
        .into_iter()
        .fold(0.0, f64::max)
}

/// Singular values and (optionally) right singular vectors of the matrix
/// whose columns are given.
pub(crate) struct Svd {
    pub singular_values: Vec<f64>,
    /// Column `j` is the right singular vector for `singular_values[j]`.
    pub right: Vec<Vec<C64>>,
}

/// One-sided Jacobi SVD. `cols` holds the columns of an `m × n` matrix.
pub(crate) fn jacobi_svd(mut cols: Vec<Vec<C64>>, want_vectors: bool) -> Svd {
    let n = cols.len();
    let mut v: Vec<Vec<C64>> = if want_vectors {
        (0..n)
            .map(|j| {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[j] = C64::new(1.0, 0.0);
                e
            })
            .collect()
    } else {
        Vec::new()
    };
    let sq = |c: &[C64]| c.iter().map(|z| z.norm_sqr()).sum::<f64>();

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = sq(&cols[p]);
                let beta = sq(&cols[q]);
                let gamma: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let pc = phase.conj();
                rotate_pair(&mut cols, p, q, c, s, pc);
                if want_vectors {
                    rotate_pair(&mut v, p, q, c, s, pc);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    Svd {
        singular_values: cols.iter().map(|c| sq(c).sqrt()).collect(),
        right: v,
    }
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase_conj: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let b = *y * phase_conj;
        let nx = *x * c - b * s;
        let ny = *x * s + b * c;
        *x = nx;
        *y = ny;
    }
}

/// Iteration cap for the QR eigenvalue solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// The solver gives up after `sweeps_per_dim2 · dim²` shifted QR steps.
    pub sweeps_per_dim2: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self { sweeps_per_dim2: 100 }
    }
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    spectral_radius_with(a, EigenOptions::default())
}

pub fn spectral_radius_with(a: &Matrix, opts: EigenOptions) -> Result<f64> {
    Ok(eigenvalues_with(a, opts)?
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    eigenvalues_with(a, EigenOptions::default())
}

pub fn eigenvalues_with(a: &Matrix, opts: EigenOptions) -> Result<Vec<C64>> {
    let n = a.dim;
    let mut h = a.data.clone();
    hessenberg_in_place(&mut h, n);
    qr_eigenvalues(&mut h, n, opts.sweeps_per_dim2.saturating_mul(n * n).max(1))
}

/// Householder reduction to upper Hessenberg form (similarity, in place).
fn hessenberg_in_place(h: &mut [C64], n: usize) {
    let zero = C64::new(0.0, 0.0);
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| h[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1) * n + k];
        let xnorm = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[i * n + k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H <- (I - 2vvᴴ/|v|²) H
        for j in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i) * n + j])
                .sum();
            let f = s * (2.0 / vnorm2);
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i) * n + j] -= f * vi;
            }
        }
        // H <- H (I - 2vvᴴ/|v|²)
        for i in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(l, vl)| h[i * n + k + 1 + l] * vl)
                .sum();
            let f = s * (2.0 / vnorm2);
            for (l, vl) in v.iter().enumerate() {
                h[i * n + k + 1 + l] -= f * vl.conj();
            }
        }
        h[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            h[i * n + k] = zero;
        }
    }
}

fn eig2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let m = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let s = disc.sqrt();
    let (l1, l2) = (m + s, m - s);
    let big = if l1.norm() >= l2.norm() { l1 } else { l2 };
    if big.norm() == 0.0 {
        return (big, big);
    }
    let det = a * d - b * c;
    (big, det / big)
}

fn qr_eigenvalues(h: &mut [C64], n: usize, cap: usize) -> Result<Vec<C64>> {
    let scale: f64 = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let abs_floor = f64::EPSILON * scale;
    let mut eig = Vec::with_capacity(n);
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let idx = |i: usize, j: usize| i * n + j;
    loop {
        if hi == 0 {
            eig.push(h[0]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let s = h[idx(l, l - 1)].norm();
            let d = h[idx(l, l)].norm() + h[idx(l - 1, l - 1)].norm();
            if s <= DEFLATION_RTOL * d || s <= abs_floor {
                h[idx(l, l - 1)] = C64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[idx(hi, hi)]);
            hi -= 1;
            its = 0;
            continue;
        }
        if l + 1 == hi {
            let (e1, e2) = eig2x2(
                h[idx(l, l)],
                h[idx(l, hi)],
                h[idx(hi, l)],
                h[idx(hi, hi)],
            );
            eig.push(e1);
            eig.push(e2);
            if l == 0 {
                break;
            }
            hi = l - 1;
            its = 0;
            continue;
        }
        total += 1;
        if total > cap {
            return Err(Error::NonConvergence { iterations: total - 1 });
        }
        its += 1;
        let shift = if its % 11 == 10 {
            h[idx(hi, hi)] + C64::new(0.75 * h[idx(hi, hi - 1)].norm(), 0.0)
        } else {
            let (e1, e2) = eig2x2(
                h[idx(hi - 1, hi - 1)],
                h[idx(hi - 1, hi)],
                h[idx(hi, hi - 1)],
                h[idx(hi, hi)],
            );
            let d = h[idx(hi, hi)];
            if (e1 - d).norm() <= (e2 - d).norm() {
                e1
            } else {
                e2
            }
        };
        qr_step(h, n, l, hi, shift);
    }
    Ok(eig)
}

/// One explicit shifted QR step on the active window `lo..=hi`.
fn qr_step(h: &mut [C64], n: usize, lo: usize, hi: usize, shift: C64) {
    let idx = |i: usize, j: usize| i * n + j;
    for k in lo..=hi {
        h[idx(k, k)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[idx(k, k)];
        let y = h[idx(k + 1, k)];
        let (c, s) = givens(x, y);
        for j in k..=hi {
            let a = h[idx(k, j)];
            let b = h[idx(k + 1, j)];
            h[idx(k, j)] = a * c + s * b;
            h[idx(k + 1, j)] = -s.conj() * a + b * c;
        }
        rots.push((c, s));
    }
    for (off, &(c, s)) in rots.iter().enumerate() {
        let k = lo + off;
        for i in lo..=(k + 2).min(hi) {
            let a = h[idx(i, k)];
            let b = h[idx(i, k + 1)];
            h[idx(i, k)] = a * c + b * s.conj();
            h[idx(i, k + 1)] = -a * s + b * c;
        }
    }
    for k in lo..=hi {
        h[idx(k, k)] += shift;
    }
}

/// Rotation `[c s; -s̄ c]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    let ax = x.norm();
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    kron_with_cap(a, b, DEFAULT_KRON_CAP)
}

/// Entry `(i·dim(b)+k, j·dim(b)+l)` of the result is `a[i,j]·b[k,l]`.
pub fn kron_with_cap(a: &Matrix, b: &Matrix, cap: usize) -> Result<Matrix> {
    let (p, q) = (a.dim, b.dim);
    let dim = p
        .checked_mul(q)
        .filter(|&d| d <= cap)
        .ok_or(Error::DimensionOverflow {
            dim: p.saturating_mul(q),
            cap,
        })?;
    let mut out = Matrix::zeros(dim);
    for i in 0..p {
        for j in 0..p {
            let aij = a.data[i * p + j];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..q {
                for l in 0..q {
                    out.data[(i * q + k) * dim + j * q + l] = aij * b.data[k * q + l];
                }
            }
        }
    }
    Ok(out)
}
