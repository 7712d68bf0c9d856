//! Finite-dimensional matrix algebras: generated subalgebras, ideals,
//! the Jacobson radical, quotients and the radical-invariance checks.
//!
//! An [`FdAlgebra`] keeps a basis of `d × d` matrices that is orthonormal
//! for the Frobenius inner product, so coefficient vectors carry the same
//! geometry as the matrices they stand for. Ideals are subspaces of the
//! coefficient space `Cⁿ`, and quotients are represented on the orthogonal
//! complement of the ideal. Two consequences are used below: for ideals
//! `J ⊆ K` the representation of `A/K` is a compression of the one of `A/J`,
//! so every product norm can only shrink along a chain; and spectra of the
//! representation are spectra in the quotient (plus possibly `0`).

use serde::Serialize;

use crate::bounds::{interval_distance, refine_with, BoundsReport, RefineOptions};
use crate::error::{Error, Result};
use crate::matrix::{jacobi_svd, Matrix, C64};
use crate::set::{Enumerator, MatrixSet, ProductWord};

/// Rank tolerance for basis construction, relative to the candidate norm.
const RANK_RTOL: f64 = 1e-9;
/// Residual tolerance for closure, membership and ideal checks.
const RESIDUAL_TOL: f64 = 1e-9;
/// Relative singular-value threshold for the trace-form null space.
const NULL_RTOL: f64 = 1e-8;
/// Required separation, as a ratio, between kept and discarded singular
/// values around the threshold.
const SPECTRAL_GAP: f64 = 1e3;
/// Spectral radius above which a product counts as non-nilpotent evidence.
const WITNESS_RHO: f64 = 1e-8;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of a growing subspace of `C^len`.
#[derive(Clone, Debug)]
struct Span {
    len: usize,
    basis: Vec<Vec<C64>>,
}

impl Span {
    fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    /// Removes the component inside the span (two Gram–Schmidt passes).
    fn project_out(&self, v: &mut [C64]) {
        for _ in 0..2 {
            for q in &self.basis {
                let h = dot(q, v);
                v.iter_mut().zip(q).for_each(|(x, qi)| *x -= h * qi);
            }
        }
    }

    fn residual(&self, v: &[C64]) -> f64 {
        let mut w = v.to_vec();
        self.project_out(&mut w);
        norm(&w)
    }

    /// Adds `v` if its component outside the span exceeds `tol`.
    fn insert(&mut self, v: &[C64], tol: f64) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.project_out(&mut w);
        let n = norm(&w);
        if n <= tol || n == 0.0 {
            return false;
        }
        w.iter_mut().for_each(|x| *x /= n);
        self.basis.push(w);
        true
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn unit_vector(len: usize, i: usize) -> Vec<C64> {
    let mut e = vec![zero(); len];
    e[i] = C64::new(1.0, 0.0);
    e
}

/// Subalgebra of `d × d` matrices with a Frobenius-orthonormal basis and
/// structure constants `b_i·b_j = Σ_k c[i][j][k]·b_k`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    ambient_dim: usize,
    basis: Vec<Matrix>,
    structure: Vec<C64>,
    unit: Option<Vec<C64>>,
    scale: f64,
}

impl FdAlgebra {
    /// Builds the algebra spanned by `basis`, which must be linearly
    /// independent and closed under multiplication. The stored basis is an
    /// orthonormalization of the input.
    pub fn from_basis(ambient_dim: usize, basis: &[Matrix]) -> Result<Self> {
        let mut span = Span::new(ambient_dim * ambient_dim);
        for (index, m) in basis.iter().enumerate() {
            if m.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: m.dim(),
                });
            }
            let v = m.data();
            if !span.insert(v, RANK_RTOL * norm(v)) {
                return Err(Error::LinearlyDependent { index });
            }
        }
        Self::from_span(ambient_dim, span)
    }

    fn from_span(ambient_dim: usize, span: Span) -> Result<Self> {
        let basis: Vec<Matrix> = span
            .basis
            .into_iter()
            .map(|v| Matrix::new(ambient_dim, v).expect("finite orthonormal vector"))
            .collect();
        let n = basis.len();
        let mut structure = vec![zero(); n * n * n];
        let mut scale: f64 = 0.0;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let p = &basis[i] * &basis[j];
                let pn = p.frobenius_norm();
                scale = scale.max(pn);
                let mut rebuilt = Matrix::zeros(ambient_dim);
                for (k, b) in basis.iter().enumerate() {
                    let c = b.inner(&p);
                    structure[(i * n + j) * n + k] = c;
                    rebuilt = &rebuilt + &b.scale(c);
                }
                worst = worst.max((&p - &rebuilt).frobenius_norm() / pn.max(1.0));
            }
        }
        if worst > RESIDUAL_TOL {
            return Err(Error::NotClosed { residual: worst });
        }
        let mut alg = Self {
            ambient_dim,
            basis,
            structure,
            unit: None,
            scale: scale.max(1.0),
        };
        alg.unit = alg.find_unit();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> C64 {
        let n = self.dim();
        self.structure[(i * n + j) * n + k]
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// Coefficients of the multiplicative identity, when there is one.
    pub fn unit(&self) -> Option<&[C64]> {
        self.unit.as_deref()
    }

    fn tol(&self) -> f64 {
        RESIDUAL_TOL * self.scale
    }

    /// Coefficients of `m` in the basis.
    pub fn coordinates(&self, m: &Matrix) -> Result<Vec<C64>> {
        if m.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.dim(),
            });
        }
        let coeffs: Vec<C64> = self.basis.iter().map(|b| b.inner(m)).collect();
        let residual = (m - &self.element(&coeffs)).frobenius_norm();
        if residual > RESIDUAL_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(coeffs)
    }

    pub fn element(&self, coeffs: &[C64]) -> Matrix {
        let mut m = Matrix::zeros(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c != zero() {
                m = &m + &b.scale(*c);
            }
        }
        m
    }

    /// Product of two elements given by coefficients.
    pub fn multiply(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut out = vec![zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if *xi == zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let f = xi * yj;
                if f == zero() {
                    continue;
                }
                let row = &self.structure[(i * n + j) * n..(i * n + j + 1) * n];
                out.iter_mut().zip(row).for_each(|(o, c)| *o += f * c);
            }
        }
        out
    }

    fn find_unit(&self) -> Option<Vec<C64>> {
        let n = self.dim();
        if n == 0 {
            return None;
        }
        // e·b_j = b_j and b_j·e = b_j, stacked as a least-squares system
        let rows = 2 * n * n;
        let mut rhs = vec![zero(); rows];
        for j in 0..n {
            rhs[j * n + j] = C64::new(1.0, 0.0);
            rhs[n * n + j * n + j] = C64::new(1.0, 0.0);
        }
        let cols: Vec<Vec<C64>> = (0..n)
            .map(|i| {
                let mut col = vec![zero(); rows];
                for j in 0..n {
                    for k in 0..n {
                        col[j * n + k] = self.structure_constant(i, j, k);
                        col[n * n + j * n + k] = self.structure_constant(j, i, k);
                    }
                }
                col
            })
            .collect();
        let svd = jacobi_svd(cols.clone(), true);
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        if smax == 0.0 {
            return None;
        }
        let mut e = vec![zero(); n];
        for (s, v) in svd.singular_values.iter().zip(&svd.right) {
            if *s <= NULL_RTOL * smax {
                continue;
            }
            // u = K·v / s
            let mut kv = vec![zero(); rows];
            for (vi, col) in v.iter().zip(&cols) {
                kv.iter_mut().zip(col).for_each(|(o, c)| *o += vi * c);
            }
            let coef = dot(&kv, &rhs) / (s * s);
            e.iter_mut().zip(v).for_each(|(o, vi)| *o += coef * vi);
        }
        let mut residual: f64 = 0.0;
        for j in 0..n {
            let ej = unit_vector(n, j);
            let l = self.multiply(&e, &ej);
            let r = self.multiply(&ej, &e);
            for k in 0..n {
                residual = residual.max((l[k] - ej[k]).norm()).max((r[k] - ej[k]).norm());
            }
        }
        (residual <= 1e-8).then_some(e)
    }

    /// Gram matrix of the trace form, `G[i][j] = tr(b_i·b_j)`.
    pub fn trace_form(&self) -> Vec<Vec<C64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| (&self.basis[i] * &self.basis[j]).trace()).collect())
            .collect()
    }
}

/// Smallest subalgebra containing the generators: seed with `M`, then adjoin
/// products of basis elements until the span stops growing.
pub fn generated_subalgebra(set: &MatrixSet, max_dim: usize) -> Result<FdAlgebra> {
    let d = set.dim();
    let mut span = Span::new(d * d);
    for g in set.generators() {
        let v = g.data();
        span.insert(v, RANK_RTOL * norm(v));
        if span.dim() > max_dim {
            return Err(Error::DimensionCap { cap: max_dim });
        }
    }
    let mut done = 0;
    while done < span.dim() {
        let n = span.dim();
        let mats: Vec<Matrix> = span
            .basis
            .iter()
            .map(|v| Matrix::new(d, v.clone()).expect("finite"))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i < done && j < done {
                    continue;
                }
                // basis elements have unit Frobenius norm, so products are
                // compared against an absolute threshold
                let p = &mats[i] * &mats[j];
                span.insert(p.data(), RANK_RTOL);
                if span.dim() > max_dim {
                    return Err(Error::DimensionCap { cap: max_dim });
                }
            }
        }
        done = n;
    }
    FdAlgebra::from_span(d, span)
}

/// Two-sided ideal, as an orthonormal basis of coefficient vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    parent_dim: usize,
    basis: Vec<Vec<C64>>,
}

impl Ideal {
    pub fn zero(parent: &FdAlgebra) -> Self {
        Self {
            parent_dim: parent.dim(),
            basis: Vec::new(),
        }
    }

    pub fn whole(parent: &FdAlgebra) -> Self {
        let n = parent.dim();
        Self {
            parent_dim: n,
            basis: (0..n).map(|i| unit_vector(n, i)).collect(),
        }
    }

    /// The span of `vectors`, which must already be a two-sided ideal.
    pub fn from_span(parent: &FdAlgebra, vectors: &[Vec<C64>]) -> Result<Self> {
        let mut span = Span::new(parent.dim());
        for v in vectors {
            span.insert(v, RANK_RTOL * norm(v));
        }
        let ideal = Self {
            parent_dim: parent.dim(),
            basis: span.basis,
        };
        let residual = ideal.two_sided_residual(parent);
        if residual > parent.tol() {
            return Err(Error::NotAnIdeal { residual });
        }
        Ok(ideal)
    }

    /// Ideal of `A¹` generated by `elements`: the span of `x`, `a·x`, `x·b`
    /// and `a·x·b`.
    pub fn generated_by(parent: &FdAlgebra, elements: &[Vec<C64>]) -> Self {
        let n = parent.dim();
        let mut span = Span::new(n);
        for v in elements {
            span.insert(v, RANK_RTOL * norm(v));
        }
        let tol = parent.tol();
        let mut next = 0;
        while next < span.dim() {
            let v = span.basis[next].clone();
            for i in 0..n {
                let e = unit_vector(n, i);
                span.insert(&parent.multiply(&e, &v), tol);
                span.insert(&parent.multiply(&v, &e), tol);
            }
            next += 1;
        }
        Self {
            parent_dim: n,
            basis: span.basis,
        }
    }

    /// Ideal generated by ambient matrices that lie in the algebra.
    pub fn generated_by_matrices(parent: &FdAlgebra, elements: &[Matrix]) -> Result<Self> {
        let coords = elements
            .iter()
            .map(|m| parent.coordinates(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by(parent, &coords))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Basis elements as ambient matrices.
    pub fn matrices(&self, parent: &FdAlgebra) -> Vec<Matrix> {
        self.basis.iter().map(|v| parent.element(v)).collect()
    }

    fn as_span(&self) -> Span {
        Span {
            len: self.parent_dim,
            basis: self.basis.clone(),
        }
    }

    /// Distance from `v` to the ideal.
    pub fn residual(&self, v: &[C64]) -> f64 {
        self.as_span().residual(v)
    }

    pub fn contains(&self, parent: &FdAlgebra, v: &[C64]) -> bool {
        self.residual(v) <= parent.tol() * norm(v).max(1.0)
    }

    pub fn is_subset_of(&self, parent: &FdAlgebra, other: &Ideal) -> bool {
        self.basis.iter().all(|v| other.contains(parent, v))
    }

    /// Largest distance from `b_i·v` or `v·b_i` to the ideal.
    pub fn two_sided_residual(&self, parent: &FdAlgebra) -> f64 {
        let n = parent.dim();
        let span = self.as_span();
        let mut worst: f64 = 0.0;
        for v in &self.basis {
            for i in 0..n {
                let e = unit_vector(n, i);
                worst = worst
                    .max(span.residual(&parent.multiply(&e, v)))
                    .max(span.residual(&parent.multiply(v, &e)));
            }
        }
        worst
    }
}

/// Jacobson radical as the kernel of the trace form `(x, y) ↦ tr(x·y)`.
///
/// Fails with [`Error::IllConditioned`] when a singular value of the Gram
/// matrix falls within a factor `√1000` of the threshold on either side.
pub fn jacobson_radical(alg: &FdAlgebra) -> Result<Ideal> {
    let n = alg.dim();
    if n == 0 {
        return Ok(Ideal::zero(alg));
    }
    let gram = alg.trace_form();
    let cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| gram[i][j]).collect()).collect();
    let svd = jacobi_svd(cols, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(Ideal::whole(alg));
    }
    let threshold = NULL_RTOL * smax;
    let band = SPECTRAL_GAP.sqrt();
    if let Some(&value) = svd
        .singular_values
        .iter()
        .find(|&&s| s > threshold / band && s < threshold * band)
    {
        return Err(Error::IllConditioned { value, threshold });
    }
    let null: Vec<Vec<C64>> = svd
        .singular_values
        .iter()
        .zip(svd.right)
        .filter(|(s, _)| **s <= threshold)
        .map(|(_, v)| v)
        .collect();
    Ideal::from_span(alg, &null)
}

/// Hypocompact radical. Every finite-dimensional algebra is bicompact, so
/// this is the whole algebra.
pub fn hypocompact_radical(alg: &FdAlgebra) -> Ideal {
    Ideal::whole(alg)
}

/// `A/J` through the left regular representation of its unitization on the
/// orthogonal complement of `J`. When `A` has a unit and `J ≠ A`, the
/// quotient is already unital and no unit is adjoined.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<'a> {
    parent: &'a FdAlgebra,
    ideal: Ideal,
    complement: Vec<Vec<C64>>,
    unitized: bool,
}

pub fn quotient(alg: &FdAlgebra, ideal: Ideal) -> Result<QuotientAlgebra<'_>> {
    if ideal.parent_dim != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: ideal.parent_dim,
        });
    }
    let residual = ideal.two_sided_residual(alg);
    if residual > alg.tol() {
        return Err(Error::NotAnIdeal { residual });
    }
    let n = alg.dim();
    let mut span = ideal.as_span();
    let start = span.dim();
    for i in 0..n {
        span.insert(&unit_vector(n, i), 1e-6);
        if span.dim() == n {
            break;
        }
    }
    let complement = span.basis.split_off(start);
    let unitized = !(alg.is_unital() && ideal.dim() < n);
    Ok(QuotientAlgebra {
        parent: alg,
        ideal,
        complement,
        unitized,
    })
}

impl<'a> QuotientAlgebra<'a> {
    pub fn parent(&self) -> &'a FdAlgebra {
        self.parent
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `dim A − dim J`.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Whether a unit was adjoined for the representation.
    pub fn is_unitized(&self) -> bool {
        self.unitized
    }

    /// Dimension of the representation space.
    pub fn rep_dim(&self) -> usize {
        self.dim() + usize::from(self.unitized)
    }

    /// Representation of the element with coefficients `x`.
    pub fn rep(&self, x: &[C64]) -> Matrix {
        let m = self.dim();
        let size = self.rep_dim();
        let mut out = Matrix::zeros(size);
        for (t, u) in self.complement.iter().enumerate() {
            let y = self.parent.multiply(x, u);
            for (s, us) in self.complement.iter().enumerate() {
                out.set(s, t, dot(us, &y));
            }
        }
        if self.unitized {
            for (s, us) in self.complement.iter().enumerate() {
                out.set(s, m, dot(us, x));
            }
        }
        out
    }

    pub fn rep_matrix(&self, a: &Matrix) -> Result<Matrix> {
        Ok(self.rep(&self.parent.coordinates(a)?))
    }

    /// Images of the generators of `set`, which must lie in the parent.
    pub fn image_set(&self, set: &MatrixSet) -> Result<MatrixSet> {
        let gens = set
            .generators()
            .iter()
            .map(|g| self.rep_matrix(g))
            .collect::<Result<Vec<_>>>()?;
        MatrixSet::new(gens)
    }

    /// The quotient as a matrix algebra in its own right, spanned by the
    /// representations of the complement basis.
    pub fn as_algebra(&self) -> Result<FdAlgebra> {
        let mats: Vec<Matrix> = self.complement.iter().map(|u| self.rep(u)).collect();
        FdAlgebra::from_basis(self.rep_dim(), &mats)
    }
}

/// Evidence attached to an [`rcq_membership`] verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RcqEvidence {
    /// `Iᵏ = 0` for the generated ideal `I`, with the smallest such `k`.
    NilpotentDegree(usize),
    /// A product of elements of `x·B` whose spectral radius is positive.
    Witness { word: ProductWord, rho: f64 },
    /// Not nilpotent, but no positive-radius word within the depth.
    NoWitnessWithinDepth,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RcqVerdict {
    pub member: bool,
    pub evidence: RcqEvidence,
}

/// Smallest `k ≤ limit` with `Iᵏ = 0`, multiplying spans on the right by `I`.
fn nilpotency_degree(alg: &FdAlgebra, ideal: &[Vec<C64>], limit: usize) -> Option<usize> {
    if ideal.is_empty() {
        return Some(1);
    }
    let tol = alg.tol();
    let mut power = ideal.to_vec();
    for k in 2..=limit {
        let mut next = Span::new(alg.dim());
        for u in &power {
            for v in ideal {
                next.insert(&alg.multiply(u, v), tol);
            }
        }
        if next.dim() == 0 {
            return Some(k);
        }
        power = next.basis;
    }
    None
}

/// Decides whether `x` lies in the compactly quasinilpotent radical, i.e.
/// whether `ρ(x·B) = 0` for the basis `B`. In finite dimension this holds
/// exactly when the ideal of `A¹` generated by `x` is nilpotent.
pub fn rcq_membership(alg: &FdAlgebra, x: &[C64], depth: usize) -> Result<RcqVerdict> {
    if x.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: x.len(),
        });
    }
    let ideal = Ideal::generated_by(alg, &[x.to_vec()]);
    if let Some(k) = nilpotency_degree(alg, ideal.basis(), alg.dim() + 1) {
        return Ok(RcqVerdict {
            member: true,
            evidence: RcqEvidence::NilpotentDegree(k),
        });
    }
    let xm = alg.element(x);
    let xb = MatrixSet::new(alg.basis().iter().map(|b| &xm * b).collect())?;
    let enumerator = Enumerator::default();
    let mut evidence = RcqEvidence::NoWitnessWithinDepth;
    if depth > 0 {
        let (root, word) = enumerator.lower_bound_r(&xb, depth)?;
        let rho = root.powi(word.len() as i32);
        if rho > WITNESS_RHO {
            evidence = RcqEvidence::Witness { word, rho };
        }
    }
    Ok(RcqVerdict {
        member: false,
        evidence,
    })
}

/// Words evaluated by the nilpotency precondition check.
pub const NILPOTENT_CERT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NilpotentReport {
    pub pass: bool,
    pub nil_degree: Option<usize>,
    pub algebra_dim: usize,
    pub certified_upper: f64,
}

/// If `ρ(M) = 0` then `A(M)` is a nilpotent algebra; verifies `A(M)ᵏ = 0`
/// for some `k ≤ dim A(M) + 1` after certifying the precondition.
pub fn check_nilpotent_span(set: &MatrixSet) -> Result<NilpotentReport> {
    let bounds = refine_with(set, &RefineOptions::new(1e-13, NILPOTENT_CERT_BUDGET))?;
    if bounds.upper.is_nan() || bounds.upper >= 1e-12 {
        return Err(Error::PreconditionNotCertified {
            upper: bounds.upper,
        });
    }
    let d = set.dim();
    let alg = generated_subalgebra(set, d * d)?;
    let n = alg.dim();
    let whole: Vec<Vec<C64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    let degree = nilpotency_degree(&alg, &whole, n + 1);
    Ok(NilpotentReport {
        pass: degree.is_some(),
        nil_degree: degree,
        algebra_dim: n,
        certified_upper: bounds.upper,
    })
}

/// Settings for [`check_inessential`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InessentialOptions {
    pub budget: u64,
    pub width: f64,
    /// Relative widening applied to both intervals before comparing.
    pub widen: f64,
}

impl InessentialOptions {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            width: 1e-4,
            widen: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InessentialReport {
    pub rho_full: (f64, f64),
    pub rho_quotient: (f64, f64),
    pub gap: f64,
    pub pass: bool,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub quotient_rep_dim: usize,
    pub full: BoundsReport,
    pub quotient: BoundsReport,
}

/// Compares `ρ(M)` with `ρ(q(M))` for the quotient by the Jacobson radical
/// of `A(M)`.
pub fn check_inessential(set: &MatrixSet, budget: u64) -> Result<InessentialReport> {
    check_inessential_with(set, &InessentialOptions::new(budget))
}

pub fn check_inessential_with(
    set: &MatrixSet,
    opts: &InessentialOptions,
) -> Result<InessentialReport> {
    let d = set.dim();
    let alg = generated_subalgebra(set, d * d)?;
    let rad = jacobson_radical(&alg)?;
    let radical_dim = rad.dim();
    let q = quotient(&alg, rad)?;
    let image = q.image_set(set)?;
    let refine_opts = RefineOptions::new(opts.width, opts.budget);
    let full = refine_with(set, &refine_opts)?;
    let quot = refine_with(&image, &refine_opts)?;
    let widen = |r: &BoundsReport| (r.lower * (1.0 - opts.widen), r.upper * (1.0 + opts.widen));
    let gap = interval_distance(widen(&full), widen(&quot));
    Ok(InessentialReport {
        rho_full: (full.lower, full.upper),
        rho_quotient: (quot.lower, quot.upper),
        gap,
        pass: gap == 0.0,
        algebra_dim: alg.dim(),
        radical_dim,
        quotient_rep_dim: q.rep_dim(),
        full,
        quotient: quot,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainRow {
    pub ideal_dim: usize,
    pub rep_dim: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub depth: usize,
    pub rows: Vec<ChainRow>,
    pub upper_nonincreasing: bool,
    pub lower_nonincreasing: bool,
    pub final_matches_direct: bool,
    pub pass: bool,
}

const CHAIN_TOL: f64 = 1e-8;

fn chain_row(
    alg: &FdAlgebra,
    set: &MatrixSet,
    ideal: &Ideal,
    depth: usize,
    enumerator: &Enumerator,
) -> Result<ChainRow> {
    let q = quotient(alg, ideal.clone())?;
    let image = q.image_set(set)?;
    let (lower, _, upper) = enumerator.sandwich(&image, depth)?;
    Ok(ChainRow {
        ideal_dim: ideal.dim(),
        rep_dim: q.rep_dim(),
        lower,
        upper,
    })
}

/// Depth-`n` bounds for `ρ(M/J_i)` along an increasing chain of ideals of
/// `alg`, which must contain the generators of `set`.
///
/// Both endpoints are taken at the same depth for every row. Because each
/// quotient representation compresses the previous one, the upper endpoints
/// are nonincreasing, and because spectra shrink under quotient maps, so are
/// the lower endpoints.
pub fn ideal_chain_monotonicity(
    set: &MatrixSet,
    alg: &FdAlgebra,
    chain: &[Ideal],
    depth: usize,
    budget: u64,
) -> Result<ChainReport> {
    for (index, pair) in chain.windows(2).enumerate() {
        if !pair[0].is_subset_of(alg, &pair[1]) {
            return Err(Error::NotAChain { index: index + 1 });
        }
    }
    let enumerator = Enumerator::with_budget(budget);
    let rows = chain
        .iter()
        .map(|j| chain_row(alg, set, j, depth, &enumerator))
        .collect::<Result<Vec<_>>>()?;
    let slack = |x: f64| CHAIN_TOL * x.abs().max(1.0);
    let upper_nonincreasing = rows.windows(2).all(|w| w[1].upper <= w[0].upper + slack(w[0].upper));
    let lower_nonincreasing = rows.windows(2).all(|w| w[1].lower <= w[0].lower + slack(w[0].lower));
    let final_matches_direct = match chain.last() {
        None => true,
        Some(last) => {
            let direct = chain_row(alg, set, last, depth, &enumerator)?;
            let row = rows.last().expect("nonempty");
            (direct.lower - row.lower).abs() <= slack(row.lower)
                && (direct.upper - row.upper).abs() <= slack(row.upper)
        }
    };
    Ok(ChainReport {
        depth,
        pass: upper_nonincreasing && lower_nonincreasing && final_matches_direct,
        rows,
        upper_nonincreasing,
        lower_nonincreasing,
        final_matches_direct,
    })
}
