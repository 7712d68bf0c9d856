//! Two-sided multiplication operators `x ↦ a·x·b` as explicit matrices.
//!
//! Vectorization is column-major throughout, so that
//! `vec(a·x·b) = (bᵀ ⊗ a)·vec(x)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::bounds::{interval_distance, refine_with, RefineOptions};
use crate::error::{Error, Result};
use crate::matrix::{kron_with_cap, Matrix, C64, DEFAULT_KRON_CAP};
use crate::set::{Enumerator, MatrixSet};

const SELF_CHECK_SAMPLES: usize = 20;
const SELF_CHECK_RTOL: f64 = 1e-10;

/// `L_a R_b` acting on `d × d` matrices, realized on `C^{d²}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedOperator {
    source_dim: usize,
    matrix: Matrix,
    /// Generator indices `(a, b)` when produced by [`lift_set`].
    pair: Option<(usize, usize)>,
}

impl LiftedOperator {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn pair(&self) -> Option<(usize, usize)> {
        self.pair
    }

    /// Applies the operator to `x` through its matrix.
    pub fn act(&self, x: &Matrix) -> Matrix {
        let v = self.matrix.apply(&x.vec_col_major());
        Matrix::from_vec_col_major(self.source_dim, &v).expect("matching dimension")
    }
}

/// Builds `L_a R_b = bᵀ ⊗ a` and checks its action against `a·x·b` on
/// random `x`.
#[allow(non_snake_case)]
pub fn lift_LR(a: &Matrix, b: &Matrix) -> Result<LiftedOperator> {
    lift_pair(a, b, None)
}

fn lift_pair(a: &Matrix, b: &Matrix, pair: Option<(usize, usize)>) -> Result<LiftedOperator> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let matrix = kron_with_cap(&b.transpose(), a, DEFAULT_KRON_CAP)?;
    let op = LiftedOperator {
        source_dim: a.dim(),
        matrix,
        pair,
    };
    self_check(&op, a, b)?;
    Ok(op)
}

fn self_check(op: &LiftedOperator, a: &Matrix, b: &Matrix) -> Result<()> {
    let d = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    let scale = a.frobenius_norm() * b.frobenius_norm();
    let mut worst: f64 = 0.0;
    for _ in 0..SELF_CHECK_SAMPLES {
        let data = (0..d * d)
            .map(|_| {
                C64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let x = Matrix::new(d, data).expect("finite sample");
        let want = &(a * &x) * b;
        let got = op.act(&x);
        let denom = scale * x.frobenius_norm();
        if denom > 0.0 {
            worst = worst.max((&got - &want).frobenius_norm() / denom);
        } else if !got.is_zero() {
            worst = f64::INFINITY;
        }
    }
    if worst > SELF_CHECK_RTOL {
        return Err(Error::LiftSelfCheck { residual: worst });
    }
    Ok(())
}

/// `L_M R_M = {L_a R_b : a, b ∈ M}`, pairs in row-major `(a, b)` order.
pub fn lift_set(set: &MatrixSet) -> Result<MatrixSet> {
    let gens = set.generators();
    let mut out = Vec::with_capacity(gens.len() * gens.len());
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            out.push(lift_pair(a, b, Some((i, j)))?.into_matrix());
        }
    }
    MatrixSet::new(out)
}

/// Left multiplication `L_a`.
#[allow(non_snake_case)]
pub fn lift_L(a: &Matrix) -> Result<LiftedOperator> {
    lift_LR(a, &Matrix::identity(a.dim()))
}

/// Right multiplication `R_b`.
#[allow(non_snake_case)]
pub fn lift_R(b: &Matrix) -> Result<LiftedOperator> {
    lift_LR(&Matrix::identity(b.dim()), b)
}

/// `W_a = L_a R_a`.
#[allow(non_snake_case)]
pub fn lift_W(a: &Matrix) -> Result<LiftedOperator> {
    lift_LR(a, a)
}

/// Finite-dimensional value of `ρ^χ(M) = ρ_χ(L_M R_M)^{1/2}`.
///
/// The Hausdorff measure of non-compactness vanishes on every operator of a
/// finite-dimensional space, so this is identically zero. It exists so that
/// `ρ(M) = max(r(M), ρ^χ(M))` can be stated with both terms present; in
/// this setting the identity reduces to `ρ(M) = r(M)`.
pub fn rho_chi(_set: &MatrixSet) -> f64 {
    0.0
}

/// Essential joint spectral radius; zero on finite-dimensional spaces for
/// the same reason as [`rho_chi`].
pub fn rho_essential(_set: &MatrixSet) -> f64 {
    0.0
}

/// Settings for [`check_pass_identities`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PassOptions {
    /// Word budget for each refinement and each exhaustive sweep.
    pub budget: u64,
    pub width: f64,
    /// Relative tolerance on `r_k`, scaled by `max(1, r_k(M)²)`.
    pub tol: f64,
}

impl PassOptions {
    pub fn new(budget: u64) -> Self {
        Self {
            budget,
            width: 1e-4,
            tol: 1e-7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PassReport {
    /// Distance between the lifted interval and the squared interval of `M`.
    pub rho_sq_gap: f64,
    /// `max_k |r_k(L_M R_M) − r_k(M)²| / max(1, r_k(M)²)`.
    pub r_exact_gap: f64,
    pub rho_interval: (f64, f64),
    pub lifted_interval: (f64, f64),
    pub r_by_length: Vec<f64>,
    pub lifted_r_by_length: Vec<f64>,
    pub pass: bool,
}

/// Checks `ρ(L_M R_M) = ρ(M)²` and `r(L_M R_M) = r(M)²`.
///
/// In finite dimension the second identity holds exactly at every length,
/// because the eigenvalues of `bᵀ ⊗ a` are the pairwise products of those
/// of `a` and `b`.
pub fn check_pass_identities(set: &MatrixSet, n: usize, budget: u64) -> Result<PassReport> {
    check_pass_identities_with(set, n, &PassOptions::new(budget))
}

pub fn check_pass_identities_with(
    set: &MatrixSet,
    n: usize,
    opts: &PassOptions,
) -> Result<PassReport> {
    let lifted = lift_set(set)?;
    let enumerator = Enumerator::with_budget(opts.budget);
    let r_by_length = enumerator.root_radii_by_length(set, n)?;
    let lifted_r_by_length = enumerator.root_radii_by_length(&lifted, n)?;
    let r_exact_gap = r_by_length
        .iter()
        .zip(&lifted_r_by_length)
        .map(|(r, l)| {
            let sq = r * r;
            (l - sq).abs() / sq.max(1.0)
        })
        .fold(0.0, f64::max);

    let refine_opts = RefineOptions::new(opts.width, opts.budget);
    let base = refine_with(set, &refine_opts)?;
    let up = refine_with(&lifted, &refine_opts)?;
    let squared = (base.lower * base.lower, base.upper * base.upper);
    let lifted_interval = (up.lower, up.upper);
    let rho_sq_gap = interval_distance(squared, lifted_interval);
    let scale = squared.1.max(1.0);
    Ok(PassReport {
        rho_sq_gap,
        r_exact_gap,
        rho_interval: (base.lower, base.upper),
        lifted_interval,
        r_by_length,
        lifted_r_by_length,
        pass: r_exact_gap <= opts.tol && rho_sq_gap <= opts.tol * scale,
    })
}

/// Residual of `W_{ba} = L_b W_a R_b = R_a W_b L_a` in Frobenius norm,
/// maximized over the two factorizations.
pub fn check_w_product_identity(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let w_ba = lift_W(&(b * a))?.into_matrix();
    let w_a = lift_W(a)?.into_matrix();
    let w_b = lift_W(b)?.into_matrix();
    let l_a = lift_L(a)?.into_matrix();
    let l_b = lift_L(b)?.into_matrix();
    let r_a = lift_R(a)?.into_matrix();
    let r_b = lift_R(b)?.into_matrix();
    let first = &(&l_b * &w_a) * &r_b;
    let second = &(&r_a * &w_b) * &l_a;
    Ok((&w_ba - &first)
        .frobenius_norm()
        .max((&w_ba - &second).frobenius_norm()))
}
