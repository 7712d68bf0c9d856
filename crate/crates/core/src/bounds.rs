//! Two-sided bounds for the joint spectral radius.
//!
//! Lower bounds are spectral radii of individual products,
//! `ρ(P)^{1/k} ≤ ρ(M)` for `P ∈ Mᵏ`. Upper bounds come from complete prefix
//! codes of the word tree: if every infinite word has exactly one prefix in a
//! finite set `S`, then `ρ(M) ≤ max_{P∈S} ‖P‖^{1/|P|}`.
//!
//! [`refine`] grows the word tree level by level. A node is left unexpanded
//! once `‖P‖^{1/k} ≤ lower + width`, and the upper bound is the best cover
//! available in the explored tree, evaluated bottom-up as
//! `v(P) = min(‖P‖^{1/k}, max_children v)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{op_norm, spectral_radius, Matrix, NormKind, C64};
use crate::set::{beats, root_radius, Enumerator, MatrixSet, ProductWord, RHO_FLOOR};

/// Certified interval `[lower, upper]` for `ρ(M)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub lower_witness: ProductWord,
    pub depth_used: usize,
    pub nodes_explored: u64,
    pub converged: bool,
}

impl BoundsReport {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Distance between two closed intervals, zero when they overlap.
pub fn interval_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    (b.0 - a.1).max(a.0 - b.1).max(0.0)
}

/// `r_n(M)` with default enumeration settings.
pub fn lower_bound_r(set: &MatrixSet, n: usize) -> Result<(f64, ProductWord)> {
    Enumerator::default().lower_bound_r(set, n)
}

/// `β_n(M)` with default enumeration settings.
pub fn upper_bound(set: &MatrixSet, n: usize) -> Result<f64> {
    Enumerator::default().upper_bound(set, n)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefineOptions {
    pub width: f64,
    /// Maximum number of evaluated words.
    pub budget: u64,
    pub norm: NormKind,
}

impl RefineOptions {
    pub fn new(width: f64, budget: u64) -> Self {
        Self {
            width,
            budget,
            norm: NormKind::Spectral,
        }
    }
}

const NO_CHILD: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Node {
    value: f64,
    first_child: u32,
    parent: u32,
}

struct Child {
    value: f64,
    root: f64,
    product: Scaled,
}

/// Product stored as `exp(log_scale)·unit` with `‖unit‖_F = 1` (or zero),
/// so long words neither overflow nor underflow.
#[derive(Clone)]
struct Scaled {
    unit: Matrix,
    log_scale: f64,
}

impl Scaled {
    fn new(m: Matrix, log_scale: f64) -> Self {
        let f = m.frobenius_norm();
        if f == 0.0 || !f.is_finite() {
            return Self { unit: m, log_scale: f64::NEG_INFINITY };
        }
        Self {
            unit: m.scale_real(1.0 / f),
            log_scale: log_scale + f.ln(),
        }
    }

    /// `‖P‖^{1/k}`.
    fn root_norm(&self, norm: NormKind, k: usize) -> f64 {
        scaled_root(norm.eval(&self.unit), self.log_scale, k)
    }

    /// `ρ(P)^{1/k}`, zero below the denormal guard.
    fn root_radius(&self, k: usize) -> Result<f64> {
        if self.log_scale == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        let rho = spectral_radius(&self.unit)?;
        if rho == 0.0 || rho.ln() + self.log_scale < RHO_FLOOR.ln() {
            return Ok(0.0);
        }
        Ok(scaled_root(rho, self.log_scale, k))
    }
}

fn scaled_root(x: f64, log_scale: f64, k: usize) -> f64 {
    if x == 0.0 || log_scale == f64::NEG_INFINITY {
        0.0
    } else {
        ((x.ln() + log_scale) / k as f64).exp()
    }
}

/// Branch-and-bound refinement of `[lower, upper]` until
/// `upper − lower ≤ width` or the word budget runs out.
///
/// Running out of budget is not an error: the report carries valid bounds
/// and `converged = false`.
pub fn refine(set: &MatrixSet, width: f64, budget: u64) -> Result<BoundsReport> {
    refine_with(set, &RefineOptions::new(width, budget))
}

pub fn refine_with(set: &MatrixSet, opts: &RefineOptions) -> Result<BoundsReport> {
    if opts.width.is_nan() || opts.width <= 0.0 {
        return Err(Error::Config(format!("width must be positive, got {}", opts.width)));
    }
    let m = set.len();
    let gens = set.generators();
    let norm = opts.norm;

    let mut lower = 0.0;
    // (level, index) of the witness node
    let mut witness: Option<(usize, u32)> = None;
    let mut explored: u64 = 0;

    let mut levels: Vec<Vec<Node>> = Vec::new();
    // unpruned nodes of the deepest level: (index in level, word, product)
    let mut alive: Vec<(u32, Scaled)> = Vec::new();

    if (m as u64) > opts.budget {
        return Err(Error::BudgetExceeded {
            needed: m as u128,
            budget: opts.budget,
        });
    }
    let first: Vec<Child> = gens
        .par_iter()
        .map(|g| {
            Ok(Child {
                value: norm.eval(g),
                root: root_radius(g, 1)?,
                product: Scaled::new(g.clone(), 0.0),
            })
        })
        .collect::<Result<_>>()?;
    explored += m as u64;
    for (j, c) in first.iter().enumerate() {
        if witness.is_none() || beats(c.root, lower) {
            lower = c.root;
            witness = Some((0, j as u32));
        }
    }
    let mut level = Vec::with_capacity(m);
    for (j, c) in first.into_iter().enumerate() {
        level.push(Node {
            value: c.value,
            first_child: NO_CHILD,
            parent: NO_CHILD,
        });
        if c.value > lower + opts.width {
            alive.push((j as u32, c.product));
        }
    }
    levels.push(level);

    // the cover bound is recomputed whenever the tree has doubled, keeping
    // the total cost linear in the number of nodes
    let mut checked_at: u64 = 0;
    loop {
        if alive.is_empty() {
            break;
        }
        if explored >= 2 * checked_at {
            checked_at = explored;
            if cover_bound(&levels, m) - lower <= opts.width {
                break;
            }
        }
        let remaining = opts.budget - explored;
        let affordable = (remaining / m as u64) as usize;
        if affordable == 0 {
            break;
        }
        let exhausted = affordable < alive.len();
        alive.truncate(affordable);

        let depth = levels.len() + 1;
        let children: Vec<Child> = alive
            .par_iter()
            .flat_map_iter(|(_, p)| {
                gens.iter().map(move |g| Scaled::new(&p.unit * g, p.log_scale))
            })
            .map(|product| {
                Ok(Child {
                    value: product.root_norm(norm, depth),
                    root: product.root_radius(depth)?,
                    product,
                })
            })
            .collect::<Result<_>>()?;
        explored += children.len() as u64;

        let parents = levels.last_mut().expect("nonempty tree");
        for (pi, (parent, _)) in alive.iter().enumerate() {
            parents[*parent as usize].first_child = (pi * m) as u32;
            for j in 0..m {
                if beats(children[pi * m + j].root, lower) {
                    lower = children[pi * m + j].root;
                    witness = Some((depth - 1, (pi * m + j) as u32));
                }
            }
        }
        let mut next_level = Vec::with_capacity(children.len());
        let mut next_alive = Vec::new();
        for (i, c) in children.into_iter().enumerate() {
            next_level.push(Node {
                value: c.value,
                first_child: NO_CHILD,
                parent: alive[i / m].0,
            });
            if c.value > lower + opts.width {
                next_alive.push((i as u32, c.product));
            }
        }
        levels.push(next_level);
        alive = next_alive;
        if exhausted {
            break;
        }
    }

    let upper = cover_bound(&levels, m).max(lower);
    Ok(BoundsReport {
        lower,
        upper,
        lower_witness: trace_word(&levels, witness.expect("at least one generator")),
        depth_used: levels.len(),
        nodes_explored: explored,
        converged: upper - lower <= opts.width,
    })
}

/// Word of the node at `(level, index)`, read off the parent links.
fn trace_word(levels: &[Vec<Node>], (mut level, mut index): (usize, u32)) -> ProductWord {
    let mut word = Vec::with_capacity(level + 1);
    loop {
        let node = levels[level][index as usize];
        if level == 0 {
            word.push(index as usize);
            break;
        }
        let parent = levels[level - 1][node.parent as usize];
        word.push((index - parent.first_child) as usize);
        index = node.parent;
        level -= 1;
    }
    word.reverse();
    ProductWord(word)
}

/// Best upper bound over the complete prefix codes contained in the tree.
/// Expanded nodes own `fanout` contiguous children in the next level.
fn cover_bound(levels: &[Vec<Node>], fanout: usize) -> f64 {
    let mut below: Vec<f64> = Vec::new();
    for level in levels.iter().rev() {
        below = level
            .iter()
            .map(|n| {
                if n.first_child == NO_CHILD {
                    n.value
                } else {
                    let s = n.first_child as usize;
                    let best_child = below[s..s + fanout].iter().copied().fold(0.0, f64::max);
                    n.value.min(best_child)
                }
            })
            .collect();
    }
    below.into_iter().fold(0.0, f64::max)
}

/// Outcome of a Berger–Wang sandwich check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BergerWangReport {
    pub r_lower: f64,
    pub rho_upper: f64,
    pub gap: f64,
    pub pass: bool,
    pub bounds: BoundsReport,
}

/// Checks that the product-spectral-radius lower bound and the norm upper
/// bound meet within `tol`. A failure means the budget was too small to
/// separate them, nothing more.
pub fn verify_berger_wang(set: &MatrixSet, tol: f64, budget: u64) -> Result<BergerWangReport> {
    let bounds = refine(set, tol, budget)?;
    let gap = bounds.upper - bounds.lower;
    Ok(BergerWangReport {
        r_lower: bounds.lower,
        rho_upper: bounds.upper,
        gap,
        pass: gap <= tol,
        bounds,
    })
}

/// Settings for [`continuity_probe`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeOptions {
    pub trials: usize,
    pub seed: u64,
    /// Refinement width and budget used for every interval.
    pub refine: RefineOptions,
}

impl ProbeOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            refine: RefineOptions::new(1e-3, 200_000),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub eps: f64,
    /// Largest distance between the intervals of `M` and `M_ε`.
    pub max_dev: f64,
    /// Largest amount by which a perturbed lower bound exceeded the
    /// unperturbed upper bound.
    pub max_excess: f64,
    /// False when some trial ran out of budget before converging.
    pub complete: bool,
}

/// Random perturbation with spectral norm exactly `eps`.
fn perturbation(dim: usize, eps: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let data: Vec<C64> = (0..dim * dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    let g = Matrix::new(dim, data).expect("finite gaussian sample");
    let n = op_norm(&g);
    if eps == 0.0 || n == 0.0 {
        Matrix::zeros(dim)
    } else {
        g.scale_real(eps / n)
    }
}

/// The perturbed sets measured by [`continuity_probe`]: for each `ε` in
/// order, `trials` copies of `set` with every generator moved by a random
/// matrix of spectral norm exactly `ε`, drawn from one seeded stream.
pub fn perturbed_trials(
    set: &MatrixSet,
    eps_schedule: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<Vec<MatrixSet>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    eps_schedule
        .iter()
        .map(|&eps| {
            (0..trials)
                .map(|_| {
                    let gens = set
                        .generators()
                        .iter()
                        .map(|g| g + &perturbation(set.dim(), eps, &mut rng))
                        .collect();
                    MatrixSet::new(gens)
                })
                .collect()
        })
        .collect()
}

/// Measures how far the bound interval moves under random perturbations of
/// each generator by exactly `ε` in spectral norm.
pub fn continuity_probe(
    set: &MatrixSet,
    eps_schedule: &[f64],
    opts: &ProbeOptions,
) -> Result<Vec<ProbeRow>> {
    if opts.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if let Some(e) = eps_schedule.iter().find(|e| e.is_nan() || **e < 0.0) {
        return Err(Error::Config(format!("eps must be nonnegative, got {e}")));
    }
    let base = refine_with(set, &opts.refine)?;
    let trials = perturbed_trials(set, eps_schedule, opts.trials, opts.seed)?;
    let mut rows = Vec::with_capacity(eps_schedule.len());
    for (&eps, perturbed) in eps_schedule.iter().zip(&trials) {
        let reports: Vec<BoundsReport> = perturbed
            .par_iter()
            .map(|p| refine_with(p, &opts.refine))
            .collect::<Result<_>>()?;
        let mut row = ProbeRow {
            eps,
            max_dev: 0.0,
            max_excess: 0.0,
            complete: base.converged,
        };
        for r in &reports {
            row.max_dev = row
                .max_dev
                .max(interval_distance((base.lower, base.upper), (r.lower, r.upper)));
            row.max_excess = row.max_excess.max((r.lower - base.upper).max(0.0));
            row.complete &= r.converged;
        }
        rows.push(row);
    }
    Ok(rows)
}
