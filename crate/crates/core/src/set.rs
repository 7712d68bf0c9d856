//! Finite matrix sets, product words and exhaustive enumeration of `Mⁿ`.
//!
//! Words are enumerated depth-first in lexicographic order with one
//! right-multiplication per tree edge. Work is split by first letter and the
//! per-letter results are merged in letter order, so every result is the
//! same no matter how many worker threads rayon uses.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{spectral_radius, Matrix, NormKind, C64};

/// Default enumeration budget, in evaluated words.
pub const DEFAULT_WORD_BUDGET: u64 = 10_000_000;

/// Relative margin a candidate must clear to displace the incumbent maximum.
/// Candidates within the margin count as ties, and ties go to the shortest,
/// then lexicographically smallest, word.
pub const TIE_RTOL: f64 = 1e-12;

/// Spectral radii below this are reported as exactly zero before roots are
/// taken.
pub const RHO_FLOOR: f64 = 1e-300;

/// A nonempty, ordered set of same-dimension matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSet {
    dim: usize,
    generators: Vec<Matrix>,
    name: Option<String>,
}

impl MatrixSet {
    pub fn new(generators: Vec<Matrix>) -> Result<Self> {
        let dim = generators.first().ok_or(Error::EmptySet)?.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            dim,
            generators,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `c·M`, elementwise.
    pub fn scaled(&self, c: C64) -> Self {
        Self {
            dim: self.dim,
            generators: self.generators.iter().map(|g| g.scale(c)).collect(),
            name: self.name.clone(),
        }
    }

    /// `Mᵏ` as an explicit set, words in lexicographic order.
    pub fn power_set(&self, k: usize, budget: u64) -> Result<MatrixSet> {
        if k == 0 {
            return Err(Error::EmptyWord);
        }
        let needed = (self.len() as u128).saturating_pow(k as u32);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut out = Vec::with_capacity(needed as usize);
        let mut word = vec![0usize; k];
        loop {
            out.push(evaluate(self, &ProductWord(word.clone()))?);
            // odometer increment, last letter fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    return MatrixSet::new(out);
                }
                pos -= 1;
                word[pos] += 1;
                if word[pos] < self.len() {
                    break;
                }
                word[pos] = 0;
            }
        }
    }
}

/// Finite sequence of 0-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProductWord(pub Vec<usize>);

impl ProductWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Left-to-right product of the indexed generators.
pub fn evaluate(set: &MatrixSet, word: &ProductWord) -> Result<Matrix> {
    let (&first, rest) = word.0.split_first().ok_or(Error::EmptyWord)?;
    let get = |i: usize| {
        set.generators.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: set.len(),
        })
    };
    let mut acc = get(first)?.clone();
    let mut tmp = Matrix::zeros(set.dim);
    for &i in rest {
        acc.mul_into(get(i)?, &mut tmp);
        std::mem::swap(&mut acc, &mut tmp);
    }
    Ok(acc)
}

/// `ρ(P)^{1/k}` with the denormal guard applied.
pub fn root_radius(product: &Matrix, length: usize) -> Result<f64> {
    let rho = spectral_radius(product)?;
    Ok(if rho < RHO_FLOOR {
        0.0
    } else {
        rho.powf(1.0 / length as f64)
    })
}

/// Whether `candidate` displaces `incumbent` as a running maximum.
pub(crate) fn beats(candidate: f64, incumbent: f64) -> bool {
    candidate > incumbent + TIE_RTOL * incumbent.abs()
}

#[derive(Clone, Debug)]
pub(crate) struct Best {
    pub value: f64,
    pub word: Vec<usize>,
}

fn offer(slot: &mut Option<Best>, value: f64, word: &[usize]) {
    match slot {
        Some(b) if !beats(value, b.value) => {}
        _ => {
            *slot = Some(Best {
                value,
                word: word.to_vec(),
            })
        }
    }
}

/// Per-length maxima over all words of that length.
#[derive(Clone, Debug)]
pub(crate) struct LevelStats {
    pub norm: Best,
    /// Only populated when spectral radii were requested.
    pub root: Option<Best>,
}

/// Total number of words of length `1..=n` over `m` letters.
pub fn word_count(m: usize, n: usize) -> u128 {
    let m = m as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..n {
        pow = pow.saturating_mul(m);
        total = total.saturating_add(pow);
    }
    total
}

struct Sweep<'a> {
    set: &'a MatrixSet,
    depth: usize,
    norm: NormKind,
    want_root: bool,
    norms: Vec<Option<Best>>,
    roots: Vec<Option<Best>>,
}

impl Sweep<'_> {
    fn visit(&mut self, word: &mut Vec<usize>, prods: &mut [Matrix]) -> Result<()> {
        let k = word.len();
        let current = &prods[k - 1];
        if current.is_zero() {
            // every extension is zero as well; record the lexicographically
            // smallest extension at each deeper level without evaluating
            let mut ext = word.clone();
            for level in k..=self.depth {
                offer(&mut self.norms[level - 1], 0.0, &ext);
                if self.want_root {
                    offer(&mut self.roots[level - 1], 0.0, &ext);
                }
                ext.push(0);
            }
            return Ok(());
        }
        offer(&mut self.norms[k - 1], self.norm.eval(current), word);
        if self.want_root {
            offer(&mut self.roots[k - 1], root_radius(current, k)?, word);
        }
        if k == self.depth {
            return Ok(());
        }
        for j in 0..self.set.len() {
            let (head, tail) = prods.split_at_mut(k);
            head[k - 1].mul_into(&self.set.generators[j], &mut tail[0]);
            word.push(j);
            self.visit(word, prods)?;
            word.pop();
        }
        Ok(())
    }
}

/// Exhaustive sweep over all words of length `1..=depth`.
/// Per-length incumbents of one first-letter subtree.
type PerLength = Vec<Option<Best>>;

pub(crate) fn sweep(
    set: &MatrixSet,
    depth: usize,
    budget: u64,
    norm: NormKind,
    want_root: bool,
) -> Result<Vec<LevelStats>> {
    if depth == 0 {
        return Err(Error::EmptyWord);
    }
    let needed = word_count(set.len(), depth);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let chunks: Vec<(PerLength, PerLength)> = (0..set.len())
        .into_par_iter()
        .map(|first| {
            let mut sw = Sweep {
                set,
                depth,
                norm,
                want_root,
                norms: vec![None; depth],
                roots: vec![None; depth],
            };
            let mut prods = vec![Matrix::zeros(set.dim); depth];
            prods[0] = set.generators[first].clone();
            let mut word = vec![first];
            sw.visit(&mut word, &mut prods)?;
            Ok((sw.norms, sw.roots))
        })
        .collect::<Result<_>>()?;

    let mut norms: Vec<Option<Best>> = vec![None; depth];
    let mut roots: Vec<Option<Best>> = vec![None; depth];
    for (cn, cr) in chunks {
        for (slot, b) in norms.iter_mut().zip(cn).filter_map(|(s, b)| b.map(|b| (s, b))) {
            offer(slot, b.value, &b.word);
        }
        for (slot, b) in roots.iter_mut().zip(cr).filter_map(|(s, b)| b.map(|b| (s, b))) {
            offer(slot, b.value, &b.word);
        }
    }
    Ok(norms
        .into_iter()
        .zip(roots)
        .map(|(n, r)| LevelStats {
            norm: n.expect("every level has at least one word"),
            root: r,
        })
        .collect())
}

/// One entry of [`leading_products`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingProduct {
    pub length: usize,
    pub word: ProductWord,
    pub norm: f64,
}

/// Enumeration settings shared by the exhaustive operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enumerator {
    pub budget: u64,
    pub norm: NormKind,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            budget: DEFAULT_WORD_BUDGET,
            norm: NormKind::Spectral,
        }
    }
}

impl Enumerator {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            budget,
            ..Self::default()
        }
    }

    /// `‖Mⁿ‖`: the largest norm over all words of length exactly `n`.
    pub fn set_norm(&self, set: &MatrixSet, n: usize) -> Result<f64> {
        let levels = sweep(set, n, self.budget, self.norm, false)?;
        Ok(levels[n - 1].norm.value)
    }

    /// Lengths `n ≤ nmax` at which the running norm maximum over all words of
    /// length `≤ n` is attained at length exactly `n`, with the first such
    /// word in lexicographic order.
    pub fn leading_products(&self, set: &MatrixSet, nmax: usize) -> Result<Vec<LeadingProduct>> {
        let levels = sweep(set, nmax, self.budget, self.norm, false)?;
        let mut out = Vec::new();
        let mut running: Option<f64> = None;
        for (i, level) in levels.into_iter().enumerate() {
            let v = level.norm.value;
            let leading = match running {
                None => true,
                Some(r) => !beats(r, v),
            };
            if leading {
                out.push(LeadingProduct {
                    length: i + 1,
                    word: ProductWord(level.norm.word),
                    norm: v,
                });
            }
            running = Some(running.map_or(v, |r| r.max(v)));
        }
        Ok(out)
    }

    /// Leading products divided by their norms. Zero-norm entries are
    /// skipped.
    pub fn normalized_leading_sequence(&self, set: &MatrixSet, nmax: usize) -> Result<Vec<Matrix>> {
        self.leading_products(set, nmax)?
            .into_iter()
            .filter(|lp| lp.norm > 0.0)
            .map(|lp| Ok(evaluate(set, &lp.word)?.scale_real(1.0 / lp.norm)))
            .collect()
    }

    /// `r_n(M) = max_{k≤n} max_{P∈Mᵏ} ρ(P)^{1/k}` with its witness.
    pub fn lower_bound_r(&self, set: &MatrixSet, n: usize) -> Result<(f64, ProductWord)> {
        let levels = sweep(set, n, self.budget, self.norm, true)?;
        let mut best: Option<Best> = None;
        for level in levels {
            let r = level.root.expect("roots requested");
            offer(&mut best, r.value, &r.word);
        }
        let best = best.expect("n >= 1");
        Ok((best.value, ProductWord(best.word)))
    }

    /// Per-length maxima `max_{P∈Mᵏ} ρ(P)^{1/k}` for `k = 1..=n`.
    pub fn root_radii_by_length(&self, set: &MatrixSet, n: usize) -> Result<Vec<f64>> {
        Ok(sweep(set, n, self.budget, self.norm, true)?
            .into_iter()
            .map(|l| l.root.expect("roots requested").value)
            .collect())
    }

    /// `β_n(M) = min_{k≤n} ‖Mᵏ‖^{1/k}`.
    pub fn upper_bound(&self, set: &MatrixSet, n: usize) -> Result<f64> {
        let levels = sweep(set, n, self.budget, self.norm, false)?;
        Ok(levels
            .iter()
            .enumerate()
            .map(|(i, l)| l.norm.value.powf(1.0 / (i + 1) as f64))
            .fold(f64::INFINITY, f64::min))
    }

    /// Both fixed-depth bounds in one sweep: `(r_n, witness, β_n)`.
    pub fn sandwich(&self, set: &MatrixSet, n: usize) -> Result<(f64, ProductWord, f64)> {
        let levels = sweep(set, n, self.budget, self.norm, true)?;
        let mut best: Option<Best> = None;
        let mut upper = f64::INFINITY;
        for (i, level) in levels.into_iter().enumerate() {
            let r = level.root.expect("roots requested");
            offer(&mut best, r.value, &r.word);
            upper = upper.min(level.norm.value.powf(1.0 / (i + 1) as f64));
        }
        let best = best.expect("n >= 1");
        Ok((best.value, ProductWord(best.word), upper))
    }
}

/// [`Enumerator::set_norm`] with default settings.
pub fn set_norm(set: &MatrixSet, n: usize) -> Result<f64> {
    Enumerator::default().set_norm(set, n)
}

/// [`Enumerator::leading_products`] with default settings.
pub fn leading_products(set: &MatrixSet, nmax: usize) -> Result<Vec<LeadingProduct>> {
    Enumerator::default().leading_products(set, nmax)
}

/// [`Enumerator::normalized_leading_sequence`] with default settings.
pub fn normalized_leading_sequence(set: &MatrixSet, nmax: usize) -> Result<Vec<Matrix>> {
    Enumerator::default().normalized_leading_sequence(set, nmax)
}
