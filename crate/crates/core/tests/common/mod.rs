//! Independent reference computations and seeded input generators shared by
//! the integration tests. Nothing here calls the crate's numerical kernels.

#![allow(dead_code)]

use jsr::{Matrix, MatrixSet, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense row-major complex matrix kept separate from the crate's type.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<C64>,
}

impl Dense {
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            n: m.dim(),
            a: m.data().to_vec(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            a[i * n + i] = C64::new(1.0, 0.0);
        }
        Self { n, a }
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let n = self.n;
        let mut a = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                for j in 0..n {
                    a[i * n + j] += x * o.at(k, j);
                }
            }
        }
        Dense { n, a }
    }

    fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    fn apply_adjoint(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.at(i, j).conj() * v[i]).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn vnorm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues of a 2 × 2 matrix by the quadratic formula.
pub fn eig2(m: &Dense) -> [C64; 2] {
    assert_eq!(m.n, 2);
    let (a, b, c, d) = (m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det * 4.0).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

/// Spectral radius for 2 × 2 or triangular matrices.
pub fn rho_closed_form(m: &Dense) -> f64 {
    if m.n == 2 {
        let [x, y] = eig2(m);
        return x.norm().max(y.norm());
    }
    let lower_zero = (0..m.n).all(|i| (0..i).all(|j| m.at(i, j) == C64::new(0.0, 0.0)));
    let upper_zero = (0..m.n).all(|i| (i + 1..m.n).all(|j| m.at(i, j) == C64::new(0.0, 0.0)));
    assert!(lower_zero || upper_zero, "closed form needs 2x2 or triangular input");
    (0..m.n).map(|i| m.at(i, i).norm()).fold(0.0, f64::max)
}

/// Largest singular value of a 2 × 2 matrix from the invariants of `aᴴa`.
pub fn sigma_max2(m: &Dense) -> f64 {
    assert_eq!(m.n, 2);
    let f2 = m.frobenius().powi(2);
    let det = (m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)).norm();
    let disc = (f2 * f2 - 4.0 * det * det).max(0.0).sqrt();
    ((f2 + disc) / 2.0).sqrt()
}

/// Spectral norm by power iteration on `aᴴa` from a fixed start vector.
pub fn norm_power(m: &Dense, iters: usize) -> f64 {
    if m.frobenius() == 0.0 {
        return 0.0;
    }
    let mut v: Vec<C64> = (0..m.n)
        .map(|i| C64::new(1.0 + 0.37 * i as f64, 0.11 * (i as f64 + 1.0)))
        .collect();
    let mut best: f64 = 0.0;
    for _ in 0..iters {
        let n = vnorm(&v);
        if n == 0.0 {
            break;
        }
        v.iter_mut().for_each(|x| *x /= n);
        let w = m.apply(&v);
        best = best.max(vnorm(&w));
        v = m.apply_adjoint(&w);
    }
    best
}

/// Norm used by the brute-force enumeration.
pub fn norm_oracle(m: &Dense) -> f64 {
    if m.n == 2 {
        sigma_max2(m)
    } else {
        norm_power(m, 3000)
    }
}

/// Brute-force `(r_n, β_n)` by explicit recursion over every word.
pub fn brute_sandwich(set: &MatrixSet, depth: usize) -> (f64, f64) {
    let gens: Vec<Dense> = set.generators().iter().map(Dense::from_matrix).collect();
    let mut root = vec![0.0f64; depth];
    let mut norm = vec![0.0f64; depth];
    fn rec(
        gens: &[Dense],
        p: &Dense,
        k: usize,
        depth: usize,
        root: &mut [f64],
        norm: &mut [f64],
    ) {
        for g in gens {
            let q = p.mul(g);
            let rho = rho_closed_form(&q);
            let r = if rho < 1e-300 { 0.0 } else { rho.powf(1.0 / k as f64) };
            root[k - 1] = root[k - 1].max(r);
            norm[k - 1] = norm[k - 1].max(norm_oracle(&q));
            if k < depth {
                rec(gens, &q, k + 1, depth, root, norm);
            }
        }
    }
    rec(&gens, &Dense::identity(set.dim()), 1, depth, &mut root, &mut norm);
    let lower = root.iter().copied().fold(0.0, f64::max);
    let upper = norm
        .iter()
        .enumerate()
        .map(|(i, v)| v.powf(1.0 / (i + 1) as f64))
        .fold(f64::INFINITY, f64::min);
    (lower, upper)
}

pub fn golden_pair() -> MatrixSet {
    MatrixSet::new(vec![
        Matrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]),
        Matrix::from_real(&[&[1.0, 0.0], &[1.0, 1.0]]),
    ])
    .unwrap()
}

pub fn hand_triangular() -> MatrixSet {
    MatrixSet::new(vec![
        Matrix::from_real(&[&[2.0, 5.0], &[0.0, 1.0]]),
        Matrix::from_real(&[&[1.0, 7.0], &[0.0, 3.0]]),
    ])
    .unwrap()
}

pub const PHI: f64 = 1.618_033_988_749_895;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_matrix(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let data = (0..d * d)
        .map(|_| C64::new(rng.random_range(-1.0..=1.0), 0.0))
        .collect();
    Matrix::new(d, data).unwrap()
}

/// Set with `dim ≤ max_dim`, `≤ max_gens` generators, entries in [−1, 1].
pub fn uniform_set(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize) -> MatrixSet {
    let d = rng.random_range(1..=max_dim);
    let m = rng.random_range(1..=max_gens);
    MatrixSet::new((0..m).map(|_| uniform_matrix(rng, d)).collect()).unwrap()
}

/// Random partition of `d` into consecutive diagonal blocks.
pub fn block_sizes(rng: &mut ChaCha8Rng, d: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = d;
    while left > 0 {
        let s = rng.random_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Matrix with zeros below the given diagonal blocks.
pub fn block_upper(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Matrix {
    let d: usize = sizes.iter().sum();
    let mut block_of = Vec::with_capacity(d);
    for (b, s) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, *s));
    }
    let data = (0..d * d)
        .map(|k| {
            let (i, j) = (k / d, k % d);
            if block_of[i] > block_of[j] {
                C64::new(0.0, 0.0)
            } else {
                C64::new(rng.random_range(-1.0..=1.0), 0.0)
            }
        })
        .collect();
    Matrix::new(d, data).unwrap()
}

/// Block-upper-triangular set with `2 ≤ dim ≤ max_dim`, 1 to `max_gens`
/// generators and at least two diagonal blocks.
pub fn block_upper_set(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize) -> MatrixSet {
    let d = rng.random_range(2..=max_dim);
    let mut sizes = block_sizes(rng, d);
    while sizes.len() < 2 {
        sizes = block_sizes(rng, d);
    }
    let m = rng.random_range(1..=max_gens);
    MatrixSet::new((0..m).map(|_| block_upper(rng, &sizes)).collect()).unwrap()
}

/// Strictly upper-triangular set with `2 ≤ dim ≤ max_dim`.
pub fn strictly_upper_set(rng: &mut ChaCha8Rng, max_dim: usize, max_gens: usize) -> MatrixSet {
    let d = rng.random_range(2..=max_dim);
    let m = rng.random_range(1..=max_gens);
    let gens = (0..m)
        .map(|_| {
            let data = (0..d * d)
                .map(|k| {
                    if k % d > k / d {
                        C64::new(rng.random_range(-1.0..=1.0), 0.0)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                })
                .collect();
            Matrix::new(d, data).unwrap()
        })
        .collect();
    MatrixSet::new(gens).unwrap()
}

pub fn write_set(dir: &std::path::Path, name: &str, set: &MatrixSet) -> std::path::PathBuf {
    let mats: Vec<serde_json::Value> = set
        .generators()
        .iter()
        .map(|g| {
            let d = g.dim();
            let re: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| g.get(i, j).re).collect()).collect();
            let im: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| g.get(i, j).im).collect()).collect();
            serde_json::json!({ "re": re, "im": im })
        })
        .collect();
    let doc = serde_json::json!({ "name": name, "dim": set.dim(), "matrices": mats });
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}
