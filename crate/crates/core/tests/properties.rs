//! Invariants checked on generated inputs.

mod common;

use jsr::algebra::{rcq_membership, Ideal};
use jsr::bounds::{refine_with, RefineOptions};
use jsr::lift::{check_pass_identities, lift_LR};
use jsr::set::ProductWord;
use jsr::{
    check_inessential, check_nilpotent_span, evaluate, generated_subalgebra,
    ideal_chain_monotonicity, jacobson_radical, kron, leading_products, op_norm, quotient,
    set_norm, spectral_radius, Enumerator, Matrix, MatrixSet, C64,
};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(d: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(entry(), d * d).prop_map(move |v| Matrix::new(d, v).unwrap())
}

fn any_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_dim).prop_flat_map(matrix)
}

fn pair(max_dim: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=max_dim).prop_flat_map(|d| (matrix(d), matrix(d)))
}

fn set(max_dim: usize, max_gens: usize) -> impl Strategy<Value = MatrixSet> {
    (1..=max_dim, 1..=max_gens).prop_flat_map(|(d, m)| {
        prop::collection::vec(matrix(d), m).prop_map(|g| MatrixSet::new(g).unwrap())
    })
}

fn scalar() -> impl Strategy<Value = C64> {
    (0.1f64..3.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Random block-upper-triangular set with at least two blocks.
fn block_set(max_dim: usize, max_gens: usize) -> impl Strategy<Value = MatrixSet> {
    any::<u64>().prop_map(move |seed| {
        let mut r = common::rng(seed);
        common::block_upper_set(&mut r, max_dim, max_gens)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_radius_below_norm(a in any_matrix(5)) {
        prop_assert!(spectral_radius(&a).unwrap() <= op_norm(&a) + 1e-8);
    }

    #[test]
    fn spectral_radius_is_homogeneous(a in any_matrix(5), c in scalar()) {
        let lhs = spectral_radius(&a.scale(c)).unwrap();
        let rhs = c.norm() * spectral_radius(&a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8 * rhs.max(1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn op_norm_is_submultiplicative((a, b) in pair(5)) {
        prop_assert!(op_norm(&(&a * &b)) <= op_norm(&a) * op_norm(&b) * (1.0 + 1e-10) + 1e-300);
    }

    #[test]
    fn kron_radius_multiplies((a, b) in (1usize..=4, 1usize..=4).prop_flat_map(|(p, q)| (matrix(p), matrix(q)))) {
        let k = spectral_radius(&kron(&a, &b).unwrap()).unwrap();
        let want = spectral_radius(&a).unwrap() * spectral_radius(&b).unwrap();
        prop_assert!((k - want).abs() <= 1e-7 * want.max(1e-3), "{k} vs {want}");
    }

    #[test]
    fn set_norm_is_submultiplicative(s in set(3, 3), m in 1usize..4, n in 1usize..4) {
        let lhs = set_norm(&s, m + n).unwrap();
        prop_assert!(lhs <= set_norm(&s, m).unwrap() * set_norm(&s, n).unwrap() * (1.0 + 1e-9) + 1e-300);
    }

    #[test]
    fn singleton_set_norm_is_power_norm(a in any_matrix(4), n in 1usize..6) {
        let s = MatrixSet::new(vec![a.clone()]).unwrap();
        let p = evaluate(&s, &ProductWord(vec![0; n])).unwrap();
        prop_assert_eq!(set_norm(&s, n).unwrap(), op_norm(&p));
    }

    #[test]
    fn leading_norms_nondecreasing(s in set(3, 3)) {
        let lps = leading_products(&s, 6).unwrap();
        for w in lps.windows(2) {
            prop_assert!(w[1].norm >= w[0].norm * (1.0 - 1e-12));
        }
    }

    #[test]
    fn set_norm_scales(s in set(3, 3), c in scalar(), n in 1usize..5) {
        let lhs = set_norm(&s.scaled(c), n).unwrap();
        let rhs = c.norm().powi(n as i32) * set_norm(&s, n).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-9 || rhs < 1e-300);
    }

    #[test]
    fn sandwich_and_monotonicity(s in set(3, 3)) {
        let en = Enumerator::default();
        let mut prev: Option<(f64, f64)> = None;
        for n in 1..=6 {
            let (lo, _) = en.lower_bound_r(&s, n).unwrap();
            let up = en.upper_bound(&s, n).unwrap();
            prop_assert!(lo <= up + 1e-9);
            if let Some((pl, pu)) = prev {
                prop_assert!(lo >= pl && up <= pu);
            }
            prev = Some((lo, up));
        }
    }

    #[test]
    fn bounds_scale_equivariantly(s in set(3, 2), c in scalar()) {
        let en = Enumerator::default();
        let (l1, _, u1) = en.sandwich(&s, 5).unwrap();
        let (l2, _, u2) = en.sandwich(&s.scaled(c), 5).unwrap();
        let k = c.norm();
        prop_assert!(rel(l2, k * l1) <= 1e-9 || l1 == 0.0 && l2 == 0.0, "{l2} vs {}", k * l1);
        prop_assert!(rel(u2, k * u1) <= 1e-9 || u1 == 0.0 && u2 == 0.0);
    }

    #[test]
    fn power_set_interval_matches_power_of_interval(s in set(3, 2), k in 2usize..=3) {
        let opts = RefineOptions::new(1e-3, 200_000);
        let base = refine_with(&s, &opts).unwrap();
        let pow = refine_with(&s.power_set(k, 1_000).unwrap(), &opts).unwrap();
        let kk = k as i32;
        let (lo, hi) = (base.lower.powi(kk), base.upper.powi(kk));
        let slack = 1e-9 * hi.max(1.0);
        prop_assert!(pow.lower <= hi + slack && lo <= pow.upper + slack,
            "[{}, {}] vs [{lo}, {hi}]", pow.lower, pow.upper);
    }

    #[test]
    fn lift_of_word_is_product_of_lifts(s in set(3, 3), word in prop::collection::vec(0usize..3, 1..5), x in any::<u64>()) {
        let word: Vec<usize> = word.into_iter().map(|j| j % s.len()).collect();
        let d = s.dim();
        let mut r = common::rng(x);
        let xm = common::uniform_matrix(&mut r, d);
        // L_P R_P applied as successive lifts: the b-side order reverses
        let p = evaluate(&s, &ProductWord(word.clone())).unwrap();
        let direct = lift_LR(&p, &p).unwrap().act(&xm);
        let mut y = xm.clone();
        for &j in word.iter().rev() {
            let g = &s.generators()[j];
            y = lift_LR(g, g).unwrap().act(&y);
        }
        // successive lifts give P·X·Pʳ with Pʳ the reversed word
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let pr = evaluate(&s, &ProductWord(rev)).unwrap();
        let want = &(&p * &xm) * &pr;
        prop_assert!((&y - &want).frobenius_norm() <= 1e-9 * want.frobenius_norm().max(1.0));
        let want_direct = &(&p * &xm) * &p;
        prop_assert!((&direct - &want_direct).frobenius_norm() <= 1e-9 * want_direct.frobenius_norm().max(1.0));
    }

    #[test]
    fn lift_norm_and_radius_factor((a, b) in pair(3)) {
        let l = lift_LR(&a, &b).unwrap();
        prop_assert!(op_norm(l.matrix()) <= op_norm(&a) * op_norm(&b) * (1.0 + 1e-10) + 1e-300);
        let want = spectral_radius(&a).unwrap() * spectral_radius(&b).unwrap();
        let got = spectral_radius(l.matrix()).unwrap();
        prop_assert!((got - want).abs() <= 1e-7 * want.max(1e-3), "{got} vs {want}");
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lifted_root_radii_are_squares(s in set(3, 3)) {
        let r = check_pass_identities(&s, 4, 100_000).unwrap();
        prop_assert!(r.r_exact_gap <= 1e-7, "{r:?}");
        prop_assert!(r.pass, "{r:?}");
    }

    #[test]
    fn refine_keeps_deep_brute_force_lower_bound((a, b) in (matrix(2), matrix(2))) {
        let s = MatrixSet::new(vec![a, b]).unwrap();
        let rep = refine_with(&s, &RefineOptions::new(1e-3, 300_000)).unwrap();
        let (bl, _) = common::brute_sandwich(&s, 14);
        prop_assert!(bl <= rep.upper * (1.0 + 1e-9), "{bl} > {}", rep.upper);
    }

    #[test]
    fn zero_radius_means_nilpotent_span(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let s = common::strictly_upper_set(&mut r, 5, 3);
        let rep = refine_with(&s, &RefineOptions::new(1e-13, 1_000_000)).unwrap();
        prop_assert!(rep.upper < 1e-12);
        let d = s.dim();
        let alg = generated_subalgebra(&s, d * d).unwrap();
        // random combinations of sampled products are nilpotent
        use rand::Rng;
        let mut combo = Matrix::zeros(d);
        for _ in 0..4 {
            let len = r.random_range(1..=3);
            let w: Vec<usize> = (0..len).map(|_| r.random_range(0..s.len())).collect();
            let p = evaluate(&s, &ProductWord(w)).unwrap();
            prop_assert!(alg.coordinates(&p).is_ok());
            combo = &combo + &p.scale_real(r.random_range(-1.0..1.0));
        }
        let mut pw = Matrix::identity(d);
        for _ in 0..d {
            pw = &pw * &combo;
        }
        prop_assert!(pw.frobenius_norm() <= 1e-12);
        let nil = check_nilpotent_span(&s).unwrap();
        prop_assert!(nil.pass && nil.nil_degree.unwrap() <= d);
    }

    #[test]
    fn radical_properties(s in block_set(4, 3)) {
        let d = s.dim();
        let alg = generated_subalgebra(&s, d * d).unwrap();
        let rad = jacobson_radical(&alg).unwrap();
        prop_assert!(rad.two_sided_residual(&alg) <= 1e-9 * alg.basis().iter()
            .flat_map(|a| alg.basis().iter().map(move |b| (a * b).frobenius_norm()))
            .fold(1.0, f64::max));
        for v in rad.basis() {
            prop_assert!(rcq_membership(&alg, v, 2).unwrap().member);
        }
        let q = quotient(&alg, rad.clone()).unwrap();
        prop_assert_eq!(jacobson_radical(&q.as_algebra().unwrap()).unwrap().dim(), 0);

        let mut r = common::rng(d as u64 * 7919 + alg.dim() as u64);
        use rand::Rng;
        for _ in 0..10 {
            let x: Vec<C64> = (0..alg.dim()).map(|_| C64::new(r.random_range(-1.0..1.0), 0.0)).collect();
            if rad.residual(&x) > 1e-3 {
                prop_assert!(!rcq_membership(&alg, &x, 2).unwrap().member);
            }
        }
    }

    #[test]
    fn quotient_rep_is_multiplicative_and_kernel_exact(s in block_set(4, 3), seed in any::<u64>()) {
        use rand::Rng;
        let d = s.dim();
        let alg = generated_subalgebra(&s, d * d).unwrap();
        let rad = jacobson_radical(&alg).unwrap();
        let q = quotient(&alg, rad.clone()).unwrap();
        let mut r = common::rng(seed);
        let n = alg.dim();
        let rand_elem = |r: &mut rand_chacha::ChaCha8Rng| -> Vec<C64> {
            (0..n).map(|_| C64::new(r.random_range(-1.0..1.0), 0.0)).collect()
        };
        for _ in 0..5 {
            let x = rand_elem(&mut r);
            let y = rand_elem(&mut r);
            let lhs = q.rep(&alg.multiply(&x, &y));
            let rhs = &q.rep(&x) * &q.rep(&y);
            prop_assert!((&lhs - &rhs).frobenius_norm() <= 1e-9 * rhs.frobenius_norm().max(1.0));
        }
        for v in rad.basis() {
            prop_assert!(q.rep(v).frobenius_norm() <= 1e-9);
        }
        for _ in 0..5 {
            let x = rand_elem(&mut r);
            if rad.residual(&x) > 1e-3 {
                prop_assert!(q.rep(&x).frobenius_norm() > 1e-9);
            }
        }
    }

    #[test]
    fn inessential_on_block_sets(s in block_set(4, 3)) {
        let r = check_inessential(&s, 200_000).unwrap();
        prop_assert!(r.pass, "{r:?}");
    }

    #[test]
    fn nested_quotient_uppers_shrink(s in block_set(4, 2)) {
        let d = s.dim();
        let alg = generated_subalgebra(&s, d * d).unwrap();
        let rad = jacobson_radical(&alg).unwrap();
        let chain = vec![Ideal::zero(&alg), rad, Ideal::whole(&alg)];
        let r = ideal_chain_monotonicity(&s, &alg, &chain, 4, 10_000_000).unwrap();
        for w in r.rows.windows(2) {
            prop_assert!(w[1].upper <= w[0].upper + 1e-8);
        }
        prop_assert!(r.pass);
    }
}
