use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed};
use proptest::prelude::*;

use oppenheim::analysis::kernel::default_kernel;
use oppenheim::analysis::{fourth_moment_count, gauss_sum, weyl_sum};
use oppenheim::dirichlet::{count_approximants, dirichlet_pair};
use oppenheim::exponents::{beta, beta_lower_bound, restricted_signatures, two_beta};
use oppenheim::forms::{DiagonalForm, IntegerForm};
use oppenheim::rational::min_isotropic;
use oppenheim::solver::{parse_epsilon, solve, verify_certificate, SolutionCertificate, SolveOptions};

fn nonzero(max: i64) -> impl Strategy<Value = i64> {
    (1..=max, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn indefinite_ints(d: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(nonzero(max), d).prop_filter("indefinite", |v| v.iter().any(|&x| x > 0) && v.iter().any(|&x| x < 0))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_symmetric_and_above_lower_bound(d in 5usize..80, s in 1usize..79) {
        prop_assume!(s < d);
        let r = d - s;
        prop_assert_eq!(two_beta(r, s).unwrap(), two_beta(s, r).unwrap());
        prop_assert!(beta(r, s).unwrap() >= beta_lower_bound(d).unwrap());
    }

    #[test]
    fn restrictions_drop_k_variables(d in 8usize..60, s in 1usize..59, k in 1usize..=3) {
        prop_assume!(s < d);
        let r = d - s;
        let list = restricted_signatures(r, s, k).unwrap();
        prop_assert!(!list.is_empty() && list.len() <= k + 1);
        for x in list {
            prop_assert_eq!(x.r + x.s, d - k);
            prop_assert!(x.r <= r && x.s <= s);
        }
    }

    #[test]
    fn dirichlet_pair_contract(theta in -1e3f64..1e3, n in 1u64..1_000_000) {
        let p = dirichlet_pair(theta, n).unwrap();
        prop_assert!(p.y >= 1 && p.y as u64 <= n);
        prop_assert_eq!(gcd(p.x.unsigned_abs() as u64, p.y as u64), 1);
        let t = BigRational::from_f64(theta).unwrap();
        let err = (t * BigInt::from(p.y) - BigInt::from(p.x)).abs() * BigInt::from(n);
        prop_assert!(err < BigRational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn approximants_come_in_opposite_pairs(theta in -5f64..5.0, eta in 1e-3f64..0.5, x in 10f64..2000.0) {
        let r = count_approximants(theta, eta, x).unwrap();
        for &(a, b) in &r.pairs {
            prop_assert!(r.pairs.binary_search(&(-a, -b)).is_ok());
        }
        prop_assert!(r.dichotomy_holds);
    }

    #[test]
    fn weyl_sum_conjugate_and_periodic(q in nonzero(40), alpha in 0f64..1.0, p in 1f64..200.0) {
        let qf = q as f64;
        let s = weyl_sum(qf, alpha, p, 5);
        let t = weyl_sum(qf, -alpha, p, 5);
        let u = weyl_sum(qf, alpha + 1.0, p, 5);
        let scale = 1e-9 * (1.0 + s.norm()) * p;
        prop_assert!((s - t.conj()).norm() < scale);
        prop_assert!((s - u).norm() < scale);
    }

    #[test]
    fn gauss_sum_modulus_for_odd_moduli(y in (1u64..400).prop_map(|v| 2 * v + 1), a in 1i64..10_000) {
        prop_assume!(gcd(a as u64, y) == 1);
        let g = gauss_sum(a, y);
        prop_assert!((g.norm_sqr() - y as f64).abs() < 1e-8 * y as f64);
    }

    #[test]
    fn kernel_transform_even_and_below_majorant(alpha in 0f64..500.0) {
        let k = default_kernel();
        let h = k.hat(alpha);
        prop_assert_eq!(h, k.hat(-alpha));
        prop_assert!(h.abs() <= k.hat_majorant(alpha).0 * (1.0 + 1e-9) + 1e-300);
        prop_assert!(h.abs() <= 1.0);
    }

    #[test]
    fn fourth_moment_counts_trivial_solutions(lo in 1i64..500, len in 0i64..60) {
        let n = (len + 1) as u128;
        let c = fourth_moment_count(lo, lo + len).unwrap();
        prop_assert!(c >= 2 * n * n - n);
    }

    #[test]
    fn weighted_norm_dominates_value(f in indefinite_ints(5, 50), m in prop::collection::vec(-30i64..30, 5)) {
        let f = IntegerForm::new(f).unwrap();
        prop_assert!(f.evaluate(&m).unwrap().abs() <= f.weighted_norm(&m).unwrap());
    }

    #[test]
    fn display_round_trips(f in indefinite_ints(6, 1000)) {
        let d = DiagonalForm::from_ints(&f).unwrap();
        let text = d.to_string();
        let back = DiagonalForm::parse(text.trim_start_matches('(').trim_end_matches(')')).unwrap();
        prop_assert_eq!(back, d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isotropic_witness_is_minimal_under_scaling(f in indefinite_ints(5, 12), t in 2i64..6) {
        let form = IntegerForm::new(f.clone()).unwrap();
        let w = min_isotropic(&form, 1 << 20).unwrap().unwrap();
        prop_assert_eq!(form.evaluate(&w.m).unwrap(), 0);
        let scaled = IntegerForm::new(f.iter().map(|x| x * t).collect()).unwrap();
        let ws = min_isotropic(&scaled, 1 << 24).unwrap().unwrap();
        prop_assert_eq!(ws.weighted_norm, w.weighted_norm * t as i128);
    }

    #[test]
    fn solver_agrees_with_integer_search(f in indefinite_ints(5, 12)) {
        // integer values below 1/2 in size are zeros
        let form = IntegerForm::new(f.clone()).unwrap();
        let w = min_isotropic(&form, 1 << 20).unwrap().unwrap();
        let d = DiagonalForm::from_ints(&f).unwrap();
        let eps = parse_epsilon("1/2").unwrap();
        let c = solve(&d, &eps, &SolveOptions::default()).unwrap();
        prop_assert_eq!(c.weighted_norm, w.weighted_norm as f64);
        prop_assert!(verify_certificate(&c, &d, &eps).unwrap().valid);
    }

    #[test]
    fn certificate_json_round_trips(f in indefinite_ints(5, 9), eps_n in 1u32..9) {
        let d = DiagonalForm::from_ints(&f).unwrap();
        let eps = parse_epsilon(&format!("{eps_n}/10")).unwrap();
        let c = solve(&d, &eps, &SolveOptions::default()).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: SolutionCertificate = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, c);
    }
}
