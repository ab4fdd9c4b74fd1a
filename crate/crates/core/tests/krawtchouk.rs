use dualpart::krawtchouk::{
    binom, co_nonreflexivity_verdict, default_width, krawtchouk_class_count, ku_build, ku_eval, ku_eval_with,
    ku_partial_sum, ku_roots, smallest_root, smallest_root_floor, KuEngine, Verdict,
};
use dualpart::metrics::CoveringMetric;
use dualpart::partitions::{induce_co, left_dual};
use dualpart::{Budget, GroupProduct};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (u64, u64, u64)> {
    (0u64..=24, 2u64..=7).prop_flat_map(|(n, q)| (Just(n), 0..=n, Just(q)))
}

proptest! {
    #[test]
    fn evaluation_engines_agree((n, k, q) in triple(), s in 0u64..=24) {
        prop_assume!(s <= n);
        let a = ku_eval_with(n, k, q, s as i64, KuEngine::BinomialSum).unwrap();
        let b = ku_eval_with(n, k, q, s as i64, KuEngine::GeneratingFunction).unwrap();
        let c = ku_eval_with(n, k, q, s as i64, KuEngine::Polynomial).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn orthogonality((n, k, q) in triple(), l in 0u64..=24) {
        prop_assume!(l <= n);
        let sum: BigInt = (0..=n)
            .map(|s| binom(n, s) * BigInt::from(q - 1).pow(s as u32) * ku_eval(n, k, q, s) * ku_eval(n, l, q, s))
            .sum();
        let want = if k == l {
            BigInt::from(q).pow(n as u32) * binom(n, k) * BigInt::from(q - 1).pow(k as u32)
        } else {
            BigInt::zero()
        };
        prop_assert_eq!(sum, want);
    }

    #[test]
    fn partial_sums((n, k, q) in triple(), s in 1u64..=24) {
        prop_assume!(n >= 1 && s <= n);
        let (lhs, rhs) = ku_partial_sum(n, k, q, s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn roots_are_isolated((n, k, q) in triple()) {
        prop_assume!(k >= 1);
        let p = ku_build(n, k, q).unwrap();
        let roots = ku_roots(n, k, q, &default_width()).unwrap();
        prop_assert_eq!(roots.len() as u64, k);
        let zero = BigRational::zero();
        let top = BigRational::from_integer(BigInt::from(n));
        for (i, r) in roots.iter().enumerate() {
            prop_assert!(r.lo >= zero && r.hi <= top && r.width() <= default_width());
            if i > 0 {
                prop_assert!(roots[i - 1].hi < r.lo);
            }
            let (a, b) = (p.eval(&r.lo), p.eval(&r.hi));
            prop_assert!(a.is_zero() || b.is_zero() || (a * b).is_negative());
        }
        let first = smallest_root(n, k, q, &default_width()).unwrap();
        prop_assert_eq!(&first, &roots[0]);
        let floor = smallest_root_floor(n, k, q).unwrap();
        let f = BigRational::from_integer(BigInt::from(floor));
        prop_assert!(f <= first.hi && first.lo < f + BigRational::from_integer(BigInt::from(1)));
    }
}

fn brute_dual_classes(n: usize, k: usize, q: u32, b: &Budget) -> usize {
    let g = GroupProduct::uniform(n, q).unwrap();
    let co = induce_co(&g, &CoveringMetric::uniform(n, k).unwrap(), b).unwrap();
    left_dual(&co, b).unwrap().len()
}

#[test]
fn class_count_and_verdicts_against_brute_force() {
    let b = Budget::default();
    for (q, max_n) in [(2u32, 8usize), (3, 5)] {
        for n in 1..=max_n {
            for k in 1..=n {
                let brute = brute_dual_classes(n, k, q, &b);
                let (n64, k64, q64) = (n as u64, k as u64, q as u64);
                assert_eq!(krawtchouk_class_count(n64, k64, q64).unwrap(), brute, "q={q} n={n} k={k}");
                let v = co_nonreflexivity_verdict(n64, k64, q64).unwrap();
                assert!(v.lambda_lower_bound as usize <= brute);
                assert_eq!(v.co_classes as usize, n.div_ceil(k) + 1);
                match v.verdict {
                    Verdict::Reflexive => assert_eq!(brute as u64, v.co_classes, "q={q} n={n} k={k}"),
                    Verdict::NonReflexive => assert!(brute as u64 > v.co_classes, "q={q} n={n} k={k}"),
                    Verdict::Undecided => {}
                }
            }
        }
    }
}

#[test]
fn small_values() {
    assert_eq!(ku_eval(5, 2, 2, 0), BigInt::from(10));
    assert_eq!(ku_eval(5, 2, 2, 1), BigInt::from(2));
    assert_eq!(ku_eval(3, 1, 3, 3), BigInt::from(-3));
    assert_eq!(ku_eval(4, 0, 5, 2), BigInt::from(1));
    assert!(ku_build(3, 1, 1).is_err());
}
