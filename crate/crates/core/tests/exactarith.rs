use dualpart::exactarith::{cyclotomic_polynomial, euler_phi, root_of_unity_sum, Cyclotomic};
use dualpart::{CycInt, SparsePoly};
use num_rational::{BigRational, Ratio};
use num_traits::One;
use proptest::prelude::*;

fn cyc(m: u32, c: &[i64]) -> CycInt {
    Cyclotomic::new(m).unwrap().from_exponent_counts(c)
}

/// Complex value of `Σ c_j ζ_m^j`.
fn numeric(m: u32, c: &[i64]) -> (f64, f64) {
    c.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &v)| {
        let t = std::f64::consts::TAU * j as f64 / m as f64;
        (re + v as f64 * t.cos(), im + v as f64 * t.sin())
    })
}

fn counts(m: u32) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, m as usize)
}

fn case() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (1u32..=30).prop_flat_map(|m| (Just(m), counts(m), counts(m), counts(m)))
}

proptest! {
    #[test]
    fn ring_laws((m, a, b, c) in case()) {
        let (a, b, c) = (cyc(m, &a), cyc(m, &b), cyc(m, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycInt::zero(m).unwrap());
        prop_assert_eq!(&a * &CycInt::one(m).unwrap(), a.clone());
    }

    #[test]
    fn zero_test_matches_numeric((m, a, _, _) in case()) {
        let (re, im) = numeric(m, &a);
        let z = cyc(m, &a).is_zero();
        prop_assert_eq!(z, re.abs() < 1e-9 && im.abs() < 1e-9);
    }

    #[test]
    fn products_match_numeric((m, a, b, _) in case()) {
        let p = &cyc(m, &a) * &cyc(m, &b);
        let (ar, ai) = numeric(m, &a);
        let (br, bi) = numeric(m, &b);
        let (pr, pi) = numeric(m, p.coeffs());
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
    }

    #[test]
    fn embedding_preserves_value((m, a, _, _) in case(), f in 1u32..=4) {
        let e = cyc(m, &a).embed(m * f).unwrap();
        let (r0, i0) = numeric(m, &a);
        let (r1, i1) = numeric(m * f, e.coeffs());
        prop_assert!((r0 - r1).abs() < 1e-6 && (i0 - i1).abs() < 1e-6);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(-5i64..=5, 1..8), b in prop::collection::vec(-5i64..=5, 1..5)) {
        let (pa, pb) = (SparsePoly::from_int_coeffs(&a), SparsePoly::from_int_coeffs(&b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.div_rem(&pb).unwrap();
        prop_assert_eq!(&(&q * &pb) + &r, pa);
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
    }
}

#[test]
fn cyclotomic_product_is_x_m_minus_one() {
    for m in 1..=40u32 {
        let prod = (1..=m)
            .filter(|d| m % d == 0)
            .fold(SparsePoly::one(), |acc, d| &acc * &cyclotomic_polynomial(d));
        let target = &SparsePoly::monomial(BigRational::one(), Ratio::from_integer(m as i64))
            - &SparsePoly::one();
        assert_eq!(prod, target, "m = {m}");
    }
}

#[test]
fn euler_phi_counts_units() {
    for m in 1..=200u32 {
        let units = (1..=m).filter(|&a| num_integer::gcd(a, m) == 1).count() as u32;
        assert_eq!(euler_phi(m), units, "m = {m}");
        assert_eq!(Cyclotomic::new(m).unwrap().degree(), units as usize);
    }
}

#[test]
fn full_sums_of_roots_vanish() {
    for m in 2..=36u32 {
        assert!(root_of_unity_sum(m, 0..m as i64).unwrap().is_zero());
        for d in (2..m).filter(|d| m % d == 0) {
            let step = (m / d) as i64;
            assert!(root_of_unity_sum(m, (0..d as i64).map(|j| j * step)).unwrap().is_zero());
        }
        assert_eq!(root_of_unity_sum(m, [0]).unwrap().to_integer(), Some(1));
    }
}

#[test]
fn mixed_moduli_are_rejected() {
    let a = CycInt::one(4).unwrap();
    let b = CycInt::one(6).unwrap();
    assert_eq!(a.checked_add(&b).unwrap_err().code(), "modulus_mismatch");
}
