use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::sparse::SparsePoly;
use crate::error::{Error, Result};

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Exact quotient of dense integer polynomials by a monic divisor.
fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dd] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i - dd + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division was not exact");
    quot
}

fn poly_mul_dense(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dense ascending coefficients of `Φ_m`.
fn cyclotomic_dense(m: u32) -> Vec<i64> {
    let mut memo: BTreeMap<u32, Vec<i64>> = BTreeMap::new();
    for d in divisors(m) {
        let mut xd_minus_one = vec![0i64; d as usize + 1];
        xd_minus_one[0] = -1;
        xd_minus_one[d as usize] = 1;
        let mut prod = vec![1i64];
        for e in divisors(d).into_iter().filter(|&e| e < d) {
            prod = poly_mul_dense(&prod, &memo[&e]);
        }
        let phi = exact_div_monic(&xd_minus_one, &prod);
        memo.insert(d, phi);
    }
    memo.remove(&m).unwrap()
}

/// The `m`-th cyclotomic polynomial, by recursive exact division of `x^m - 1`.
///
/// # Panics
/// If `m == 0`.
pub fn cyclotomic_polynomial(m: u32) -> SparsePoly {
    assert!(m >= 1, "cyclotomic_polynomial needs m >= 1");
    SparsePoly::from_int_coeffs(&cyclotomic_dense(m))
}

/// Reduction context for `Z[ζ_m] = Z[x] / Φ_m`.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    m: u32,
    phi: Vec<i64>,
}

impl Cyclotomic {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("cyclotomic modulus must be positive".into()));
        }
        Ok(Cyclotomic {
            m,
            phi: cyclotomic_dense(m),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// `deg Φ_m = φ(m)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduce an integer polynomial in `ζ` (ascending coefficients) to the
    /// canonical power-basis coordinates.
    pub fn reduce_coeffs(&self, coeffs: &[i64]) -> Vec<i64> {
        let deg = self.degree();
        let mut r = coeffs.to_vec();
        if r.len() < deg {
            r.resize(deg, 0);
        }
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (j, &pj) in self.phi.iter().enumerate() {
                    r[i - deg + j] -= c * pj;
                }
            }
        }
        r.truncate(deg);
        r
    }

    /// `Σ_e counts[e] ζ^e` for a histogram indexed by exponent `0..m`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> CycInt {
        debug_assert_eq!(counts.len(), self.m as usize);
        CycInt {
            modulus: self.m,
            coeffs: self.reduce_coeffs(counts),
        }
    }

    pub fn zeta_pow(&self, e: i64) -> CycInt {
        let mut counts = vec![0i64; self.m as usize];
        counts[e.rem_euclid(self.m as i64) as usize] = 1;
        self.from_exponent_counts(&counts)
    }
}

/// An element of the ring of integers of the `m`-th cyclotomic field, stored
/// in canonical form: coordinates in the basis `ζ^0, .., ζ^(φ(m)-1)` after
/// reduction modulo `Φ_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycInt {
    modulus: u32,
    coeffs: Vec<i64>,
}

/// `Σ ζ_m^e` over a multiset of exponents.
pub fn root_of_unity_sum<I: IntoIterator<Item = i64>>(m: u32, exponents: I) -> Result<CycInt> {
    let ctx = Cyclotomic::new(m)?;
    let mut counts = vec![0i64; m as usize];
    for e in exponents {
        counts[e.rem_euclid(m as i64) as usize] += 1;
    }
    Ok(ctx.from_exponent_counts(&counts))
}

impl CycInt {
    pub fn zero(m: u32) -> Result<Self> {
        Ok(CycInt {
            modulus: m,
            coeffs: vec![0; Cyclotomic::new(m)?.degree()],
        })
    }

    pub fn from_int(m: u32, v: i64) -> Result<Self> {
        let mut z = CycInt::zero(m)?;
        z.coeffs[0] = v;
        Ok(z)
    }

    pub fn one(m: u32) -> Result<Self> {
        CycInt::from_int(m, 1)
    }

    pub fn zeta_pow(m: u32, e: i64) -> Result<Self> {
        Ok(Cyclotomic::new(m)?.zeta_pow(e))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if any.
    pub fn to_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let ctx = Cyclotomic::new(self.modulus)?;
        Ok(CycInt {
            modulus: self.modulus,
            coeffs: ctx.reduce_coeffs(&poly_mul_dense(&self.coeffs, &other.coeffs)),
        })
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Re-express in `Z[ζ_target]` via `ζ_m = ζ_target^(target/m)`.
    pub fn embed(&self, target: u32) -> Result<CycInt> {
        if target == 0 || target % self.modulus != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot embed modulus {} into {}",
                self.modulus, target
            )));
        }
        let ctx = Cyclotomic::new(target)?;
        let step = (target / self.modulus) as usize;
        let mut counts = vec![0i64; target as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            counts[(j * step) % target as usize] += c;
        }
        Ok(ctx.from_exponent_counts(&counts))
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    /// # Panics
    /// On modulus mismatch; use [`CycInt::checked_add`] to get an error instead.
    fn add(self, rhs: &CycInt) -> CycInt {
        self.checked_add(rhs).expect("CycInt modulus mismatch")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.checked_sub(rhs).expect("CycInt modulus mismatch")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.checked_mul(rhs).expect("CycInt modulus mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.to_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z{}", self.modulus)?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[{}]({})", self.modulus, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), SparsePoly::from_int_coeffs(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), SparsePoly::from_int_coeffs(&[1, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            SparsePoly::from_int_coeffs(&[1, 0, -1, 0, 1])
        );
        // Φ_105 is the first with a coefficient of absolute value 2.
        let c105 = cyclotomic_dense(105);
        assert_eq!(c105.len() - 1, euler_phi(105) as usize);
        assert!(c105.contains(&-2));
    }

    #[test]
    fn root_sums_from_examples() {
        assert_eq!(root_of_unity_sum(2, [0, 0, 1]).unwrap().to_integer(), Some(1));
        assert_eq!(root_of_unity_sum(3, [1, 2]).unwrap().to_integer(), Some(-1));
        assert!(root_of_unity_sum(4, [0, 1, 2, 3]).unwrap().is_zero());
        assert_eq!(root_of_unity_sum(1, [0]).unwrap().to_integer(), Some(1));
    }

    #[test]
    fn rational_integer_detection() {
        assert_eq!(CycInt::from_int(7, 5).unwrap().to_integer(), Some(5));
        assert_eq!(CycInt::zeta_pow(3, 1).unwrap().to_integer(), None);
        assert_eq!(root_of_unity_sum(3, [1, 2]).unwrap().to_integer(), Some(-1));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = CycInt::one(3).unwrap();
        let b = CycInt::one(4).unwrap();
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ModulusMismatch { left: 3, right: 4 })
        ));
        let a12 = a.embed(12).unwrap();
        let b12 = b.embed(12).unwrap();
        assert_eq!(a12.checked_add(&b12).unwrap().to_integer(), Some(2));
    }

    #[test]
    fn embedding_preserves_products() {
        let z3 = CycInt::zeta_pow(3, 1).unwrap();
        let z4 = CycInt::zeta_pow(4, 1).unwrap();
        let prod = &z3.embed(12).unwrap() * &z4.embed(12).unwrap();
        // ζ3 ζ4 = ζ12^(4+3)
        assert_eq!(prod, CycInt::zeta_pow(12, 7).unwrap());
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycInt::from_int(5, -3).unwrap().to_string(), "-3");
        let v = &CycInt::zeta_pow(5, 2).unwrap() + &CycInt::from_int(5, 1).unwrap();
        assert_eq!(v.to_string(), "z5^2 + 1");
    }
}
