use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponents are exact rationals so that weights `ϖ(I)` can key terms directly.
pub type Exponent = Ratio<i64>;

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(Exponent),
}

/// A finite sum of rational multiples of `x^e` with rational exponents `e`.
///
/// No stored coefficient is zero, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Exponent, BigRational>,
}

fn int_exp(e: i64) -> Exponent {
    Ratio::from_integer(e)
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        SparsePoly::monomial(c, int_exp(0))
    }

    pub fn x() -> Self {
        SparsePoly::monomial(BigRational::one(), int_exp(1))
    }

    pub fn monomial(c: BigRational, e: Exponent) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(e, c);
        p
    }

    /// Dense integer coefficients in ascending degree order.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        let mut p = SparsePoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(int_exp(i as i64), BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(&e) => Degree::Finite(e),
            None => Degree::NegInfinity,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// True when every exponent is a non-negative integer.
    pub fn is_ordinary(&self) -> bool {
        self.terms
            .keys()
            .all(|e| e.is_integer() && *e.numer() >= 0)
    }

    /// Dense ascending coefficients; only for ordinary polynomials.
    pub fn dense_coeffs(&self) -> Result<Vec<BigRational>> {
        if !self.is_ordinary() {
            return Err(Error::Precondition(
                "dense form needs non-negative integer exponents".into(),
            ));
        }
        let Degree::Finite(d) = self.degree() else {
            return Ok(Vec::new());
        };
        let d = d.to_integer() as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e.to_integer() as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let dense = self.dense_coeffs()?;
        Ok(dense
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c))
    }

    /// Euclidean division for ordinary polynomials.
    pub fn div_rem(&self, divisor: &SparsePoly) -> Result<(SparsePoly, SparsePoly)> {
        if divisor.is_zero() {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        }
        if !self.is_ordinary() || !divisor.is_ordinary() {
            return Err(Error::Precondition(
                "division needs non-negative integer exponents".into(),
            ));
        }
        let Degree::Finite(dd) = divisor.degree() else {
            unreachable!()
        };
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut quot = SparsePoly::zero();
        let mut rem = self.clone();
        while let Degree::Finite(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lead;
            let shift = SparsePoly::monomial(c, rd - dd);
            rem = &rem - &(&shift * divisor);
            quot = &quot + &shift;
        }
        Ok((quot, rem))
    }

    /// Integer coefficients, when every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<(Exponent, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (*e, c.to_integer())))
            .collect()
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

fn fmt_exp(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({})", e)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let is_const = e.is_zero();
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            if !is_const {
                if e.is_one() {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", fmt_exp(e))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl SparsePoly {
    /// Approximate value at a float point; reporting only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * x.powf(e.to_f64().unwrap_or(f64::NAN)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn zero_degree_is_neg_infinity() {
        assert_eq!(SparsePoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(SparsePoly::one().degree(), Degree::Finite(Ratio::from_integer(0)));
        assert!(Degree::NegInfinity < Degree::Finite(Ratio::from_integer(0)));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = SparsePoly::from_int_coeffs(&[1, 2, 3]);
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn rational_exponents_multiply() {
        let half = Ratio::new(1, 2);
        let a = SparsePoly::monomial(q(2), half);
        let b = &a * &a;
        assert_eq!(b, SparsePoly::monomial(q(4), Ratio::from_integer(1)));
        assert!(!a.is_ordinary());
        assert!(a.dense_coeffs().is_err());
    }

    #[test]
    fn division_round_trips() {
        let a = SparsePoly::from_int_coeffs(&[-1, 0, 0, 0, 1]);
        let b = SparsePoly::from_int_coeffs(&[1, 1]);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert!(rem.is_zero());
        assert_eq!(&quo * &b, a);
    }

    #[test]
    fn display_is_readable() {
        let p = SparsePoly::from_int_coeffs(&[1, 0, -1, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - x^2 + 1");
    }
}
