//! Matching of products of binomials `x^n ± a` with positive constants.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sparse::{Exponent, SparsePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorSign {
    Plus,
    Minus,
}

/// The factor `x^degree + constant` or `x^degree - constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialFactor {
    pub degree: u32,
    pub constant: BigRational,
    pub sign: FactorSign,
}

impl BinomialFactor {
    pub fn new(degree: u32, constant: BigRational, sign: FactorSign) -> Self {
        BinomialFactor {
            degree,
            constant,
            sign,
        }
    }

    pub fn plus(degree: u32, constant: BigRational) -> Self {
        Self::new(degree, constant, FactorSign::Plus)
    }

    pub fn minus(degree: u32, constant: BigRational) -> Self {
        Self::new(degree, constant, FactorSign::Minus)
    }

    pub fn to_poly(&self) -> SparsePoly {
        let c = match self.sign {
            FactorSign::Plus => self.constant.clone(),
            FactorSign::Minus => -self.constant.clone(),
        };
        let mut p = SparsePoly::monomial(BigRational::one(), Exponent::from_integer(self.degree.into()));
        p.add_term(Exponent::zero(), c);
        p
    }
}

fn product(factors: &[BinomialFactor]) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::one(), |acc, f| &acc * &f.to_poly())
}

/// Greedy pairing: repeatedly take the unmatched left factor of largest
/// degree (earliest on ties) and pair it with the earliest unmatched right
/// factor carrying the same degree and constant.
fn greedy_pairing<L, R>(left: &[L], right: &[R], key_l: impl Fn(&L) -> (u32, BigRational), key_r: impl Fn(&R) -> (u32, BigRational)) -> Option<Vec<usize>> {
    if left.len() != right.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..left.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(key_l(&left[i]).0));
    let mut used = vec![false; right.len()];
    let mut sigma = vec![usize::MAX; left.len()];
    for i in order {
        let (d, c) = key_l(&left[i]);
        let j = (0..right.len()).find(|&j| {
            !used[j] && {
                let (dj, cj) = key_r(&right[j]);
                dj == d && cj == c
            }
        })?;
        used[j] = true;
        sigma[i] = j;
    }
    Some(sigma)
}

/// Given two families of binomial factors whose products are asserted
/// equal, returns `sigma` with `left[i]` and `right[sigma[i]]` sharing degree
/// and constant.
///
/// The product identity is checked first by exact expansion; `None` means
/// either the products differ or no degree/constant matching exists. The
/// supported shapes are all-plus families on both sides, and the crossed
/// shape where the left side holds `x^n - a` for one index family and
/// `x^m + b` for the other while the right side holds the opposite signs.
pub fn match_binomial_factors(
    left: &[BinomialFactor],
    right: &[BinomialFactor],
) -> Option<Vec<usize>> {
    let positive = |f: &BinomialFactor| f.constant.is_positive();
    if !left.iter().all(positive) || !right.iter().all(positive) {
        return None;
    }
    if product(left) != product(right) {
        return None;
    }
    greedy_pairing(
        left,
        right,
        |f| (f.degree, f.constant.clone()),
        |f| (f.degree, f.constant.clone()),
    )
}

/// The subset form: for a family `(n_i, a_i)` and index sets `c`, `d`, if
/// `Π_{d}(x^n - 1) Π_{rest}(x^n + a)` equals the same expression with `c`,
/// returns pairs `(i, sigma(i))` mapping `c` onto `d` with equal degree and
/// constant.
pub fn match_subset_factors(
    items: &[(u32, BigRational)],
    c: &[usize],
    d: &[usize],
) -> Option<Vec<(usize, usize)>> {
    if items.iter().any(|(_, a)| !a.is_positive()) {
        return None;
    }
    let side = |set: &[usize]| -> Vec<BinomialFactor> {
        items
            .iter()
            .enumerate()
            .map(|(i, (n, a))| {
                if set.contains(&i) {
                    BinomialFactor::minus(*n, BigRational::one())
                } else {
                    BinomialFactor::plus(*n, a.clone())
                }
            })
            .collect()
    };
    if product(&side(d)) != product(&side(c)) {
        return None;
    }
    let sigma = greedy_pairing(
        c,
        d,
        |&i| (items[i].0, items[i].1.clone()),
        |&j| (items[j].0, items[j].1.clone()),
    )?;
    Some(
        c.iter()
            .zip(sigma)
            .map(|(&i, j)| (i, d[j]))
            .collect(),
    )
}
