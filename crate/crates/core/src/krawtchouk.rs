//! Krawtchouk polynomials `KU_(n,k)` over an alphabet of size `q`, exact
//! evaluation, root isolation, and the non-reflexivity criteria for
//! `CO(H, P(k, Ω))` with all `h_i = q`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactarith::{Exponent, SparsePoly};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("alphabet size q = {q} must be at least 2")));
    }
    Ok(())
}

/// Dense polynomial helpers, ascending coefficients.
fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn eval_dense(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

/// Sign of `Σ c_i x^i` at the dyadic point `x = a / 2^e`, from the
/// homogenised form `Σ c_i a^i 2^{e(d−i)}`.
fn sign_at(c: &[BigInt], a: &BigInt, e: u32) -> i32 {
    let Some(d) = c.iter().rposition(|x| !x.is_zero()) else {
        return 0;
    };
    let mut acc = c[d].clone();
    for i in (0..d).rev() {
        acc = acc * a + (&c[i] << (e as usize * (d - i)));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn derivative_int(c: &[BigInt]) -> Vec<BigInt> {
    if c.len() <= 1 {
        return vec![BigInt::zero()];
    }
    c.iter().enumerate().skip(1).map(|(i, a)| a * big(i as u64)).collect()
}

fn derivative_dense(c: &[BigRational]) -> Vec<BigRational> {
    if c.len() <= 1 {
        return vec![BigRational::zero()];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * rat(big(i as u64)))
        .collect()
}

/// `KU_(n,k)` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawtchoukPoly {
    pub n: u64,
    pub k: u64,
    pub q: u64,
    coeffs: Vec<BigRational>,
    /// `k! · KU_(n,k)`, integral.
    scaled: Vec<BigInt>,
    factorial: BigInt,
}

/// Expands the defining sum over `t`.
pub fn ku_build(n: u64, k: u64, q: u64) -> Result<KrawtchoukPoly> {
    check_q(q)?;
    let mut total = vec![BigInt::zero(); k as usize + 1];
    for t in 0..=k {
        let mut p = vec![binom(k, t) * num_traits::pow(big(q - 1), (k - t) as usize)];
        for i in 0..t {
            p = mul_int(&p, &[-big(i), BigInt::one()]);
        }
        for i in 0..k - t {
            p = mul_int(&p, &[BigInt::from(i as i128 - n as i128), BigInt::one()]);
        }
        for (acc, c) in total.iter_mut().zip(p) {
            *acc += c;
        }
    }
    if k % 2 == 1 {
        for c in total.iter_mut() {
            *c = -&*c;
        }
    }
    let factorial: BigInt = (1..=k).map(big).product();
    let coeffs = total
        .iter()
        .map(|c| BigRational::new(c.clone(), factorial.clone()))
        .collect();
    Ok(KrawtchoukPoly {
        n,
        k,
        q,
        coeffs,
        scaled: total,
        factorial,
    })
}

impl KrawtchoukPoly {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the highest nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        eval_dense(&self.coeffs, x)
    }

    pub fn derivative(&self) -> Vec<BigRational> {
        derivative_dense(&self.coeffs)
    }

    /// `KU_(n,k)(s)` at an integer, exactly.
    pub fn eval_integer(&self, s: &BigInt) -> Result<BigInt> {
        let v = eval_int(&self.scaled, s);
        if !(&v % &self.factorial).is_zero() {
            return Err(Error::Precondition(format!("KU({},{}) at {s} is not an integer", self.n, self.k)));
        }
        Ok(v / &self.factorial)
    }

    pub fn eval_derivative(&self, x: &BigRational) -> BigRational {
        eval_dense(&self.derivative(), x)
    }

    pub fn to_sparse(&self) -> SparsePoly {
        let mut p = SparsePoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(Exponent::from_integer(i as i64), c.clone());
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuEngine {
    /// `Σ_t (−1)^t (q−1)^{k−t} C(s,t) C(n−s,k−t)`.
    BinomialSum,
    /// Coefficient of `x^k` in `(1−x)^s (1+(q−1)x)^{n−s}`.
    GeneratingFunction,
    /// Direct evaluation of the expanded polynomial.
    Polynomial,
}

/// `KU_(n,k)(s)` by the binomial sum for `0 ≤ s ≤ n`, by the polynomial
/// otherwise.
pub fn ku_eval(n: u64, k: u64, q: u64, s: u64) -> BigInt {
    let engine = if s <= n { KuEngine::BinomialSum } else { KuEngine::Polynomial };
    ku_eval_with(n, k, q, s as i64, engine).expect("q ≥ 2 and an engine in range")
}

pub fn ku_eval_with(n: u64, k: u64, q: u64, s: i64, engine: KuEngine) -> Result<BigInt> {
    check_q(q)?;
    let in_range = s >= 0 && s as u64 <= n;
    match engine {
        KuEngine::BinomialSum | KuEngine::GeneratingFunction if !in_range => Err(Error::InvalidInput(
            format!("argument {s} outside [0, {n}] for this engine"),
        )),
        KuEngine::BinomialSum => {
            let s = s as u64;
            let mut acc = BigInt::zero();
            for t in 0..=k.min(s) {
                let term = num_traits::pow(big(q - 1), (k - t) as usize) * binom(s, t) * binom(n - s, k - t);
                if t % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            Ok(acc)
        }
        KuEngine::GeneratingFunction => {
            let s = s as u64;
            let k = k as usize;
            let mut p = vec![BigInt::zero(); k + 1];
            p[0] = BigInt::one();
            let mut times = |a: BigInt, b: BigInt, reps: u64| {
                for _ in 0..reps {
                    for i in (0..=k).rev() {
                        let below = if i > 0 { p[i - 1].clone() } else { BigInt::zero() };
                        p[i] = &a * &p[i] + &b * below;
                    }
                }
            };
            times(BigInt::one(), -BigInt::one(), s);
            times(BigInt::one(), big(q - 1), n - s);
            Ok(p[k].clone())
        }
        KuEngine::Polynomial => ku_build(n, k, q)?.eval_integer(&BigInt::from(s)),
    }
}

/// Both sides of `Σ_{l≤k} KU_(n,l)(s) = KU_(n−1,k)(s−1)`.
pub fn ku_partial_sum(n: u64, k: u64, q: u64, s: u64) -> Result<(BigInt, BigInt)> {
    check_q(q)?;
    if n == 0 || s == 0 || s > n {
        return Err(Error::InvalidInput(format!("need n ≥ 1 and s ∈ [1, n], got n={n}, s={s}")));
    }
    let lhs = (0..=k).map(|l| ku_eval(n, l, q, s)).sum();
    let rhs = ku_eval(n - 1, k, q, s - 1);
    Ok((lhs, rhs))
}

/// A root isolated inside `[lo, hi]`; `lo == hi` when the root is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / rat(big(2))).to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// `2^-30 < 10^-9`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 30)
}

const MAX_HALVINGS: u32 = 12;

fn dyadic(a: &BigInt, e: u32) -> BigRational {
    BigRational::new(a.clone(), BigInt::one() << e as usize)
}

/// Bisects the sign change of `c` between `a/2^e` and `b/2^e` down to
/// `width`.
fn bisect(c: &[BigInt], mut a: BigInt, mut b: BigInt, mut e: u32, width: &BigRational) -> RootInterval {
    let slo = sign_at(c, &a, e);
    while &dyadic(&(&b - &a), e) > width {
        a <<= 1;
        b <<= 1;
        e += 1;
        let mid = (&a + &b) >> 1;
        match sign_at(c, &mid, e) {
            0 => {
                let x = dyadic(&mid, e);
                return RootInterval { lo: x.clone(), hi: x };
            }
            sm if sm == slo => a = mid,
            _ => b = mid,
        }
    }
    RootInterval {
        lo: dyadic(&a, e),
        hi: dyadic(&b, e),
    }
}

/// Isolates `expected` distinct real roots of `c` inside `[0, end]` by a
/// sign-change grid of dyadic points refined until the count matches, then
/// bisects each.
fn isolate(c: &[BigInt], end: u64, expected: usize, width: &BigRational) -> Result<Vec<RootInterval>> {
    if expected == 0 {
        return Ok(Vec::new());
    }
    let end = end.max(1);
    let mut found = 0;
    for e in 0..MAX_HALVINGS {
        let pts: Vec<BigInt> = (0..=(end << e)).map(big).collect();
        let signs: Vec<i32> = pts.iter().map(|x| sign_at(c, x, e)).collect();
        let mut out = Vec::new();
        for i in 0..pts.len() {
            if signs[i] == 0 {
                out.push((i, i));
            } else if i + 1 < pts.len() && signs[i + 1] != 0 && signs[i] != signs[i + 1] {
                out.push((i, i + 1));
            }
        }
        found = out.len();
        if found == expected {
            return Ok(out
                .into_iter()
                .map(|(i, j)| {
                    if i == j {
                        let x = dyadic(&pts[i], e);
                        RootInterval { lo: x.clone(), hi: x }
                    } else {
                        bisect(c, pts[i].clone(), pts[j].clone(), e, width)
                    }
                })
                .collect());
        }
    }
    Err(Error::Isolation { found, expected })
}

/// The `k` roots of `KU_(n,k)`, ascending, each within `width`.
pub fn ku_roots(n: u64, k: u64, q: u64, width: &BigRational) -> Result<Vec<RootInterval>> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("root isolation needs 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let p = ku_build(n, k, q)?;
    isolate(&p.scaled, n, k as usize, width)
}

/// The `k − 1` roots of `KU_(n,k)'`.
pub fn ku_derivative_roots(n: u64, k: u64, q: u64, width: &BigRational) -> Result<Vec<RootInterval>> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("root isolation needs 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let p = ku_build(n, k, q)?;
    isolate(&derivative_int(&p.scaled), n, k as usize - 1, width)
}

/// `⌊u⌋` for the smallest root `u` of `KU_(n,k)`, from exact integer values.
pub fn smallest_root_floor(n: u64, k: u64, q: u64) -> Result<u64> {
    check_q(q)?;
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    for s in 0..=n {
        let v = ku_eval(n, k, q, s);
        if v.is_zero() {
            return Ok(s);
        }
        if v.is_negative() {
            return Ok(s - 1);
        }
    }
    Err(Error::Isolation { found: 0, expected: k as usize })
}

/// `⌊w⌋` for the smallest root `w` of `KU_(n,k)'`, `k ≥ 2`.
pub fn smallest_derivative_root_floor(n: u64, k: u64, q: u64) -> Result<u64> {
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!("need 2 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let d = derivative_int(&ku_build(n, k, q)?.scaled);
    let start = sign_at(&d, &BigInt::zero(), 0);
    for s in 0..=n {
        let v = sign_at(&d, &big(s), 0);
        if v == 0 {
            return Ok(s);
        }
        if v != start {
            return Ok(s - 1);
        }
    }
    Err(Error::Isolation { found: 0, expected: k as usize - 1 })
}

/// The smallest root of `KU_(n,k)` from the floor scan plus bisection.
pub fn smallest_root(n: u64, k: u64, q: u64, width: &BigRational) -> Result<RootInterval> {
    let f = smallest_root_floor(n, k, q)?;
    let p = ku_build(n, k, q)?;
    smallest_from_floor(&p.scaled, f, width)
}

/// The smallest root of `KU_(n,k)'`.
pub fn smallest_derivative_root(n: u64, k: u64, q: u64, width: &BigRational) -> Result<RootInterval> {
    let f = smallest_derivative_root_floor(n, k, q)?;
    let d = derivative_int(&ku_build(n, k, q)?.scaled);
    smallest_from_floor(&d, f, width)
}

fn smallest_from_floor(c: &[BigInt], f: u64, width: &BigRational) -> Result<RootInterval> {
    if sign_at(c, &big(f), 0) == 0 {
        let x = rat(big(f));
        return Ok(RootInterval { lo: x.clone(), hi: x });
    }
    Ok(bisect(c, big(f), big(f + 1), 0, width))
}

/// `|{KU_(n,k)(j) | j ∈ [0, n]}|`.
pub fn distinct_values(n: u64, k: u64, q: u64) -> usize {
    (0..=n).map(|j| ku_eval(n, k, q, j)).collect::<HashSet<_>>().len()
}

/// Class id per support size `t ∈ [1, n]` (index `t − 1`) under the
/// Krawtchouk value vectors `(KU_(n−1,s)(t−1) : k | s, 1 ≤ s ≤ n−1)`.
pub fn krawtchouk_classification(n: u64, k: u64, q: u64) -> Result<Vec<u32>> {
    check_q(q)?;
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let ss: Vec<u64> = (1..n).filter(|s| s % k == 0).collect();
    let mut ids: HashMap<Vec<BigInt>, u32> = HashMap::new();
    Ok((1..=n)
        .map(|t| {
            let key: Vec<BigInt> = ss.iter().map(|&s| ku_eval(n - 1, s, q, t - 1)).collect();
            let next = ids.len() as u32;
            *ids.entry(key).or_insert(next)
        })
        .collect())
}

/// `|l(CO(H, P(k, Ω)))|` from the classification, counting `{1_G}`.
pub fn krawtchouk_class_count(n: u64, k: u64, q: u64) -> Result<usize> {
    let c = krawtchouk_classification(n, k, q)?;
    Ok(c.iter().collect::<HashSet<_>>().len() + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reflexive,
    NonReflexive,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Reflexive => "reflexive",
            Verdict::NonReflexive => "non-reflexive",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub verdict: Verdict,
    /// The clause that fired, or `none`.
    pub criterion: String,
    /// `|CO(H, P(k, Ω))| = ⌈n/k⌉ + 1`.
    pub co_classes: u64,
    /// A proven lower bound on `|l(CO)|`.
    pub lambda_lower_bound: u64,
}

/// Decides reflexivity of `CO(H, P(k, Ω))`, `|Ω| = n`, `h_i = q`, by the
/// closed-form criteria only.
pub fn co_nonreflexivity_verdict(n: u64, k: u64, q: u64) -> Result<VerdictReport> {
    check_q(q)?;
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let co = n.div_ceil(k) + 1;
    let ss: Vec<u64> = (1..n).filter(|s| s % k == 0).collect();
    let distinct: Vec<u64> = ss.iter().map(|&s| distinct_values(n - 1, s, q) as u64).collect();
    let bound = distinct.iter().map(|d| d + 1).max().unwrap_or(0).max(co);
    let report = |verdict, criterion: &str, lower: u64| VerdictReport {
        q,
        n,
        k,
        verdict,
        criterion: criterion.to_string(),
        co_classes: co,
        lambda_lower_bound: lower,
    };
    if k == 1 {
        return Ok(report(Verdict::Reflexive, "Thm 4.1: P(1) is a partition with equal blocks", co));
    }
    if k == n {
        return Ok(report(Verdict::Reflexive, "Thm 4.1: P(n) = {Ω} is a partition", co));
    }
    if q == 2 && n >= 2 && k == n - 1 {
        return Ok(report(Verdict::Reflexive, "Prop 4.2(1)", co));
    }
    if q == 2 && n >= 2 && k == 2 {
        return Ok(report(Verdict::Reflexive, "Prop 4.2(2)", co));
    }
    let non = |criterion: &str| report(Verdict::NonReflexive, criterion, bound.max(co + 1));
    if q >= 3 && n >= 3 && (2..n).contains(&k) && n % k == 1 {
        return Ok(report(Verdict::NonReflexive, "Prop 4.3(1)", n + 1));
    }
    if q >= 3 && n >= 4 && k == n - 2 {
        return Ok(non("Prop 4.3(2)"));
    }
    if q == 2 && n >= 5 && k >= n.div_ceil(2) && k <= n - 2 {
        return Ok(non("Prop 4.3(3)"));
    }
    if q == 2 && n >= 7 && k >= n.div_ceil(5) && k <= n - 2 && k % 2 == 1 {
        return Ok(non("Prop 4.3(4)"));
    }
    if k == 2 && q >= 3 && n >= 3 {
        return Ok(non("Thm 4.2(2)"));
    }
    if k == 3 {
        if let Some(clause) = thm42_clause(q, n)? {
            return Ok(non(clause));
        }
        if q == 2 && n >= 5 {
            return Ok(non("Thm 4.2(4)"));
        }
    }
    for (&s, &d) in ss.iter().zip(&distinct) {
        if k * (d - 1) >= n {
            return Ok(non(&format!("Prop 4.1(3) with s={s}")));
        }
    }
    for &s in &ss {
        if k * smallest_root_floor(n - 1, s, q)? >= n {
            return Ok(non(&format!("Prop 4.1(4) with s={s}")));
        }
    }
    if n >= 3 {
        for &s in ss.iter().filter(|&&s| s >= 2) {
            if k * smallest_derivative_root_floor(n - 1, s, q)? >= n {
                return Ok(non(&format!("Prop 4.1(5) with s={s}")));
            }
        }
    }
    Ok(report(Verdict::Undecided, "none", bound))
}

/// The two radical clauses of the `k = 3` threshold theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Thm42Clause {
    /// `3 | n`.
    C31,
    /// `n ≡ 2 (mod 3)`.
    C33,
}

/// `(A, R)` with threshold `(A + √R) / (2(2q−3)²) + 3`.
pub fn thm42_constants(q: u64, clause: Thm42Clause) -> (BigInt, BigInt) {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let q4 = &q3 * &q;
    match clause {
        Thm42Clause::C31 => (
            BigInt::from(9) * (&q - 1),
            BigInt::from(48) * &q4 - BigInt::from(144) * &q3 + BigInt::from(189) * &q2 - BigInt::from(162) * &q
                + 81,
        ),
        Thm42Clause::C33 => (
            BigInt::from(4) * &q2 + BigInt::from(3) * &q - 9,
            BigInt::from(48) * &q4 - BigInt::from(72) * &q3 + BigInt::from(9) * &q2 - BigInt::from(54) * &q
                + 81,
        ),
    }
}

/// Whether `n` reaches the clause threshold, by exact integer comparison:
/// `n ≥ T` iff `L = (n−3)·2(2q−3)² − A ≥ 0` and `L² ≥ R`.
pub fn thm42_threshold(q: u64, clause: Thm42Clause, n: u64) -> Result<bool> {
    check_q(q)?;
    let (a, r) = thm42_constants(q, clause);
    let d = BigInt::from(2 * q as i64 - 3);
    let l: BigInt = (BigInt::from(n) - 3) * 2 * &d * &d - a;
    if l.is_negative() {
        return Ok(false);
    }
    Ok(&l * &l >= r)
}

/// The `k = 3` clause satisfied by `n`, as its criterion label.
pub fn thm42_clause(q: u64, n: u64) -> Result<Option<&'static str>> {
    Ok(match n % 3 {
        0 if thm42_threshold(q, Thm42Clause::C31, n)? => Some("Thm 4.2(3) clause 3.1"),
        1 if n >= 4 && q >= 3 => Some("Thm 4.2(3) clause 3.2"),
        2 if thm42_threshold(q, Thm42Clause::C33, n)? => Some("Thm 4.2(3) clause 3.3"),
        _ => None,
    })
}

/// `a + c·√r` with rational `a`, `c` and `r ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigRational,
}

impl QuadraticSurd {
    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        let d = &self.rational - x;
        if self.coeff.is_zero() || self.radicand.is_zero() {
            return d.cmp(&BigRational::zero());
        }
        let e_sign = self.coeff.signum();
        if d.is_zero() || d.signum() == e_sign {
            return if e_sign.is_positive() { Ordering::Greater } else { Ordering::Less };
        }
        let lhs = &d * &d;
        let rhs = &self.coeff * &self.coeff * &self.radicand;
        let dominant = match lhs.cmp(&rhs) {
            Ordering::Equal => return Ordering::Equal,
            Ordering::Greater => d.signum(),
            Ordering::Less => e_sign,
        };
        if dominant.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let mut f = BigInt::from(self.to_f64().floor() as i64);
        while self.cmp_rational(&rat(f.clone())) == Ordering::Less {
            f -= 1;
        }
        while self.cmp_rational(&rat(&f + 1)) != Ordering::Less {
            f += 1;
        }
        f
    }
}

/// The smallest root of `KU_(n−1,3)'` in closed form:
/// `((q−1)/q)n − 2 + 3/q − √((q−1)(n−3) + q²/3)/q`.
pub fn eq45_w(n: u64, q: u64) -> Result<QuadraticSurd> {
    check_q(q)?;
    if n < 4 {
        return Err(Error::InvalidInput(format!("closed form needs n ≥ 4, got {n}")));
    }
    let qr = rat(big(q));
    let nr = rat(big(n));
    let one = BigRational::one();
    Ok(QuadraticSurd {
        rational: (&qr - &one) / &qr * &nr - rat(big(2)) + rat(big(3)) / &qr,
        coeff: -(&one / &qr),
        radicand: (&qr - &one) * (&nr - rat(big(3))) + &qr * &qr / rat(big(3)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub smallest_root: f64,
    pub ratio: f64,
    pub deviation: f64,
}

/// `|u_(n)/n − (q−1)/q|` along `ns`.
pub fn lemma415_convergence(k: u64, q: u64, ns: &[u64]) -> Result<Vec<ConvergenceRow>> {
    let limit = (q - 1) as f64 / q as f64;
    ns.iter()
        .map(|&n| {
            let r = smallest_root(n, k, q, &default_width())?;
            let u = r.midpoint();
            Ok(ConvergenceRow {
                n,
                smallest_root: u,
                ratio: u / n as f64,
                deviation: (u / n as f64 - limit).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_values() {
        let vals: Vec<BigInt> = (0..=4).map(|s| ku_eval(4, 2, 2, s)).collect();
        assert_eq!(vals, ints(&[6, 0, -2, 0, 6]));
        assert_eq!(ku_build(7, 0, 3).unwrap().coeffs(), &[BigRational::one()]);
        for engine in [KuEngine::BinomialSum, KuEngine::GeneratingFunction, KuEngine::Polynomial] {
            assert_eq!(ku_eval_with(4, 2, 2, 2, engine).unwrap(), BigInt::from(-2));
        }
        assert!(ku_eval_with(4, 2, 2, 5, KuEngine::BinomialSum).is_err());
    }

    #[test]
    fn degree_is_k() {
        for (n, k, q) in [(10, 4, 2), (30, 7, 3), (5, 5, 4)] {
            assert_eq!(ku_build(n, k, q).unwrap().degree(), Some(k as usize));
        }
    }

    #[test]
    fn partial_sum_example() {
        let (l, r) = ku_partial_sum(5, 2, 2, 1).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn roots_of_small_cases() {
        let w = default_width();
        let r = ku_roots(4, 1, 2, &w).unwrap();
        assert_eq!(r[0].lo, rat(big(2)));
        let r = ku_roots(4, 2, 2, &w).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].midpoint() + r[1].midpoint() - 4.0).abs() < 1e-8);
        assert_eq!(smallest_root_floor(4, 2, 2).unwrap(), 1);
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(co_nonreflexivity_verdict(5, 3, 2).unwrap().verdict, Verdict::NonReflexive);
        let v = co_nonreflexivity_verdict(4, 3, 3).unwrap();
        assert_eq!((v.verdict, v.criterion.as_str()), (Verdict::NonReflexive, "Prop 4.3(1)"));
        assert_eq!(co_nonreflexivity_verdict(6, 5, 2).unwrap().verdict, Verdict::Reflexive);
    }

    #[test]
    fn threshold_q2() {
        // Thresholds are about 13.18 (3 | n) and 16.59 (n ≡ 2 mod 3).
        assert!(!thm42_threshold(2, Thm42Clause::C31, 12).unwrap());
        assert!(thm42_threshold(2, Thm42Clause::C31, 15).unwrap());
        assert!(!thm42_threshold(2, Thm42Clause::C33, 14).unwrap());
        assert!(thm42_threshold(2, Thm42Clause::C33, 17).unwrap());
        assert!(thm42_threshold(5, Thm42Clause::C33, 10_000).unwrap());
    }

    #[test]
    fn closed_form_w() {
        for q in [2u64, 3] {
            for n in 4..=30 {
                let w = eq45_w(n, q).unwrap();
                let r = smallest_derivative_root(n - 1, 3, q, &default_width()).unwrap();
                assert!((w.to_f64() - r.midpoint()).abs() < 1e-6, "q={q} n={n}");
                assert_eq!(w.floor(), BigInt::from(smallest_derivative_root_floor(n - 1, 3, q).unwrap()));
            }
        }
        assert!(eq45_w(20, 2).unwrap().floor() * 3 >= BigInt::from(20));
    }
}
