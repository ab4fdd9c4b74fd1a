use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exactarith::{Cyclotomic, SparsePoly};
use crate::groups::GroupProduct;
use crate::metrics::WeightFunction;
use crate::posets::Poset;
use crate::subset::Subset;

fn prod(h: &[u64], set: Subset, minus_one: bool) -> i64 {
    set.iter()
        .map(|i| h[i] as i64 - minus_one as i64)
        .product()
}

fn sign(s: Subset) -> i64 {
    if s.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `φ(D, I)`.
pub fn phi(poset: &Poset, h: &[u64], d: Subset, i: Subset) -> i64 {
    let max = poset.maximal(i);
    let meet = i.intersection(d);
    if !meet.is_subset_of(max) {
        return 0;
    }
    sign(meet) * prod(h, i.minus(max), false) * prod(h, max.minus(d), true)
}

/// `ψ(D, I)`.
pub fn psi(poset: &Poset, h: &[u64], d: Subset, i: Subset) -> i64 {
    let min = poset.minimal(d);
    let meet = i.intersection(d);
    if !meet.is_subset_of(min) {
        return 0;
    }
    sign(meet) * prod(h, d.minus(min), false) * prod(h, min.minus(i), true)
}

fn check_shapes(group: &GroupProduct, poset: &Poset, omega: &WeightFunction) -> Result<()> {
    if group.num_coordinates() != poset.size() || omega.len() != poset.size() {
        return Err(Error::ShapeMismatch(
            "group, poset and weight function must share the index set".into(),
        ));
    }
    Ok(())
}

/// `Σ_{wt(β)=b} f(α, β)` through the ideal sum over `I(P)` with `ϖ(I) = b`.
pub fn signature_via_ideals(
    group: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    alpha: usize,
    b: Ratio<i64>,
    budget: &Budget,
) -> Result<i64> {
    check_shapes(group, poset, omega)?;
    let d = poset.up_closure(group.support_of(alpha));
    let h = group.coordinate_orders();
    Ok(poset
        .ideals(budget)?
        .into_iter()
        .filter(|&i| omega.varpi(i) == b)
        .map(|i| phi(poset, h, d, i))
        .sum())
}

/// `Σ_{wt_P̄(γ)=b} f(γ, θ)` through the ideal sum over `I(P̄)`.
pub fn signature_via_ideals_psi(
    group: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    theta: usize,
    b: Ratio<i64>,
    budget: &Budget,
) -> Result<i64> {
    check_shapes(group, poset, omega)?;
    let i = poset.closure(group.support_of(theta));
    let h = group.coordinate_orders();
    Ok(poset
        .dual()
        .ideals(budget)?
        .into_iter()
        .filter(|&d| omega.varpi(d) == b)
        .map(|d| psi(poset, h, d, i))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FEngine {
    /// Character sums over every `β ∈ H`.
    BruteForce,
    /// Sum over the ideals inside `X = (Ω − D) ∪ min_P(D)`.
    IdealSum,
    /// Level-wise product formula; hierarchical posets only.
    Hierarchical,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `F(ω, α) = Σ_l Σ_{wt(β)=l} f(α, β) x^l`.
pub fn f_poly(
    group: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    alpha: usize,
    engine: FEngine,
    budget: &Budget,
) -> Result<SparsePoly> {
    check_shapes(group, poset, omega)?;
    if alpha >= group.order() {
        return Err(Error::InvalidInput(format!("element {alpha} out of range")));
    }
    let h = group.coordinate_orders();
    let d = poset.up_closure(group.support_of(alpha));
    match engine {
        FEngine::BruteForce => {
            let n = group.enumerable_len(budget)?;
            let m = group.exponent() as usize;
            let ctx = Cyclotomic::new(group.exponent())?;
            let supports = group.all_supports(budget)?;
            let mut hist: BTreeMap<Ratio<i64>, Vec<i64>> = BTreeMap::new();
            for (beta, &s) in supports.iter().enumerate().take(n) {
                let w = omega.varpi(poset.closure(s));
                hist.entry(w).or_insert_with(|| vec![0; m])[group.pairing_exponent(alpha, beta) as usize] += 1;
            }
            let mut out = SparsePoly::zero();
            for (w, counts) in hist {
                let v = ctx.from_exponent_counts(&counts);
                let c = v.to_integer().ok_or_else(|| {
                    Error::Precondition(format!("weight class sum {v} is not an integer"))
                })?;
                out.add_term(w, rat(c));
            }
            Ok(out)
        }
        FEngine::IdealSum => {
            let x = poset.ground().minus(d).union(poset.minimal(d));
            let mut out = SparsePoly::zero();
            for i in poset.ideals(budget)? {
                if !i.is_subset_of(x) {
                    continue;
                }
                let meet = i.intersection(d);
                let max = poset.maximal(i);
                let c = sign(meet) * prod(h, i.minus(max), false) * prod(h, max.minus(d), true);
                out.add_term(omega.varpi(i), rat(c));
            }
            Ok(out)
        }
        FEngine::Hierarchical => {
            if !poset.is_hierarchical() {
                return Err(Error::Precondition("poset is not hierarchical".into()));
            }
            let lv = poset.levels();
            let r = lv.sigma(d);
            let xw = |i: usize| SparsePoly::monomial(BigRational::one(), omega.value(i));
            // Π_{i ∈ W_1 ∪ .. ∪ W_{t-1}} h_i x^{ω(i)}
            let prefix = |t: u32| {
                let set = if t <= 1 { Subset::EMPTY } else { lv.union_up_to(t - 1) };
                set.iter().fold(SparsePoly::one(), |acc, i| {
                    &acc * &xw(i).scale(&rat(h[i] as i64))
                })
            };
            let level_poly = |t: u32, dd: Subset| {
                let w = lv.level(t);
                let mut acc = SparsePoly::one();
                for i in w.intersection(dd).iter() {
                    acc = &acc * &(&SparsePoly::one() - &xw(i));
                }
                for i in w.minus(dd).iter() {
                    acc = &acc * &(&xw(i).scale(&rat(h[i] as i64 - 1)) + &SparsePoly::one());
                }
                acc
            };
            let mut out = &prefix(r) * &level_poly(r, d);
            for t in 1..r {
                out = &out + &(&prefix(t) * &level_poly(t, Subset::EMPTY));
            }
            for t in 2..=r {
                out = &out - &prefix(t);
            }
            debug_assert!(out.terms().all(|(_, c)| !c.is_zero()));
            Ok(out)
        }
    }
}
