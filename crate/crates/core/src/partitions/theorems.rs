use serde::Serialize;

use super::{induce_co, induce_q, left_dual, mutually_dual, Partition};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groups::GroupProduct;
use crate::metrics::{Covering, CoveringMetric, WeightFunction};
use crate::posets::Poset;

/// The four statements for a hierarchical weighted poset, evaluated
/// independently, plus the unconditional refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem32Report {
    pub udp: bool,
    pub level_condition: bool,
    /// UDP and equal `len`, `ω` forcing equal `h`.
    pub statement1: bool,
    /// `(Q(G,P̄,ω), Q(H,P,ω))` mutually dual.
    pub statement2: bool,
    /// `Q(H,P,ω)` reflexive.
    pub statement3: bool,
    /// `Λ = Q(G,P̄,ω)`.
    pub statement4: bool,
    pub lambda_finer_than_q_bar: bool,
    pub q_classes: usize,
    pub lambda_classes: usize,
}

impl Theorem32Report {
    pub fn equivalent(&self) -> bool {
        self.statement1 == self.statement2
            && self.statement2 == self.statement3
            && self.statement3 == self.statement4
    }
}

fn same_h_and_omega(h: &[u64], omega: &WeightFunction) -> Vec<(u64, num_rational::Ratio<i64>)> {
    h.iter().zip(omega.values()).map(|(&a, &b)| (a, b)).collect()
}

pub fn theorem32_check(
    group: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    budget: &Budget,
) -> Result<Theorem32Report> {
    if !poset.is_hierarchical() {
        return Err(Error::Precondition("poset is not hierarchical".into()));
    }
    if !omega.is_integer() {
        return Err(Error::Precondition("weights must be positive integers".into()));
    }
    let h = group.coordinate_orders();
    let lv = poset.levels();
    let n = poset.size();
    let level_condition = (0..n).all(|u| {
        (0..n).all(|v| lv.len[u] != lv.len[v] || omega.value(u) != omega.value(v) || h[u] == h[v])
    });
    let udp = poset.udp_check(omega, budget)?.holds;
    let q_h = induce_q(group, poset, omega, budget)?;
    let q_g = induce_q(group, &poset.dual(), omega, budget)?;
    let lambda = left_dual(&q_h, budget)?;
    Ok(Theorem32Report {
        udp,
        level_condition,
        statement1: udp && level_condition,
        statement2: mutually_dual(&q_g, &q_h, budget)?,
        statement3: q_h.len() == lambda.len(),
        statement4: lambda == q_g,
        lambda_finer_than_q_bar: lambda.is_finer(&q_g)?,
        q_classes: q_h.len(),
        lambda_classes: lambda.len(),
    })
}

/// Decides `α ∼_Λ γ` by searching for an automorphism preserving `h` and `ω`
/// that carries `⟨supp γ⟩_P̄` onto `⟨supp α⟩_P̄`.
pub fn prop33_predicate(
    group: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    alpha: usize,
    gamma: usize,
    budget: &Budget,
) -> Result<bool> {
    if !poset.is_hierarchical() {
        return Err(Error::Precondition("poset is not hierarchical".into()));
    }
    let d = poset.up_closure(group.support_of(alpha));
    let b = poset.up_closure(group.support_of(gamma));
    if d.len() != b.len() {
        return Ok(false);
    }
    let labels = same_h_and_omega(group.coordinate_orders(), omega);
    Ok(poset
        .automorphisms(Some(&labels), budget)?
        .iter()
        .any(|l| b.map(l) == d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem41Report {
    /// `CO(G,T)` finer than `l(CO(H,T))`.
    pub statement1: bool,
    /// `CO(G,T) = l(CO(H,T))`.
    pub statement2: bool,
    /// `T` is a partition with equal block products `Π h_i`.
    pub statement3: bool,
    pub is_partition: bool,
}

impl Theorem41Report {
    pub fn equivalent(&self) -> bool {
        self.statement1 == self.statement2 && self.statement2 == self.statement3
    }
}

pub fn theorem41_check(group: &GroupProduct, t: &Covering, budget: &Budget) -> Result<Theorem41Report> {
    if !t.is_antichain() {
        return Err(Error::Precondition("covering is not an anti-chain".into()));
    }
    let co: Partition = induce_co(group, &CoveringMetric::Explicit(t.clone()), budget)?;
    let dual = left_dual(&co, budget)?;
    let h = group.coordinate_orders();
    let is_partition = t.is_partition();
    let products: Vec<u128> = t
        .members()
        .iter()
        .map(|m| m.iter().map(|i| h[i] as u128).product())
        .collect();
    Ok(Theorem41Report {
        statement1: co.is_finer(&dual)?,
        statement2: co == dual,
        statement3: is_partition && products.windows(2).all(|w| w[0] == w[1]),
        is_partition,
    })
}
