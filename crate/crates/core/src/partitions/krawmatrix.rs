use std::collections::BTreeSet;

use serde::Serialize;

use super::{dual_signature, left_dual, Partition};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exactarith::CycInt;
use crate::groups::GroupProduct;

/// `ρ(A, B) = Σ_{b∈B} f(a, b)` for `A ∈ Λ` (rows) and `B ∈ Γ` (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KrawtchoukMatrix {
    /// The element `a` used for each row.
    pub representatives: Vec<usize>,
    pub entries: Vec<Vec<CycInt>>,
}

impl KrawtchoukMatrix {
    pub fn get(&self, row: u32, col: u32) -> &CycInt {
        &self.entries[row as usize][col as usize]
    }

    /// Integer entries, when every entry is rational.
    pub fn to_integers(&self) -> Option<Vec<Vec<i64>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_integer()).collect())
            .collect()
    }

    /// Cyclotomic coordinate arrays, one per entry.
    pub fn to_json(&self) -> String {
        let coords: Vec<Vec<&[i64]>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|v| v.coeffs()).collect())
            .collect();
        serde_json::to_string(&coords).expect("matrix serialises")
    }
}

/// The left generalized Krawtchouk matrix of `(Λ, Γ)`. Refuses with a
/// witness pair when `Λ` is not finer than `l(Γ)`.
pub fn krawtchouk_matrix(lambda: &Partition, gamma: &Partition, budget: &Budget) -> Result<KrawtchoukMatrix> {
    if !lambda.host().same_shape(gamma.host()) {
        return Err(Error::ShapeMismatch("Λ and Γ live on groups of different shape".into()));
    }
    let dual = left_dual(gamma, budget)?;
    if let Some((a, c)) = lambda.finer_witness(&dual)? {
        return Err(Error::Precondition(format!(
            "Λ is not finer than l(Γ): elements {a} and {c} share a Λ-class but not an l(Γ)-class"
        )));
    }
    let representatives = lambda.representatives();
    let entries = representatives
        .iter()
        .map(|&a| dual_signature(gamma, a, 1).map(|s| s.values))
        .collect::<Result<Vec<_>>>()?;
    Ok(KrawtchoukMatrix {
        representatives,
        entries,
    })
}

/// `C‡ = {β | f(γ, β) = 1 for all γ ∈ C}`.
pub fn code_dual(group: &GroupProduct, code: &[usize]) -> Vec<usize> {
    (0..group.order())
        .filter(|&b| code.iter().all(|&c| group.pairing_exponent(c, b) == 0))
        .collect()
}

/// The subgroup generated by `gens`, sorted.
pub fn subgroup_generated(group: &GroupProduct, gens: &[usize], budget: &Budget) -> Result<Vec<usize>> {
    group.enumerable_len(budget)?;
    let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = group.add(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Both sides of `|C|·|C‡ ∩ B| = Σ_A |C ∩ A|·ρ(A, B)` for every `B ∈ Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacWilliamsCheck {
    pub lhs: Vec<CycInt>,
    pub rhs: Vec<CycInt>,
}

impl MacWilliamsCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn macwilliams_identity(
    code: &[usize],
    lambda: &Partition,
    gamma: &Partition,
    budget: &Budget,
) -> Result<MacWilliamsCheck> {
    let group = lambda.host();
    let m = group.exponent();
    let rho = krawtchouk_matrix(lambda, gamma, budget)?;
    let dual = code_dual(group, code);
    let lhs = gamma
        .distribution(&dual)
        .into_iter()
        .map(|c| CycInt::from_int(m, (c * code.len() as u64) as i64))
        .collect::<Result<Vec<_>>>()?;
    let in_code = lambda.distribution(code);
    let mut rhs = vec![CycInt::zero(m)?; gamma.len()];
    for (a, &count) in in_code.iter().enumerate() {
        if count == 0 {
            continue;
        }
        for (b, acc) in rhs.iter_mut().enumerate() {
            *acc = &*acc + &rho.entries[a][b].scale(count as i64);
        }
    }
    Ok(MacWilliamsCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::induce_co;
    use crate::krawtchouk::ku_eval;
    use crate::metrics::CoveringMetric;

    #[test]
    fn hamming_matrix_is_krawtchouk() {
        let b = Budget::default();
        let g = GroupProduct::uniform(4, 2).unwrap();
        let ham = induce_co(&g, &CoveringMetric::uniform(4, 1).unwrap(), &b).unwrap();
        let k = krawtchouk_matrix(&ham, &ham, &b).unwrap();
        let ints = k.to_integers().unwrap();
        for (row, &rep) in k.representatives.iter().enumerate() {
            let t = g.support_of(rep).len() as u64;
            for (col, members) in ham.classes().iter().enumerate() {
                let l = g.support_of(members[0]).len() as u64;
                assert_eq!(num_bigint::BigInt::from(ints[row][col]), ku_eval(4, l, 2, t));
            }
        }
        assert_eq!(ints[0].iter().sum::<i64>(), 16);
    }

    #[test]
    fn refuses_without_refinement() {
        let b = Budget::default();
        let g = GroupProduct::uniform(3, 2).unwrap();
        let err = krawtchouk_matrix(&Partition::trivial(&g), &Partition::trivial(&g), &b).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn identity_on_small_code() {
        let b = Budget::default();
        let g = GroupProduct::uniform(4, 3).unwrap();
        let ham = induce_co(&g, &CoveringMetric::uniform(4, 1).unwrap(), &b).unwrap();
        let code = subgroup_generated(&g, &[g.index_of(&[1, 1, 0, 2]).unwrap(), g.index_of(&[0, 1, 1, 1]).unwrap()], &b).unwrap();
        assert_eq!(code.len(), 9);
        let dual = code_dual(&g, &code);
        assert_eq!(dual.len(), 9);
        assert!(macwilliams_identity(&code, &ham, &ham, &b).unwrap().holds());
    }
}
