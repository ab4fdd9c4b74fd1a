use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;

use super::{ClassLabel, Partition};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groups::GroupProduct;
use crate::metrics::{CoveringMetric, WeightFunction};
use crate::posets::Poset;
use crate::subset::Subset;

fn check_ground(host: &GroupProduct, n: usize, what: &str) -> Result<()> {
    if host.num_coordinates() != n {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {n} points, group has {} coordinates",
            host.num_coordinates()
        )));
    }
    Ok(())
}

/// `Q(H, P, ω)`: elements grouped by `wt_(P,ω)(β) = ϖ(⟨supp β⟩_P)`.
pub fn induce_q(
    host: &GroupProduct,
    poset: &Poset,
    omega: &WeightFunction,
    budget: &Budget,
) -> Result<Partition> {
    check_ground(host, poset.size(), "poset")?;
    check_ground(host, omega.len(), "weight function")?;
    let supports = host.all_supports(budget)?;
    let mut cache: HashMap<Subset, Ratio<i64>> = HashMap::new();
    let keys: Vec<Ratio<i64>> = supports
        .iter()
        .map(|&s| *cache.entry(s).or_insert_with(|| omega.varpi(poset.closure(s))))
        .collect();
    Partition::from_keys(host, keys, |w, _| ClassLabel::Weight(*w))
}

/// `CO(H, T)`: elements grouped by covering weight of their support.
pub fn induce_co(host: &GroupProduct, metric: &CoveringMetric, budget: &Budget) -> Result<Partition> {
    check_ground(host, metric.universe(), "covering")?;
    let supports = host.all_supports(budget)?;
    let keys: Vec<u32> = match metric {
        CoveringMetric::Uniform { .. } => supports.iter().map(|&s| metric.weight(s)).collect(),
        CoveringMetric::Explicit(_) => {
            let mut cache: HashMap<Subset, u32> = HashMap::new();
            supports
                .iter()
                .map(|&s| *cache.entry(s).or_insert_with(|| metric.weight(s)))
                .collect()
        }
    };
    Partition::from_keys(host, keys, |w, _| ClassLabel::CoveringWeight(*w))
}

/// Pulls an equivalence on the ideals of `P` back to `H` through
/// `β ↦ ⟨supp β⟩_P`. Every ideal must carry a class label.
pub fn induce_from_ideal_classes(
    host: &GroupProduct,
    poset: &Poset,
    classes: &BTreeMap<Subset, u32>,
    budget: &Budget,
) -> Result<Partition> {
    check_ground(host, poset.size(), "poset")?;
    for ideal in poset.ideals(budget)? {
        if !classes.contains_key(&ideal) {
            return Err(Error::InvalidInput(format!("ideal {ideal} has no class")));
        }
    }
    let supports = host.all_supports(budget)?;
    let keys: Vec<u32> = supports.iter().map(|&s| classes[&poset.closure(s)]).collect();
    Partition::from_keys(host, keys, |c, _| ClassLabel::IdealClass(*c))
}

/// Convenience constructors on [`CoveringMetric`].
pub trait CoveringPartitionExt {
    fn partition(&self, host: &GroupProduct, budget: &Budget) -> Result<Partition>;
}

impl CoveringPartitionExt for CoveringMetric {
    fn partition(&self, host: &GroupProduct, budget: &Budget) -> Result<Partition> {
        induce_co(host, self, budget)
    }
}
