//! Finite posets on `Ω = {0, .., n-1}`: ideals, closures, levels, the dual
//! poset, automorphisms and the unique decomposition property.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::metrics::WeightFunction;
use crate::subset::{Subset, MAX_GROUND};

/// A partial order stored as its reflexive-transitive closure.
///
/// `below[v]` is the principal ideal `{u | u ≼ v}` and `above[u]` the
/// principal filter `{v | u ≼ v}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    below: Vec<Subset>,
    above: Vec<Subset>,
}

/// `len_P` per element, the level sets `W_1..W_m` and the height `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels {
    pub len: Vec<u32>,
    pub levels: Vec<Subset>,
}

impl Levels {
    pub fn height(&self) -> u32 {
        self.levels.len() as u32
    }

    /// `W_j`, 1-based.
    pub fn level(&self, j: u32) -> Subset {
        self.levels[(j - 1) as usize]
    }

    /// `W_1 ∪ .. ∪ W_r`.
    pub fn union_up_to(&self, r: u32) -> Subset {
        self.levels[..r as usize]
            .iter()
            .fold(Subset::EMPTY, |acc, &w| acc.union(w))
    }

    /// `σ(D)`: the largest `r ∈ [1, m]` with `D ⊆ W_r ∪ .. ∪ W_m`.
    /// For `D = ∅` every `r` qualifies, so `σ(∅) = m`.
    pub fn sigma(&self, d: Subset) -> u32 {
        if d.is_empty() {
            return self.height();
        }
        d.iter().map(|u| self.len[u]).min().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Max,
    Min,
}

/// Outcome of the UDP decision, with a violating pair of equal-weight ideals
/// when the property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UdpReport {
    pub holds: bool,
    pub witness: Option<(Subset, Subset)>,
}

impl Poset {
    /// Closes an arbitrary relation list `u ≼ v` reflexively and transitively.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Poset> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidPoset(format!(
                "ground set size {n} must lie in 1..={MAX_GROUND}"
            )));
        }
        let mut below: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(u, v) in relations {
            if u >= n || v >= n {
                return Err(Error::InvalidPoset(format!("relation ({u},{v}) outside 0..{n}")));
            }
            below[v].insert(u);
        }
        // Warshall: if k ≼ v then everything below k is below v.
        for k in 0..n {
            for v in 0..n {
                if below[v].contains(k) {
                    below[v] = below[v].union(below[k]);
                }
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if below[v].contains(u) && below[u].contains(v) {
                    return Err(Error::InvalidPoset(format!(
                        "relations contain a cycle through {u} and {v}"
                    )));
                }
            }
        }
        let mut above = vec![Subset::EMPTY; n];
        for v in 0..n {
            for u in below[v].iter() {
                above[u].insert(v);
            }
        }
        Ok(Poset { n, below, above })
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        Poset::from_relations(n, &[])
    }

    /// The chain `0 ≼ 1 ≼ .. ≼ n-1`.
    pub fn chain(n: usize) -> Result<Poset> {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &rel)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.below[v].contains(u)
    }

    pub fn down_set(&self, v: usize) -> Subset {
        self.below[v]
    }

    pub fn up_set(&self, u: usize) -> Subset {
        self.above[u]
    }

    /// Every strict relation `u ≺ v` of the closed order.
    pub fn strict_relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for u in self.below[v].iter() {
                if u != v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_ideal(&self, b: Subset) -> bool {
        b.iter().all(|v| self.below[v].is_subset_of(b))
    }

    /// `⟨B⟩_P`, the smallest ideal containing `B`.
    pub fn closure(&self, b: Subset) -> Subset {
        b.iter().fold(Subset::EMPTY, |acc, v| acc.union(self.below[v]))
    }

    /// Up-closure, i.e. `⟨B⟩` in the dual poset.
    pub fn up_closure(&self, b: Subset) -> Subset {
        b.iter().fold(Subset::EMPTY, |acc, v| acc.union(self.above[v]))
    }

    pub fn extremes(&self, b: Subset, mode: Extreme) -> Subset {
        let mut out = Subset::EMPTY;
        for v in b.iter() {
            let rel = match mode {
                Extreme::Max => self.above[v],
                Extreme::Min => self.below[v],
            };
            if rel.intersection(b) == Subset::singleton(v) {
                out.insert(v);
            }
        }
        out
    }

    pub fn maximal(&self, b: Subset) -> Subset {
        self.extremes(b, Extreme::Max)
    }

    pub fn minimal(&self, b: Subset) -> Subset {
        self.extremes(b, Extreme::Min)
    }

    /// A linear extension: elements sorted so that `u ≺ v` puts `u` first.
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (self.below[v].len(), v));
        order
    }

    /// All ideals, sorted by bitmask.
    pub fn ideals(&self, budget: &Budget) -> Result<Vec<Subset>> {
        if self.n > budget.max_ideal_ground {
            return Err(Error::CapExceeded {
                what: "poset size for ideal enumeration",
                size: self.n as u128,
                cap: budget.max_ideal_ground as u128,
            });
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        self.ideals_rec(&order, 0, Subset::EMPTY, &mut out);
        out.sort();
        Ok(out)
    }

    fn ideals_rec(&self, order: &[usize], pos: usize, cur: Subset, out: &mut Vec<Subset>) {
        if pos == order.len() {
            out.push(cur);
            return;
        }
        let v = order[pos];
        self.ideals_rec(order, pos + 1, cur, out);
        let strict_below = self.below[v].minus(Subset::singleton(v));
        if strict_below.is_subset_of(cur) {
            let mut with = cur;
            with.insert(v);
            self.ideals_rec(order, pos + 1, with, out);
        }
    }

    pub fn levels(&self) -> Levels {
        let mut len = vec![0u32; self.n];
        for v in self.linear_extension() {
            len[v] = 1 + self.below[v]
                .iter()
                .filter(|&u| u != v)
                .map(|u| len[u])
                .max()
                .unwrap_or(0);
        }
        let m = len.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Subset::EMPTY; m as usize];
        for (v, &l) in len.iter().enumerate() {
            levels[(l - 1) as usize].insert(v);
        }
        Levels { len, levels }
    }

    /// `len(u) + 1 ≤ len(v)` forces `u ≼ v`.
    pub fn is_hierarchical(&self) -> bool {
        let lv = self.levels();
        (0..self.n).all(|u| (0..self.n).all(|v| lv.len[u] + 1 > lv.len[v] || self.leq(u, v)))
    }

    /// The dual poset `P̄`: `u ≼ v` in `P̄` iff `v ≼ u` in `P`.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            below: self.above.clone(),
            above: self.below.clone(),
        }
    }

    /// Order automorphisms, optionally required to preserve per-element
    /// labels. Returned as image vectors `λ[i]`, sorted lexicographically.
    pub fn automorphisms<L: PartialEq>(
        &self,
        labels: Option<&[L]>,
        budget: &Budget,
    ) -> Result<Vec<Vec<usize>>> {
        if self.n > budget.max_automorphism_ground {
            return Err(Error::CapExceeded {
                what: "poset size for automorphism enumeration",
                size: self.n as u128,
                cap: budget.max_automorphism_ground as u128,
            });
        }
        if let Some(l) = labels {
            if l.len() != self.n {
                return Err(Error::ShapeMismatch("one label per element required".into()));
            }
        }
        let lv = self.levels();
        let inv: Vec<(u32, usize, usize)> = (0..self.n)
            .map(|v| (lv.len[v], self.below[v].len(), self.above[v].len()))
            .collect();
        let compatible = |u: usize, v: usize| {
            inv[u] == inv[v] && labels.map_or(true, |l| l[u] == l[v])
        };
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.auto_rec(0, &mut image, &mut used, &compatible, &mut out);
        Ok(out)
    }

    fn auto_rec(
        &self,
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        compatible: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == self.n {
            out.push(image.clone());
            return;
        }
        for c in 0..self.n {
            if used[c] || !compatible(i, c) {
                continue;
            }
            let consistent = (0..i).all(|u| {
                self.leq(u, i) == self.leq(image[u], c) && self.leq(i, u) == self.leq(c, image[u])
            });
            if !consistent {
                continue;
            }
            image[i] = c;
            used[c] = true;
            self.auto_rec(i + 1, image, used, compatible, out);
            used[c] = false;
        }
        image[i] = usize::MAX;
    }

    /// Decides the unique decomposition property of `(P, ω)`: any two ideals
    /// of equal weight `ϖ` are related by an `ω`-preserving automorphism.
    pub fn udp_check(&self, omega: &WeightFunction, budget: &Budget) -> Result<UdpReport> {
        if omega.len() != self.n {
            return Err(Error::ShapeMismatch("weight function size differs from poset".into()));
        }
        let ideals = self.ideals(budget)?;
        let auts = self.automorphisms(Some(omega.values()), budget)?;
        let mut buckets: BTreeMap<Ratio<i64>, Vec<Subset>> = BTreeMap::new();
        for &i in &ideals {
            buckets.entry(omega.varpi(i)).or_default().push(i);
        }
        for members in buckets.values() {
            let first = members[0];
            let orbit: BTreeSet<Subset> = auts.iter().map(|l| first.map(l)).collect();
            if let Some(&other) = members.iter().find(|j| !orbit.contains(j)) {
                return Ok(UdpReport {
                    holds: false,
                    witness: Some((first, other)),
                });
            }
        }
        Ok(UdpReport {
            holds: true,
            witness: None,
        })
    }
}

/// The poset file format: `{"n": 4, "relations": [[0,2],[1,2]],
/// "weights": {"0": "1", "2": "3/2"}, "orders": [2,2,3,2]}`.
///
/// Missing weights default to `1`; missing `orders` means every `h_i = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub n: usize,
    #[serde(default)]
    pub relations: Vec<(usize, usize)>,
    #[serde(default)]
    pub weights: BTreeMap<String, String>,
    #[serde(default)]
    pub orders: Option<Vec<u32>>,
}

impl PosetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::InvalidInput(format!("poset JSON line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn poset(&self) -> Result<Poset> {
        Poset::from_relations(self.n, &self.relations)
    }

    pub fn weights(&self) -> Result<WeightFunction> {
        let mut values = vec!["1".to_string(); self.n];
        for (key, value) in &self.weights {
            let i: usize = key
                .parse()
                .ok()
                .filter(|&i| i < self.n)
                .ok_or_else(|| Error::InvalidInput(format!("weights: key {key:?} is not a point of 0..{}", self.n)))?;
            values[i] = value.clone();
        }
        WeightFunction::parse(&values)
    }

    /// `H = Π Z_{h_i}` with one cyclic factor per point.
    pub fn group(&self) -> Result<crate::groups::GroupProduct> {
        let orders = self.orders.clone().unwrap_or_else(|| vec![2; self.n]);
        if orders.len() != self.n {
            return Err(Error::InvalidInput(format!("orders: {} entries for {} points", orders.len(), self.n)));
        }
        crate::groups::GroupProduct::new(orders.into_iter().map(|h| vec![h]).collect())
    }
}
