//! Weighted poset weights `wt_(P,ω)` and covering (combinatorial) weights `wt_T`.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupProduct};
use crate::posets::Poset;
use crate::subset::{Subset, MAX_GROUND};

/// `ω: Ω → Q_{>0}` together with `ϖ(I) = Σ_{i∈I} ω(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    values: Vec<Ratio<i64>>,
}

impl WeightFunction {
    pub fn new(values: Vec<Ratio<i64>>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::InvalidInput(format!("weight of {i} is {v}, must be positive")));
        }
        Ok(WeightFunction { values })
    }

    pub fn ones(n: usize) -> Self {
        WeightFunction {
            values: vec![Ratio::from_integer(1); n],
        }
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        WeightFunction::new(values.iter().map(|&v| Ratio::from_integer(v)).collect())
    }

    /// Parses strings such as `"2"` or `"3/2"`.
    pub fn parse(values: &[String]) -> Result<Self> {
        let parsed = values
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<Ratio<i64>>()
                    .map_err(|_| Error::InvalidInput(format!("bad rational weight {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFunction::new(parsed)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Ratio<i64>] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Ratio<i64> {
        self.values[i]
    }

    pub fn varpi(&self, set: Subset) -> Ratio<i64> {
        set.iter().fold(Ratio::zero(), |acc, i| acc + self.values[i])
    }

    pub fn is_integer(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }
}

impl Serialize for WeightFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(|v| v.to_string()))
    }
}

/// `wt_(P,ω)(β) = ϖ(⟨supp β⟩_P)`.
pub fn wpm_weight(
    poset: &Poset,
    omega: &WeightFunction,
    group: &GroupProduct,
    beta: &GroupElement,
) -> Ratio<i64> {
    omega.varpi(poset.closure(group.support(beta)))
}

/// A covering `T` of `Ω`: nonempty members whose union is `Ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covering {
    n: usize,
    members: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct CoveringSpec {
    n: usize,
    members: Vec<Vec<usize>>,
}

impl Covering {
    pub fn new(n: usize, members: Vec<Subset>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidInput(format!("covering universe size {n} unsupported")));
        }
        let full = Subset::full(n);
        let mut union = Subset::EMPTY;
        for m in &members {
            if m.is_empty() {
                return Err(Error::InvalidInput("covering member is empty".into()));
            }
            if !m.is_subset_of(full) {
                return Err(Error::InvalidInput(format!("member {m} leaves 0..{n}")));
            }
            union = union.union(*m);
        }
        if union != full {
            return Err(Error::InvalidInput(format!(
                "members miss {}",
                full.minus(union)
            )));
        }
        Ok(Covering { n, members })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CoveringSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("covering JSON: {e}")))?;
        Covering::new(
            spec.n,
            spec.members.into_iter().map(Subset::from_indices).collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let spec = CoveringSpec {
            n: self.n,
            members: self.members.iter().map(|m| m.to_vec()).collect(),
        };
        serde_json::to_string(&spec).expect("covering serialises")
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// No member contains another.
    pub fn is_antichain(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset_of(*b))
        })
    }

    pub fn is_partition(&self) -> bool {
        self.members.iter().map(|m| m.len()).sum::<usize>() == self.n
    }

    /// The maximal members of `(T, ⊆)`, duplicates dropped, in input order.
    pub fn antichain_reduce(&self) -> Covering {
        let mut kept: Vec<Subset> = Vec::new();
        for (i, &a) in self.members.iter().enumerate() {
            let dominated = self.members.iter().enumerate().any(|(j, &b)| {
                a != b && a.is_subset_of(b) || (a == b && j < i)
            });
            if !dominated {
                kept.push(a);
            }
        }
        Covering {
            n: self.n,
            members: kept,
        }
    }

    /// `P(k, Ω)`: all `k`-subsets of `Ω`.
    pub fn uniform(n: usize, k: usize) -> Result<Covering> {
        if k == 0 || k > n || n > MAX_GROUND {
            return Err(Error::InvalidInput(format!("P({k},Ω) needs 1 ≤ k ≤ |Ω| = {n}")));
        }
        let members = (0u64..(1u64 << n))
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| Subset(m as u32))
            .collect();
        Covering::new(n, members)
    }
}

/// `ω_T(A) = min{|S| : S ⊆ T, A ⊆ ∪S}` by breadth-first search over the
/// parts of `A` already covered.
pub fn covering_weight(t: &Covering, a: Subset) -> u32 {
    if a.is_empty() {
        return 0;
    }
    let useful: Vec<Subset> = {
        let mut v: Vec<Subset> = t
            .members
            .iter()
            .map(|m| m.intersection(a))
            .filter(|m| !m.is_empty())
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut frontier = vec![Subset::EMPTY];
    seen.insert(Subset::EMPTY);
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            for &m in &useful {
                let u = s.union(m);
                if u == a {
                    return depth;
                }
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    unreachable!("a covering always covers every subset of its universe")
}

/// A covering-induced weight, with `P(k, Ω)` kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoveringMetric {
    Explicit(Covering),
    Uniform { n: usize, k: usize },
}

impl CoveringMetric {
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n || n > MAX_GROUND {
            return Err(Error::InvalidInput(format!("P({k},Ω) needs 1 ≤ k ≤ |Ω| = {n}")));
        }
        Ok(CoveringMetric::Uniform { n, k })
    }

    pub fn universe(&self) -> usize {
        match self {
            CoveringMetric::Explicit(c) => c.n,
            CoveringMetric::Uniform { n, .. } => *n,
        }
    }

    /// `ω_T(A)`; `⌈|A|/k⌉` for `P(k, Ω)`.
    pub fn weight(&self, a: Subset) -> u32 {
        match self {
            CoveringMetric::Explicit(c) => covering_weight(c, a),
            CoveringMetric::Uniform { k, .. } => a.len().div_ceil(*k) as u32,
        }
    }

    /// The explicit covering; `P(k, Ω)` is materialised only for `|Ω| ≤ 12`.
    pub fn materialize(&self) -> Result<Covering> {
        match self {
            CoveringMetric::Explicit(c) => Ok(c.clone()),
            CoveringMetric::Uniform { n, k } => {
                if *n > 12 {
                    return Err(Error::CapExceeded {
                        what: "P(k,Ω) materialisation universe",
                        size: *n as u128,
                        cap: 12,
                    });
                }
                Covering::uniform(*n, *k)
            }
        }
    }

    /// `ω_T` for every subset of `Ω`, indexed by bitmask. The explicit case
    /// runs one breadth-first search over unions of members and then takes
    /// minima over supersets.
    pub fn weight_table(&self) -> Result<Vec<u32>> {
        let n = self.universe();
        if n > 20 {
            return Err(Error::CapExceeded {
                what: "weight table universe",
                size: n as u128,
                cap: 20,
            });
        }
        let size = 1usize << n;
        match self {
            CoveringMetric::Uniform { k, .. } => Ok((0..size)
                .map(|a| (a.count_ones() as usize).div_ceil(*k) as u32)
                .collect()),
            CoveringMetric::Explicit(c) => {
                let mut dist = vec![u32::MAX; size];
                dist[0] = 0;
                let mut frontier = vec![0usize];
                let mut depth = 0;
                while !frontier.is_empty() {
                    depth += 1;
                    let mut next = Vec::new();
                    for &s in &frontier {
                        for m in &c.members {
                            let u = s | m.0 as usize;
                            if dist[u] == u32::MAX {
                                dist[u] = depth;
                                next.push(u);
                            }
                        }
                    }
                    frontier = next;
                }
                // Minimum over supersets, one coordinate at a time.
                for bit in 0..n {
                    for a in 0..size {
                        if a & (1 << bit) == 0 {
                            dist[a] = dist[a].min(dist[a | (1 << bit)]);
                        }
                    }
                }
                Ok(dist)
            }
        }
    }
}

impl fmt::Display for CoveringMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoveringMetric::Uniform { k, .. } => write!(f, "Pk:{k}"),
            CoveringMetric::Explicit(c) => {
                write!(f, "{{")?;
                for (i, m) in c.members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
        }
    }
}
