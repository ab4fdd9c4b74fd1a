use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::{ClassLabel, Partition};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exactarith::{CycInt, Cyclotomic};
use crate::groups::GroupProduct;

/// How character sums are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DualEngine {
    /// Pick the cheaper of the two below.
    #[default]
    Auto,
    /// One exact multidimensional transform per class over `Z[x]/(x^m − 1)`.
    Transform,
    /// `Σ_{b∈B} f(a, b)` term by term for every `a`.
    Direct,
}

/// `twist = c` replaces the pairing `f` by `f^c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualOptions {
    pub engine: DualEngine,
    pub twist: u32,
}

impl Default for DualOptions {
    fn default() -> Self {
        DualOptions {
            engine: DualEngine::Auto,
            twist: 1,
        }
    }
}

/// `(Σ_{b∈B} f(a, b) : B ∈ Γ)` for a fixed `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualSignature {
    pub element: usize,
    pub values: Vec<CycInt>,
}

fn effective_twist(host: &GroupProduct, twist: u32) -> Result<u64> {
    let t = twist as u64 % host.exponent() as u64;
    if t == 0 {
        return Err(Error::InvalidInput(format!(
            "twist {twist} kills every character of exponent {}",
            host.exponent()
        )));
    }
    Ok(t)
}

fn twisted_exponent(host: &GroupProduct, a: usize, b: usize, twist: u64) -> usize {
    ((host.pairing_exponent(a, b) as u64 * twist) % host.exponent() as u64) as usize
}

/// The signature of one element, evaluated term by term.
pub fn dual_signature(gamma: &Partition, a: usize, twist: u32) -> Result<DualSignature> {
    let host = gamma.host();
    if a >= host.order() {
        return Err(Error::InvalidInput(format!("element {a} out of range")));
    }
    let t = effective_twist(host, twist)?;
    let m = host.exponent() as usize;
    let ctx = Cyclotomic::new(host.exponent())?;
    let mut counts = vec![0i64; gamma.len() * m];
    for b in 0..host.order() {
        counts[gamma.class_of(b) as usize * m + twisted_exponent(host, a, b, t)] += 1;
    }
    Ok(DualSignature {
        element: a,
        values: counts.chunks(m).map(|c| ctx.from_exponent_counts(c)).collect(),
    })
}

/// `l(Γ)` under the standard pairing.
pub fn left_dual(gamma: &Partition, budget: &Budget) -> Result<Partition> {
    left_dual_with(gamma, DualOptions::default(), budget)
}

/// `r(Λ)`. The standard pairing is symmetric, so this is the same routine.
pub fn right_dual(lambda: &Partition, budget: &Budget) -> Result<Partition> {
    left_dual_with(lambda, DualOptions::default(), budget)
}

pub fn left_dual_with(gamma: &Partition, opts: DualOptions, budget: &Budget) -> Result<Partition> {
    let host = gamma.host();
    let n = host.enumerable_len(budget)?;
    let t = effective_twist(host, opts.twist)?;
    let classes = gamma.len() as u128;
    budget.check_work("dual signature evaluations", n as u128 * classes)?;
    let m = host.exponent() as u128;
    let transform_cost: u128 = classes
        * n as u128
        * host
            .factor_orders()
            .iter()
            .map(|&d| d as u128 * if m == 2 { 1 } else { m })
            .sum::<u128>();
    let direct_cost = n as u128 * n as u128 * host.factor_orders().len() as u128;
    let engine = match opts.engine {
        DualEngine::Auto if direct_cost < transform_cost => DualEngine::Direct,
        DualEngine::Auto => DualEngine::Transform,
        e => e,
    };
    let ids = match engine {
        DualEngine::Direct => direct_ids(gamma, t)?,
        _ => transform_ids(gamma, t)?,
    };
    Ok(relabel_dual(host, ids))
}

fn relabel_dual(host: &GroupProduct, ids: Vec<u32>) -> Partition {
    // Ids are already numbered by first appearance.
    let mut labels = Vec::new();
    for (i, &c) in ids.iter().enumerate() {
        if c as usize == labels.len() {
            labels.push(ClassLabel::Dual { representative: i });
        }
    }
    Partition::from_canonical(host, ids, labels)
}

fn direct_ids(gamma: &Partition, t: u64) -> Result<Vec<u32>> {
    let host = gamma.host();
    let m = host.exponent() as usize;
    let ctx = Cyclotomic::new(host.exponent())?;
    let k = gamma.len();
    let keys: Vec<Vec<i64>> = (0..host.order())
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0i64; k * m];
            for b in 0..host.order() {
                counts[gamma.class_of(b) as usize * m + twisted_exponent(host, a, b, t)] += 1;
            }
            counts.chunks(m).flat_map(|c| ctx.reduce_coeffs(c)).collect()
        })
        .collect();
    let mut seen: HashMap<&[i64], u32> = HashMap::new();
    Ok(keys
        .iter()
        .map(|key| {
            let next = seen.len() as u32;
            *seen.entry(key.as_slice()).or_insert(next)
        })
        .collect())
}

/// Exact values `Σ_{b∈B} f(a,b)^t` for every `a`, as canonical cyclotomic
/// coordinates (`φ(m)` integers per element).
fn class_transform(host: &GroupProduct, members: &[bool], t: u64, ctx: &Cyclotomic) -> Vec<i64> {
    let n = host.order();
    let m = host.exponent() as usize;
    if m == 2 {
        let mut v: Vec<i64> = members.iter().map(|&x| x as i64).collect();
        for f in 0..host.factor_orders().len() {
            let s = host.stride(f);
            v.par_chunks_mut(2 * s).for_each(|block| {
                let (lo, hi) = block.split_at_mut(s);
                for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a + b;
                    *y = a - b;
                }
            });
        }
        return v;
    }
    let mut v = vec![0i64; n * m];
    for (b, &inside) in members.iter().enumerate() {
        if inside {
            v[b * m] = 1;
        }
    }
    for (f, &d) in host.factor_orders().iter().enumerate() {
        let d = d as usize;
        let s = host.stride(f);
        let scale = (t as usize * (m / d)) % m;
        v.par_chunks_mut(d * s * m).for_each(|block| {
            let mut line = vec![0i64; d * m];
            let mut out = vec![0i64; d * m];
            for j in 0..s {
                for r in 0..d {
                    let at = (j + r * s) * m;
                    line[r * m..(r + 1) * m].copy_from_slice(&block[at..at + m]);
                }
                out.iter_mut().for_each(|x| *x = 0);
                for a in 0..d {
                    let o = &mut out[a * m..(a + 1) * m];
                    for r in 0..d {
                        let e = (scale * ((a * r) % d)) % m;
                        let u = &line[r * m..(r + 1) * m];
                        for (i, &c) in u.iter().enumerate() {
                            if c != 0 {
                                o[(i + e) % m] += c;
                            }
                        }
                    }
                }
                for a in 0..d {
                    let at = (j + a * s) * m;
                    block[at..at + m].copy_from_slice(&out[a * m..(a + 1) * m]);
                }
            }
        });
    }
    let phi = ctx.degree();
    let mut reduced = vec![0i64; n * phi];
    reduced
        .par_chunks_mut(phi)
        .zip(v.par_chunks(m))
        .for_each(|(dst, src)| dst.copy_from_slice(&ctx.reduce_coeffs(src)));
    reduced
}

fn transform_ids(gamma: &Partition, t: u64) -> Result<Vec<u32>> {
    let host = gamma.host();
    let n = host.order();
    let ctx = Cyclotomic::new(host.exponent())?;
    let phi = ctx.degree();
    let mut ids = vec![0u32; n];
    for c in 0..gamma.len() as u32 {
        let members: Vec<bool> = gamma.class_ids().iter().map(|&x| x == c).collect();
        let vals = class_transform(host, &members, t, &ctx);
        let mut seen: HashMap<(u32, &[i64]), u32> = HashMap::new();
        for (a, id) in ids.iter_mut().enumerate() {
            let next = seen.len() as u32;
            *id = *seen.entry((*id, &vals[a * phi..(a + 1) * phi])).or_insert(next);
        }
    }
    Ok(ids)
}

/// `Λ` finer than `l(Γ)` and `Γ` finer than `r(Λ)`.
pub fn mutually_dual(lambda: &Partition, gamma: &Partition, budget: &Budget) -> Result<bool> {
    Ok(lambda.is_finer(&left_dual(gamma, budget)?)? && gamma.is_finer(&right_dual(lambda, budget)?)?)
}

/// Cardinality verdict together with the dual and, on request, the bidual.
#[derive(Debug, Clone)]
pub struct ReflexivityReport {
    pub classes: usize,
    pub dual_classes: usize,
    pub reflexive: bool,
    pub dual: Partition,
    pub bidual: Option<Partition>,
    /// `r(l(Γ))` is finer than `Γ`.
    pub bidual_finer: Option<bool>,
}

pub fn reflexivity_check(gamma: &Partition, with_bidual: bool, budget: &Budget) -> Result<ReflexivityReport> {
    let dual = left_dual(gamma, budget)?;
    let (bidual, bidual_finer) = if with_bidual {
        let bi = right_dual(&dual, budget)?;
        let finer = bi.is_finer(gamma)?;
        (Some(bi), Some(finer))
    } else {
        (None, None)
    };
    Ok(ReflexivityReport {
        classes: gamma.len(),
        dual_classes: dual.len(),
        reflexive: gamma.len() == dual.len(),
        dual,
        bidual,
        bidual_finer,
    })
}

/// `gcd(c, m) = 1`: the twisted pairing is again non-degenerate.
pub fn twist_is_unit(host: &GroupProduct, twist: u32) -> bool {
    twist.gcd(&host.exponent()) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::CoveringMetric;
    use crate::partitions::induce_co;

    fn co(n: usize, k: usize, q: u32) -> Partition {
        let g = GroupProduct::uniform(n, q).unwrap();
        induce_co(&g, &CoveringMetric::uniform(n, k).unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn trivial_dual_has_two_classes() {
        let g = GroupProduct::uniform(3, 3).unwrap();
        let d = left_dual(&Partition::trivial(&g), &Budget::default()).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.has_identity_singleton());
    }

    #[test]
    fn engines_agree() {
        let b = Budget::default();
        for (n, k, q) in [(4, 2, 2), (3, 2, 3), (3, 1, 4), (2, 2, 6)] {
            let gamma = co(n, k, q);
            let mut results = Vec::new();
            for engine in [DualEngine::Direct, DualEngine::Transform] {
                let opts = DualOptions { engine, twist: 1 };
                results.push(left_dual_with(&gamma, opts, &b).unwrap());
            }
            assert_eq!(results[0], results[1]);
        }
    }

    #[test]
    fn mixed_group_engines_agree() {
        let b = Budget::default();
        let g = GroupProduct::new(vec![vec![2, 3], vec![4], vec![2]]).unwrap();
        let gamma = Partition::from_ids(&g, (0..g.order() as u32).map(|i| (i * 7) % 5).collect()).unwrap();
        let d1 = left_dual_with(&gamma, DualOptions { engine: DualEngine::Direct, twist: 1 }, &b).unwrap();
        let d2 = left_dual_with(&gamma, DualOptions { engine: DualEngine::Transform, twist: 1 }, &b).unwrap();
        assert_eq!(d1, d2);
        let d3 = left_dual_with(&gamma, DualOptions { engine: DualEngine::Direct, twist: 5 }, &b).unwrap();
        let d4 = left_dual_with(&gamma, DualOptions { engine: DualEngine::Transform, twist: 5 }, &b).unwrap();
        assert_eq!(d3, d4);
    }

    #[test]
    fn identity_signature_is_class_sizes() {
        let gamma = co(4, 2, 3);
        let sig = dual_signature(&gamma, 0, 1).unwrap();
        let sizes: Vec<i64> = sig.values.iter().map(|v| v.to_integer().unwrap()).collect();
        assert_eq!(sizes, gamma.sizes().iter().map(|&s| s as i64).collect::<Vec<_>>());
    }

    #[test]
    fn known_verdicts() {
        let b = Budget::default();
        assert!(!reflexivity_check(&co(5, 3, 2), false, &b).unwrap().reflexive);
        assert!(left_dual(&co(5, 3, 2), &b).unwrap().len() >= 4);
        assert!(reflexivity_check(&co(5, 4, 2), false, &b).unwrap().reflexive);
        let r = reflexivity_check(&co(4, 2, 2), true, &b).unwrap();
        assert!(r.reflexive);
        assert_eq!(r.bidual_finer, Some(true));
    }

    #[test]
    fn zero_twist_rejected() {
        let gamma = co(2, 1, 3);
        let opts = DualOptions { engine: DualEngine::Direct, twist: 3 };
        assert!(left_dual_with(&gamma, opts, &Budget::default()).is_err());
    }
}
