#![allow(dead_code)]

use dualpart::metrics::Covering;
use dualpart::partitions::induce_q;
use dualpart::{Budget, GroupProduct, Partition, Poset, Subset, WeightFunction};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A product of cyclic groups with `|H| ≤ max_order`, some coordinates
/// carrying two factors.
pub fn random_group(r: &mut impl Rng, max_order: usize) -> GroupProduct {
    const FACTORS: [u32; 6] = [2, 3, 4, 5, 6, 8];
    loop {
        let ncoords = r.gen_range(1..=4);
        let coords: Vec<Vec<u32>> = (0..ncoords)
            .map(|_| {
                let nf = if r.gen_bool(0.25) { 2 } else { 1 };
                (0..nf).map(|_| *FACTORS.choose(r).unwrap()).collect()
            })
            .collect();
        let order: usize = coords.iter().flatten().map(|&d| d as usize).product();
        let g = GroupProduct::new(coords).unwrap();
        if order <= max_order && g.exponent() <= 120 {
            return g;
        }
    }
}

/// A strict order on `0..n` from random pairs `i < j`.
pub fn random_poset(r: &mut impl Rng, n: usize) -> Poset {
    let rel: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|_| r.gen_bool(0.35))
        .collect();
    Poset::from_relations(n, &rel).unwrap()
}

pub fn random_weights(r: &mut impl Rng, n: usize, max: i64) -> WeightFunction {
    let v: Vec<i64> = (0..n).map(|_| r.gen_range(1..=max)).collect();
    WeightFunction::from_integers(&v).unwrap()
}

pub fn random_covering(r: &mut impl Rng, n: usize) -> Covering {
    let mut members = Vec::new();
    let mut union = Subset::EMPTY;
    while union != Subset::full(n) || members.is_empty() {
        let s = Subset(r.gen_range(1..(1u32 << n)));
        union = union.union(s);
        members.push(s);
    }
    Covering::new(n, members).unwrap()
}

/// Random partitions of several kinds: arbitrary ids, unions of support
/// classes, poset-weight partitions.
pub fn random_partition(r: &mut impl Rng, g: &GroupProduct) -> Partition {
    let b = Budget::default();
    match r.gen_range(0..4) {
        0 => {
            let c = r.gen_range(1..=6u32);
            let ids: Vec<u32> = (0..g.order()).map(|_| r.gen_range(0..c)).collect();
            Partition::from_ids(g, ids).unwrap()
        }
        1 => {
            let n = g.num_coordinates();
            let c = r.gen_range(1..=4u32);
            let key: Vec<u32> = (0..(1usize << n)).map(|_| r.gen_range(0..c)).collect();
            let ids = (0..g.order()).map(|x| key[g.support_of(x).0 as usize]).collect();
            Partition::from_ids(g, ids).unwrap()
        }
        2 => {
            let n = g.num_coordinates();
            induce_q(g, &random_poset(r, n), &random_weights(r, n, 2), &b).unwrap()
        }
        _ => Partition::by_support(g).unwrap(),
    }
}

/// Every hierarchical poset on `n` points up to isomorphism: one per
/// composition of `n` into level sizes.
pub fn hierarchical_posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << (n - 1)) {
        let mut sizes = Vec::new();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                sizes.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        sizes.push(run);
        let mut rel = Vec::new();
        let mut start = 0;
        for w in sizes.windows(2) {
            for u in start..start + w[0] {
                for v in start + w[0]..start + w[0] + w[1] {
                    rel.push((u, v));
                }
            }
            start += w[0];
        }
        out.push(Poset::from_relations(n, &rel).unwrap());
    }
    out
}

/// Every antichain covering of `0..n`.
pub fn antichain_coverings(n: usize) -> Vec<Covering> {
    let subsets: Vec<Subset> = (1..(1u32 << n)).map(Subset).collect();
    let mut out = Vec::new();
    for fam in 1u64..(1u64 << subsets.len()) {
        let members: Vec<Subset> = (0..subsets.len())
            .filter(|&i| fam >> i & 1 == 1)
            .map(|i| subsets[i])
            .collect();
        let union = members.iter().fold(Subset::EMPTY, |a, &m| a.union(m));
        if union != Subset::full(n) {
            continue;
        }
        let anti = members
            .iter()
            .all(|&a| members.iter().all(|&b| a == b || !a.is_subset_of(b)));
        if anti {
            out.push(Covering::new(n, members).unwrap());
        }
    }
    out
}

/// All tuples in `values^n`.
pub fn tuples<T: Copy>(values: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |&v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}
