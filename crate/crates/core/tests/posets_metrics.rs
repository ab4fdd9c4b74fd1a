mod common;

use std::collections::BTreeMap;

use dualpart::metrics::covering_weight;
use dualpart::partitions::{f_poly, signature_via_ideals, theorem32_check, FEngine};
use dualpart::posets::PosetFile;
use dualpart::exactarith::root_of_unity_sum;
use dualpart::{Budget, GroupProduct, Poset, Subset, WeightFunction};
use num_rational::Ratio;
use proptest::prelude::*;

fn brute_ideals(p: &Poset) -> Vec<Subset> {
    let n = p.size();
    (0..1u32 << n)
        .map(Subset)
        .filter(|b| b.iter().all(|v| (0..n).all(|u| !p.leq(u, v) || b.contains(u))))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let free: Vec<usize> = (0..n).filter(|v| !p.contains(v)).collect();
                free.into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn brute_automorphisms(p: &Poset, w: &WeightFunction) -> Vec<Vec<usize>> {
    let n = p.size();
    permutations(n)
        .into_iter()
        .filter(|s| (0..n).all(|u| w.value(u) == w.value(s[u]) && (0..n).all(|v| p.leq(u, v) == p.leq(s[u], s[v]))))
        .collect()
}

fn longest_chain_below(p: &Poset, v: usize) -> usize {
    (0..p.size())
        .filter(|&u| u != v && p.leq(u, v))
        .map(|u| longest_chain_below(p, u) + 1)
        .max()
        .unwrap_or(0)
}

fn poset_and_weights() -> impl Strategy<Value = (Poset, WeightFunction)> {
    (any::<u64>(), 1usize..=6).prop_map(|(seed, n)| {
        let mut r = common::rng(seed);
        (common::random_poset(&mut r, n), common::random_weights(&mut r, n, 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ideals_match_brute_force((p, _) in poset_and_weights()) {
        let mut got = p.ideals(&Budget::default()).unwrap();
        got.sort();
        prop_assert_eq!(got, brute_ideals(&p));
    }

    #[test]
    fn dual_poset_is_an_involution((p, _) in poset_and_weights()) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        let n = p.size();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(p.dual().leq(u, v), p.leq(v, u));
            }
        }
    }

    #[test]
    fn automorphisms_match_brute_force((p, w) in poset_and_weights()) {
        let got = p.automorphisms(Some(w.values()), &Budget::default()).unwrap();
        let mut want = brute_automorphisms(&p, &w);
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn udp_matches_brute_force((p, w) in poset_and_weights()) {
        let auts = brute_automorphisms(&p, &w);
        let ideals = brute_ideals(&p);
        let holds = ideals.iter().all(|&i| {
            ideals.iter().all(|&j| w.varpi(i) != w.varpi(j) || auts.iter().any(|s| i.map(s) == j))
        });
        let rep = p.udp_check(&w, &Budget::default()).unwrap();
        prop_assert_eq!(rep.holds, holds);
        if let Some((i, j)) = rep.witness {
            prop_assert_eq!(w.varpi(i), w.varpi(j));
            prop_assert!(auts.iter().all(|s| i.map(s) != j));
        }
    }

    #[test]
    fn hierarchy_matches_chain_lengths((p, _) in poset_and_weights()) {
        let n = p.size();
        let len: Vec<usize> = (0..n).map(|v| longest_chain_below(&p, v)).collect();
        let want = (0..n).all(|u| (0..n).all(|v| len[u] >= len[v] || p.leq(u, v)));
        prop_assert_eq!(p.is_hierarchical(), want);
    }

    #[test]
    fn ideal_sums_match_character_sums(seed in any::<u64>(), n in 1usize..=4) {
        let b = Budget::default();
        let mut r = common::rng(seed);
        let p = common::random_poset(&mut r, n);
        let w = common::random_weights(&mut r, n, 2);
        let orders: Vec<Vec<u32>> = (0..n).map(|i| vec![2 + (seed >> (2 * i) & 3) as u32]).collect();
        let g = GroupProduct::new(orders).unwrap();
        let m = g.exponent();
        let alpha = (seed as usize >> 16) % g.order();
        let mut by_weight: BTreeMap<Ratio<i64>, Vec<i64>> = BTreeMap::new();
        for beta in 0..g.order() {
            by_weight
                .entry(w.varpi(p.closure(g.support_of(beta))))
                .or_default()
                .push(g.pairing_exponent(alpha, beta) as i64);
        }
        for (weight, exps) in by_weight {
            let exact = root_of_unity_sum(m, exps).unwrap().to_integer();
            prop_assert_eq!(Some(signature_via_ideals(&g, &p, &w, alpha, weight, &b).unwrap()), exact);
        }
        let brute = f_poly(&g, &p, &w, alpha, FEngine::BruteForce, &b).unwrap();
        prop_assert_eq!(&f_poly(&g, &p, &w, alpha, FEngine::IdealSum, &b).unwrap(), &brute);
        if p.is_hierarchical() {
            prop_assert_eq!(&f_poly(&g, &p, &w, alpha, FEngine::Hierarchical, &b).unwrap(), &brute);
        }
    }

    #[test]
    fn covering_weight_is_a_minimum_cover(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = common::rng(seed);
        let t = common::random_covering(&mut r, n);
        let members = t.members();
        prop_assume!(members.len() <= 12);
        for a in 0..1u32 << n {
            let a = Subset(a);
            let best = (0..1u32 << members.len())
                .filter(|f| {
                    let u = (0..members.len()).filter(|i| f >> i & 1 == 1).fold(Subset::EMPTY, |u, i| u.union(members[i]));
                    a.is_subset_of(u)
                })
                .map(|f| f.count_ones())
                .min()
                .unwrap();
            prop_assert_eq!(covering_weight(&t, a), best);
        }
    }
}

#[test]
fn hierarchical_chain_is_self_consistent() {
    let b = Budget::default();
    for n in 1..=4 {
        for p in common::hierarchical_posets(n) {
            for orders in common::tuples(&[2u32, 3], n) {
                let g = GroupProduct::new(orders.iter().map(|&h| vec![h]).collect()).unwrap();
                let rep = theorem32_check(&g, &p, &WeightFunction::ones(n), &b).unwrap();
                assert!(rep.equivalent(), "{p:?} {orders:?} {rep:?}");
                assert!(rep.lambda_finer_than_q_bar);
            }
        }
    }
}

#[test]
fn non_hierarchical_poset_is_a_precondition_error() {
    let v = Poset::from_relations(3, &[(0, 2)]).unwrap();
    let g = GroupProduct::uniform(3, 2).unwrap();
    let err = theorem32_check(&g, &v, &WeightFunction::ones(3), &Budget::default()).unwrap_err();
    assert_eq!(err.code(), "precondition");
}

#[test]
fn poset_file_defaults_and_fields() {
    let f = PosetFile::from_json(r#"{"n": 3, "relations": [[0, 2], [1, 2]], "weights": {"2": "3/2"}, "orders": [2, 3, 2]}"#).unwrap();
    let p = f.poset().unwrap();
    assert!(p.leq(0, 2) && p.leq(1, 2) && !p.leq(0, 1));
    assert_eq!(f.weights().unwrap().values(), &[Ratio::from_integer(1), Ratio::from_integer(1), Ratio::new(3, 2)]);
    assert_eq!(f.group().unwrap().coordinate_orders(), &[2, 3, 2]);

    let bare = PosetFile::from_json(r#"{"n": 2}"#).unwrap();
    assert_eq!(bare.poset().unwrap(), Poset::antichain(2).unwrap());
    assert_eq!(bare.weights().unwrap(), WeightFunction::ones(2));
    assert_eq!(bare.group().unwrap(), GroupProduct::uniform(2, 2).unwrap());
}

#[test]
fn poset_file_errors() {
    for (text, needle) in [
        (r#"{"n": 2, "extra": 1}"#, "unknown field"),
        (r#"{"n": 2,"#, "line 1"),
        (r#"{"n": 2, "relations": [[0, 5]]}"#, ""),
        (r#"{"n": 2, "relations": [[0, 1], [1, 0]]}"#, ""),
    ] {
        let res = PosetFile::from_json(text).and_then(|f| f.poset());
        let err = res.unwrap_err();
        assert!(err.to_string().contains(needle), "{text}: {err}");
    }
    let f = PosetFile::from_json(r#"{"n": 2, "weights": {"7": "1"}}"#).unwrap();
    assert_eq!(f.weights().unwrap_err().code(), "invalid_input");
    let f = PosetFile::from_json(r#"{"n": 2, "orders": [2]}"#).unwrap();
    assert_eq!(f.group().unwrap_err().code(), "invalid_input");
}
