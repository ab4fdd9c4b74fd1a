//! Linear codes over prime fields `F_p`, dual codes, the PAMI equivalences,
//! `inv(Δ)` and orbit partitions, and the MEP witness search.

use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::groups::GroupProduct;
use crate::krawtchouk::{co_nonreflexivity_verdict, Verdict};
use crate::metrics::CoveringMetric;
use crate::partitions::{
    induce_co, left_dual, left_dual_with, macwilliams_identity, reflexivity_check, ClassLabel,
    DualEngine, DualOptions, MacWilliamsCheck, Partition,
};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u32
}

/// `H = Π_i F_p^{k_i}` with `⟨α, β⟩ = Σ α_{i,t} β_{i,t}` and `χ(x) = ζ_p^x`.
///
/// Vectors are addressed by the index of the matching element of
/// [`PrimeFieldSpace::group`], so the pairing `f(α, β) = χ(⟨α, β⟩)` is the
/// standard pairing of that group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldSpace {
    p: u32,
    blocks: Vec<usize>,
    group: GroupProduct,
}

impl PrimeFieldSpace {
    pub fn new(p: u32, blocks: Vec<usize>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidInput("block sizes must be positive".into()));
        }
        let group = GroupProduct::new(blocks.iter().map(|&k| vec![p; k]).collect())?;
        Ok(PrimeFieldSpace { p, blocks, group })
    }

    /// `F_p^n` with one coordinate per block.
    pub fn uniform(p: u32, n: usize) -> Result<Self> {
        PrimeFieldSpace::new(p, vec![1; n])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Total dimension `N`.
    pub fn dim(&self) -> usize {
        self.group.factor_orders().len()
    }

    pub fn size(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &GroupProduct {
        &self.group
    }

    pub fn vector(&self, idx: usize) -> Vec<u32> {
        self.group.digits(idx)
    }

    pub fn index(&self, v: &[u32]) -> Result<usize> {
        self.group.index_of(v)
    }

    pub fn unit(&self, j: usize) -> usize {
        self.group.stride(j)
    }

    pub fn inner(&self, a: usize, b: usize) -> u32 {
        self.group.pairing_exponent(a, b)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            a ^ b
        } else {
            self.group.add(a, b)
        }
    }

    #[inline]
    pub fn scale(&self, c: u32, a: usize) -> usize {
        if self.p == 2 {
            if c % 2 == 0 {
                0
            } else {
                a
            }
        } else {
            self.group.scalar_mul(c, a)
        }
    }

    /// `|GL(N, p)|`, saturating.
    pub fn gl_order(&self) -> u128 {
        let q = self.p as u128;
        let n = self.dim() as u32;
        let qn = q.saturating_pow(n);
        (0..n).fold(1u128, |acc, i| acc.saturating_mul(qn - q.pow(i)))
    }

    /// A class `B` and scalar `c` with `c·B ≠ B`, if any.
    pub fn invariance_witness(&self, delta: &Partition) -> Result<Option<(usize, u32)>> {
        if !delta.host().same_shape(&self.group) {
            return Err(Error::ShapeMismatch("partition is not on this space".into()));
        }
        for v in 0..self.size() {
            for c in 2..self.p {
                if delta.class_of(v) != delta.class_of(self.scale(c, v)) {
                    return Ok(Some((v, c)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_f_invariant(&self, delta: &Partition) -> Result<bool> {
        Ok(self.invariance_witness(delta)?.is_none())
    }

    /// `CO(H, T)` recomputed from vector entries.
    pub fn co_partition(&self, metric: &CoveringMetric) -> Result<Partition> {
        if metric.universe() != self.blocks.len() {
            return Err(Error::ShapeMismatch("covering universe differs from block count".into()));
        }
        let keys: Vec<u32> = (0..self.size())
            .map(|v| {
                let digits = self.vector(v);
                let mut support = crate::subset::Subset::EMPTY;
                let mut at = 0;
                for (i, &k) in self.blocks.iter().enumerate() {
                    if digits[at..at + k].iter().any(|&d| d != 0) {
                        support.insert(i);
                    }
                    at += k;
                }
                metric.weight(support)
            })
            .collect();
        Partition::from_keys(&self.group, keys, |w, _| ClassLabel::CoveringWeight(*w))
    }
}

/// Row reduction mod `p`; returns the nonzero rows in reduced echelon form.
fn rref(rows: &mut Vec<Vec<u32>>, p: u32) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = (*x * inv) % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..ncols {
                    rows[i][c] = (rows[i][c] + (p - f) * rows[r][c]) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
}

/// A subspace given by its reduced row echelon generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    space: PrimeFieldSpace,
    rows: Vec<Vec<u32>>,
}

impl LinearCode {
    pub fn from_generators(space: &PrimeFieldSpace, gens: Vec<Vec<u32>>) -> Result<Self> {
        let n = space.dim();
        let p = space.p;
        for g in &gens {
            if g.len() != n {
                return Err(Error::ShapeMismatch(format!("generator of length {} in dimension {n}", g.len())));
            }
            if g.iter().any(|&x| x >= p) {
                return Err(Error::InvalidInput(format!("entry out of range for F_{p}")));
            }
        }
        let mut rows = gens;
        rref(&mut rows, p);
        Ok(LinearCode {
            space: space.clone(),
            rows,
        })
    }

    pub fn zero(space: &PrimeFieldSpace) -> Self {
        LinearCode {
            space: space.clone(),
            rows: Vec::new(),
        }
    }

    pub fn space(&self) -> &PrimeFieldSpace {
        &self.space
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `|C| = p^dim`, checked against the enumeration cap.
    pub fn len(&self, budget: &Budget) -> Result<usize> {
        budget.check_enumerable("codewords", (self.space.p as u128).pow(self.dim() as u32))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All codewords as vector indices, sorted.
    pub fn codewords(&self, budget: &Budget) -> Result<Vec<usize>> {
        self.len(budget)?;
        let gens: Vec<usize> = self
            .rows
            .iter()
            .map(|r| self.space.index(r))
            .collect::<Result<_>>()?;
        let mut words = vec![0usize];
        for g in gens {
            let mut next = Vec::with_capacity(words.len() * self.space.p as usize);
            for c in 0..self.space.p {
                let cg = self.space.scale(c, g);
                next.extend(words.iter().map(|&w| self.space.add(w, cg)));
            }
            words = next;
        }
        words.sort_unstable();
        Ok(words)
    }

    /// `C^⊥` as the null space of the generator matrix.
    pub fn dual(&self) -> LinearCode {
        let n = self.space.dim();
        let p = self.space.p;
        let pivots: Vec<usize> = self
            .rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("rows are nonzero"))
            .collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (r, &pc) in self.rows.iter().zip(&pivots) {
                v[pc] = (p - r[free]) % p;
            }
            basis.push(v);
        }
        LinearCode::from_generators(&self.space, basis).expect("null space basis is well formed")
    }

    pub fn distribution(&self, delta: &Partition, budget: &Budget) -> Result<Vec<u64>> {
        Ok(delta.distribution(&self.codewords(budget)?))
    }
}

/// `|C|·|C^⊥ ∩ B| = Σ_A |C ∩ A| ρ(A, B)` for every `B ∈ Γ`.
pub fn macwilliams_verify(
    code: &LinearCode,
    lambda: &Partition,
    gamma: &Partition,
    budget: &Budget,
) -> Result<MacWilliamsCheck> {
    macwilliams_identity(&code.codewords(budget)?, lambda, gamma, budget)
}

/// Every subspace of a space, each with its codewords and the position of
/// its dual.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    space: PrimeFieldSpace,
    codes: Vec<LinearCode>,
    words: Vec<Vec<u32>>,
    dual: Vec<usize>,
}

impl SubspaceLattice {
    pub fn new(space: &PrimeFieldSpace, budget: &Budget) -> Result<Self> {
        let n = space.dim();
        let p = space.p as u128;
        // Gaussian binomials summed over every dimension.
        let mut total: u128 = 0;
        for k in 0..=n {
            let mut num: u128 = 1;
            let mut den: u128 = 1;
            for i in 0..k as u32 {
                num = num.saturating_mul(p.pow(n as u32 - i) - 1);
                den = den.saturating_mul(p.pow(i + 1) - 1);
            }
            total = total.saturating_add(num / den);
        }
        if total > budget.max_subspaces as u128 {
            return Err(Error::CapExceeded {
                what: "number of subspaces",
                size: total,
                cap: budget.max_subspaces as u128,
            });
        }
        let mut codes = Vec::new();
        for k in 0..=n {
            rref_shapes(space, k, &mut codes);
        }
        let position: HashMap<Vec<Vec<u32>>, usize> =
            codes.iter().enumerate().map(|(i, c)| (c.rows.clone(), i)).collect();
        let dual: Vec<usize> = codes.par_iter().map(|c| position[&c.dual().rows]).collect();
        let words = codes
            .par_iter()
            .map(|c| {
                c.codewords(budget)
                    .map(|w| w.into_iter().map(|x| x as u32).collect())
            })
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Ok(SubspaceLattice {
            space: space.clone(),
            codes,
            words,
            dual,
        })
    }

    pub fn space(&self) -> &PrimeFieldSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn code(&self, i: usize) -> &LinearCode {
        &self.codes[i]
    }

    pub fn words(&self, i: usize) -> &[u32] {
        &self.words[i]
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.dual[i]
    }

    fn dist(&self, delta: &Partition, i: usize) -> Vec<u32> {
        let mut out = vec![0u32; delta.len()];
        for &w in &self.words[i] {
            out[delta.class_of(w as usize) as usize] += 1;
        }
        out
    }

    /// Two subspaces with equal `Λ`-distribution whose duals differ in
    /// `Γ`-distribution, restricted to dimension `only_dim` if given.
    pub fn macwilliams_counterexample(
        &self,
        lambda: &Partition,
        gamma: &Partition,
        only_dim: Option<usize>,
    ) -> Option<(usize, usize)> {
        let ids: Vec<usize> = (0..self.len())
            .filter(|&i| only_dim.map_or(true, |d| self.codes[i].dim() == d))
            .collect();
        let keyed: Vec<(Vec<u32>, Vec<u32>)> = ids
            .par_iter()
            .map(|&i| (self.dist(lambda, i), self.dist(gamma, self.dual[i])))
            .collect();
        let mut seen: HashMap<&[u32], (usize, &[u32])> = HashMap::new();
        for (pos, (l, g)) in keyed.iter().enumerate() {
            match seen.get(l.as_slice()) {
                Some(&(first, g0)) if g0 != g.as_slice() => return Some((ids[first], ids[pos])),
                Some(_) => {}
                None => {
                    seen.insert(l, (pos, g));
                }
            }
        }
        None
    }
}

fn rref_shapes(space: &PrimeFieldSpace, k: usize, out: &mut Vec<LinearCode>) {
    let n = space.dim();
    let p = space.p;
    let mut pivots = Vec::with_capacity(k);
    fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for c in start..n {
            cur.push(c);
            choose(n, k, c + 1, cur, f);
            cur.pop();
        }
    }
    choose(n, k, 0, &mut pivots, &mut |piv| {
        // Free slots: row r, column c > piv[r], c not a pivot.
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = (p as usize).pow(slots.len() as u32);
        for mut code in 0..count {
            let mut rows = vec![vec![0u32; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &slots {
                rows[r][c] = (code % p as usize) as u32;
                code /= p as usize;
            }
            out.push(LinearCode {
                space: space.clone(),
                rows,
            });
        }
    });
}

/// The three equivalent statements for a pair `(Λ, Γ)` of `F`-invariant partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PamiReport {
    /// `Λ` finer than `l(Γ)`.
    pub statement1: bool,
    /// `{0} ∈ Λ` and `(Λ, Γ)` admits MacWilliams identity over all codes.
    pub statement2: bool,
    /// `{0} ∈ Λ` and the identity holds on 1-dimensional codes.
    pub statement3: bool,
    /// Subspace indices violating the identity, if any.
    pub witness: Option<(usize, usize)>,
}

impl PamiReport {
    pub fn equivalent(&self) -> bool {
        self.statement1 == self.statement2 && self.statement2 == self.statement3
    }
}

fn require_invariant(space: &PrimeFieldSpace, parts: &[&Partition]) -> Result<()> {
    for d in parts {
        if let Some((v, c)) = space.invariance_witness(d)? {
            return Err(Error::Precondition(format!(
                "partition is not F-invariant: {c}·{w:?} leaves the class of {w:?}",
                w = space.vector(v)
            )));
        }
    }
    Ok(())
}

/// The three statements, each computed on its own.
pub fn pami_check(lattice: &SubspaceLattice, lambda: &Partition, gamma: &Partition, budget: &Budget) -> Result<PamiReport> {
    let space = lattice.space();
    require_invariant(space, &[lambda, gamma])?;
    let zero = lambda.has_identity_singleton();
    let statement1 = lambda.is_finer(&left_dual(gamma, budget)?)?;
    let full = lattice.macwilliams_counterexample(lambda, gamma, None);
    let statement3 = zero && lattice.macwilliams_counterexample(lambda, gamma, Some(1)).is_none();
    Ok(PamiReport {
        statement1,
        statement2: zero && full.is_none(),
        statement3,
        witness: full,
    })
}

/// 1-dimensional codes enumerated directly from their normalised spanning
/// vectors, compared with the refinement test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneDimReport {
    pub holds: bool,
    pub finer_than_dual: bool,
    /// Spanning vectors of two lines violating the identity.
    pub witness: Option<(Vec<u32>, Vec<u32>)>,
}

pub fn pami_onedim_check(
    space: &PrimeFieldSpace,
    lambda: &Partition,
    gamma: &Partition,
    budget: &Budget,
) -> Result<OneDimReport> {
    require_invariant(space, &[lambda, gamma])?;
    let finer_than_dual = lambda.is_finer(&left_dual(gamma, budget)?)?;
    let mut seen: HashMap<Vec<u64>, (usize, Vec<u64>)> = HashMap::new();
    let mut witness = None;
    for v in 1..space.size() {
        let digits = space.vector(v);
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let code = LinearCode::from_generators(space, vec![digits])?;
        let ld = code.distribution(lambda, budget)?;
        let gd = code.dual().distribution(gamma, budget)?;
        match seen.get(&ld) {
            Some((first, g0)) if *g0 != gd => {
                witness = Some((space.vector(*first), space.vector(v)));
                break;
            }
            Some(_) => {}
            None => {
                seen.insert(ld, (v, gd));
            }
        }
    }
    Ok(OneDimReport {
        holds: lambda.has_identity_singleton() && witness.is_none(),
        finer_than_dual,
        witness,
    })
}

/// An invertible linear map, stored as the images of the unit vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinearMap {
    pub columns: Vec<usize>,
}

impl LinearMap {
    pub fn identity(space: &PrimeFieldSpace) -> Self {
        LinearMap {
            columns: (0..space.dim()).map(|j| space.unit(j)).collect(),
        }
    }

    pub fn apply(&self, space: &PrimeFieldSpace, v: usize) -> usize {
        let mut acc = 0;
        for (j, &c) in self.columns.iter().enumerate() {
            let d = space.group().digit(v, j);
            if d != 0 {
                acc = space.add(acc, space.scale(d, c));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, space: &PrimeFieldSpace, other: &LinearMap) -> LinearMap {
        LinearMap {
            columns: other.columns.iter().map(|&c| self.apply(space, c)).collect(),
        }
    }

    /// Matrix entries, column `j` holding the image of the `j`-th unit vector.
    pub fn matrix(&self, space: &PrimeFieldSpace) -> Vec<Vec<u32>> {
        let cols: Vec<Vec<u32>> = self.columns.iter().map(|&c| space.vector(c)).collect();
        (0..space.dim()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }
}

/// `inv(Δ)`: all `σ ∈ GL(N, p)` with `σ(β) ∼_Δ β` for every `β`.
///
/// Columns are chosen one at a time; a partial choice is kept only when it
/// is independent of the earlier columns and already preserves the classes
/// of every vector in the span built so far.
pub fn inv_enumerate(space: &PrimeFieldSpace, delta: &Partition, budget: &Budget) -> Result<Vec<LinearMap>> {
    if !delta.host().same_shape(space.group()) {
        return Err(Error::ShapeMismatch("partition is not on this space".into()));
    }
    let gl = space.gl_order();
    if gl > budget.max_linear_maps as u128 {
        return Err(Error::CapExceeded {
            what: "|GL(N,p)| for inv enumeration",
            size: gl,
            cap: budget.max_linear_maps as u128,
        });
    }
    let size = space.size();
    let firsts: Vec<usize> = (1..size)
        .filter(|&c| delta.class_of(c) == delta.class_of(space.unit(0)))
        .collect();
    let cells: Vec<Vec<LinearMap>> = firsts
        .par_iter()
        .map(|&c| {
            let mut out = Vec::new();
            let mut span = vec![(0usize, 0usize)];
            let mut used = vec![false; size];
            used[0] = true;
            let mut cols = Vec::new();
            inv_step(space, delta, 0, c, &mut span, &mut used, &mut cols, &mut out);
            out
        })
        .collect();
    Ok(cells.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn inv_step(
    space: &PrimeFieldSpace,
    delta: &Partition,
    j: usize,
    c: usize,
    span: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
    cols: &mut Vec<usize>,
    out: &mut Vec<LinearMap>,
) {
    if used[c] {
        return;
    }
    let e = space.unit(j);
    let base = span.len();
    for t in 1..space.p() {
        let te = space.scale(t, e);
        let tc = space.scale(t, c);
        for i in 0..base {
            let (u, su) = span[i];
            let v = space.add(u, te);
            let sv = space.add(su, tc);
            if delta.class_of(v) != delta.class_of(sv) {
                span.truncate(base);
                return;
            }
            span.push((v, sv));
        }
    }
    for &(_, sv) in &span[base..] {
        used[sv] = true;
    }
    cols.push(c);
    if j + 1 == space.dim() {
        out.push(LinearMap { columns: cols.clone() });
    } else {
        for next in 1..space.size() {
            inv_step(space, delta, j + 1, next, span, used, cols, out);
        }
    }
    cols.pop();
    for &(_, sv) in &span[base..] {
        used[sv] = false;
    }
    span.truncate(base);
}

/// Orbits of the group generated by `maps`.
pub fn orbit_partition(space: &PrimeFieldSpace, maps: &[LinearMap]) -> Result<Partition> {
    let n = space.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in maps {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, m.apply(space, v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    Partition::from_keys(space.group(), roots, |_, rep| ClassLabel::Orbit { representative: rep })
}

/// A pair `α ∼_Δ β` that no element of `inv(Δ)` maps onto each other, so the
/// isometry `F·α → H`, `α ↦ β` does not extend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MepWitness {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub alpha_index: usize,
    pub beta_index: usize,
    pub class_label: String,
    pub inv_order: usize,
}

pub fn mep_witness_search(space: &PrimeFieldSpace, delta: &Partition, budget: &Budget) -> Result<Option<MepWitness>> {
    require_invariant(space, &[delta])?;
    let inv = inv_enumerate(space, delta, budget)?;
    let orb = orbit_partition(space, &inv)?;
    // orb(inv(Δ)) is always finer than Δ; look for a Δ-class it splits.
    let mut first: Vec<Option<usize>> = vec![None; delta.len()];
    let mut pair = None;
    for v in 0..space.size() {
        let c = delta.class_of(v) as usize;
        match first[c] {
            None => first[c] = Some(v),
            Some(r) if orb.class_of(r) != orb.class_of(v) => {
                pair = Some((r, v));
                break;
            }
            Some(_) => {}
        }
    }
    let Some((a, b)) = pair else {
        return Ok(None);
    };
    debug_assert!(inv.iter().all(|m| m.apply(space, a) != b));
    Ok(Some(MepWitness {
        alpha: space.vector(a),
        beta: space.vector(b),
        alpha_index: a,
        beta_index: b,
        class_label: delta.label(delta.class_of(a)).to_string(),
        inv_order: inv.len(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceTier {
    /// A concrete non-extendable isometry, checked against all of `inv(Δ)`.
    Witness,
    /// Non-reflexivity by brute-force duals.
    BruteForceNonReflexive,
    /// Non-reflexivity by a closed-form criterion.
    Criterion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub tier: EvidenceTier,
    pub detail: String,
    /// The step from non-reflexive to `Δ ≠ orb(inv(Δ))` is the cited
    /// implication, not checked here.
    pub relies_on_cited_implication: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MepWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureStatus {
    /// A self-contained witness exists.
    Refuted,
    /// Refuted only through the cited implication.
    RefutedViaCitedImplication,
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub status: ConjectureStatus,
    pub evidence: Vec<Evidence>,
    /// Tiers that were skipped or came back empty.
    pub notes: Vec<String>,
}

/// Whether `CO(F_q^n, P(k, [1, n]))` fails the MEP, with every evidence tier
/// that fits in the budget.
pub fn conjecture21_report(q: u32, n: usize, k: usize, budget: &Budget) -> Result<ConjectureReport> {
    if !is_prime(q) {
        return Err(Error::InvalidInput(format!("q = {q} is not prime")));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!("need 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let mut evidence = Vec::new();
    let mut notes = Vec::new();
    let verdict = co_nonreflexivity_verdict(n as u64, k as u64, q as u64)?;
    match verdict.verdict {
        Verdict::NonReflexive => evidence.push(Evidence {
            tier: EvidenceTier::Criterion,
            detail: format!("{} gives non-reflexive; non-reflexive implies Δ ≠ orb(inv(Δ)), hence no MEP", verdict.criterion),
            relies_on_cited_implication: true,
            witness: None,
        }),
        v => notes.push(format!("criteria: {v} ({})", verdict.criterion)),
    }
    let size = (q as u128).saturating_pow(n as u32);
    let brute_ok = size <= 1 << 16 && budget.check_enumerable("space", size).is_ok();
    let space = PrimeFieldSpace::uniform(q, n)?;
    let delta = if brute_ok {
        Some(induce_co(space.group(), &CoveringMetric::uniform(n, k)?, budget)?)
    } else {
        notes.push("brute force skipped: space too large".into());
        None
    };
    if let Some(delta) = &delta {
        match reflexivity_check(delta, false, budget) {
            Ok(r) if !r.reflexive => evidence.push(Evidence {
                tier: EvidenceTier::BruteForceNonReflexive,
                detail: format!("|Δ| = {} < |l(Δ)| = {}", r.classes, r.dual_classes),
                relies_on_cited_implication: true,
                witness: None,
            }),
            Ok(_) => notes.push("brute force: reflexive".into()),
            Err(e) => notes.push(format!("brute force skipped: {e}")),
        }
        match mep_witness_search(&space, delta, budget) {
            Ok(Some(w)) => evidence.push(Evidence {
                tier: EvidenceTier::Witness,
                detail: format!(
                    "no σ in inv(Δ) (order {}) maps {:?} to {:?}",
                    w.inv_order, w.alpha, w.beta
                ),
                relies_on_cited_implication: false,
                witness: Some(w),
            }),
            Ok(None) => notes.push("witness search: Δ = orb(inv(Δ))".into()),
            Err(e) => notes.push(format!("witness search skipped: {e}")),
        }
    }
    evidence.sort_by_key(|e| e.tier as u8);
    let status = if evidence.iter().any(|e| !e.relies_on_cited_implication) {
        ConjectureStatus::Refuted
    } else if evidence.is_empty() {
        ConjectureStatus::Open
    } else {
        ConjectureStatus::RefutedViaCitedImplication
    };
    Ok(ConjectureReport {
        q,
        n,
        k,
        status,
        evidence,
        notes,
    })
}

/// `l(Γ)` under `χ^c`.
pub fn dual_under_character(gamma: &Partition, c: u32, budget: &Budget) -> Result<Partition> {
    left_dual_with(
        gamma,
        DualOptions {
            engine: DualEngine::Auto,
            twist: c,
        },
        budget,
    )
}

/// Reads a generator matrix file: a header `p N k_1 k_2 ...` followed by one
/// row of `N` space-separated digits per generator.
pub fn parse_generator_file(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("generator file is empty".into()))?;
    let nums = |ln: usize, l: &str| -> Result<Vec<u32>> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("line {ln}: {t:?} is not a non-negative integer")))
            })
            .collect()
    };
    let head = nums(ln, header)?;
    if head.len() < 2 {
        return Err(Error::InvalidInput(format!("line {ln}: header needs p and N")));
    }
    let (p, n) = (head[0], head[1] as usize);
    let blocks: Vec<usize> = if head.len() == 2 {
        vec![1; n]
    } else {
        head[2..].iter().map(|&k| k as usize).collect()
    };
    if blocks.iter().sum::<usize>() != n {
        return Err(Error::InvalidInput(format!("line {ln}: block sizes do not sum to N = {n}")));
    }
    let space = PrimeFieldSpace::new(p, blocks)?;
    let rows = lines
        .map(|(ln, l)| {
            let row = nums(ln, l)?;
            if row.len() != n {
                return Err(Error::InvalidInput(format!("line {ln}: {} entries, expected {n}", row.len())));
            }
            if let Some(d) = row.iter().find(|&&d| d >= p) {
                return Err(Error::InvalidInput(format!("line {ln}: entry {d} is not a residue mod {p}")));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_generators(&space, rows)
}
