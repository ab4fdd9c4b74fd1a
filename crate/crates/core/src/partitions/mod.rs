//! Partitions of enumerated groups, induced partitions, left/right duals by
//! exact character sums, closed-form ideal sums, generalized Krawtchouk
//! matrices and the reflexivity checkers.

mod dual;
mod ideal_sums;
mod induced;
mod krawmatrix;
mod theorems;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::GroupProduct;
use crate::subset::Subset;

pub use dual::{
    dual_signature, left_dual, left_dual_with, mutually_dual, reflexivity_check, right_dual, twist_is_unit,
    DualEngine, DualOptions, DualSignature, ReflexivityReport,
};
pub use ideal_sums::{
    f_poly, phi, psi, signature_via_ideals, signature_via_ideals_psi, FEngine,
};
pub use induced::{induce_co, induce_from_ideal_classes, induce_q, CoveringPartitionExt};
pub use krawmatrix::{
    code_dual, krawtchouk_matrix, macwilliams_identity, subgroup_generated, KrawtchoukMatrix,
    MacWilliamsCheck,
};
pub use theorems::{
    prop33_predicate, theorem32_check, theorem41_check, Theorem32Report, Theorem41Report,
};

/// Where a class came from; used for readable reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// All elements of weighted poset weight `ϖ`.
    Weight(Ratio<i64>),
    /// All elements of covering weight `w`.
    CoveringWeight(u32),
    /// Preimage of an ideal class.
    IdealClass(u32),
    /// A class of a dual partition, named by its smallest element.
    Dual { representative: usize },
    /// An orbit, named by its smallest element.
    Orbit { representative: usize },
    Index(u32),
    All,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Weight(w) => write!(f, "wt={w}"),
            ClassLabel::CoveringWeight(w) => write!(f, "co={w}"),
            ClassLabel::IdealClass(c) => write!(f, "ideal-class={c}"),
            ClassLabel::Dual { representative } => write!(f, "dual#{representative}"),
            ClassLabel::Orbit { representative } => write!(f, "orbit#{representative}"),
            ClassLabel::Index(i) => write!(f, "class#{i}"),
            ClassLabel::All => write!(f, "all"),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A partition of the elements of a group product.
///
/// Class ids are canonical: classes are numbered by the order in which their
/// smallest element appears, so two partitions of the same host are equal iff
/// their id vectors are equal.
#[derive(Debug, Clone)]
pub struct Partition {
    host: GroupProduct,
    class_of: Vec<u32>,
    labels: Vec<ClassLabel>,
    sizes: Vec<u64>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.host.same_shape(&other.host) && self.class_of == other.class_of
    }
}

impl Eq for Partition {}

#[derive(Serialize)]
struct ClassExport<'a> {
    label: &'a ClassLabel,
    elements: Vec<usize>,
}

impl Partition {
    /// Groups elements by key; `label` receives the key and the smallest
    /// element of each class.
    pub fn from_keys<K: Hash + Eq>(
        host: &GroupProduct,
        keys: Vec<K>,
        mut label: impl FnMut(&K, usize) -> ClassLabel,
    ) -> Result<Partition> {
        if keys.len() != host.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} keys for a group of order {}",
                keys.len(),
                host.order()
            )));
        }
        let mut ids: HashMap<&K, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut labels = Vec::new();
        let mut sizes = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let next = ids.len() as u32;
            let id = *ids.entry(k).or_insert_with(|| {
                labels.push(label(k, i));
                sizes.push(0);
                next
            });
            sizes[id as usize] += 1;
            class_of.push(id);
        }
        Ok(Partition {
            host: host.clone(),
            class_of,
            labels,
            sizes,
        })
    }

    /// From arbitrary class ids; classes are renumbered canonically and
    /// labelled by [`ClassLabel::Index`] of the new id.
    pub fn from_ids(host: &GroupProduct, ids: Vec<u32>) -> Result<Partition> {
        Partition::from_keys(host, ids, |_, _| ClassLabel::Index(0)).map(|mut p| {
            for (c, l) in p.labels.iter_mut().enumerate() {
                *l = ClassLabel::Index(c as u32);
            }
            p
        })
    }

    /// From canonical ids whose labels are already known to be distinct.
    pub(crate) fn from_canonical(
        host: &GroupProduct,
        class_of: Vec<u32>,
        labels: Vec<ClassLabel>,
    ) -> Partition {
        let mut sizes = vec![0u64; labels.len()];
        for &c in &class_of {
            sizes[c as usize] += 1;
        }
        Partition {
            host: host.clone(),
            class_of,
            labels,
            sizes,
        }
    }

    /// The one-class partition.
    pub fn trivial(host: &GroupProduct) -> Partition {
        Partition::from_canonical(host, vec![0; host.order()], vec![ClassLabel::All])
    }

    /// Every element in its own class.
    pub fn singletons(host: &GroupProduct) -> Partition {
        let n = host.order();
        Partition::from_canonical(
            host,
            (0..n as u32).collect(),
            (0..n as u32).map(ClassLabel::Index).collect(),
        )
    }

    pub fn host(&self) -> &GroupProduct {
        &self.host
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_of(&self, element: usize) -> u32 {
        self.class_of[element]
    }

    pub fn class_ids(&self) -> &[u32] {
        &self.class_of
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn label(&self, class: u32) -> &ClassLabel {
        &self.labels[class as usize]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Members of every class, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }

    /// The smallest element of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            if reps[c as usize] == usize::MAX {
                reps[c as usize] = i;
            }
        }
        reps
    }

    /// `{identity}` is a class.
    pub fn has_identity_singleton(&self) -> bool {
        self.sizes[self.class_of[0] as usize] == 1
    }

    fn check_host(&self, other: &Partition) -> Result<()> {
        if !self.host.same_shape(&other.host) {
            return Err(Error::ShapeMismatch("partitions live on different groups".into()));
        }
        Ok(())
    }

    /// A pair of elements in one class of `self` but different classes of
    /// `other`, if any.
    pub fn finer_witness(&self, other: &Partition) -> Result<Option<(usize, usize)>> {
        self.check_host(other)?;
        let mut first: Vec<Option<usize>> = vec![None; self.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            match first[c as usize] {
                None => first[c as usize] = Some(i),
                Some(r) => {
                    if other.class_of[r] != other.class_of[i] {
                        return Ok(Some((r, i)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Every class of `self` lies inside a class of `other`.
    pub fn is_finer(&self, other: &Partition) -> Result<bool> {
        Ok(self.finer_witness(other)?.is_none())
    }

    /// `(|D ∩ B| : B)` for a set of element indices.
    pub fn distribution(&self, elements: &[usize]) -> Vec<u64> {
        let mut out = vec![0u64; self.len()];
        for &e in elements {
            out[self.class_of[e] as usize] += 1;
        }
        out
    }

    /// JSON export: classes as sorted element lists with labels.
    pub fn to_json(&self) -> String {
        let classes: Vec<ClassExport> = self
            .classes()
            .into_iter()
            .zip(&self.labels)
            .map(|(elements, label)| ClassExport { label, elements })
            .collect();
        serde_json::to_string(&classes).expect("partition serialises")
    }

    /// Coarsest common refinement (meet).
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_host(other)?;
        let keys: Vec<(u32, u32)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        let mut p = Partition::from_keys(&self.host, keys, |_, _| ClassLabel::All)?;
        for (c, l) in p.labels.iter_mut().enumerate() {
            *l = ClassLabel::Index(c as u32);
        }
        Ok(p)
    }

    /// Support size of every element: handy for Hamming-type checks.
    pub fn support_sizes(host: &GroupProduct) -> Vec<usize> {
        (0..host.order()).map(|i| host.support_of(i).len()).collect()
    }

    /// The partition by support; classes are labelled by their support.
    pub fn by_support(host: &GroupProduct) -> Result<Partition> {
        let keys: Vec<Subset> = (0..host.order()).map(|i| host.support_of(i)).collect();
        Partition::from_keys(host, keys, |s, _| ClassLabel::IdealClass(s.0))
    }
}
