//! Finite abelian groups `H = Π_i H_i`, each `H_i` a product of cyclic groups.
//!
//! Elements are addressed by a mixed-radix index over the flattened list of
//! cyclic factors, first factor most significant. For `Z_3 × Z_2` the index of
//! `(r0, r1)` is `2·r0 + r1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::exactarith::CycInt;
use crate::subset::{Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct GroupProduct {
    coordinates: Vec<Vec<u32>>,
    factor_orders: Vec<u32>,
    factor_coord: Vec<usize>,
    strides: Vec<usize>,
    coord_orders: Vec<u64>,
    order: usize,
    exponent: u32,
}

#[derive(Serialize, Deserialize)]
struct GroupSpec {
    coordinates: Vec<Vec<u32>>,
}

impl TryFrom<GroupSpec> for GroupProduct {
    type Error = Error;
    fn try_from(spec: GroupSpec) -> Result<Self> {
        GroupProduct::new(spec.coordinates)
    }
}

impl From<GroupProduct> for GroupSpec {
    fn from(g: GroupProduct) -> Self {
        GroupSpec {
            coordinates: g.coordinates,
        }
    }
}

/// A codeword: its index together with the residue of every cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    index: usize,
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }
}

impl GroupProduct {
    /// Builds `Π_i H_i` where `coordinates[i]` lists the cyclic orders of `H_i`.
    pub fn new(coordinates: Vec<Vec<u32>>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::InvalidInput("group needs at least one coordinate".into()));
        }
        if coordinates.len() > MAX_GROUND {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_GROUND} coordinates are supported"
            )));
        }
        let mut factor_orders = Vec::new();
        let mut factor_coord = Vec::new();
        let mut coord_orders = Vec::with_capacity(coordinates.len());
        let mut exponent: u32 = 1;
        let mut order: usize = 1;
        for (i, factors) in coordinates.iter().enumerate() {
            if factors.is_empty() {
                return Err(Error::InvalidInput(format!("coordinate {i} has no cyclic factor")));
            }
            let mut h: u64 = 1;
            for &d in factors {
                if d < 2 {
                    return Err(Error::InvalidInput(format!(
                        "cyclic order {d} at coordinate {i} must be at least 2"
                    )));
                }
                factor_orders.push(d);
                factor_coord.push(i);
                h = h.saturating_mul(d as u64);
                exponent = exponent.lcm(&d);
                order = order
                    .checked_mul(d as usize)
                    .filter(|&o| o <= 1 << 62)
                    .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
            }
            coord_orders.push(h);
        }
        let mut strides = vec![1usize; factor_orders.len()];
        for f in (0..factor_orders.len().saturating_sub(1)).rev() {
            strides[f] = strides[f + 1] * factor_orders[f + 1] as usize;
        }
        Ok(GroupProduct {
            coordinates,
            factor_orders,
            factor_coord,
            strides,
            coord_orders,
            order,
            exponent,
        })
    }

    /// `X^n` with `X = Z_q`.
    pub fn uniform(n: usize, q: u32) -> Result<Self> {
        GroupProduct::new(vec![vec![q]; n])
    }

    pub fn num_coordinates(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Vec<u32>] {
        &self.coordinates
    }

    /// `h_i = |H_i|` for every coordinate.
    pub fn coordinate_orders(&self) -> &[u64] {
        &self.coord_orders
    }

    pub fn factor_orders(&self) -> &[u32] {
        &self.factor_orders
    }

    pub fn factor_coordinate(&self, f: usize) -> usize {
        self.factor_coord[f]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The exponent `m`: lcm of all cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `|H|` as a checked enumeration size.
    pub fn enumerable_len(&self, budget: &Budget) -> Result<usize> {
        budget.check_enumerable("group elements", self.order as u128)
    }

    /// Index step of cyclic factor `f`.
    pub fn stride(&self, f: usize) -> usize {
        self.strides[f]
    }

    #[inline]
    pub fn digit(&self, index: usize, f: usize) -> u32 {
        ((index / self.strides[f]) % self.factor_orders[f] as usize) as u32
    }

    pub fn digits(&self, index: usize) -> Vec<u32> {
        (0..self.factor_orders.len()).map(|f| self.digit(index, f)).collect()
    }

    pub fn index_of(&self, residues: &[u32]) -> Result<usize> {
        if residues.len() != self.factor_orders.len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} residues, got {}",
                self.factor_orders.len(),
                residues.len()
            )));
        }
        let mut idx = 0usize;
        for (f, &r) in residues.iter().enumerate() {
            if r >= self.factor_orders[f] {
                return Err(Error::InvalidInput(format!(
                    "residue {r} out of range for cyclic order {}",
                    self.factor_orders[f]
                )));
            }
            idx += r as usize * self.strides[f];
        }
        Ok(idx)
    }

    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "element index out of range");
        GroupElement {
            index,
            residues: self.digits(index),
        }
    }

    pub fn element_from_residues(&self, residues: &[u32]) -> Result<GroupElement> {
        let index = self.index_of(residues)?;
        Ok(GroupElement {
            index,
            residues: residues.to_vec(),
        })
    }

    pub fn identity(&self) -> GroupElement {
        self.element(0)
    }

    /// Every element in index order, identity first.
    pub fn enumerate<'a>(
        &'a self,
        budget: &Budget,
    ) -> Result<impl Iterator<Item = GroupElement> + 'a> {
        let len = self.enumerable_len(budget)?;
        Ok((0..len).map(move |i| self.element(i)))
    }

    /// `supp(β) = {i | β_i ≠ 1}`.
    pub fn support(&self, beta: &GroupElement) -> Subset {
        let mut s = Subset::EMPTY;
        for (f, &r) in beta.residues.iter().enumerate() {
            if r != 0 {
                s.insert(self.factor_coord[f]);
            }
        }
        s
    }

    pub fn support_of(&self, index: usize) -> Subset {
        let mut s = Subset::EMPTY;
        for f in 0..self.factor_orders.len() {
            if self.digit(index, f) != 0 {
                s.insert(self.factor_coord[f]);
            }
        }
        s
    }

    /// Supports of all elements, indexed by element.
    pub fn all_supports(&self, budget: &Budget) -> Result<Vec<Subset>> {
        let len = self.enumerable_len(budget)?;
        let mut out = vec![Subset::EMPTY; len];
        // Walk factors from least significant, reusing the periodic pattern.
        for (f, &d) in self.factor_orders.iter().enumerate() {
            let stride = self.strides[f];
            let coord = self.factor_coord[f];
            for (i, s) in out.iter_mut().enumerate() {
                if (i / stride) % d as usize != 0 {
                    s.insert(coord);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut idx = 0usize;
        for f in 0..self.factor_orders.len() {
            let d = self.factor_orders[f];
            idx += ((self.digit(a, f) + self.digit(b, f)) % d) as usize * self.strides[f];
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut idx = 0usize;
        for f in 0..self.factor_orders.len() {
            let d = self.factor_orders[f];
            idx += ((d - self.digit(a, f)) % d) as usize * self.strides[f];
        }
        idx
    }

    /// `c·a`, i.e. `a` added to itself `c` times.
    pub fn scalar_mul(&self, c: u32, a: usize) -> usize {
        let mut idx = 0usize;
        for f in 0..self.factor_orders.len() {
            let d = self.factor_orders[f] as u64;
            idx += ((c as u64 * self.digit(a, f) as u64) % d) as usize * self.strides[f];
        }
        idx
    }

    /// Exponent `e` with `f(α, β) = ζ_m^e` for the standard pairing
    /// `Π_factors ζ_d^{a·b}`.
    pub fn pairing_exponent(&self, a: usize, b: usize) -> u32 {
        let m = self.exponent as u64;
        let mut e = 0u64;
        for f in 0..self.factor_orders.len() {
            let d = self.factor_orders[f] as u64;
            let (x, y) = (self.digit(a, f) as u64, self.digit(b, f) as u64);
            e += (m / d) * ((x * y) % d);
        }
        (e % m) as u32
    }

    /// `f(α, β)` as an exact cyclotomic integer of modulus `m`.
    pub fn pairing(&self, alpha: &GroupElement, beta: &GroupElement) -> Result<CycInt> {
        let n = self.factor_orders.len();
        if alpha.residues.len() != n || beta.residues.len() != n {
            return Err(Error::ShapeMismatch(
                "pairing arguments do not belong to this group".into(),
            ));
        }
        CycInt::zeta_pow(self.exponent, self.pairing_exponent(alpha.index, beta.index) as i64)
    }

    pub fn same_shape(&self, other: &GroupProduct) -> bool {
        self.coordinates == other.coordinates
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let g = GroupProduct::uniform(5, 2).unwrap();
        assert_eq!((g.order(), g.exponent()), (32, 2));
        let g = GroupProduct::new(vec![vec![2, 2], vec![3]]).unwrap();
        assert_eq!(g.coordinate_orders(), &[4, 3]);
        assert_eq!((g.order(), g.exponent()), (12, 6));
        assert!(GroupProduct::new(vec![vec![1]]).is_err());
        assert!(GroupProduct::new(vec![]).is_err());
    }

    #[test]
    fn enumeration_order() {
        let g = GroupProduct::new(vec![vec![3], vec![2]]).unwrap();
        let budget = Budget::default();
        let els: Vec<_> = g.enumerate(&budget).unwrap().collect();
        assert_eq!(els.len(), 6);
        assert_eq!(els[0].residues(), &[0, 0]);
        for e in &els {
            assert_eq!(e.index(), 2 * e.residues()[0] as usize + e.residues()[1] as usize);
        }
        let small = Budget {
            enumeration_cap: 4,
            ..Budget::default()
        };
        assert!(matches!(g.enumerate(&small), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn supports() {
        let g = GroupProduct::uniform(3, 2).unwrap();
        assert_eq!(g.support(&g.identity()), Subset::EMPTY);
        let b = g.element_from_residues(&[1, 0, 1]).unwrap();
        assert_eq!(g.support(&b), Subset::from_indices([0, 2]));
        let all = g.all_supports(&Budget::default()).unwrap();
        for i in 0..g.order() {
            assert_eq!(all[i], g.support_of(i));
        }
    }

    #[test]
    fn pairing_examples() {
        let g = GroupProduct::uniform(2, 2).unwrap();
        let a = g.element_from_residues(&[1, 1]).unwrap();
        let b = g.element_from_residues(&[1, 0]).unwrap();
        assert_eq!(g.pairing(&a, &b).unwrap().to_integer(), Some(-1));
        assert_eq!(g.pairing(&g.identity(), &b).unwrap().to_integer(), Some(1));
    }
}
