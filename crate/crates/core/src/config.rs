use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration caps and work budgets shared by the brute-force routines.
///
/// Every routine that would enumerate a group, an ideal lattice or a matrix
/// group checks the relevant field first and fails with
/// [`Error::CapExceeded`] or [`Error::BudgetExceeded`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest group order that may be fully enumerated.
    pub enumeration_cap: u64,
    /// Largest `|G| * |Γ|` product accepted by the dual-partition engines.
    pub work_budget: u64,
    /// Largest ground set for ideal enumeration.
    pub max_ideal_ground: usize,
    /// Largest ground set for automorphism enumeration.
    pub max_automorphism_ground: usize,
    /// Largest number of subspaces enumerated by full MacWilliams checks.
    pub max_subspaces: u64,
    /// Largest number of linear maps visited by `inv` enumeration.
    pub max_linear_maps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_cap: 1 << 24,
            work_budget: 1 << 34,
            max_ideal_ground: 20,
            max_automorphism_ground: 12,
            max_subspaces: 1 << 21,
            max_linear_maps: 1 << 26,
        }
    }
}

impl Budget {
    pub fn check_enumerable(&self, what: &'static str, size: u128) -> Result<usize> {
        if size > self.enumeration_cap as u128 {
            return Err(Error::CapExceeded {
                what,
                size,
                cap: self.enumeration_cap as u128,
            });
        }
        Ok(size as usize)
    }

    pub fn check_work(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.work_budget as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                budget: self.work_budget as u128,
            });
        }
        Ok(())
    }
}
