//! Exact arithmetic: cyclotomic integers, sparse rational polynomials and the
//! binomial factor matching used to compare products of `x^n ± a`.

mod cyclotomic;
mod factors;
mod sparse;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, root_of_unity_sum, CycInt, Cyclotomic};
pub use factors::{match_binomial_factors, match_subset_factors, BinomialFactor, FactorSign};
pub use sparse::{Degree, Exponent, SparsePoly};
