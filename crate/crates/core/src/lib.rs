//! Singular loci of Schubert varieties `X_w` in `SL(n)/B`.
//!
//! [`maxsing::maxsing`] lists the irreducible components of the singular locus
//! in polynomial time. The [`oracle`] module holds the exponential ground truth
//! it is checked against, and [`kl`] computes Kazhdan-Lusztig polynomials,
//! both in closed form at maximal singular points and by the general recursion.

pub mod bruhat;
pub mod error;
pub mod kl;
pub mod maxsing;
pub mod oracle;
pub mod perm;

pub use error::{Error, Result};
pub use perm::{all_permutations, IndexSet, Permutation, Transposition};
