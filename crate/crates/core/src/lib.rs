//! Computational toolkit for spaces of non-resultant polynomial systems:
//! tuples of monic polynomials with no common root of multiplicity `>= n`.
//!
//! * [`polyarith`]: exact polynomial arithmetic over Q and Q(i).
//! * [`spaces`]: membership, strata and the constructive maps on systems.
//! * [`scanning`]: loops into projective space and their discrete invariants.
//! * [`homology`]: Betti numbers from stable splittings, loop-space models and
//!   the E1 page, plus the degree-by-degree theorem checks.
//! * [`oracle`]: brute-force certificates used to cross-check the above.

pub mod error;
pub mod homology;
pub mod oracle;
pub mod polyarith;
pub mod scanning;
pub mod spaces;

pub use error::{Error, Result};
