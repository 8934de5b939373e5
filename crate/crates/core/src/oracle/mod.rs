//! Independent brute-force certificates: a Fox–Neuwirth chain complex for
//! braid homology mod 2, membership fuzzing, and component sampling.

mod fox_neuwirth;
mod fuzz;
mod pi0;
mod sampling;

pub use fox_neuwirth::{fox_neuwirth_betti, FNComplex, FN_MAX_J};
pub use fuzz::{planted_root_fuzz, unplanted_fuzz, FuzzFailure, FuzzKind, SampleReport};
pub use pi0::{pi0_experiment_12, segment_is_member, Pi0Report, PathReport, PATH_STEPS, PATH_TARGET};
pub use sampling::{
    random_member, random_monic_int, random_rational, random_real_member, seeded_rng, MemberDraw, COEFF_BOUND,
    MAX_ATTEMPTS,
};
