//! Graded Betti numbers over F2 and Q for the non-resultant spaces and their
//! models: stable splittings, loop-space series, the E1 page, and checks of
//! the stable-range identities.

mod braid;
mod e1;
mod formula;
mod graded;
mod loops;
mod verify;

pub use braid::{betti_cj_f2, betti_dj, dl_monomials, BraidTable, DLMonomial};
pub use e1::{e1_table, e1_table_with, engine_for_e1, E1Table, JRange};
pub use formula::{betti_of_formula, space_formula, HomologyEngine, SpaceFormula, SpaceKind, Summand, SummandKind};
pub use graded::{FieldChoice, GradedDims};
pub use loops::{betti_loop_model, omega2_sphere, omega_sphere};
pub use verify::{
    default_qmax, engine_for_verify, snaith_sum, stability_dims, verify_grid, verify_theorems, verify_with_engine,
    CheckId, CheckResult, Discrepancy, GridCell, GridSpec, TheoremReport,
};
