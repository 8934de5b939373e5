//! Systems of monic polynomials, their membership in the four spaces, strata
//! of the discriminant, and the explicit root-transplanting maps.

mod maps;
mod membership;
mod region;
mod system;

pub use maps::{
    double_to_hplus, loop_product, numeric_to_qpoly, stabilization_anchors, stabilize, stabilize_slot, NumericSystem,
    NumericSystemJson, RECHECK_THRESHOLD, REALNESS_TOL, ROOT_TOL,
};
pub use membership::{
    common_root_locus, has_common_root_at, is_member, jet, jet_embedding, jet_family, stratum_signature,
};
pub use region::{RegionMap, REGION_MAP_VERSION};
pub use system::{Family, HplusParity, SpaceId, StratumSignature, System, SystemJson};
