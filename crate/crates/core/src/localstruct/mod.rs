//! Weighted red/blue configurations on three disjoint triples and the bound
//! `σ³(β³ + β² q1 + β q2 + t) <= 5/8`.

pub mod config;
pub mod fact;
pub mod lp;
mod steady;
pub mod verify;

pub use config::{
    config_frontier, config_value, config_value_exact, max_weight_lp, validate_config, ConfigValue,
    LocalConfig, LpOptimum, TripleSystem, Validation, Violation, WeightAssignment,
};
pub use fact::{check_fact, check_monotonicity, f_spt, f_spt_exact, max_over_sigma, FactReport, SigmaMax};
pub use verify::{verify_claims, verify_local_structure, ClaimReport, SearchMode, VerificationReport, VerifyOptions};
