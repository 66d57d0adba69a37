//! Certified lower bounds for the category of a cohomology class.

mod certificate;
mod classical;
mod cup;
mod massey;
mod products;
mod report;

pub use certificate::{
    check_defining_system, replay_classical, replay_cup, replay_massey, CupCertificate, DefiningSystem,
    MasseyCertificate, ProductCertificate, SparseCochain, SparseEntry,
};
pub use classical::{classical_cup_length, ClassicalResult};
pub use cup::{cup_length_bound, supp_summary, CupBound};
pub use massey::{
    massey_bound, massey_power, survivor_space, xi_system, MasseyBound, MasseyResult, MasseyStatus, SurvivorSpace,
    SystemCochains,
};
pub use report::{
    bound_report, replay_report, BoundConfig, BoundEntry, CatBoundReport, Certificate, Theorem, MAX_SIMPLICES,
    SCHEMA_VERSION,
};
