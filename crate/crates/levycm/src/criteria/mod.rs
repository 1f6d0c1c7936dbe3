//! Levy-specific integral criteria for the finite-slope and infinite-slope
//! regimes, scaling test functions, tail-bound audits and asymptotic ratio
//! checks of the Laplace exponent.

pub mod asymptotics;
pub mod audit;
pub mod conditions;
pub mod testfn;

pub use asymptotics::{phi_asymptotics_check, AsymptoticsRegime, RatioTable};
pub use audit::{appendix_bound_audit, AuditPoint, AuditReport};
pub use conditions::{
    corollary24_integrals, fs_conditions, is_conditions, DichotomySide, FsConditionsReport,
    IsConditionsReport, PowerIntegralsReport,
};
pub use testfn::{TestFunction, TestFunctionKind};
