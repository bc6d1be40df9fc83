//! File formats, experiment plans and reporting on top of `xdhh-core`.
//!
//! The `xdhh` binary is a thin front end over this library.

pub mod clock;
pub mod formats;
pub mod instance;
pub mod plan;
pub mod report;
pub mod results;

pub use instance::{DomainId, Generator, Instance};
pub use plan::{ExperimentPlan, PlanOutcome};
