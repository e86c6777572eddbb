//! Spec files, the verification pipeline, JSON/CSV reports and the `kummer`
//! command-line driver on top of `kummer-core`.

pub mod bundled;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod spec;

pub use error::KummerError;
pub use pipeline::{run_all, run_stages, Options, Stages};
pub use report::{Claim, Report, Status};
pub use spec::{parse_construction, parse_str, ConstructionSpec};
