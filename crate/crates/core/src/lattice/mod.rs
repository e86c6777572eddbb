//! Exact group mechanics for finite groups of affine isometries of `T^n`.

pub mod affine;
pub mod census;
pub mod certificate;
pub mod examples;
pub mod fixed;
pub mod group;

pub use affine::AffineIsometry;
pub use census::{singular_census, CensusOrbit, LocalModel, SingularCensus};
pub use certificate::{pi1_certificate, Certificate, CertificateStatus, DirectionWitness};
pub use fixed::{fixed_locus, FixedComponent};
pub use group::{generate_group, generate_group_with_cap, GroupTable, DEFAULT_CLOSURE_CAP};
