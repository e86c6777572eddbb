#![cfg_attr(not(feature = "std"), no_std)]

//! Certification engines for Kummer-type constructions on flat tori.
//!
//! The crate is `no_std` with `alloc`. It covers exact affine-isometry group
//! mechanics on `T^n = R^n / Z^n`, Clifford-monomial spin obstructions,
//! invariant exterior forms and Betti counts, F-structure axiom checks, and a
//! numerical curvature laboratory for cohomogeneity-one metrics such as
//! Eguchi–Hanson and its cutoff gluing into flat space.
//!
//! File formats, reports and the command-line driver live in the `kummer`
//! companion crate.

extern crate alloc;

pub mod clifford;
pub mod cohomology;
pub mod curvature;
pub mod error;
pub mod fstructure;
pub mod intmat;
pub mod lattice;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rat;
