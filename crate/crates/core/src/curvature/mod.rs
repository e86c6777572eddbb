//! Numerical curvature for coordinate charts and for cohomogeneity-one
//! metrics over `S³`, with the Eguchi–Hanson profile, its cutoff gluing into
//! flat space, and decay-rate scans.

pub mod chart;
pub mod cohomo;
pub mod cutoff;
pub mod jet;
pub mod linalg;
pub mod profile;
pub mod sample;
pub mod scan;

pub use chart::{euclidean_chart, euler_chart, sphere_chart, ChartCurvature, MetricChart};
pub use cohomo::{calibrate_coframe, cohomo_curvature, cohomo_sample, Calibration, COFRAME_LAMBDA};
pub use cutoff::{make_cutoff, Cutoff};
pub use jet::Jet;
pub use profile::{eh_profile, glued_profile, metric_deviation, EguchiHanson, Euclidean, Glued, RadialProfile, Scaled};
pub use sample::CurvatureSample;
pub use scan::{
    annulus_sup, decay_scan, geometric_grid, glue_ricci_scan, loglog_fit, mu_report, sup_over, AnnulusSup,
    DecayScan, Fit, GlueScan, MuReport, MuRow,
};
