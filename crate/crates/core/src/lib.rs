//! Exact measures on the sign hypercube `{-1,1}^n`, k-wise independence checks, and the linear
//! programs whose optima are Khintchine-type constants for k-wise independent Rademacher vectors.

pub mod constructions;
pub mod error;
pub mod extremal;
pub mod format;
pub mod independence;
pub mod measure;
pub mod moment;
pub mod precision;
pub mod rational;
pub mod sign;
pub mod simplex;
mod warm_start;

pub use constructions::{antipodal, balanced, extremal_pairwise, independent, Construction};
pub use error::{Error, Result};
pub use extremal::{
    build_full_lp, build_orbit_lp, closed_form_certificate, khintchine_cell, lemma_p4_check, maclaurin_gap,
    quartic_decompose, verify_certificate, CertificateReport, ConstantCell, DualCertificate, LpMode, MaclaurinGap,
    QuarticDecomposition,
};
pub use independence::{independence_level, is_kwise_independent, IndependenceReport, Witness};
pub use measure::{orbit_correlation, orbit_to_atomic, symmetrize, AtomicMeasure, Measure, OrbitMeasure};
pub use moment::{moment, moment_exact, Coefficients, MomentValue};
pub use precision::{MomentOrder, Real};
pub use rational::Rational;
pub use sign::{hamming_weight, SignVector};
pub use simplex::{solve_lp, LpProblem, LpSolution, LpStatus};
