//! Khintchine linear programs over k-wise independent measures, their dual certificate, and the
//! fourth-moment decomposition for exchangeable pairwise independent vectors.

mod certificate;
mod lp;
mod quartic;

pub use certificate::{closed_form_certificate, verify_certificate, CertificateReport, DualCertificate, WeightSlack};
pub use lp::{
    build_full_lp, build_orbit_lp, build_orbit_lp_for, holder_reference, independent_constant, khintchine_cell,
    lower_bound_reference, normalized_constant, ConstantCell, LpMode, FULL_LIMIT,
};
pub use quartic::{lemma_p4_check, maclaurin_gap, quartic_decompose, MaclaurinGap, QuarticDecomposition};
