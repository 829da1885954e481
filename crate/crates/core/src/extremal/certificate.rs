//! The common pair function `u` on `{-1,1}^2` whose pairwise sums dominate `|Σ ε_i|^p` on the cube.
//!
//! Under any pairwise independent law `E Σ_{i<j} u(ε_i, ε_j)` is the same number, so a feasible `u`
//! bounds the orbit LP from above; tightness on the optimizer's support proves optimality.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::precision::MomentOrder;
use crate::rational::{binomial, Rational};
use crate::simplex::{solve_lp, LpStatus};

use super::lp::build_orbit_lp;

/// Values `u(1,1)`, `u(1,-1)`, `u(-1,1)`, `u(-1,-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub n: usize,
    pub p: u32,
    pub u11: Rational,
    pub u1m: Rational,
    pub um1: Rational,
    pub umm: Rational,
}

impl DualCertificate {
    pub fn new(n: usize, p: u32, u11: Rational, u1m: Rational, um1: Rational, umm: Rational) -> Result<Self> {
        if u11 != umm || u1m != um1 {
            return Err(Error::InvalidParameter(
                "certificate must satisfy u(1,1) = u(-1,-1) and u(1,-1) = u(-1,1)".into(),
            ));
        }
        if n < 2 || p < 2 {
            return Err(Error::InvalidParameter(format!("certificate needs n >= 2 and p >= 2, got n={n} p={p}")));
        }
        Ok(Self { n, p, u11, u1m, um1, umm })
    }

    /// Right-hand side `Σ_{i<j} u(x_i, x_j)` at any `x` with `w` entries equal to `+1`.
    pub fn pair_sum(&self, w: usize) -> Rational {
        let (n, w) = (self.n as i64, w as i64);
        let int = |b: BigInt| Rational::from_integer(b);
        int(binomial(w, 2)) * &self.u11
            + int(binomial(n - w, 2)) * &self.umm
            + Rational::from_integer(BigInt::from(w * (n - w))) * (&self.u1m + &self.um1)
                / Rational::from_integer(2.into())
    }

    /// `Σ_{i<j} E u(ε_i, ε_j)` under any pairwise independent Rademacher law.
    pub fn dual_value(&self) -> Rational {
        let pairs = Rational::from_integer(binomial(self.n as i64, 2));
        pairs * (&self.u11 + &self.u1m + &self.um1 + &self.umm) / Rational::from_integer(4.into())
    }
}

/// `u(1,1) = u(-1,-1) = n^p / C(n,2)` and `u(1,-1) = u(-1,1) = -((n-2)/n) u(1,1)`.
pub fn closed_form_certificate(n: usize, p: u32) -> Result<DualCertificate> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::InvalidParameter(format!("requires even n >= 4, got {n}")));
    }
    if p < 2 {
        return Err(Error::InvalidParameter(format!("moment order p={p} must be at least 2")));
    }
    let ni = n as i64;
    let u11 = Rational::new(num_traits::pow(BigInt::from(ni), p as usize), binomial(ni, 2));
    let u1m = -(&u11 * Rational::new((ni - 2).into(), ni.into()));
    DualCertificate::new(n, p, u11.clone(), u1m.clone(), u1m, u11)
}

/// One row of the per-weight comparison `|2w - n|^p <= pair_sum(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSlack {
    pub weight: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub slack: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub feasible: bool,
    /// Weights where the pointwise inequality is tight.
    pub equality_weights: Vec<usize>,
    pub certified_value: Rational,
    /// Optimum of the exchangeable pairwise LP at `a = (1, …, 1)`.
    pub primal_value: Rational,
    pub matches_primal: bool,
    pub slack: Vec<WeightSlack>,
}

/// Checks the pointwise inequality weight by weight and compares the dual value with the LP optimum.
pub fn verify_certificate(cert: &DualCertificate) -> Result<CertificateReport> {
    let n = cert.n;
    let slack: Vec<WeightSlack> = (0..=n)
        .map(|w| {
            let lhs =
                Rational::from_integer(num_traits::pow(BigInt::from((2 * w as i64 - n as i64).abs()), cert.p as usize));
            let rhs = cert.pair_sum(w);
            let s = &rhs - &lhs;
            WeightSlack { weight: w, lhs, rhs, slack: s }
        })
        .collect();
    let feasible = slack.iter().all(|r| r.slack >= Rational::from_integer(0.into()));
    let equality_weights = slack.iter().filter(|r| r.lhs == r.rhs).map(|r| r.weight).collect();
    let certified_value = cert.dual_value();
    let sol = solve_lp(&build_orbit_lp(n, MomentOrder::integer(cert.p)?, 2)?);
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpStatus(sol.status.as_str()));
    }
    Ok(CertificateReport {
        feasible,
        equality_weights,
        matches_primal: feasible && certified_value == sol.value,
        certified_value,
        primal_value: sol.value,
        slack,
    })
}
