//! Fourth moments under exchangeable pairwise independent laws.
//!
//! Expanding `E(Σ a_i ε_i)^4` and using `ε_i^2 = 1` with pairwise independence, every term agrees with
//! the independent case except the all-distinct ones, which share the common value
//! `c = E[ε_1 ε_2 ε_3 ε_4]`:
//!
//! `E(Σ a_i ε_i)^4 = (3‖a‖_2^4 - 2‖a‖_4^4) + c · Σ_{i,j,k,l distinct} a_i a_j a_k a_l`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::independence::is_kwise_independent;
use crate::measure::{Measure, OrbitMeasure};
use crate::moment::{moment_exact, Coefficients};
use crate::rational::{binomial, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticDecomposition {
    /// `E|Σ a_i ε̄_i|^4` for independent `ε̄`.
    pub independent_part: Rational,
    /// Four-fold correlation of the measure.
    pub c: Rational,
    /// Sum over ordered distinct quadruples.
    pub cross_sum: Rational,
    pub total: Rational,
}

/// `Σ_{i,j,k,l distinct} a_i a_j a_k a_l = 24 e_4(a)`, from power sums by Newton's identities.
pub fn distinct_quadruple_sum(a: &Coefficients) -> Rational {
    let p1 = a.power_sum(1);
    let p2 = a.power_sum(2);
    let p3 = a.power_sum(3);
    let p4 = a.power_sum(4);
    let p1sq = &p1 * &p1;
    &p1sq * &p1sq - int(6) * &p1sq * &p2 + int(3) * &p2 * &p2 + int(8) * &p1 * &p3 - int(6) * p4
}

fn require_pairwise(m: &OrbitMeasure) -> Result<()> {
    if m.n() < 4 {
        return Err(Error::InvalidParameter(format!("quartic decomposition needs n >= 4, got {}", m.n())));
    }
    let report = is_kwise_independent(&Measure::Orbit(m.clone()), 2)?;
    match report.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotIndependent { k: 2, detail: w.to_string() }),
    }
}

pub fn quartic_decompose(m: &OrbitMeasure, a: &Coefficients) -> Result<QuarticDecomposition> {
    require_pairwise(m)?;
    if a.n() != m.n() {
        return Err(Error::InvalidParameter(format!("coefficient length {} does not match n = {}", a.n(), m.n())));
    }
    let l2 = a.norm2_squared();
    let independent_part = int(3) * &l2 * &l2 - int(2) * a.power_sum(4);
    let c = m.correlation_of_order(4);
    let cross_sum = distinct_quadruple_sum(a);
    let total = &independent_part + &c * &cross_sum;
    Ok(QuarticDecomposition { independent_part, c, cross_sum, total })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaclaurinGap {
    pub cross_sum: Rational,
    /// `24 C(n,4) / n^2`.
    pub bound: Rational,
    pub equality: bool,
}

/// Compares the distinct-quadruple sum of a nonnegative unit vector with its largest possible value.
pub fn maclaurin_gap(a: &Coefficients) -> Result<MaclaurinGap> {
    if a.values().iter().any(Signed::is_negative) {
        return Err(Error::InvalidParameter("coefficients must be nonnegative".into()));
    }
    if a.norm2_squared() != int(1) {
        return Err(Error::InvalidParameter(format!("Σ a_i^2 = {} but must equal 1", a.norm2_squared())));
    }
    let n = a.n() as i64;
    let cross_sum = distinct_quadruple_sum(a);
    let bound = Rational::from_integer(binomial(n, 4) * 24) / int(n * n);
    Ok(MaclaurinGap { equality: cross_sum == bound, cross_sum, bound })
}

/// `E|a·ε|^4 <= max(E|Σ ε_i/√n|^4, E|a·ε̄|^4)` for a unit `a`, the first term evaluated as
/// `(1/n^2) Σ_w q_w |2w - n|^4`.
pub fn lemma_p4_check(m: &OrbitMeasure, a: &Coefficients) -> Result<bool> {
    require_pairwise(m)?;
    if a.norm2_squared() != int(1) {
        return Err(Error::InvalidParameter(format!("Σ a_i^2 = {} but must equal 1", a.norm2_squared())));
    }
    let n = m.n() as i64;
    let lhs = moment_exact(&Measure::Orbit(m.clone()), a, 4)?;
    let equal_branch: Rational = m
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(w, q)| q * int(num_traits::pow(2 * w as i64 - n, 4)))
        .sum::<Rational>()
        / int(n * n);
    let l2 = a.norm2_squared();
    let independent_branch = int(3) * &l2 * &l2 - int(2) * a.power_sum(4);
    Ok(lhs <= equal_branch.max(independent_branch))
}
