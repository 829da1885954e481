//! `E|Σ a_i ε_i|^p` under orbit and atomic measures.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{AtomicMeasure, Measure, OrbitMeasure};
use crate::precision::MomentOrder;
use crate::rational::{binomial_row, common_denominator, parse_rational_lenient, Rational};
use crate::sign::ATOMIC_LIMIT;

/// The weight vector `a`, restricted to rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    values: Vec<Rational>,
}

impl Coefficients {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("coefficient vector is empty".into()));
        }
        Ok(Self { values })
    }

    pub fn ones(n: usize) -> Self {
        Self::uniform(n, Rational::from_integer(1.into()))
    }

    pub fn uniform(n: usize, value: Rational) -> Self {
        Self { values: vec![value; n] }
    }

    /// `"ones"` or a comma-separated list of rationals (`1/2`, `0.25`, `3`).
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        if spec.trim() == "ones" {
            return Ok(Self::ones(n));
        }
        let values = spec.split(',').map(parse_rational_lenient).collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::InvalidParameter(format!(
                "coefficient list has {} entries, expected {n}",
                values.len()
            )));
        }
        Self::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The common value if all entries are equal.
    pub fn uniform_value(&self) -> Option<&Rational> {
        let first = &self.values[0];
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `Σ a_i^k`.
    pub fn power_sum(&self, k: u32) -> Rational {
        self.values.iter().map(|v| num_traits::pow(v.clone(), k as usize)).sum()
    }

    /// `‖a‖_2^2`.
    pub fn norm2_squared(&self) -> Rational {
        self.power_sum(2)
    }

    pub fn dot(&self, signs: &[i8]) -> Rational {
        self.values.iter().zip(signs).map(|(a, &s)| if s == 1 { a.clone() } else { -a.clone() }).sum()
    }
}

/// A moment together with whether it is exact or a 128-fractional-bit approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub value: Rational,
    pub exact: bool,
}

/// `E|Σ a_i ε_i|^p`. Integer orders are exact; fractional orders are approximate.
pub fn moment(m: &Measure, a: &Coefficients, order: MomentOrder) -> Result<MomentValue> {
    check_inputs(m.n(), a)?;
    let value = match m {
        Measure::Orbit(o) => orbit_moment(o, a, order)?,
        Measure::Atomic(at) => atomic_moment(at, a, order),
    };
    Ok(MomentValue { value, exact: order.is_exact() })
}

/// Exact-mode convenience wrapper.
pub fn moment_exact(m: &Measure, a: &Coefficients, p: u32) -> Result<Rational> {
    Ok(moment(m, a, MomentOrder::integer(p)?)?.value)
}

fn check_inputs(n: usize, a: &Coefficients) -> Result<()> {
    if a.n() != n {
        return Err(Error::InvalidParameter(format!("coefficient length {} does not match dimension {n}", a.n())));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("coefficient vector a = 0 is rejected".into()));
    }
    Ok(())
}

fn orbit_moment(m: &OrbitMeasure, a: &Coefficients, order: MomentOrder) -> Result<Rational> {
    let support = m.support();
    let coeffs = orbit_objective_on(m.n(), a, order, Some(&support))?;
    Ok(support.iter().map(|&w| m.weight(w) * &coeffs[w]).sum())
}

fn atomic_moment(m: &AtomicMeasure, a: &Coefficients, order: MomentOrder) -> Rational {
    m.atoms().iter().map(|(v, mass)| mass * order.abs_power(&a.dot(&v.entries()))).sum()
}

/// For each orbit `w`, the average of `|a·x|^p` over the weight-`w` vectors `x`.
///
/// Equal coefficients reduce to `|a_1|^p |2w - n|^p`; otherwise the cube is enumerated (`n <= 24`).
pub fn orbit_objective(n: usize, a: &Coefficients, order: MomentOrder) -> Result<Vec<Rational>> {
    check_inputs(n, a)?;
    orbit_objective_on(n, a, order, None)
}

fn orbit_objective_on(n: usize, a: &Coefficients, order: MomentOrder, only: Option<&[usize]>) -> Result<Vec<Rational>> {
    if let Some(c) = a.uniform_value() {
        return Ok((0..=n)
            .map(|w| {
                let s = Rational::from_integer(BigInt::from(2 * w as i64 - n as i64));
                order.abs_power(&(c * s))
            })
            .collect());
    }
    if n > ATOMIC_LIMIT {
        return Err(Error::TooLarge { n, limit: ATOMIC_LIMIT });
    }
    let mut wanted = vec![only.is_none(); n + 1];
    if let Some(ws) = only {
        for &w in ws {
            wanted[w] = true;
        }
    }
    // Integerize: a = A / D.
    let d = common_denominator(a.values());
    let ints: Vec<BigInt> = a.values().iter().map(|v| (v * &d).to_integer()).collect();
    let d_rat = Rational::from_integer(d.clone());

    let mut exact_acc = vec![BigInt::zero(); n + 1];
    let mut approx_acc = vec![Rational::zero(); n + 1];
    let p_int = order.as_integer();

    // Gray-code walk over the cube starting from the all-minus vector.
    let mut s: BigInt = -ints.iter().sum::<BigInt>();
    let mut bits = 0u32;
    let mut weight = 0usize;
    let total = 1u64 << n;
    for step in 0..total {
        if step > 0 {
            let b = step.trailing_zeros() as usize;
            bits ^= 1 << b;
            if bits >> b & 1 == 1 {
                s += &ints[b] * 2;
                weight += 1;
            } else {
                s -= &ints[b] * 2;
                weight -= 1;
            }
        }
        if !wanted[weight] {
            continue;
        }
        match p_int {
            Some(p) => exact_acc[weight] += num_traits::pow(s.abs(), p as usize),
            None => approx_acc[weight] += order.abs_power(&(Rational::from_integer(s.clone()) / &d_rat)),
        }
    }

    let sizes = binomial_row(n);
    Ok((0..=n)
        .map(|w| match p_int {
            Some(p) => Rational::new(exact_acc[w].clone(), &sizes[w] * num_traits::pow(d.clone(), p as usize)),
            None => &approx_acc[w] / Rational::from_integer(sizes[w].clone()),
        })
        .collect())
}
