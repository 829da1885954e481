//! k-wise independence via vanishing mixed moments of orders `1..=k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::measure::{AtomicMeasure, Measure, OrbitMeasure};
use crate::rational::Rational;

/// A subset of coordinates whose joint law is not uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Zero-based coordinate indices, increasing.
    pub subset: Vec<usize>,
    /// `E[∏_{i ∈ subset} ε_i]`, nonzero.
    pub correlation: Rational,
    /// A sign pattern on `subset` whose projected mass differs from `2^{-|subset|}`.
    pub pattern: Vec<i8>,
    pub pattern_mass: Rational,
}

impl Witness {
    pub fn subset_one_based(&self) -> Vec<usize> {
        self.subset.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.subset_one_based().iter().map(|i| i.to_string()).collect();
        let pat: String = self.pattern.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect();
        write!(
            f,
            "subset {{{}}} has correlation {}; pattern {} has mass {}",
            idx.join(","),
            self.correlation,
            pat,
            self.pattern_mass
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub k: usize,
    pub ok: bool,
    pub witness: Option<Witness>,
}

pub fn is_kwise_independent(m: &Measure, k: usize) -> Result<IndependenceReport> {
    let n = m.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("independence order k={k} outside 1..={n}")));
    }
    let witness = match m {
        Measure::Orbit(o) => orbit_witness(o, k),
        Measure::Atomic(a) => atomic_witness(a, k),
    };
    Ok(IndependenceReport { k, ok: witness.is_none(), witness })
}

/// Largest `k <= max_k` for which the measure is k-wise independent (0 if not even 1-wise).
pub fn independence_level(m: &Measure, max_k: usize) -> Result<usize> {
    let mut level = 0;
    for k in 1..=max_k.min(m.n()) {
        if !is_kwise_independent(m, k)?.ok {
            break;
        }
        level = k;
    }
    Ok(level)
}

fn orbit_witness(m: &OrbitMeasure, k: usize) -> Option<Witness> {
    (1..=k).find_map(|j| {
        let c = m.correlation_of_order(j);
        if c.is_zero() {
            return None;
        }
        let uniform = uniform_pattern_mass(j);
        let (plus, mass) =
            (0..=j).rev().map(|plus| (plus, m.pattern_mass(j, plus))).find(|(_, mass)| *mass != uniform)?;
        let pattern = (0..j).map(|i| if i < plus { 1 } else { -1 }).collect();
        Some(Witness { subset: (0..j).collect(), correlation: c, pattern, pattern_mass: mass })
    })
}

fn atomic_witness(m: &AtomicMeasure, k: usize) -> Option<Witness> {
    for j in 1..=k {
        for subset in Combinations::new(m.n(), j) {
            let mask = subset.iter().fold(0u32, |acc, &i| acc | 1 << i);
            let c = m.correlation_mask(mask);
            if c.is_zero() {
                continue;
            }
            let proj = m.projection(mask);
            let uniform = uniform_pattern_mass(j);
            let (key, mass) = (0..1u32 << j)
                .map(|key| (key, proj.get(&key).cloned().unwrap_or_else(Rational::zero)))
                .find(|(_, mass)| *mass != uniform)
                .expect("nonzero correlation implies a non-uniform projection");
            let pattern = (0..j).map(|s| if key >> s & 1 == 1 { 1 } else { -1 }).collect();
            return Some(Witness { subset, correlation: c, pattern, pattern_mass: mass });
        }
    }
    None
}

/// `2^{-j}`, the mass of each pattern under the uniform law on `{-1,1}^j`.
fn uniform_pattern_mass(j: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << j)
}

/// Size-`k` subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for t in i + 1..k {
                    next[t] = next[t - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
