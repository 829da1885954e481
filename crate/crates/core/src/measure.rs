//! Probability measures on `{-1,1}^n`.
//!
//! Exchangeable measures are stored by the mass of each Hamming-weight orbit;
//! general measures are stored atom by atom.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, binomial_row, Rational};
use crate::sign::{SignVector, ATOMIC_LIMIT};

/// Largest dimension accepted by orbit-level operations.
pub const ORBIT_LIMIT: usize = 10_000;

/// Exchangeable measure: `weights[w]` is the total mass of the orbit of vectors with `w` entries equal to `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMeasure {
    n: usize,
    weights: Vec<Rational>,
}

impl OrbitMeasure {
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > ORBIT_LIMIT {
            return Err(Error::InvalidParameter(format!("orbit dimension {n} outside 1..={ORBIT_LIMIT}")));
        }
        if weights.len() != n + 1 {
            return Err(Error::InvalidMeasure(format!("expected {} orbit weights, got {}", n + 1, weights.len())));
        }
        if let Some(w) = weights.iter().position(|q| q.is_negative()) {
            return Err(Error::InvalidMeasure(format!("negative mass on orbit {w}")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("total mass is {total}, not 1")));
        }
        Ok(Self { n, weights })
    }

    /// Builds from a sparse list of `(orbit, mass)` pairs; unlisted orbits get zero.
    pub fn from_sparse(n: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut weights = vec![Rational::zero(); n + 1];
        for (w, q) in entries {
            if w > n {
                return Err(Error::InvalidMeasure(format!("orbit index {w} exceeds n = {n}")));
            }
            weights[w] += q;
        }
        Self::new(n, weights)
    }

    /// Exact convex combination `Σ t_i m_i`; the coefficients must sum to one.
    pub fn convex_combination(parts: &[(Rational, &OrbitMeasure)]) -> Result<Self> {
        let n = parts
            .first()
            .map(|(_, m)| m.n)
            .ok_or_else(|| Error::InvalidParameter("empty convex combination".into()))?;
        let mut weights = vec![Rational::zero(); n + 1];
        for (t, m) in parts {
            if m.n != n {
                return Err(Error::InvalidParameter("dimension mismatch in convex combination".into()));
            }
            for (acc, q) in weights.iter_mut().zip(&m.weights) {
                *acc += t * q;
            }
        }
        Self::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, w: usize) -> &Rational {
        &self.weights[w]
    }

    /// Orbits with positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.n).filter(|&w| !self.weights[w].is_zero()).collect()
    }

    /// Spreads each orbit mass uniformly over its `C(n, w)` vectors.
    pub fn to_atomic(&self) -> Result<AtomicMeasure> {
        if self.n > ATOMIC_LIMIT {
            return Err(Error::TooLarge { n: self.n, limit: ATOMIC_LIMIT });
        }
        let sizes = binomial_row(self.n);
        let per_atom: Vec<Rational> =
            self.weights.iter().zip(&sizes).map(|(q, c)| q / Rational::from_integer(c.clone())).collect();
        let atoms = SignVector::all(self.n)?
            .filter_map(|v| {
                let mass = &per_atom[v.hamming_weight()];
                (!mass.is_zero()).then(|| (v, mass.clone()))
            })
            .collect();
        Ok(AtomicMeasure { n: self.n, atoms })
    }

    /// `E[ε_{i_1} ⋯ ε_{i_j}]` for any `j` distinct coordinates.
    pub fn correlation_of_order(&self, j: usize) -> Rational {
        if j == 0 {
            return Rational::one();
        }
        orbit_correlation_table(self.n, j)
            .iter()
            .zip(&self.weights)
            .filter(|(_, q)| !q.is_zero())
            .map(|(c, q)| c * q)
            .sum()
    }

    /// Projection mass of one pattern on `j` fixed coordinates that carries `plus` entries equal to `+1`.
    pub fn pattern_mass(&self, j: usize, plus: usize) -> Rational {
        let n = self.n as i64;
        let sizes = binomial_row(self.n);
        (0..=self.n)
            .filter(|&w| !self.weights[w].is_zero())
            .map(|w| {
                let hits = binomial(n - j as i64, w as i64 - plus as i64);
                &self.weights[w] * Rational::new(hits, sizes[w].clone())
            })
            .sum()
    }
}

/// General measure: a sparse map from sign vectors to positive masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMeasure {
    n: usize,
    atoms: BTreeMap<SignVector, Rational>,
}

impl AtomicMeasure {
    /// Zero masses are dropped; negative masses and a total other than one are rejected.
    pub fn new(n: usize, atoms: impl IntoIterator<Item = (SignVector, Rational)>) -> Result<Self> {
        if n == 0 || n > ATOMIC_LIMIT {
            return Err(Error::TooLarge { n, limit: ATOMIC_LIMIT });
        }
        let mut map: BTreeMap<SignVector, Rational> = BTreeMap::new();
        for (v, mass) in atoms {
            if v.n() != n {
                return Err(Error::InvalidMeasure(format!("atom {v} has length {}, expected {n}", v.n())));
            }
            if mass.is_negative() {
                return Err(Error::InvalidMeasure(format!("negative mass on atom {v}")));
            }
            *map.entry(v).or_insert_with(Rational::zero) += mass;
        }
        map.retain(|_, m| !m.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("total mass is {total}, not 1")));
        }
        Ok(Self { n, atoms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &BTreeMap<SignVector, Rational> {
        &self.atoms
    }

    pub fn mass(&self, v: &SignVector) -> Rational {
        self.atoms.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Collapses to orbit masses: `q_w` is the total mass of weight-`w` atoms.
    pub fn symmetrize(&self) -> OrbitMeasure {
        let mut weights = vec![Rational::zero(); self.n + 1];
        for (v, m) in &self.atoms {
            weights[v.hamming_weight()] += m;
        }
        OrbitMeasure { n: self.n, weights }
    }

    /// `E[∏_{i ∈ S} ε_i]` with `S` given as a bit mask.
    pub fn correlation_mask(&self, subset: u32) -> Rational {
        let mut plus = Rational::zero();
        let mut minus = Rational::zero();
        for (v, m) in &self.atoms {
            if v.character(subset) == 1 {
                plus += m;
            } else {
                minus += m;
            }
        }
        plus - minus
    }

    /// Mass the projection onto `subset` (bit mask) assigns to each pattern, keyed by the pattern's bits
    /// packed in increasing coordinate order.
    pub fn projection(&self, subset: u32) -> BTreeMap<u32, Rational> {
        let mut out = BTreeMap::new();
        for (v, m) in &self.atoms {
            let mut key = 0u32;
            let mut slot = 0;
            for i in 0..self.n {
                if subset >> i & 1 == 1 {
                    key |= (v.bits() >> i & 1) << slot;
                    slot += 1;
                }
            }
            *out.entry(key).or_insert_with(Rational::zero) += m;
        }
        out
    }
}

/// Either representation; every operation accepts both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Orbit(OrbitMeasure),
    Atomic(AtomicMeasure),
}

impl Measure {
    pub fn n(&self) -> usize {
        match self {
            Measure::Orbit(m) => m.n(),
            Measure::Atomic(m) => m.n(),
        }
    }

    /// Number of atoms with positive mass.
    pub fn support_size(&self) -> BigInt {
        match self {
            Measure::Orbit(m) => {
                let sizes = binomial_row(m.n());
                m.support().into_iter().map(|w| sizes[w].clone()).sum()
            }
            Measure::Atomic(m) => BigInt::from(m.atoms().len()),
        }
    }

    /// `E[∏_{i ∈ subset} ε_i]`; indices are zero-based and must be distinct.
    pub fn correlation(&self, subset: &[usize]) -> Result<Rational> {
        let n = self.n();
        let mut seen = vec![false; n];
        for &i in subset {
            if i >= n {
                return Err(Error::InvalidParameter(format!("index {} outside 1..={n}", i + 1)));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!("index {} repeated", i + 1)));
            }
        }
        Ok(match self {
            Measure::Orbit(m) => m.correlation_of_order(subset.len()),
            Measure::Atomic(m) => m.correlation_mask(subset.iter().fold(0u32, |acc, &i| acc | 1 << i)),
        })
    }

    pub fn as_orbit(&self) -> Option<&OrbitMeasure> {
        match self {
            Measure::Orbit(m) => Some(m),
            Measure::Atomic(_) => None,
        }
    }
}

impl From<OrbitMeasure> for Measure {
    fn from(m: OrbitMeasure) -> Self {
        Measure::Orbit(m)
    }
}

impl From<AtomicMeasure> for Measure {
    fn from(m: AtomicMeasure) -> Self {
        Measure::Atomic(m)
    }
}

pub fn orbit_to_atomic(m: &OrbitMeasure) -> Result<AtomicMeasure> {
    m.to_atomic()
}

pub fn symmetrize(m: &AtomicMeasure) -> OrbitMeasure {
    m.symmetrize()
}

/// Expected product of `j` distinct coordinates under the uniform measure on the weight-`w` orbit:
/// `Σ_i (-1)^{j-i} C(j,i) C(n-j, w-i) / C(n,w)`.
pub fn orbit_correlation(n: usize, w: usize, j: usize) -> Result<Rational> {
    if n == 0 || n > ORBIT_LIMIT || w > n || j == 0 || j > n {
        return Err(Error::InvalidParameter(format!(
            "orbit_correlation needs 0 <= w <= n and 1 <= j <= n, got n={n} w={w} j={j}"
        )));
    }
    let (n, w, j) = (n as i64, w as i64, j as i64);
    let sum: BigInt = (0..=j.min(w))
        .map(|i| {
            let term = binomial(j, i) * binomial(n - j, w - i);
            if (j - i) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    Ok(Rational::new(sum, binomial(n, w)))
}

/// `orbit_correlation(n, w, j)` for every `w` in `0..=n`.
pub fn orbit_correlation_table(n: usize, j: usize) -> Vec<Rational> {
    let total = binomial_row(n);
    let inner = binomial_row(n - j.min(n));
    let choose_j = binomial_row(j);
    (0..=n)
        .map(|w| {
            let mut sum = BigInt::zero();
            for i in 0..=j.min(w) {
                let rest = w - i;
                if rest > n - j {
                    continue;
                }
                let term = &choose_j[i] * &inner[rest];
                if (j - i).is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            Rational::new(sum, total[w].clone())
        })
        .collect()
}
