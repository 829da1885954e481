//! Closed-form measures: the antipodal pair, the balanced orbit, the product measure, and the
//! extremal pairwise independent mixture.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::measure::OrbitMeasure;
use crate::rational::{binomial_row, int, ratio, Rational};

/// Half the mass on the all-plus vector, half on the all-minus vector.
pub fn antipodal(n: usize) -> Result<OrbitMeasure> {
    OrbitMeasure::from_sparse(n, [(0, ratio(1, 2)), (n, ratio(1, 2))])
}

/// Uniform on vectors with equally many `+1` and `-1` entries.
pub fn balanced(n: usize) -> Result<OrbitMeasure> {
    require_even(n, 2)?;
    OrbitMeasure::from_sparse(n, [(n / 2, int(1))])
}

/// `(1/n)·antipodal(n) + ((n-1)/n)·balanced(n)`, i.e. `q_0 = q_n = 1/(2n)` and `q_{n/2} = (n-1)/n`.
pub fn extremal_pairwise(n: usize) -> Result<OrbitMeasure> {
    require_even(n, 4)?;
    let ni = n as i64;
    OrbitMeasure::from_sparse(n, [(0, ratio(1, 2 * ni)), (n / 2, ratio(ni - 1, ni)), (n, ratio(1, 2 * ni))])
}

/// The product of `n` independent Rademacher laws: `q_w = C(n, w) / 2^n`.
pub fn independent(n: usize) -> Result<OrbitMeasure> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let scale = BigInt::from(1) << n;
    let weights = binomial_row(n).into_iter().map(|c| Rational::new(c, scale.clone())).collect();
    OrbitMeasure::new(n, weights)
}

/// Four-fold correlation `E[ε_1 ε_2 ε_3 ε_4] = 1/(n-3)` of [`extremal_pairwise`]; nonzero, so that measure
/// is not 4-wise independent.
pub fn extremal_fourfold_correlation(n: usize) -> Result<Rational> {
    require_even(n, 4)?;
    Ok(ratio(1, n as i64 - 3))
}

fn require_even(n: usize, min: usize) -> Result<()> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("requires even n, got {n}")));
    }
    if n < min {
        return Err(Error::InvalidParameter(format!("requires n >= {min}, got {n}")));
    }
    Ok(())
}

/// Named constructors, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    ExtremalPairwise,
    Antipodal,
    Balanced,
    Independent,
}

impl Construction {
    pub fn build(self, n: usize) -> Result<OrbitMeasure> {
        match self {
            Construction::ExtremalPairwise => extremal_pairwise(n),
            Construction::Antipodal => antipodal(n),
            Construction::Balanced => balanced(n),
            Construction::Independent => independent(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::ExtremalPairwise => "extremal-pairwise",
            Construction::Antipodal => "antipodal",
            Construction::Balanced => "balanced",
            Construction::Independent => "independent",
        }
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "extremal-pairwise" => Construction::ExtremalPairwise,
            "antipodal" => Construction::Antipodal,
            "balanced" => Construction::Balanced,
            "independent" => Construction::Independent,
            other => return Err(Error::InvalidParameter(format!("unknown construction {other:?}"))),
        })
    }
}

/// True if `m` is exactly `extremal_pairwise(m.n())`.
pub fn is_extremal_pairwise(m: &OrbitMeasure) -> bool {
    extremal_pairwise(m.n()).map(|e| e == *m).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::is_kwise_independent;
    use crate::measure::Measure;
    use crate::moment::{moment_exact, Coefficients};

    #[test]
    fn antipodal_examples() {
        assert_eq!(antipodal(2).unwrap().weights(), &[ratio(1, 2), int(0), ratio(1, 2)]);
        let m: Measure = antipodal(5).unwrap().into();
        assert_eq!(moment_exact(&m, &Coefficients::ones(5), 2).unwrap(), int(25));
        let m: Measure = antipodal(4).unwrap().into();
        let r = is_kwise_independent(&m, 2).unwrap();
        assert!(!r.ok);
        let w = r.witness.unwrap();
        assert_eq!(w.subset_one_based(), vec![1, 2]);
        assert_eq!(w.correlation, int(1));
        assert!(is_kwise_independent(&m, 1).unwrap().ok);
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced(4).unwrap().weights(), &[int(0), int(0), int(1), int(0), int(0)]);
        let m: Measure = balanced(6).unwrap().into();
        assert_eq!(m.correlation(&[0, 1]).unwrap(), ratio(-1, 5));
        let atoms = balanced(2).unwrap().to_atomic().unwrap();
        assert_eq!(atoms.atoms().len(), 2);
        assert!(atoms.atoms().values().all(|q| *q == ratio(1, 2)));
        assert!(balanced(5).unwrap_err().to_string().contains("requires even n"));
        for p in 2..6 {
            assert_eq!(moment_exact(&m, &Coefficients::ones(6), p).unwrap(), int(0));
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_pairwise(4).unwrap().weights(), &[ratio(1, 8), int(0), ratio(3, 4), int(0), ratio(1, 8)]);
        let m: Measure = extremal_pairwise(6).unwrap().into();
        assert_eq!(m.correlation(&[0, 1]).unwrap(), int(0));
        assert_eq!(moment_exact(&m, &Coefficients::ones(6), 4).unwrap(), int(216));
        assert!(extremal_pairwise(5).is_err());
        assert!(extremal_pairwise(2).is_err());
    }

    #[test]
    fn extremal_is_a_mixture() {
        for n in (4..=12).step_by(2) {
            let ni = n as i64;
            let mix = OrbitMeasure::convex_combination(&[
                (ratio(1, ni), &antipodal(n).unwrap()),
                (ratio(ni - 1, ni), &balanced(n).unwrap()),
            ])
            .unwrap();
            assert_eq!(mix, extremal_pairwise(n).unwrap());
            assert!(is_extremal_pairwise(&mix));
        }
    }

    #[test]
    fn independent_examples() {
        assert_eq!(independent(2).unwrap().weights(), &[ratio(1, 4), ratio(1, 2), ratio(1, 4)]);
        let m: Measure = independent(4).unwrap().into();
        assert_eq!(moment_exact(&m, &Coefficients::ones(4), 4).unwrap(), int(40));
        let m: Measure = independent(3).unwrap().into();
        assert!(is_kwise_independent(&m, 3).unwrap().ok);
    }

    #[test]
    fn degenerate_two_dimensional_mixture_is_independent() {
        let mix = OrbitMeasure::convex_combination(&[
            (ratio(1, 2), &antipodal(2).unwrap()),
            (ratio(1, 2), &balanced(2).unwrap()),
        ])
        .unwrap();
        assert_eq!(mix, independent(2).unwrap());
    }

    #[test]
    fn names_round_trip() {
        for c in
            [Construction::ExtremalPairwise, Construction::Antipodal, Construction::Balanced, Construction::Independent]
        {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
    }
}
