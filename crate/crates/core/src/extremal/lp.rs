use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::constructions::independent;
use crate::error::{Error, Result};
use crate::independence::Combinations;
use crate::measure::{orbit_correlation_table, AtomicMeasure, Measure, OrbitMeasure, ORBIT_LIMIT};
use crate::moment::{moment, orbit_objective, Coefficients};
use crate::precision::{MomentOrder, Real};
use crate::rational::Rational;
use crate::sign::SignVector;
use crate::simplex::{solve_lp, LpProblem, LpSolution, LpStatus};

/// Largest dimension for the full-cube LP (`2^n` variables).
pub const FULL_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LpMode {
    /// Exchangeable measures; one variable per Hamming-weight orbit.
    Orbit,
    /// All measures on the cube; one variable per sign vector.
    Full,
}

impl LpMode {
    pub fn as_str(self) -> &'static str {
        match self {
            LpMode::Orbit => "orbit",
            LpMode::Full => "full",
        }
    }
}

impl fmt::Display for LpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orbit" => Ok(LpMode::Orbit),
            "full" => Ok(LpMode::Full),
            other => Err(Error::InvalidParameter(format!("unknown LP mode {other:?}"))),
        }
    }
}

fn check_order(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("independence order k={k} outside 1..={n}")));
    }
    Ok(())
}

/// Orbit LP at `a = (1, …, 1)`.
pub fn build_orbit_lp(n: usize, p: MomentOrder, k: usize) -> Result<LpProblem> {
    build_orbit_lp_for(n, p, k, &Coefficients::ones(n))
}

/// Variables `q_0..q_n >= 0`; rows `Σ q_w = 1` and `Σ_w q_w E_w[ε_1⋯ε_j] = 0` for `j = 1..=k`;
/// objective `Σ_w q_w E_w|a·ε|^p`.
pub fn build_orbit_lp_for(n: usize, p: MomentOrder, k: usize, a: &Coefficients) -> Result<LpProblem> {
    check_order(n, k)?;
    if n > ORBIT_LIMIT {
        return Err(Error::TooLarge { n, limit: ORBIT_LIMIT });
    }
    let objective = orbit_objective(n, a, p)?;
    let mut matrix = Vec::with_capacity(k + 1);
    matrix.push(vec![Rational::one(); n + 1]);
    for j in 1..=k {
        matrix.push(orbit_correlation_table(n, j));
    }
    let mut rhs = vec![Rational::zero(); k + 1];
    rhs[0] = Rational::one();
    LpProblem::new(objective, matrix, rhs)
}

/// Variables `P(x) >= 0` for every `x` in bit-mask order; rows `Σ P = 1` and
/// `Σ_x P(x) ∏_{i∈S} x_i = 0` for every `S` with `1 <= |S| <= k`.
pub fn build_full_lp(n: usize, p: MomentOrder, k: usize, a: &Coefficients) -> Result<LpProblem> {
    check_order(n, k)?;
    if n > FULL_LIMIT {
        return Err(Error::TooLarge { n, limit: FULL_LIMIT });
    }
    if a.n() != n {
        return Err(Error::InvalidParameter(format!("coefficient length {} does not match n = {n}", a.n())));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("coefficient vector a = 0 is rejected".into()));
    }
    let points: Vec<SignVector> = SignVector::all(n)?.collect();
    let objective = points.iter().map(|x| p.abs_power(&a.dot(&x.entries()))).collect();
    let mut matrix = vec![vec![Rational::one(); points.len()]];
    for j in 1..=k {
        for subset in Combinations::new(n, j) {
            let mask = subset.iter().fold(0u32, |acc, &i| acc | 1 << i);
            matrix.push(points.iter().map(|x| Rational::from_integer(x.character(mask).into())).collect());
        }
    }
    let mut rhs = vec![Rational::zero(); matrix.len()];
    rhs[0] = Rational::one();
    LpProblem::new(objective, matrix, rhs)
}

/// One solved `(n, p, k, mode, a)` instance.
#[derive(Debug, Clone)]
pub struct ConstantCell {
    pub n: usize,
    pub p: MomentOrder,
    pub k: usize,
    pub mode: LpMode,
    pub coefficients: Coefficients,
    /// The LP optimum, i.e. the largest `E|a·ε|^p`.
    pub moment_value: Rational,
    /// False when `p` is fractional and the objective was rounded to 128 fractional bits.
    pub exact: bool,
    /// `moment_value^{1/p} / ‖a‖_2`.
    pub constant: Real,
    /// Optimal vertex. When the optimum is not unique, the one with the largest moment of order
    /// `p + 2` among the optimal vertices.
    pub optimizer: Measure,
    pub is_vertex: bool,
    pub alternative_optima: bool,
    /// Solution of the LP itself, with exact duals.
    pub solution: LpSolution,
}

impl ConstantCell {
    /// The optimizer as an orbit measure, when it is exchangeable.
    pub fn optimizer_orbit(&self) -> Option<OrbitMeasure> {
        match &self.optimizer {
            Measure::Orbit(o) => Some(o.clone()),
            Measure::Atomic(a) => {
                let sym = a.symmetrize();
                (sym.to_atomic().ok()? == *a).then_some(sym)
            }
        }
    }
}

/// Solves the chosen LP and packages its optimum as a normalized constant.
pub fn khintchine_cell(n: usize, p: MomentOrder, k: usize, mode: LpMode, a: &Coefficients) -> Result<ConstantCell> {
    if a.n() != n {
        return Err(Error::InvalidParameter(format!("coefficient length {} does not match n = {n}", a.n())));
    }
    let build = |order: MomentOrder| match mode {
        LpMode::Orbit => build_orbit_lp_for(n, order, k, a),
        LpMode::Full => build_full_lp(n, order, k, a),
    };
    let prob = build(p)?;
    let solution = solve_optimal(&prob)?;
    let vertex = if solution.alternative_optima {
        // By complementary slackness the optimal face is the feasible set restricted to columns of
        // zero reduced cost; maximize the next even moment there.
        let next = MomentOrder::from_rational(&(p.to_rational() + Rational::from_integer(2.into())))?;
        let secondary = build(next)?;
        let face: Vec<usize> = prob
            .reduced_costs(&solution.duals)
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_zero())
            .map(|(j, _)| j)
            .collect();
        let restricted = LpProblem::new(
            face.iter().map(|&j| secondary.objective()[j].clone()).collect(),
            secondary.matrix().iter().map(|row| face.iter().map(|&j| row[j].clone()).collect()).collect(),
            secondary.rhs().to_vec(),
        )?;
        let mut vertex = vec![Rational::zero(); prob.variables()];
        for (&j, x) in face.iter().zip(solve_optimal(&restricted)?.primal) {
            vertex[j] = x;
        }
        vertex
    } else {
        solution.primal.clone()
    };
    let optimizer = match mode {
        LpMode::Orbit => Measure::Orbit(OrbitMeasure::new(n, vertex)?),
        LpMode::Full => {
            let atoms = SignVector::all(n)?.zip(vertex);
            Measure::Atomic(AtomicMeasure::new(n, atoms)?)
        }
    };
    let constant = normalized_constant(&solution.value, &a.norm2_squared(), p)?;
    Ok(ConstantCell {
        n,
        p,
        k,
        mode,
        coefficients: a.clone(),
        moment_value: solution.value.clone(),
        exact: p.is_exact(),
        constant,
        is_vertex: solution.is_vertex,
        alternative_optima: solution.alternative_optima,
        optimizer,
        solution,
    })
}

fn solve_optimal(prob: &LpProblem) -> Result<LpSolution> {
    let solution = solve_lp(prob);
    match solution.status {
        LpStatus::Optimal => Ok(solution),
        // The product measure is always feasible and the polytope is bounded.
        other => Err(Error::LpStatus(other.as_str())),
    }
}

/// `moment^{1/p} / sqrt(norm2_squared)`, via `constant^{2r} = moment^{2s} / norm2_squared^r` for `p = r/s`.
pub fn normalized_constant(moment: &Rational, norm2_squared: &Rational, p: MomentOrder) -> Result<Real> {
    if norm2_squared.is_zero() {
        return Err(Error::InvalidParameter("coefficient vector a = 0 is rejected".into()));
    }
    let (r, s) = p.parts();
    let ratio = num_traits::pow(moment.clone(), 2 * s as usize) / num_traits::pow(norm2_squared.clone(), r as usize);
    Real::root(&ratio, 2 * r)
}

/// `n^{1/2 - 1/p}`.
pub fn lower_bound_reference(n: usize, p: MomentOrder) -> Result<Real> {
    let (r, s) = p.parts();
    let base = Rational::from_integer(n.into());
    Real::root(&num_traits::pow(base, (r - 2 * s) as usize), 2 * r)
}

/// `sqrt(n)`.
pub fn holder_reference(n: usize) -> Result<Real> {
    Real::root(&Rational::from_integer(n.into()), 2)
}

/// `(E|Σ ε̄_i|^p)^{1/p} / sqrt(n)` for independent `ε̄`, the value at `a = (1, …, 1)` of the
/// classical constant.
pub fn independent_constant(n: usize, p: MomentOrder) -> Result<Real> {
    let m = moment(&independent(n)?.into(), &Coefficients::ones(n), p)?;
    normalized_constant(&m.value, &Rational::from_integer(n.into()), p)
}
