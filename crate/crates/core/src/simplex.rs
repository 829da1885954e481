//! Exact two-phase primal simplex for `maximize c·x subject to A x = b, x >= 0`.
//!
//! Rows are scaled to integers and the basis inverse is kept in fraction-free form
//! `B^{-1} = adj / det`, so every pivot is an exact integer update with exact division.
//! A floating-point solve supplies a starting basis, which is kept only if it is exactly feasible.
//! Pricing is Dantzig's rule with the lexicographic ratio test; a long run of degenerate pivots
//! switches to Bland's rule until the objective moves again.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};
use crate::warm_start::guess_basis;

/// `maximize c·x` subject to `A x = b`, `x >= 0`, with dense rational data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    objective: Vec<Rational>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rational>, matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::MalformedLp("no variables".into()));
        }
        if matrix.len() != rhs.len() {
            return Err(Error::MalformedLp(format!("{} rows but {} right-hand sides", matrix.len(), rhs.len())));
        }
        if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != objective.len()) {
            return Err(Error::MalformedLp(format!("row {i} has {} entries, expected {}", row.len(), objective.len())));
        }
        Ok(Self { objective, matrix, rhs })
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn constraints(&self) -> usize {
        self.matrix.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// `A x - b`, row by row.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| row.iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, v)| a * v).sum::<Rational>() - b)
            .collect()
    }

    /// Reduced costs `c_j - y·A_j` for a dual vector `y`.
    pub fn reduced_costs(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.variables())
            .map(|j| {
                let ya: Rational = self
                    .matrix
                    .iter()
                    .zip(y)
                    .filter(|(row, yi)| !row[j].is_zero() && !yi.is_zero())
                    .map(|(row, yi)| yi * &row[j])
                    .sum();
                &self.objective[j] - ya
            })
            .collect()
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn dual_value(&self, y: &[Rational]) -> Rational {
        self.rhs.iter().zip(y).map(|(b, v)| b * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal value; zero unless `status == Optimal`.
    pub value: Rational,
    /// Basic feasible solution (optimal, or the last vertex before an unbounded ray was found).
    pub primal: Vec<Rational>,
    /// One multiplier per constraint row; `c·x = y·b` and `A^T y >= c` at optimality.
    pub duals: Vec<Rational>,
    /// Basic structural columns, increasing.
    pub basis: Vec<usize>,
    /// Returned primal is a basic feasible solution, hence a vertex of the feasible polytope.
    pub is_vertex: bool,
    /// Some nonbasic column has zero reduced cost, so other optimal vertices may exist.
    pub alternative_optima: bool,
    /// Rows found to be linear combinations of the others; their multipliers are zero.
    pub redundant_rows: Vec<usize>,
    /// Direction `d >= 0` with `A d = 0` and `c·d > 0` when unbounded.
    pub ray: Option<Vec<Rational>>,
    pub pivots: usize,
}

/// Consecutive degenerate pivots tolerated before pricing falls back to Bland's rule.
const DEGENERATE_RUN: usize = 5000;

/// Column of the integerized system: nonzero `(row, value)` pairs.
type SparseColumn = Vec<(usize, BigInt)>;

struct Tableau {
    rows: usize,
    structural: usize,
    columns: Vec<SparseColumn>,
    /// `basis[r]` is the column basic in row `r`; columns `>= structural` are artificial.
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    /// `adj / det` is the current basis inverse.
    adj: Vec<Vec<BigInt>>,
    det: BigInt,
    /// `adj · b`, so basic values are `beta / det`.
    beta: Vec<BigInt>,
    pivots: usize,
}

impl Tableau {
    fn is_artificial(&self, j: usize) -> bool {
        j >= self.structural
    }

    fn column_alpha(&self, j: usize) -> Vec<BigInt> {
        if self.is_artificial(j) {
            let r = j - self.structural;
            return self.adj.iter().map(|row| row[r].clone()).collect();
        }
        self.adj.iter().map(|row| dot_sparse(row, &self.columns[j])).collect()
    }

    /// `cost_B^T · adj`, i.e. `det` times the simplex multipliers.
    fn scaled_multipliers(&self, cost: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.rows];
        for (i, &col) in self.basis.iter().enumerate() {
            let c = &cost[col];
            if c.is_zero() {
                continue;
            }
            for (acc, a) in y.iter_mut().zip(&self.adj[i]) {
                if !a.is_zero() {
                    *acc += c * a;
                }
            }
        }
        y
    }

    /// `det · (c_j - y·A_j)`.
    fn scaled_reduced_cost(&self, j: usize, cost: &[BigInt], y: &[BigInt]) -> BigInt {
        let ya = if self.is_artificial(j) { y[j - self.structural].clone() } else { dot_sparse(y, &self.columns[j]) };
        &cost[j] * &self.det - ya
    }

    fn improves(&self, scaled: &BigInt) -> bool {
        !scaled.is_zero() && scaled.sign() == self.det.sign()
    }

    /// Bland's rule: smallest eligible column with positive reduced cost.
    fn entering_bland(&self, cost: &[BigInt], y: &[BigInt], limit: usize) -> Option<usize> {
        (0..limit).find(|&j| !self.in_basis[j] && self.improves(&self.scaled_reduced_cost(j, cost, y)))
    }

    /// Dantzig's rule: largest reduced cost, smallest index among ties. All reduced costs share the
    /// denominator `det`, so scaled values compare directly.
    fn entering_dantzig(&self, cost: &[BigInt], y: &[BigInt], limit: usize) -> Option<usize> {
        let mut best: Option<(usize, BigInt)> = None;
        for j in 0..limit {
            if self.in_basis[j] {
                continue;
            }
            let r = self.scaled_reduced_cost(j, cost, y);
            if !self.improves(&r) {
                continue;
            }
            let mag = r.abs();
            if best.as_ref().is_none_or(|(_, b)| mag > *b) {
                best = Some((j, mag));
            }
        }
        best.map(|(j, _)| j)
    }

    /// Minimum-ratio row. Ties go lexicographically on the rows of `B^{-1}` (the symbolic
    /// perturbation rule) or, under Bland's rule, to the smallest basic column index.
    fn leaving(&self, alpha: &[BigInt], lexicographic: bool) -> Option<usize> {
        let positive = |a: &BigInt| !a.is_zero() && a.sign() == self.det.sign();
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if !positive(&alpha[i]) {
                continue;
            }
            let Some(b) = best else {
                best = Some(i);
                continue;
            };
            // u_i / alpha_i vs u_b / alpha_b with alpha_i * alpha_b > 0.
            let cmp = |ui: &BigInt, ub: &BigInt| (ui * &alpha[b]).cmp(&(ub * &alpha[i]));
            let mut ord = cmp(&self.beta[i], &self.beta[b]);
            if ord == Ordering::Equal {
                ord = if lexicographic {
                    self.adj[i]
                        .iter()
                        .zip(&self.adj[b])
                        .map(|(ui, ub)| cmp(ui, ub))
                        .find(|o| *o != Ordering::Equal)
                        .unwrap_or(Ordering::Equal)
                } else {
                    self.basis[i].cmp(&self.basis[b])
                };
            }
            if ord == Ordering::Less {
                best = Some(i);
            }
        }
        best
    }

    fn pivot(&mut self, r: usize, entering: usize, alpha: &[BigInt]) {
        let pivot = alpha[r].clone();
        debug_assert!(!pivot.is_zero());
        let old_det = std::mem::replace(&mut self.det, pivot.clone());
        let pivot_row = self.adj[r].clone();
        let pivot_beta = self.beta[r].clone();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let a_i = &alpha[i];
            for (x, pr) in self.adj[i].iter_mut().zip(&pivot_row) {
                let mut v = &pivot * &*x;
                if !a_i.is_zero() && !pr.is_zero() {
                    v -= a_i * pr;
                }
                *x = exact_div(v, &old_det);
            }
            let mut v = &pivot * &self.beta[i];
            if !a_i.is_zero() {
                v -= a_i * &pivot_beta;
            }
            self.beta[i] = exact_div(v, &old_det);
        }
        let leaving = std::mem::replace(&mut self.basis[r], entering);
        self.in_basis[leaving] = false;
        self.in_basis[entering] = true;
        self.pivots += 1;
    }

    /// Iterates to optimality for `cost`; returns the entering column of an unbounded ray, if any.
    ///
    /// Dantzig pricing with lexicographic leaving rows until `DEGENERATE_RUN` consecutive degenerate
    /// pivots, then Bland's rule until the objective moves again. Bland's rule cannot cycle and every
    /// nondegenerate pivot strictly improves the objective, so the loop terminates.
    fn optimize(&mut self, cost: &[BigInt], allow_artificial: bool) -> Option<usize> {
        let limit = if allow_artificial { cost.len() } else { self.structural };
        let mut degenerate_run = 0usize;
        let mut y = self.scaled_multipliers(cost);
        loop {
            let entering = if degenerate_run >= DEGENERATE_RUN {
                self.entering_bland(cost, &y, limit)
            } else {
                self.entering_dantzig(cost, &y, limit)
            };
            let e = entering?;
            let alpha = self.column_alpha(e);
            let r = match self.leaving(&alpha, degenerate_run < DEGENERATE_RUN) {
                Some(r) => r,
                None => return Some(e),
            };
            if self.beta[r].is_zero() {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }
            // Y' = (alpha_r Y - (c_B·alpha) adj_r) / det + c_e adj_r; row r of adj is unchanged by the pivot.
            let cb_alpha: BigInt =
                self.basis.iter().zip(&alpha).filter(|(_, a)| !a.is_zero()).map(|(&col, a)| &cost[col] * a).sum();
            let old_det = self.det.clone();
            self.pivot(r, e, &alpha);
            let adj_r = &self.adj[r];
            for (yi, ar) in y.iter_mut().zip(adj_r) {
                let mut v = &alpha[r] * &*yi;
                if !ar.is_zero() {
                    v -= &cb_alpha * ar;
                }
                *yi = exact_div(v, &old_det);
                if !ar.is_zero() && !cost[e].is_zero() {
                    *yi += &cost[e] * ar;
                }
            }
        }
    }

    /// Pivots the given columns into artificial rows. Returns false unless the result is a primal
    /// feasible basis whose remaining artificials sit at zero.
    fn load(&mut self, columns: &[usize]) -> bool {
        for &j in columns {
            let alpha = self.column_alpha(j);
            let Some(r) = (0..self.rows).find(|&r| self.is_artificial(self.basis[r]) && !alpha[r].is_zero()) else {
                return false;
            };
            self.pivot(r, j, &alpha);
        }
        (0..self.rows).all(|r| {
            let b = &self.beta[r];
            b.is_zero() || (!self.is_artificial(self.basis[r]) && b.sign() == self.det.sign())
        })
    }

    fn value_of_row(&self, r: usize) -> Rational {
        Rational::new(self.beta[r].clone(), self.det.clone())
    }
}

fn dot_sparse(dense: &[BigInt], col: &SparseColumn) -> BigInt {
    let mut acc = BigInt::zero();
    for (r, v) in col {
        let d = &dense[*r];
        if d.is_zero() {
            continue;
        }
        if v.is_one() {
            acc += d;
        } else if (-v).is_one() {
            acc -= d;
        } else {
            acc += d * v;
        }
    }
    acc
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "fraction-free update must divide exactly");
    q
}

/// Rows flipped to a nonnegative right-hand side, in floating point.
fn float_guess(prob: &LpProblem) -> Option<Vec<usize>> {
    let f = |v: &Rational| v.to_f64().unwrap_or(f64::NAN);
    let mut matrix = Vec::with_capacity(prob.constraints());
    let mut rhs = Vec::with_capacity(prob.constraints());
    for (row, b) in prob.matrix.iter().zip(&prob.rhs) {
        let sign = if b.is_negative() { -1.0 } else { 1.0 };
        matrix.push(row.iter().map(|v| sign * f(v)).collect());
        rhs.push(sign * f(b));
    }
    let cost: Vec<f64> = prob.objective.iter().map(f).collect();
    guess_basis(&matrix, &rhs, &cost)
}

/// Solves the LP exactly. Infeasible and unbounded problems are reported through `status`.
pub fn solve_lp(prob: &LpProblem) -> LpSolution {
    let rows = prob.constraints();
    let vars = prob.variables();

    // Integerize each row; flip rows so the right-hand side is nonnegative.
    let mut row_scale = Vec::with_capacity(rows);
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    let mut int_rhs = Vec::with_capacity(rows);
    for (row, b) in prob.matrix.iter().zip(&prob.rhs) {
        let mut s = common_denominator(row.iter().chain(std::iter::once(b)));
        if b.is_negative() {
            s = -s;
        }
        let sr = Rational::from_integer(s.clone());
        int_rows.push(row.iter().map(|a| (a * &sr).to_integer()).collect());
        int_rhs.push((b * &sr).to_integer());
        row_scale.push(s);
    }
    let obj_scale = common_denominator(prob.objective.iter());
    let obj_scale_rat = Rational::from_integer(obj_scale.clone());

    let columns: Vec<SparseColumn> = (0..vars)
        .map(|j| (0..rows).filter(|&i| !int_rows[i][j].is_zero()).map(|i| (i, int_rows[i][j].clone())).collect())
        .collect();

    let fresh = || Tableau {
        rows,
        structural: vars,
        columns: columns.clone(),
        basis: (vars..vars + rows).collect(),
        in_basis: (0..vars + rows).map(|j| j >= vars).collect(),
        adj: (0..rows)
            .map(|i| (0..rows).map(|r| if r == i { BigInt::one() } else { BigInt::zero() }).collect())
            .collect(),
        det: BigInt::one(),
        beta: int_rhs.clone(),
        pivots: 0,
    };
    let mut t = fresh();

    // A floating-point guess at the optimal basis, accepted only if it is exactly primal feasible.
    let warm = float_guess(prob).is_some_and(|guess| {
        let loaded = t.load(&guess);
        if !loaded {
            let pivots = t.pivots;
            t = fresh();
            t.pivots = pivots;
        }
        loaded
    });

    if !warm {
        // Phase 1: maximize minus the sum of artificials.
        let phase1: Vec<BigInt> =
            (0..vars + rows).map(|j| if j >= vars { -BigInt::one() } else { BigInt::zero() }).collect();
        t.optimize(&phase1, false);
        let infeasible = (0..rows).any(|r| t.is_artificial(t.basis[r]) && !t.beta[r].is_zero());
        if infeasible {
            return LpSolution {
                status: LpStatus::Infeasible,
                value: Rational::zero(),
                primal: vec![Rational::zero(); vars],
                duals: vec![Rational::zero(); rows],
                basis: Vec::new(),
                is_vertex: false,
                alternative_optima: false,
                redundant_rows: Vec::new(),
                ray: None,
                pivots: t.pivots,
            };
        }
    }

    // Drive zero-level artificials out; rows where that is impossible are redundant.
    let mut redundant_rows = Vec::new();
    for r in 0..rows {
        if !t.is_artificial(t.basis[r]) {
            continue;
        }
        let candidate = (0..vars).find(|&j| !t.in_basis[j] && !dot_sparse(&t.adj[r], &t.columns[j]).is_zero());
        match candidate {
            Some(j) => {
                let alpha = t.column_alpha(j);
                t.pivot(r, j, &alpha);
            }
            None => redundant_rows.push(t.basis[r] - vars),
        }
    }
    redundant_rows.sort_unstable();

    // Phase 2.
    let mut cost: Vec<BigInt> = prob.objective.iter().map(|c| (c * &obj_scale_rat).to_integer()).collect();
    cost.extend(std::iter::repeat_n(BigInt::zero(), rows));
    let unbounded_column = t.optimize(&cost, false);

    let mut primal = vec![Rational::zero(); vars];
    for r in 0..rows {
        if !t.is_artificial(t.basis[r]) {
            primal[t.basis[r]] = t.value_of_row(r);
        }
    }
    let mut basis: Vec<usize> = t.basis.iter().copied().filter(|&j| j < vars).collect();
    basis.sort_unstable();

    if let Some(e) = unbounded_column {
        let alpha = t.column_alpha(e);
        let mut ray = vec![Rational::zero(); vars];
        ray[e] = Rational::one();
        for r in 0..rows {
            if !t.is_artificial(t.basis[r]) {
                ray[t.basis[r]] = -Rational::new(alpha[r].clone(), t.det.clone());
            }
        }
        return LpSolution {
            status: LpStatus::Unbounded,
            value: Rational::zero(),
            primal,
            duals: vec![Rational::zero(); rows],
            basis,
            is_vertex: true,
            alternative_optima: false,
            redundant_rows,
            ray: Some(ray),
            pivots: t.pivots,
        };
    }

    let y_scaled = t.scaled_multipliers(&cost);
    let denom = &t.det * &obj_scale;
    let duals: Vec<Rational> =
        y_scaled.iter().zip(&row_scale).map(|(y, s)| Rational::new(y * s, denom.clone())).collect();
    let alternative_optima = (0..vars).any(|j| !t.in_basis[j] && t.scaled_reduced_cost(j, &cost, &y_scaled).is_zero());
    let value = prob.objective_value(&primal);

    LpSolution {
        status: LpStatus::Optimal,
        value,
        primal,
        duals,
        basis,
        is_vertex: true,
        alternative_optima,
        redundant_rows,
        ray: None,
        pivots: t.pivots,
    }
}

impl LpSolution {
    /// Exact optimality certificate: primal feasibility, dual feasibility, and equal objective values.
    pub fn check_certificate(&self, prob: &LpProblem) -> Result<()> {
        if self.status != LpStatus::Optimal {
            return Err(Error::LpStatus(self.status.as_str()));
        }
        if self.primal.iter().any(Signed::is_negative) {
            return Err(Error::MalformedLp("negative primal entry".into()));
        }
        if prob.residual(&self.primal).iter().any(|r| !r.is_zero()) {
            return Err(Error::MalformedLp("primal violates A x = b".into()));
        }
        let reduced = prob.reduced_costs(&self.duals);
        if reduced.iter().any(Signed::is_positive) {
            return Err(Error::MalformedLp("duals violate A^T y >= c".into()));
        }
        if prob.objective_value(&self.primal) != prob.dual_value(&self.duals)
            || self.value != prob.dual_value(&self.duals)
        {
            return Err(Error::MalformedLp("primal and dual values differ".into()));
        }
        for &j in &self.basis {
            if !reduced[j].is_zero() {
                return Err(Error::MalformedLp(format!("complementary slackness fails at column {j}")));
            }
        }
        Ok(())
    }
}
