//! Floating-point revised simplex used only to guess a basis for the exact solver.
//!
//! Nothing here is trusted: the exact solver re-derives the basic solution, rejects the guess if it
//! is infeasible, and continues pivoting from it until exact optimality.

const DUAL_TOL: f64 = 1e-9;
const PRIMAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-7;
const DEGENERATE_RUN: usize = 50;
const REFACTOR_EVERY: usize = 32;
/// Size of the right-hand side perturbation that breaks ties between degenerate vertices.
const PERTURBATION: f64 = 1e-6;

struct Revised<'a> {
    rows: usize,
    vars: usize,
    /// Structural columns after row scaling; column `vars + i` is the artificial unit vector `e_i`.
    columns: &'a [Vec<f64>],
    rhs: Vec<f64>,
    basis: Vec<usize>,
    binv: Vec<Vec<f64>>,
    xb: Vec<f64>,
    since_refactor: usize,
}

enum Outcome {
    Optimal,
    GaveUp,
}

impl Revised<'_> {
    fn column(&self, j: usize) -> Vec<f64> {
        if j >= self.vars {
            let mut e = vec![0.0; self.rows];
            e[j - self.vars] = 1.0;
            e
        } else {
            self.columns[j].clone()
        }
    }

    /// Gauss-Jordan inversion of the basis matrix with partial pivoting.
    fn refactor(&mut self) -> bool {
        let n = self.rows;
        let mut m: Vec<Vec<f64>> = vec![vec![0.0; 2 * n]; n];
        for (c, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column(j).into_iter().enumerate() {
                m[i][c] = v;
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[n + i] = 1.0;
        }
        for c in 0..n {
            let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap_or(c);
            if m[p][c].abs() < 1e-12 {
                return false;
            }
            m.swap(p, c);
            let pv = m[c][c];
            for v in m[c].iter_mut() {
                *v /= pv;
            }
            let pivot_row = m[c].clone();
            for (i, row) in m.iter_mut().enumerate() {
                let f = row[c];
                if i != c && f != 0.0 {
                    for (x, pr) in row.iter_mut().zip(&pivot_row) {
                        *x -= f * pr;
                    }
                }
            }
        }
        // Row c of the reduced matrix belongs to basis position c.
        self.binv = m.into_iter().map(|row| row[n..].to_vec()).collect();
        self.xb = self.binv.iter().map(|row| dot(row, &self.rhs)).collect();
        self.since_refactor = 0;
        true
    }

    fn multipliers(&self, cost: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = cost[j];
            if c != 0.0 {
                for (yi, b) in y.iter_mut().zip(&self.binv[r]) {
                    *yi += c * b;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[f64], y: &[f64]) -> f64 {
        if j >= self.vars {
            cost[j] - y[j - self.vars]
        } else {
            cost[j] - dot(y, &self.columns[j])
        }
    }

    fn pivot(&mut self, r: usize, e: usize, alpha: &[f64]) {
        let theta = self.xb[r] / alpha[r];
        let pr = alpha[r];
        for v in self.binv[r].iter_mut() {
            *v /= pr;
        }
        let pivot_row = self.binv[r].clone();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let a = alpha[i];
            if a != 0.0 {
                for (x, p) in self.binv[i].iter_mut().zip(&pivot_row) {
                    *x -= a * p;
                }
                self.xb[i] -= theta * a;
            }
        }
        self.xb[r] = theta;
        self.basis[r] = e;
        self.since_refactor += 1;
    }

    fn optimize(&mut self, cost: &[f64], budget: &mut usize) -> Outcome {
        let mut run = 0usize;
        let mut in_basis = vec![false; self.vars + self.rows];
        loop {
            if self.since_refactor >= REFACTOR_EVERY && !self.refactor() {
                return Outcome::GaveUp;
            }
            in_basis.iter_mut().for_each(|b| *b = false);
            for &j in &self.basis {
                in_basis[j] = true;
            }
            let y = self.multipliers(cost);
            let mut entering: Option<(usize, f64)> = None;
            for j in (0..self.vars).filter(|&j| !in_basis[j]) {
                let d = self.reduced_cost(j, cost, &y);
                if d <= DUAL_TOL {
                    continue;
                }
                if run >= DEGENERATE_RUN {
                    entering = Some((j, d));
                    break;
                }
                if entering.is_none_or(|(_, b)| d > b) {
                    entering = Some((j, d));
                }
            }
            let Some((e, _)) = entering else {
                // Confirm against a fresh factorization before declaring optimality.
                if self.since_refactor == 0 {
                    return Outcome::Optimal;
                }
                if !self.refactor() {
                    return Outcome::GaveUp;
                }
                continue;
            };
            if *budget == 0 {
                return Outcome::GaveUp;
            }
            *budget -= 1;
            let col = self.column(e);
            let alpha: Vec<f64> = self.binv.iter().map(|row| dot(row, &col)).collect();
            let Some(r) = self.leaving(&alpha, run >= DEGENERATE_RUN) else {
                return Outcome::GaveUp;
            };
            if self.xb[r].max(0.0) / alpha[r] <= PRIMAL_TOL {
                run += 1;
            } else {
                run = 0;
            }
            self.pivot(r, e, &alpha);
        }
    }

    /// Harris two-pass ratio test: among rows within the relaxed minimum ratio, take the largest
    /// pivot element. Under Bland's rule, ties go to the smallest basic index instead.
    fn leaving(&self, alpha: &[f64], bland: bool) -> Option<usize> {
        let eligible = || (0..self.rows).filter(|&i| alpha[i] > PIVOT_TOL);
        let bound = eligible().map(|i| (self.xb[i].max(0.0) + PRIMAL_TOL) / alpha[i]).fold(f64::INFINITY, f64::min);
        if !bound.is_finite() {
            return None;
        }
        let within = eligible().filter(|&i| self.xb[i].max(0.0) / alpha[i] <= bound);
        if bland {
            within.min_by_key(|&i| self.basis[i])
        } else {
            within.max_by(|&a, &b| alpha[a].total_cmp(&alpha[b]).then(b.cmp(&a)))
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Guesses an optimal basis of `maximize c·x, A x = b, x >= 0` with `b >= 0`. Returns the basic
/// structural columns, or `None` if the float solve gave up.
pub(crate) fn guess_basis(matrix: &[Vec<f64>], rhs: &[f64], cost: &[f64]) -> Option<Vec<usize>> {
    let rows = matrix.len();
    let vars = cost.len();
    if matrix.iter().flatten().chain(rhs).chain(cost).any(|v| !v.is_finite()) {
        return None;
    }
    let mut scaled_rhs = Vec::with_capacity(rows);
    let mut scaled_rows = Vec::with_capacity(rows);
    for (row, &b) in matrix.iter().zip(rhs) {
        let s = row.iter().fold(b.abs(), |m, v| m.max(v.abs()));
        let s = if s > 0.0 { s } else { 1.0 };
        scaled_rows.push(row.iter().map(|v| v / s).collect::<Vec<f64>>());
        scaled_rhs.push(b / s);
    }
    let exact_rhs = scaled_rhs.clone();
    // Golden-ratio offsets keep the perturbation deterministic and spread out.
    for (i, b) in scaled_rhs.iter_mut().enumerate() {
        *b += PERTURBATION * (1.0 + (i as f64 * 0.618_033_988_749_895).fract());
    }
    let columns: Vec<Vec<f64>> = (0..vars).map(|j| scaled_rows.iter().map(|row| row[j]).collect()).collect();
    let mut lp = Revised {
        rows,
        vars,
        columns: &columns,
        rhs: scaled_rhs,
        basis: (vars..vars + rows).collect(),
        binv: Vec::new(),
        xb: Vec::new(),
        since_refactor: 0,
    };
    if !lp.refactor() {
        return None;
    }
    let mut budget = 50 * (rows + vars);

    let phase1: Vec<f64> = (0..vars + rows).map(|j| if j >= vars { -1.0 } else { 0.0 }).collect();
    if let Outcome::GaveUp = lp.optimize(&phase1, &mut budget) {
        return None;
    }
    let infeasibility: f64 = (0..rows).filter(|&r| lp.basis[r] >= vars).map(|r| lp.xb[r].abs()).sum();
    if infeasibility > 10.0 * PERTURBATION * rows as f64 {
        return None;
    }
    for r in 0..rows {
        if lp.basis[r] < vars {
            continue;
        }
        let in_basis: Vec<bool> = {
            let mut b = vec![false; vars + rows];
            lp.basis.iter().for_each(|&j| b[j] = true);
            b
        };
        let best = (0..vars)
            .filter(|&j| !in_basis[j])
            .map(|j| (j, dot(&lp.binv[r], &columns[j])))
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(b.0.cmp(&a.0)));
        if let Some((j, v)) = best {
            if v.abs() > PIVOT_TOL {
                let alpha: Vec<f64> = lp.binv.iter().map(|row| dot(row, &columns[j])).collect();
                lp.pivot(r, j, &alpha);
            }
        }
    }

    let cmax = cost.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cscale = if cmax > 0.0 { cmax } else { 1.0 };
    let mut phase2: Vec<f64> = cost.iter().map(|c| c / cscale).collect();
    phase2.extend(std::iter::repeat_n(0.0, rows));
    if let Outcome::GaveUp = lp.optimize(&phase2, &mut budget) {
        return None;
    }
    // Remove the perturbation and clean up whatever that disturbs.
    lp.rhs = exact_rhs;
    if !lp.refactor() || lp.xb.iter().any(|&x| x < -PRIMAL_TOL) {
        return None;
    }
    if let Outcome::GaveUp = lp.optimize(&phase2, &mut budget) {
        return None;
    }
    Some(lp.basis.into_iter().filter(|&j| j < vars).collect())
}
