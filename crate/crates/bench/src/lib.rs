//! Shared workloads for the criterion benches.

use kwise_core::{build_full_lp, build_orbit_lp, Coefficients, LpProblem, MomentOrder};

pub fn orbit_problem(n: usize, p: u32, k: usize) -> LpProblem {
    build_orbit_lp(n, MomentOrder::Integer(p), k).expect("valid orbit parameters")
}

pub fn full_problem(n: usize, p: u32, k: usize) -> LpProblem {
    build_full_lp(n, MomentOrder::Integer(p), k, &Coefficients::ones(n)).expect("valid full-cube parameters")
}
