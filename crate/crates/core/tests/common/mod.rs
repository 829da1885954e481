//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use kwise_core::rational::{int, ratio};
use kwise_core::{AtomicMeasure, Coefficients, LpProblem, Rational, SignVector};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Every coordinate of `x` as ±1, coordinate 0 first.
pub fn signs(n: usize, bits: u32) -> Vec<i64> {
    (0..n).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect()
}

/// k-wise independence by summing atom masses over every sign pattern of every subset of size
/// at most `k`.
pub fn projection_independent(m: &AtomicMeasure, k: usize) -> bool {
    let n = m.n();
    for subset in 1u32..1 << n {
        let size = subset.count_ones() as usize;
        if size > k {
            continue;
        }
        let coords: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
        let mut mass = vec![Rational::zero(); 1 << size];
        for (x, q) in m.atoms() {
            let pattern = coords
                .iter()
                .enumerate()
                .fold(0usize, |acc, (slot, &i)| acc | (((x.bits() >> i & 1) as usize) << slot));
            mass[pattern] += q;
        }
        let uniform = ratio(1, 1 << size);
        if mass.iter().any(|q| *q != uniform) {
            return false;
        }
    }
    true
}

/// Average of `x_1 ⋯ x_j` over all sign vectors with exactly `w` plus signs.
pub fn brute_orbit_correlation(n: usize, w: usize, j: usize) -> Rational {
    let mut total = 0i64;
    let mut count = 0i64;
    for bits in 0u32..1 << n {
        if bits.count_ones() as usize != w {
            continue;
        }
        count += 1;
        total += signs(n, bits)[..j].iter().product::<i64>();
    }
    ratio(total, count)
}

/// `E[∏_{i∈S} x_i]` straight from the atoms.
pub fn brute_correlation(m: &AtomicMeasure, subset: &[usize]) -> Rational {
    m.atoms().iter().map(|(x, q)| q * int(subset.iter().map(|&i| x.entry(i) as i64).product())).sum()
}

/// `Σ_x P(x) |a·x|^p` straight from the atoms.
pub fn brute_moment(m: &AtomicMeasure, a: &Coefficients, p: u32) -> Rational {
    m.atoms()
        .iter()
        .map(|(x, q)| {
            let s: Rational = a.values().iter().zip(x.entries()).map(|(ai, e)| ai * int(e as i64)).sum();
            q * num_traits::pow(s.abs(), p as usize)
        })
        .sum()
}

/// `E|Σ a_i ε_i|^p` under the uniform measure on `{-1,1}^n`, summing all `2^n` points.
pub fn brute_independent_moment(a: &Coefficients, p: u32) -> Rational {
    let n = a.n();
    let total: Rational = (0u32..1 << n)
        .map(|bits| {
            let s: Rational = a.values().iter().zip(signs(n, bits)).map(|(ai, e)| ai * int(e)).sum();
            num_traits::pow(s.abs(), p as usize)
        })
        .sum();
    total / int(1i64 << n)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `B x = b` for the listed columns when they form a basis of the row space of `[A | b]`.
fn basic_solution(prob: &LpProblem, columns: &[usize]) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = prob
        .matrix()
        .iter()
        .zip(prob.rhs())
        .map(|(row, b)| columns.iter().map(|&j| row[j].clone()).chain(std::iter::once(b.clone())).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != columns.len() || pivots.contains(&columns.len()) {
        return None;
    }
    let mut x = vec![Rational::zero(); prob.variables()];
    for (r, &j) in columns.iter().enumerate() {
        x[j] = aug[r][columns.len()].clone();
    }
    Some(x)
}

/// Best objective over all basic feasible solutions, or `None` if there are none. Every vertex of
/// `{A x = b, x >= 0}` is basic, so for a bounded feasible LP this is the optimum.
pub fn enumerate_vertices(prob: &LpProblem) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = prob.matrix().to_vec();
    let rank = rref(&mut a).len();
    let n = prob.variables();
    let mut vertices = Vec::new();
    let mut choose = vec![0usize; rank];
    fn rec(
        start: usize,
        depth: usize,
        n: usize,
        choose: &mut Vec<usize>,
        prob: &LpProblem,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if depth == choose.len() {
            if let Some(x) = basic_solution(prob, choose) {
                if x.iter().all(|v| !v.is_negative())
                    && prob.residual(&x).iter().all(Zero::is_zero)
                    && !out.contains(&x)
                {
                    out.push(x);
                }
            }
            return;
        }
        for j in start..n {
            choose[depth] = j;
            rec(j + 1, depth + 1, n, choose, prob, out);
        }
    }
    if rank == 0 {
        let x = vec![Rational::zero(); n];
        if prob.residual(&x).iter().all(Zero::is_zero) {
            vertices.push(x);
        }
        return vertices;
    }
    rec(0, 0, n, &mut choose, prob, &mut vertices);
    vertices
}

pub fn vertex_optimum(prob: &LpProblem) -> Option<Rational> {
    enumerate_vertices(prob).iter().map(|x| prob.objective_value(x)).max()
}

/// A uniformly drawn small rational `num/den` with `|num| <= bound`, `1 <= den <= bound`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// A rational point of the unit sphere by inverse stereographic projection of a random rational
/// point of `Q^{n-1}`, with coordinates shuffled.
pub fn rational_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Coefficients {
    loop {
        let t: Vec<Rational> = (0..n - 1).map(|_| small_rational(rng, 6)).collect();
        let s: Rational = t.iter().map(|x| x * x).sum();
        let denom = &s + Rational::one();
        let mut v: Vec<Rational> = t.iter().map(|x| int(2) * x / &denom).collect();
        v.push((&s - Rational::one()) / &denom);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        for i in (1..n).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
        return Coefficients::new(v).expect("nonzero unit vector");
    }
}

/// Builds an atomic measure from raw nonnegative integer weights (normalized).
pub fn atomic_from_weights(n: usize, weights: &[u32]) -> AtomicMeasure {
    let total: u64 = weights.iter().map(|&w| w as u64).sum();
    let atoms = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0)
        .map(|(bits, &w)| (SignVector::from_bits(n, bits as u32).unwrap(), ratio(w as i64, total as i64)));
    AtomicMeasure::new(n, atoms).unwrap()
}

/// `2^{-n}(1 + Σ_S c_S χ_S)` with `c_S` supported on subsets larger than `k`, scaled so every mass
/// stays nonnegative; k-wise independent by construction.
pub fn high_order_perturbation(n: usize, k: usize, coefficients: &[(u32, i64)]) -> AtomicMeasure {
    let high: Vec<(u32, i64)> =
        coefficients.iter().copied().filter(|(s, c)| s.count_ones() as usize > k && *c != 0).collect();
    let spread: i64 = high.iter().map(|(_, c)| c.abs()).sum::<i64>().max(1);
    let scale = 1 << n;
    let atoms = (0u32..1 << n).map(|bits| {
        let x = SignVector::from_bits(n, bits).unwrap();
        let bump: i64 = high.iter().map(|&(s, c)| c * x.character(s) as i64).sum();
        (x, ratio(spread + bump, scale * spread))
    });
    AtomicMeasure::new(n, atoms).unwrap()
}
