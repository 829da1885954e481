//! Parallel sweeps over `(n, p, k)` cells at `a = (1, ..., 1)`.

use kwise_core::constructions::is_extremal_pairwise;
use kwise_core::extremal::{holder_reference, lower_bound_reference};
use kwise_core::rational::format_rational;
use kwise_core::{khintchine_cell, Coefficients, ConstantCell, LpMode, MomentOrder, Real};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{real, DIGITS};

pub const CSV_COLUMNS: [&str; 10] = [
    "n",
    "p",
    "k",
    "mode",
    "moment_exact",
    "constant_approx",
    "lower_bound_ref",
    "holder_ref",
    "optimizer_is_paper_measure",
    "is_vertex",
];

#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    pub p: MomentOrder,
    pub k: usize,
    pub mode: LpMode,
    pub result: Result<CellSummary, CliError>,
}

#[derive(Debug, Clone)]
pub struct CellSummary {
    pub cell: ConstantCell,
    /// `n^{1/2 - 1/p}`.
    pub lower_bound: Real,
    /// `sqrt(n)`.
    pub holder: Real,
    pub optimizer_is_extremal: bool,
}

pub fn summarize(cell: ConstantCell) -> Result<CellSummary, CliError> {
    let lower_bound = lower_bound_reference(cell.n, cell.p)?;
    let holder = holder_reference(cell.n)?;
    let optimizer_is_extremal = cell.optimizer_orbit().is_some_and(|o| is_extremal_pairwise(&o));
    Ok(CellSummary { cell, lower_bound, holder, optimizer_is_extremal })
}

fn solve_cell(n: usize, p: MomentOrder, k: usize, mode: LpMode) -> Result<CellSummary, CliError> {
    summarize(khintchine_cell(n, p, k, mode, &Coefficients::ones(n))?)
}

/// Solves every cell in `ns × ps × ks` order. Rows come back in that order whatever the thread
/// count; a failing cell carries its error instead of stopping the sweep.
pub fn sweep(
    ns: &[usize],
    ps: &[MomentOrder],
    ks: &[usize],
    mode: LpMode,
    jobs: Option<usize>,
) -> Result<Vec<TableRow>, CliError> {
    let cells: Vec<(usize, MomentOrder, usize)> =
        ns.iter().flat_map(|&n| ps.iter().flat_map(move |&p| ks.iter().map(move |&k| (n, p, k)))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(CliError::invalid("--jobs must be positive"));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::io(e.to_string()))?;
    Ok(pool.install(|| {
        cells.par_iter().map(|&(n, p, k)| TableRow { n, p, k, mode, result: solve_cell(n, p, k, mode) }).collect()
    }))
}

/// Exact rational, or 12 significant digits when the order is fractional.
pub fn moment_string(cell: &ConstantCell) -> String {
    if cell.exact {
        format_rational(&cell.moment_value)
    } else {
        Real::from_rational(&cell.moment_value).map(|r| r.to_significant(DIGITS)).unwrap_or_default()
    }
}

pub fn moment_json(cell: &ConstantCell) -> Value {
    if cell.exact {
        Value::String(format_rational(&cell.moment_value))
    } else {
        Real::from_rational(&cell.moment_value).map(|r| real(&r)).unwrap_or(Value::Null)
    }
}

impl TableRow {
    pub fn csv_record(&self) -> Vec<String> {
        let mut row = vec![self.n.to_string(), self.p.to_string(), self.k.to_string(), self.mode.to_string()];
        match &self.result {
            Ok(s) => row.extend([
                moment_string(&s.cell),
                s.cell.constant.to_significant(DIGITS),
                s.lower_bound.to_significant(DIGITS),
                s.holder.to_significant(DIGITS),
                s.optimizer_is_extremal.to_string(),
                s.cell.is_vertex.to_string(),
            ]),
            Err(e) => {
                row.push(format!("error: {e}"));
                row.extend(std::iter::repeat_n(String::new(), 5));
            }
        }
        row
    }

    pub fn json(&self) -> Value {
        let mut v = json!({
            "n": self.n,
            "p": self.p.to_string(),
            "k": self.k,
            "mode": self.mode.as_str(),
        });
        let obj = v.as_object_mut().expect("object literal");
        match &self.result {
            Ok(s) => {
                obj.insert("moment".into(), moment_json(&s.cell));
                obj.insert("exact".into(), s.cell.exact.into());
                obj.insert("constant".into(), real(&s.cell.constant));
                obj.insert("lower_bound_ref".into(), real(&s.lower_bound));
                obj.insert("holder_ref".into(), real(&s.holder));
                obj.insert("optimizer_is_paper_measure".into(), s.optimizer_is_extremal.into());
                obj.insert("is_vertex".into(), s.cell.is_vertex.into());
                obj.insert("alternative_optima".into(), s.cell.alternative_optima.into());
            }
            Err(e) => {
                obj.insert("error".into(), e.message.clone().into());
            }
        }
        v
    }
}
