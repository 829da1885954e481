use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use kwise_core::constructions::is_extremal_pairwise;
use kwise_core::format::{read_measure, write_measure};
use kwise_core::rational::format_rational;
use kwise_core::{
    closed_form_certificate, independence_level, is_kwise_independent, khintchine_cell, moment_exact,
    quartic_decompose, verify_certificate, Coefficients, Construction, LpMode, Measure, MomentOrder,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command};
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::ranges::{parse_order_list, parse_usize_list};
use crate::report::{rational, real, real_text, Provenance, Report, ReportDocument};
use crate::table::{moment_json, moment_string, summarize, sweep, CSV_COLUMNS};

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Largest k scanned when reporting the independence level of a constructed measure.
const LEVEL_SCAN: usize = 6;

pub fn execute(cli: &Cli) -> Execution {
    match run(cli) {
        Ok(e) => e,
        Err(e) => Execution { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code },
    }
}

fn run(cli: &Cli) -> Result<Execution, CliError> {
    if let Command::Construct { kind, n } = &cli.command {
        return construct(cli, kind, *n);
    }
    let report = match &cli.command {
        Command::Construct { .. } => unreachable!("handled above"),
        Command::Verify { measure, k } => verify(measure, *k)?,
        Command::Solve { n, p, k, mode, a } => solve(*n, p, *k, mode, a)?,
        Command::Certify { n, p } => certify(*n, *p)?,
        Command::Table { n, p, k, mode } => table(n, p, k, mode, cli.jobs)?,
        Command::Decompose { measure, a } => decompose(measure, a)?,
    };
    emit(cli, &report, report.code)
}

fn emit(cli: &Cli, report: &Report, code: i32) -> Result<Execution, CliError> {
    let rendered = report.render(cli.format)?;
    match &cli.out {
        Some(path) => {
            fs::write(path, rendered).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Execution { stdout: String::new(), stderr: String::new(), code })
        }
        None => Ok(Execution { stdout: rendered, stderr: String::new(), code }),
    }
}

fn load_measure(path: &Path) -> Result<Measure, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    Ok(read_measure(&text)?)
}

fn parse_mode(mode: &str) -> Result<LpMode, CliError> {
    Ok(mode.parse::<LpMode>()?)
}

fn weights_json(m: &Measure) -> Value {
    match m {
        Measure::Orbit(o) => {
            Value::Object(o.support().into_iter().map(|w| (w.to_string(), rational(o.weight(w)))).collect())
        }
        Measure::Atomic(a) => Value::Object(a.atoms().iter().map(|(x, q)| (x.to_string(), rational(q))).collect()),
    }
}

fn weights_text(m: &Measure) -> String {
    let parts: Vec<String> = match m {
        Measure::Orbit(o) => o.support().into_iter().map(|w| format!("{w}:{}", format_rational(o.weight(w)))).collect(),
        Measure::Atomic(a) => a.atoms().iter().map(|(x, q)| format!("{x}:{}", format_rational(q))).collect(),
    };
    parts.join(" ")
}

/// Writes the measure file to `--out`, or to stdout with the summary on stderr.
fn construct(cli: &Cli, kind: &str, n: usize) -> Result<Execution, CliError> {
    let construction: Construction = kind.parse()?;
    let measure = Measure::Orbit(construction.build(n)?);
    let level = independence_level(&measure, LEVEL_SCAN.min(n))?;
    let file = write_measure(&measure);
    let support = measure.support_size();
    let report = Report {
        document: ReportDocument {
            command: "construct".into(),
            parameters: json!({ "kind": construction.name(), "n": n }),
            results: json!({
                "support_size": support.to_string(),
                "independence_level": level,
                "levels_scanned": LEVEL_SCAN.min(n),
                "measure": serde_json::from_str::<Value>(&file).map_err(|e| CliError::io(e.to_string()))?,
            }),
            provenance: Provenance::new(true),
        },
        text: format!(
            "construct {} n={n}\nsupport size {support}\nindependence level {level} (scanned k = 1..{})\nweights {}\n",
            construction.name(),
            LEVEL_SCAN.min(n),
            weights_text(&measure)
        ),
        csv_header: vec!["kind", "n", "support_size", "independence_level"],
        csv_rows: vec![vec![construction.name().into(), n.to_string(), support.to_string(), level.to_string()]],
        code: EXIT_OK,
    };
    let summary = report.render(cli.format)?;
    match &cli.out {
        Some(path) => {
            fs::write(path, &file).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Execution { stdout: summary, stderr: String::new(), code: EXIT_OK })
        }
        None => Ok(Execution { stdout: file, stderr: summary, code: EXIT_OK }),
    }
}

fn verify(path: &Path, k: usize) -> Result<Report, CliError> {
    let measure = load_measure(path)?;
    let r = is_kwise_independent(&measure, k)?;
    let (text, witness_json, row) = match &r.witness {
        None => (
            format!("ok: {k}-wise independent\n"),
            Value::Null,
            vec![k.to_string(), "true".into(), String::new(), String::new()],
        ),
        Some(w) => {
            let subset: Vec<String> = w.subset_one_based().iter().map(|i| i.to_string()).collect();
            let pattern: String = w.pattern.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect();
            (
                format!("fail: not {k}-wise independent; {w}\n"),
                json!({
                    "subset": w.subset_one_based(),
                    "correlation": rational(&w.correlation),
                    "pattern": pattern,
                    "pattern_mass": rational(&w.pattern_mass),
                }),
                vec![k.to_string(), "false".into(), subset.join(" "), format_rational(&w.correlation)],
            )
        }
    };
    Ok(Report {
        document: ReportDocument {
            command: "verify".into(),
            parameters: json!({ "measure": path.display().to_string(), "k": k }),
            results: json!({ "ok": r.ok, "witness": witness_json }),
            provenance: Provenance::new(true),
        },
        text,
        csv_header: vec!["k", "ok", "witness_subset", "witness_correlation"],
        csv_rows: vec![row],
        code: if r.ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn solve(n: usize, p: &str, k: usize, mode: &str, a: &str) -> Result<Report, CliError> {
    let order: MomentOrder = p.parse()?;
    let mode = parse_mode(mode)?;
    let coefficients = Coefficients::parse(a, n)?;
    let s = summarize(khintchine_cell(n, order, k, mode, &coefficients)?)?;
    let cell = &s.cell;
    let exchangeable = cell.optimizer_orbit();
    let mut text = String::new();
    let _ = writeln!(text, "n {n}\np {order}\nk {k}\nmode {mode}\na {a}");
    if cell.exact {
        let _ = writeln!(text, "moment {}", moment_string(cell));
    } else {
        let _ =
            writeln!(text, "moment {} (approximate, {})", moment_string(cell), kwise_core::precision::PRECISION_LABEL);
    }
    let _ = writeln!(text, "constant {}", real_text(&cell.constant));
    let _ = writeln!(text, "optimizer support {}", cell.optimizer.support_size());
    let _ = writeln!(text, "optimizer {}", weights_text(&cell.optimizer));
    if let (Measure::Atomic(_), Some(o)) = (&cell.optimizer, &exchangeable) {
        let _ = writeln!(text, "optimizer orbits {}", weights_text(&Measure::Orbit(o.clone())));
    }
    let _ = writeln!(text, "optimizer_is_extremal_pairwise {}", s.optimizer_is_extremal);
    let _ = writeln!(text, "is_vertex {}", cell.is_vertex);
    let _ = writeln!(text, "alternative_optima {}", cell.alternative_optima);
    let mut record = vec![n.to_string(), order.to_string(), k.to_string(), mode.to_string()];
    record.extend([
        moment_string(cell),
        cell.constant.to_significant(crate::report::DIGITS),
        s.lower_bound.to_significant(crate::report::DIGITS),
        s.holder.to_significant(crate::report::DIGITS),
        s.optimizer_is_extremal.to_string(),
        cell.is_vertex.to_string(),
    ]);
    Ok(Report {
        document: ReportDocument {
            command: "solve".into(),
            parameters: json!({ "n": n, "p": order.to_string(), "k": k, "mode": mode.as_str(), "a": a }),
            results: json!({
                "moment": moment_json(cell),
                "exact": cell.exact,
                "constant": real(&cell.constant),
                "lower_bound_ref": real(&s.lower_bound),
                "holder_ref": real(&s.holder),
                "optimizer": {
                    "kind": match cell.optimizer { Measure::Orbit(_) => "orbit", Measure::Atomic(_) => "atomic" },
                    "support_size": cell.optimizer.support_size().to_string(),
                    "weights": weights_json(&cell.optimizer),
                },
                "optimizer_is_paper_measure": s.optimizer_is_extremal,
                "is_vertex": cell.is_vertex,
                "alternative_optima": cell.alternative_optima,
                "pivots": cell.solution.pivots,
            }),
            provenance: Provenance::new(cell.exact),
        },
        text,
        csv_header: CSV_COLUMNS.to_vec(),
        csv_rows: vec![record],
        code: EXIT_OK,
    })
}

fn certify(n: usize, p: u32) -> Result<Report, CliError> {
    let cert = closed_form_certificate(n, p)?;
    let r = verify_certificate(&cert)?;
    let equality: Vec<String> = r.equality_weights.iter().map(|w| w.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "n {n}\np {p}");
    let _ = writeln!(
        text,
        "u11 {}\nu1m {}\num1 {}\numm {}",
        format_rational(&cert.u11),
        format_rational(&cert.u1m),
        format_rational(&cert.um1),
        format_rational(&cert.umm)
    );
    let _ = writeln!(text, "weight  lhs  rhs  slack");
    for row in &r.slack {
        let _ = writeln!(
            text,
            "{}  {}  {}  {}",
            row.weight,
            format_rational(&row.lhs),
            format_rational(&row.rhs),
            format_rational(&row.slack)
        );
    }
    let _ = writeln!(text, "equality weights {}", equality.join(","));
    let _ = writeln!(text, "certified value {}", format_rational(&r.certified_value));
    let _ = writeln!(text, "primal value {}", format_rational(&r.primal_value));
    let _ = writeln!(text, "feasible {}\nmatches primal {}", r.feasible, r.matches_primal);
    Ok(Report {
        document: ReportDocument {
            command: "certify".into(),
            parameters: json!({ "n": n, "p": p }),
            results: json!({
                "u11": rational(&cert.u11),
                "u1m": rational(&cert.u1m),
                "um1": rational(&cert.um1),
                "umm": rational(&cert.umm),
                "slack": r.slack.iter().map(|s| json!({
                    "weight": s.weight,
                    "lhs": rational(&s.lhs),
                    "rhs": rational(&s.rhs),
                    "slack": rational(&s.slack),
                })).collect::<Vec<_>>(),
                "equality_weights": r.equality_weights,
                "certified_value": rational(&r.certified_value),
                "primal_value": rational(&r.primal_value),
                "feasible": r.feasible,
                "matches_primal": r.matches_primal,
            }),
            provenance: Provenance::new(true),
        },
        text,
        csv_header: vec!["weight", "lhs", "rhs", "slack", "tight"],
        csv_rows: r
            .slack
            .iter()
            .map(|s| {
                vec![
                    s.weight.to_string(),
                    format_rational(&s.lhs),
                    format_rational(&s.rhs),
                    format_rational(&s.slack),
                    (s.lhs == s.rhs).to_string(),
                ]
            })
            .collect(),
        code: if r.feasible && r.matches_primal { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn table(n: &str, p: &str, k: &str, mode: &str, jobs: Option<usize>) -> Result<Report, CliError> {
    let ns = parse_usize_list(n)?;
    let ps = parse_order_list(p)?;
    let ks = parse_usize_list(k)?;
    let mode = parse_mode(mode)?;
    let rows = sweep(&ns, &ps, &ks, mode, jobs)?;
    let exact = ps.iter().all(MomentOrder::is_exact);
    let records: Vec<Vec<String>> = rows.iter().map(|r| r.csv_record()).collect();
    let widths: Vec<usize> = (0..CSV_COLUMNS.len())
        .map(|c| records.iter().map(|r| r[c].len()).chain([CSV_COLUMNS[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let header: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
    let mut text = line(&header);
    for r in &records {
        text.push_str(&line(r));
    }
    let _ = writeln!(text, "approximate columns: 12 significant digits, {}", kwise_core::precision::PRECISION_LABEL);
    let failures = rows.iter().filter(|r| r.result.is_err()).count();
    // The first failing cell decides the exit code; the other rows are still reported.
    let code = rows.iter().find_map(|r| r.result.as_ref().err().map(|e| e.code)).unwrap_or(EXIT_OK);
    Ok(Report {
        document: ReportDocument {
            command: "table".into(),
            parameters: json!({ "n": ns, "p": ps.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "k": ks, "mode": mode.as_str(), "a": "ones" }),
            results: json!({ "cells": rows.iter().map(|r| r.json()).collect::<Vec<_>>(), "failed_cells": failures }),
            provenance: Provenance::new(exact),
        },
        text,
        csv_header: CSV_COLUMNS.to_vec(),
        csv_rows: records,
        code,
    })
}

fn decompose(path: &Path, a: &str) -> Result<Report, CliError> {
    let measure = load_measure(path)?;
    let orbit = match &measure {
        Measure::Orbit(o) => o.clone(),
        Measure::Atomic(at) => {
            let sym = at.symmetrize();
            if sym.to_atomic()? != *at {
                return Err(CliError::invalid("decompose needs an exchangeable measure"));
            }
            sym
        }
    };
    let coefficients = Coefficients::parse(a, orbit.n())?;
    let d = quartic_decompose(&orbit, &coefficients)?;
    let direct = moment_exact(&measure, &coefficients, 4)?;
    let reconstructs = d.total == direct;
    let text = format!(
        "independent_part {}\nc {}\ncross_sum {}\ntotal {}\nmoment {}\nreconstruction {}\nextremal_pairwise {}\n",
        format_rational(&d.independent_part),
        format_rational(&d.c),
        format_rational(&d.cross_sum),
        format_rational(&d.total),
        format_rational(&direct),
        if reconstructs { "ok" } else { "MISMATCH" },
        is_extremal_pairwise(&orbit),
    );
    Ok(Report {
        document: ReportDocument {
            command: "decompose".into(),
            parameters: json!({ "measure": path.display().to_string(), "a": a }),
            results: json!({
                "independent_part": rational(&d.independent_part),
                "c": rational(&d.c),
                "cross_sum": rational(&d.cross_sum),
                "total": rational(&d.total),
                "moment": rational(&direct),
                "reconstructs": reconstructs,
            }),
            provenance: Provenance::new(true),
        },
        text,
        csv_header: vec!["independent_part", "c", "cross_sum", "total", "moment", "reconstructs"],
        csv_rows: vec![vec![
            format_rational(&d.independent_part),
            format_rational(&d.c),
            format_rational(&d.cross_sum),
            format_rational(&d.total),
            format_rational(&direct),
            reconstructs.to_string(),
        ]],
        code: if reconstructs { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}
