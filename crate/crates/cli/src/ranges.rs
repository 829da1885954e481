//! Value lists on the command line: `4..12:2`, `4..8`, `4,6,9`, or a single value.

use kwise_core::MomentOrder;

use crate::error::CliError;

pub fn parse_usize_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::invalid(format!("cannot parse value list {spec:?}"));
    let spec = spec.trim();
    if let Some((range, step)) = split_range(spec) {
        let (lo, hi) = range;
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        let step: usize = step.map_or(Ok(1), |s| s.trim().parse()).map_err(|_| bad())?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    let values =
        spec.split(',').map(|v| v.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

/// Integer ranges, or comma lists that may contain fractions like `5/2`.
pub fn parse_order_list(spec: &str) -> Result<Vec<MomentOrder>, CliError> {
    if split_range(spec.trim()).is_some() {
        return parse_usize_list(spec)?.into_iter().map(|p| Ok(MomentOrder::integer(p as u32)?)).collect();
    }
    spec.split(',').map(|v| Ok(v.trim().parse::<MomentOrder>()?)).collect()
}

fn split_range(spec: &str) -> Option<((&str, &str), Option<&str>)> {
    let (range, step) = match spec.split_once(':') {
        Some((r, s)) => (r, Some(s)),
        None => (spec, None),
    };
    range.split_once("..").map(|r| (r, step))
}
