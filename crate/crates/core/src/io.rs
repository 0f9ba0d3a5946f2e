//! CSV renderings of grids, solutions, convergence reports and adaptive
//! traces. Floats are written in scientific notation with 17 significant
//! digits so that reading a file back reproduces the values bit for bit.

use std::io::{Read, Write};

use crate::adapt::TraceRow;
use crate::analysis::ConvergenceReport;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::solver::DiscreteSolution;

pub const GRID_HEADER: [&str; 1] = ["x"];
pub const SOLUTION_HEADER: [&str; 4] = ["x", "u", "u_exact", "abs_error"];
pub const REPORT_HEADER: [&str; 3] = ["N", "error", "p"];
pub const TRACE_HEADER: [&str; 4] = ["n", "error_norm", "solution_change", "grid_change"];
pub const PROFILE_HEADER: [&str; 3] = ["x", "abs_error", "monitor_label"];

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(s: &str, line: u64) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("line {line}: cannot parse `{s}` as a number")))
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Format(format!(
            "expected header {expected:?}, found {header:?}"
        )));
    }
    Ok(())
}

fn read_rows(input: impl Read, header: &[&str]) -> Result<Vec<(u64, csv::StringRecord)>> {
    let mut rdr = csv::Reader::from_reader(input);
    check_header(&mut rdr, header)?;
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            let line = rec.position().map(|p| p.line()).unwrap_or(0);
            Ok((line, rec))
        })
        .collect()
}

pub fn write_grid(out: impl Write, grid: &Grid) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GRID_HEADER)?;
    for &x in grid.nodes() {
        w.write_record([fmt_f64(x)])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a single-column grid file; `ℓ` is taken from the last node.
pub fn read_grid(input: impl Read) -> Result<Grid> {
    let nodes = read_rows(input, &GRID_HEADER)?
        .into_iter()
        .map(|(line, rec)| parse_f64(&rec[0], line))
        .collect::<Result<Vec<_>>>()?;
    let ell = *nodes
        .last()
        .ok_or_else(|| Error::Format("empty grid file".into()))?;
    Grid::from_nodes(nodes, ell)
}

/// One row of a solution file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionRow {
    pub x: f64,
    pub u: f64,
    pub u_exact: f64,
    pub abs_error: f64,
}

pub fn solution_rows(sol: &DiscreteSolution) -> Vec<SolutionRow> {
    let exact = sol.exact_values();
    sol.grid()
        .nodes()
        .iter()
        .zip(sol.values())
        .zip(exact)
        .map(|((&x, &u), u_exact)| SolutionRow {
            x,
            u,
            u_exact,
            abs_error: (u - u_exact).abs(),
        })
        .collect()
}

pub fn write_solution(out: impl Write, sol: &DiscreteSolution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SOLUTION_HEADER)?;
    for r in solution_rows(sol) {
        w.write_record([
            fmt_f64(r.x),
            fmt_f64(r.u),
            fmt_f64(r.u_exact),
            fmt_f64(r.abs_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_solution(input: impl Read) -> Result<Vec<SolutionRow>> {
    read_rows(input, &SOLUTION_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            Ok(SolutionRow {
                x: parse_f64(&rec[0], line)?,
                u: parse_f64(&rec[1], line)?,
                u_exact: parse_f64(&rec[2], line)?,
                abs_error: parse_f64(&rec[3], line)?,
            })
        })
        .collect()
}

pub fn write_report(out: impl Write, report: &ConvergenceReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_HEADER)?;
    for row in &report.rows {
        let p = row.order.map(fmt_f64).unwrap_or_default();
        w.write_record([row.n.to_string(), fmt_f64(row.error), p])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `N,error,p` back into a report with the given label.
pub fn read_report(input: impl Read, label: &str) -> Result<ConvergenceReport> {
    let rows = read_rows(input, &REPORT_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            let n = rec[0]
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("line {line}: bad N `{}`", &rec[0])))?;
            let error = parse_f64(&rec[1], line)?;
            let order = if rec[2].trim().is_empty() {
                None
            } else {
                Some(parse_f64(&rec[2], line)?)
            };
            Ok(crate::analysis::ConvergenceRow { n, error, order })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport {
        label: label.to_string(),
        rows,
    })
}

pub fn write_trace(out: impl Write, trace: &[TraceRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in trace {
        w.write_record([
            r.n.to_string(),
            fmt_f64(r.error_norm),
            fmt_f64(r.solution_change),
            fmt_f64(r.grid_change),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace(input: impl Read) -> Result<Vec<TraceRow>> {
    read_rows(input, &TRACE_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            Ok(TraceRow {
                n: rec[0]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Format(format!("line {line}: bad n `{}`", &rec[0])))?,
                error_norm: parse_f64(&rec[1], line)?,
                solution_change: parse_f64(&rec[2], line)?,
                grid_change: parse_f64(&rec[3], line)?,
            })
        })
        .collect()
}

/// Per-node error profiles of several labelled solutions, concatenated.
pub fn write_error_profiles<'a>(
    out: impl Write,
    profiles: impl IntoIterator<Item = (&'a str, &'a DiscreteSolution)>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PROFILE_HEADER)?;
    for (label, sol) in profiles {
        for r in solution_rows(sol) {
            w.write_record([fmt_f64(r.x), fmt_f64(r.abs_error), label.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
