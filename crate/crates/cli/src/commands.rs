//! Subcommand implementations. Each returns `Ok(true)` when every requested
//! computation converged.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;

use supraconv_core::analysis::{mapping_label, render_side_by_side, sci3};
use supraconv_core::io::{
    fmt_f64, write_error_profiles, write_report, write_solution, write_trace,
};
use supraconv_core::{
    adaptive_solve, analytic_mapped_grid, equidistribute, mapped_grid_study, max_error, solve_bvp,
    AdaptiveConfig, ConvergenceReport, DiscreteSolution, EquidistOptions, Grid, Ladder,
    MappingSpec, MonitorFunction, ProblemSpec, TraceRow,
};

use crate::settings::{parse_list, GridMode, Settings};

pub const TABLE1_LADDER: [usize; 7] = [10, 20, 40, 80, 160, 320, 640];
pub const TABLE1_BETAS: [f64; 4] = [0.0, 0.25, 0.5, 2.0];
pub const TABLE2_ALPHAS: [f64; 9] = [0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1000.0, 10000.0];
pub const TABLE2_BETAS: [f64; 5] = [0.125, 0.25, 0.5, 1.0, 2.0];

fn problem(s: &Settings) -> Result<ProblemSpec> {
    ProblemSpec::new(s.lambda, s.ell).context("invalid problem parameters")
}

fn adaptive_config(s: &Settings, alpha: f64, beta: f64) -> AdaptiveConfig {
    AdaptiveConfig {
        alpha,
        beta,
        eps: s.eps,
        max_outer: s.max_outer,
        inner: inner_options(s),
    }
}

fn inner_options(s: &Settings) -> EquidistOptions {
    EquidistOptions {
        tol: s.tol,
        max_iter: s.max_iter,
    }
}

/// Writes to `path`, or to stdout when absent.
fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
            }
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

/// Informational text goes to stdout unless stdout carries the CSV.
fn report(s: &Settings, text: &str) {
    if s.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

pub struct ModeSolution {
    pub solution: DiscreteSolution,
    pub converged: bool,
    pub outer_iterations: Option<usize>,
    pub trace: Vec<TraceRow>,
}

pub fn solve_with_mode(
    s: &Settings,
    spec: &ProblemSpec,
    n: usize,
    mode: GridMode,
) -> Result<ModeSolution> {
    let plain = |grid: Grid| -> Result<ModeSolution> {
        Ok(ModeSolution {
            solution: solve_bvp(&grid, spec)?,
            converged: true,
            outer_iterations: None,
            trace: vec![],
        })
    };
    match mode {
        GridMode::Uniform => plain(Grid::uniform(spec.ell(), n)?),
        GridMode::Analytic => plain(analytic_mapped_grid(
            &MappingSpec::power(*spec, s.require_beta()?)?,
            n,
        )?),
        GridMode::Equidistributed => {
            let monitor = MonitorFunction::exact_power(*spec, s.require_beta()?)?;
            let r = equidistribute(&monitor, spec, n, None, inner_options(s))?;
            log::info!(
                "equidistributed in {} sweeps, defect {:e}",
                r.iterations,
                r.equidist_defect
            );
            plain(r.grid)
        }
        GridMode::Adaptive => {
            let cfg = adaptive_config(s, s.require_alpha()?, s.require_beta()?);
            let r = adaptive_solve(spec, n, &cfg)?;
            Ok(ModeSolution {
                solution: r.solution,
                converged: r.converged,
                outer_iterations: Some(r.outer_iterations),
                trace: r.trace,
            })
        }
    }
}

pub fn run_solve(s: &Settings) -> Result<bool> {
    let spec = problem(s)?;
    let n = s.n.unwrap_or(20);
    let mode = s.grid.unwrap_or(GridMode::Uniform);
    let r = solve_with_mode(s, &spec, n, mode)?;
    with_output(s.out.as_deref(), |w| Ok(write_solution(w, &r.solution)?))?;
    let mut text = format!(
        "N = {n}, grid = {mode:?}: max error = {}\n",
        fmt_f64(max_error(&r.solution))
    );
    if let Some(k) = r.outer_iterations {
        let _ = writeln!(text, "outer iterations = {k}, converged = {}", r.converged);
    }
    report(s, &text);
    Ok(r.converged)
}

pub fn run_adapt(s: &Settings, trace_path: Option<&Path>) -> Result<bool> {
    let spec = problem(s)?;
    let n = s.n.unwrap_or(20);
    let r = solve_with_mode(s, &spec, n, GridMode::Adaptive)?;
    with_output(s.out.as_deref(), |w| Ok(write_solution(w, &r.solution)?))?;
    if let Some(p) = trace_path {
        with_output(Some(p), |w| Ok(write_trace(w, &r.trace)?))?;
    }
    let text = format!(
        "N = {n}, alpha = {}, beta = {}: max error = {}, n = {}, converged = {}\n",
        s.require_alpha()?,
        s.require_beta()?,
        fmt_f64(max_error(&r.solution)),
        r.outer_iterations.unwrap_or(0),
        r.converged
    );
    report(s, &text);
    Ok(r.converged)
}

fn ladder(s: &Settings, flag: Option<&str>) -> Result<Ladder> {
    let ns = match flag.or(s.ladder.as_deref()) {
        Some(text) => parse_list(text, "ladder")?,
        None => TABLE1_LADDER.to_vec(),
    };
    Ok(Ladder::new(ns)?)
}

pub fn run_convergence(s: &Settings, ladder_flag: Option<&str>) -> Result<bool> {
    let spec = problem(s)?;
    let ladder = ladder(s, ladder_flag)?;
    let mode = s.grid.unwrap_or(GridMode::Uniform);
    let outcomes = ladder
        .as_slice()
        .par_iter()
        .map(|&n| {
            solve_with_mode(s, &spec, n, mode).map(|r| (n, max_error(&r.solution), r.converged))
        })
        .collect::<Result<Vec<_>>>()?;
    let converged = outcomes.iter().all(|o| o.2);
    let errors: Vec<(usize, f64)> = outcomes.iter().map(|o| (o.0, o.1)).collect();
    let report_ = ConvergenceReport::from_errors(format!("{mode:?}"), &errors)?;
    with_output(s.out.as_deref(), |w| Ok(write_report(w, &report_)?))?;
    report(s, &render_side_by_side(std::slice::from_ref(&report_)));
    Ok(converged)
}

pub fn table1_reports(spec: &ProblemSpec, ladder: &Ladder) -> Result<Vec<ConvergenceReport>> {
    TABLE1_BETAS
        .par_iter()
        .map(|&beta| {
            Ok(mapped_grid_study(
                &MappingSpec::power(*spec, beta)?,
                ladder,
            )?)
        })
        .collect()
}

pub fn run_table1(s: &Settings, ladder_flag: Option<&str>) -> Result<bool> {
    let spec = problem(s)?;
    let ladder = ladder(s, ladder_flag)?;
    let reports = table1_reports(&spec, &ladder)?;
    with_output(s.out.as_deref(), |w| {
        writeln!(w, "monitor,N,error,p")?;
        for r in &reports {
            for row in &r.rows {
                writeln!(
                    w,
                    "{},{},{},{}",
                    r.label,
                    row.n,
                    fmt_f64(row.error),
                    row.order.map(fmt_f64).unwrap_or_default()
                )?;
            }
        }
        Ok(())
    })?;
    let header = format!(
        "Convergence of the centered scheme on mapped grids (lambda = {}, ell = {})\n",
        s.lambda, s.ell
    );
    report(s, &(header + &render_side_by_side(&reports)));
    Ok(true)
}

#[derive(Debug, Clone, Copy)]
pub struct Table2Cell {
    pub alpha: f64,
    pub beta: f64,
    pub error: f64,
    pub n: usize,
    pub converged: bool,
}

pub fn table2_cells(
    s: &Settings,
    spec: &ProblemSpec,
    n: usize,
    alphas: &[f64],
    betas: &[f64],
) -> Result<Vec<Table2Cell>> {
    let pairs: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(alpha, beta)| {
            let r = adaptive_solve(spec, n, &adaptive_config(s, alpha, beta))?;
            Ok(Table2Cell {
                alpha,
                beta,
                error: r.error_norm,
                n: r.outer_iterations,
                converged: r.converged,
            })
        })
        .collect()
}

pub fn render_table2(cells: &[Table2Cell], alphas: &[f64], betas: &[f64]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>8}", "alpha");
    for b in betas {
        let _ = write!(out, " | {:^16}", format!("beta = {b}"));
    }
    out.push('\n');
    for (i, a) in alphas.iter().enumerate() {
        let _ = write!(out, "{a:>8}");
        for j in 0..betas.len() {
            let c = &cells[i * betas.len() + j];
            let mark = if c.converged { ' ' } else { '*' };
            let _ = write!(out, " | {:>9} {:>5}{mark}", sci3(c.error), c.n);
        }
        out.push('\n');
    }
    if cells.iter().any(|c| !c.converged) {
        out.push_str("* not converged: best iterate shown, n = iteration limit\n");
    }
    out
}

pub fn run_table2(s: &Settings, alphas: Option<&str>, betas: Option<&str>) -> Result<bool> {
    let spec = problem(s)?;
    let n = s.n.unwrap_or(20);
    let alphas = match alphas {
        Some(t) => parse_list(t, "alpha")?,
        None => TABLE2_ALPHAS.to_vec(),
    };
    let betas = match betas {
        Some(t) => parse_list(t, "beta")?,
        None => TABLE2_BETAS.to_vec(),
    };
    let cells = table2_cells(s, &spec, n, &alphas, &betas)?;
    with_output(s.out.as_deref(), |w| {
        writeln!(w, "alpha,beta,error,n,converged")?;
        for c in &cells {
            writeln!(
                w,
                "{},{},{},{},{}",
                fmt_f64(c.alpha),
                fmt_f64(c.beta),
                fmt_f64(c.error),
                c.n,
                c.converged
            )?;
        }
        Ok(())
    })?;
    let header = format!(
        "Adaptive grids, N = {n}, lambda = {}, ell = {}, eps = {:e}\n",
        s.lambda, s.ell, s.eps
    );
    report(s, &(header + &render_table2(&cells, &alphas, &betas)));
    Ok(cells.iter().all(|c| c.converged))
}

pub fn run_error_profile(s: &Settings) -> Result<bool> {
    let spec = problem(s)?;
    let n = s.n.unwrap_or(80);
    let profiles = TABLE1_BETAS
        .iter()
        .map(|&beta| {
            let map = MappingSpec::power(spec, beta)?;
            Ok((
                mapping_label(&map),
                solve_bvp(&analytic_mapped_grid(&map, n)?, &spec)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    with_output(s.out.as_deref(), |w| {
        Ok(write_error_profiles(
            w,
            profiles.iter().map(|(l, sol)| (l.as_str(), sol)),
        )?)
    })?;
    let mut text = String::new();
    for (label, sol) in &profiles {
        let errs = sol.abs_errors();
        let (j, e) = errs.iter().enumerate().fold(
            (0, 0.0),
            |acc, (j, &e)| if e > acc.1 { (j, e) } else { acc },
        );
        let _ = writeln!(
            text,
            "{label:<20} max error {} at x = {:.4}",
            sci3(e),
            sol.grid().nodes()[j]
        );
    }
    report(s, &text);
    Ok(true)
}
