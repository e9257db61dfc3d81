//! The `gen`, `solve` and `verify` subcommands as library functions.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use defdom_core::graph::io::{write_edge_list, EdgeListOptions};
use defdom_core::graph::{generate, GenMeta, GenSpec, Graph};
use defdom_core::master::solve;
use defdom_core::verify::find_hall_violator;
use defdom_core::{DefenderSet, SolveConfig, SolveReport, SolveStatus, VertexSet};

use crate::bench::load_instance;

/// Process exit codes.
pub mod exit {
    pub const OPTIMAL: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const TIMEOUT_WITH_INCUMBENT: i32 = 2;
    pub const NO_INCUMBENT: i32 = 3;
    /// `verify` found a violator.
    pub const NOT_DEFENSIVE: i32 = 4;
}

pub fn exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Optimal => exit::OPTIMAL,
        SolveStatus::Feasible => exit::TIMEOUT_WITH_INCUMBENT,
        SolveStatus::NoIncumbent => exit::NO_INCUMBENT,
    }
}

/// Path of the metadata file written next to a generated instance.
pub fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Writes the edge list to `out` and its metadata line to `out.meta`.
pub fn cmd_gen(spec: &GenSpec, out: &Path) -> Result<GenMeta> {
    let generated = generate(spec)?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(out, write_edge_list(&generated.graph)).with_context(|| format!("writing {}", out.display()))?;
    let meta = meta_path(out);
    fs::write(&meta, format!("{}\n", generated.meta.to_line()))
        .with_context(|| format!("writing {}", meta.display()))?;
    Ok(generated.meta)
}

pub fn cmd_solve(path: &Path, format: EdgeListOptions, cfg: &SolveConfig) -> Result<SolveReport> {
    let g = load_instance(path, format)?;
    Ok(solve(&g, cfg)?)
}

/// Human-readable report; vertex ids shifted by `offset`.
pub fn render_report(r: &SolveReport, offset: usize) -> String {
    let opt_f = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
    let opt_u = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let mut out = String::new();
    out.push_str(&format!("status: {}\n", r.status));
    out.push_str(&format!("best: {}\n", opt_u(r.best_value)));
    out.push_str(&format!("lower_bound: {}\n", r.lower_bound));
    out.push_str(&format!("gap_pct: {:.2}\n", r.gap_percent));
    out.push_str(&format!("time_s: {:.1}\n", r.wall_time));
    out.push_str(&format!("cuts: {}\n", r.cuts_added));
    out.push_str(&format!("nodes: {}\n", r.nodes_explored));
    out.push_str(&format!("lb0: {}\n", opt_f(r.lb0)));
    out.push_str(&format!("ub0: {}\n", opt_u(r.ub0)));
    if let Some(sol) = &r.solution {
        let ids: Vec<String> = sol.iter().map(|v| (v + offset).to_string()).collect();
        out.push_str(&format!("defenders: {}\n", ids.join(" ")));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Feasible,
    /// `S` with `|N[S] ∩ D| < |S|`.
    Violator(VertexSet),
}

/// Checks `defenders` (0-based) against every attack of size at most `k`.
pub fn verify_defenders(g: &Graph, defenders: &[usize], k: usize) -> Result<VerifyOutcome> {
    if k == 0 {
        bail!("k must be positive");
    }
    let d = DefenderSet::try_from_ids(g.n(), defenders)?;
    match find_hall_violator(g, &d, k) {
        None => Ok(VerifyOutcome::Feasible),
        Some(s) => {
            let covered = g.closed_neighborhood_of(&s).intersection_len(d.as_set());
            if covered >= s.len() {
                bail!("internal error: reported violator {s} is covered");
            }
            Ok(VerifyOutcome::Violator(s))
        }
    }
}

pub fn cmd_verify(path: &Path, format: EdgeListOptions, defenders: &[usize], k: usize) -> Result<VerifyOutcome> {
    let g = load_instance(path, format)?;
    verify_defenders(&g, defenders, k)
}
