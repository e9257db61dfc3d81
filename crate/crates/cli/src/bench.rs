//! Batch runs over a [`BenchPlan`] with one aggregated CSV row per cell.
//!
//! Aggregation conventions:
//! - `opt` is `solved/replications`;
//! - `avg_time_s` averages wall time over instances solved to optimality
//!   (`--` if none);
//! - `avg_gap_pct` averages the gap over instances whose gap is positive
//!   (`0.0` if none);
//! - the remaining averages run over every instance that produced a report.
//!
//! A failed instance still counts towards `replications`; its error goes to
//! stderr and the run continues.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use defdom_core::graph::io::{read_edge_list_with, EdgeListOptions};
use defdom_core::graph::{generate, Family, GenSpec, Graph};
use defdom_core::master::solve;
use defdom_core::{SolveConfig, SolveReport, SolveStatus};
use rayon::prelude::*;

use crate::plan::{BenchPlan, Cell};

pub const CSV_HEADER: [&str; 13] = [
    "family",
    "n",
    "p",
    "k",
    "mode",
    "opt",
    "avg_time_s",
    "avg_gap_pct",
    "avg_cuts",
    "avg_nodes",
    "lb0",
    "ub0",
    "avg_obj",
];

/// Columns holding wall-clock measurements.
pub const TIMING_COLUMNS: [&str; 1] = ["avg_time_s"];

const MISSING: &str = "--";

/// `bbc`, `bbmc`, `iterative`, suffixed `+ic` (initial cuts), `+h` (warm
/// start) or `++` (both).
pub fn variant_label(cfg: &SolveConfig) -> String {
    let suffix = match (cfg.use_initial_cuts, cfg.use_warm_start) {
        (false, false) => "",
        (true, false) => "+ic",
        (false, true) => "+h",
        (true, true) => "++",
    };
    format!("{}{}", cfg.mode, suffix)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic seed for replicate `rep` of `cell`.
pub fn instance_seed(base: u64, cell: &Cell, rep: usize) -> u64 {
    let family = Family::ALL.iter().position(|&f| f == cell.family).unwrap_or(0) as u64;
    [family, cell.n as u64, cell.density.to_bits(), cell.k as u64, rep as u64]
        .into_iter()
        .fold(splitmix64(base), |h, part| splitmix64(h ^ part))
}

/// File name of a stored instance, `rep` counted from 1.
pub fn instance_file_name(cell: &Cell, rep: usize) -> String {
    format!("{}_n{}_p{}_r{}.txt", cell.family, cell.n, cell.density, rep + 1)
}

pub fn load_instance(path: &Path, format: EdgeListOptions) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_edge_list_with(&text, format).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub cell: Cell,
    pub mode: String,
    pub solved: usize,
    pub total: usize,
    pub avg_time: Option<f64>,
    pub avg_gap: f64,
    pub avg_cuts: Option<f64>,
    pub avg_nodes: Option<f64>,
    pub lb0: Option<f64>,
    pub ub0: Option<f64>,
    pub avg_obj: Option<f64>,
}

fn mean<I: IntoIterator<Item = f64>>(values: I) -> Option<f64> {
    let (sum, count) = values.into_iter().fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub fn aggregate(cell: &Cell, mode: &str, outcomes: &[Result<SolveReport, String>]) -> BenchRow {
    let reports: Vec<&SolveReport> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
    let solved: Vec<&&SolveReport> = reports.iter().filter(|r| r.status == SolveStatus::Optimal).collect();
    BenchRow {
        cell: cell.clone(),
        mode: mode.to_string(),
        solved: solved.len(),
        total: outcomes.len(),
        avg_time: mean(solved.iter().map(|r| r.wall_time)),
        avg_gap: mean(reports.iter().map(|r| r.gap_percent).filter(|&g| g > 0.0)).unwrap_or(0.0),
        avg_cuts: mean(reports.iter().map(|r| r.cuts_added as f64)),
        avg_nodes: mean(reports.iter().map(|r| r.nodes_explored as f64)),
        lb0: mean(reports.iter().filter_map(|r| r.lb0)),
        ub0: mean(reports.iter().filter_map(|r| r.ub0.map(|v| v as f64))),
        avg_obj: mean(reports.iter().filter_map(|r| r.best_value.map(|v| v as f64))),
    }
}

impl BenchRow {
    pub fn record(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map_or_else(|| MISSING.to_string(), |x| format!("{x:.1}"));
        vec![
            self.cell.family.to_string(),
            self.cell.n.to_string(),
            self.cell.density.to_string(),
            self.cell.k.to_string(),
            self.mode.clone(),
            format!("{}/{}", self.solved, self.total),
            opt(self.avg_time),
            format!("{:.1}", self.avg_gap),
            opt(self.avg_cuts),
            opt(self.avg_nodes),
            opt(self.lb0),
            opt(self.ub0),
            opt(self.avg_obj),
        ]
    }
}

/// Solves replicate `rep` of `cell`, generating the graph or loading it.
pub fn run_instance(plan: &BenchPlan, format: EdgeListOptions, cell: &Cell, rep: usize) -> Result<SolveReport> {
    let graph = match &plan.instances {
        Some(dir) => load_instance(&dir.join(instance_file_name(cell, rep)), format)?,
        None => {
            let seed = instance_seed(plan.cfg.seed, cell, rep);
            generate(&GenSpec::new(cell.family, cell.n, cell.density, seed))?.graph
        }
    };
    let mut cfg = plan.cfg.clone();
    cfg.k = cell.k;
    Ok(solve(&graph, &cfg)?)
}

/// Runs every cell in order, writing and flushing one CSV row per cell to
/// `out` as soon as it is complete.
pub fn run_bench_to<W: Write>(plan: &BenchPlan, format: EdgeListOptions, out: W) -> Result<Vec<BenchRow>> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    writer.flush()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(plan.jobs).build()?;
    let mode = variant_label(&plan.cfg);
    let mut rows = Vec::with_capacity(plan.cells.len());
    for cell in &plan.cells {
        let outcomes: Vec<Result<SolveReport, String>> = pool.install(|| {
            (0..plan.replications)
                .into_par_iter()
                .map(|rep| run_instance(plan, format, cell, rep).map_err(|e| format!("{e:#}")))
                .collect()
        });
        for (rep, outcome) in outcomes.iter().enumerate() {
            if let Err(e) = outcome {
                eprintln!(
                    "{} n={} p={} k={} replicate {}: {e}",
                    cell.family,
                    cell.n,
                    cell.density,
                    cell.k,
                    rep + 1
                );
            }
        }
        let row = aggregate(cell, &mode, &outcomes);
        writer.write_record(row.record())?;
        writer.flush()?;
        rows.push(row);
    }
    Ok(rows)
}

/// As [`run_bench_to`], writing to `plan.output`.
pub fn run_bench(plan: &BenchPlan, format: EdgeListOptions) -> Result<Vec<BenchRow>> {
    let path: &PathBuf = &plan.output;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    run_bench_to(plan, format, file)
}
