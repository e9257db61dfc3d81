use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use defdom_cli::bench::run_bench;
use defdom_cli::commands::{cmd_gen, cmd_solve, cmd_verify, exit, exit_code, render_report, VerifyOutcome};
use defdom_cli::plan::PlanSettings;
use defdom_core::graph::io::{EdgeListOptions, Header};
use defdom_core::graph::{Family, GenSpec};
use defdom_core::separation::{DEFAULT_BUDGET, DEFAULT_CAPACITY};
use defdom_core::{CoverMethod, Mode, SolveConfig};

/// Exact solver for minimum k-defensive dominating sets.
///
/// Exit codes: 0 optimal (or feasible for `verify`), 1 error, 2 time limit
/// with an incumbent, 3 time limit without one, 4 `verify` found a violator.
#[derive(Parser)]
#[command(name = "defdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance and its `.meta` sidecar.
    Gen(GenArgs),
    /// Solve one instance.
    Solve(SolveArgs),
    /// Check a defender set against all attacks of size at most k.
    Verify(VerifyArgs),
    /// Run a benchmark grid and write aggregated CSV rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum HeaderArg {
    /// `n m` on the first line
    Counts,
    /// `n` on the first line
    Vertices,
    /// no header line
    None,
}

#[derive(Args)]
struct FormatArgs {
    /// Header layout of the instance file.
    #[arg(long, value_enum, default_value = "counts")]
    header: HeaderArg,
    /// Vertex ids (in files, defender lists and output) start at 1.
    #[arg(long)]
    one_based: bool,
}

impl FormatArgs {
    fn options(&self) -> EdgeListOptions {
        EdgeListOptions {
            header: match self.header {
                HeaderArg::Counts => Header::VertexAndEdgeCount,
                HeaderArg::Vertices => Header::VertexCount,
                HeaderArg::None => Header::None,
            },
            one_based: self.one_based,
            allow_unordered: true,
        }
    }

    fn offset(&self) -> usize {
        usize::from(self.one_based)
    }
}

#[derive(Args)]
struct GenArgs {
    /// erdos_renyi (er), barabasi_albert (ba) or chordal.
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Target edge density.
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolverArgs {
    /// Attack size.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "bbmc")]
    mode: Mode,
    /// Start from cuts built on independent attacks.
    #[arg(long)]
    initial_cuts: bool,
    /// Start from the clique-cover heuristic's defender set.
    #[arg(long)]
    warm_start: bool,
    /// dsatur, peo or auto.
    #[arg(long, default_value = "auto")]
    cover: CoverMethod,
    /// Subsets examined per separation call before it may stop.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Cut buffer capacity.
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    buffer: usize,
    /// Seconds.
    #[arg(long, default_value_t = 600.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn config(&self) -> SolveConfig {
        SolveConfig {
            k: self.k,
            mode: self.mode,
            use_initial_cuts: self.initial_cuts,
            use_warm_start: self.warm_start,
            cover_method: self.cover,
            budget: self.budget,
            capacity: self.buffer,
            time_limit: self.time_limit,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    format: FormatArgs,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long)]
    k: usize,
    /// Comma-separated defender ids.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    defenders: Vec<usize>,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// key = value plan file; flags below override it.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    families: Option<Vec<Family>>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    initial_cuts: Option<bool>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    warm_start: Option<bool>,
    #[arg(long)]
    cover: Option<CoverMethod>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    buffer: Option<usize>,
    #[arg(long)]
    time_limit: Option<f64>,
    /// Base seed mixed into every replicate seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Instances solved in parallel.
    #[arg(long)]
    jobs: Option<usize>,
    /// CSV destination.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Load `{family}_n{n}_p{p}_r{rep}.txt` from this directory instead of
    /// generating instances.
    #[arg(long)]
    instances: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArgs,
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(a) => {
            let meta = cmd_gen(&GenSpec::new(a.family, a.n, a.p, a.seed), &a.out)?;
            println!("{}", meta.to_line());
            Ok(exit::OPTIMAL)
        }
        Command::Solve(a) => {
            let report = cmd_solve(&a.instance, a.format.options(), &a.solver.config())?;
            let mut shifted = report.clone();
            if let Some(sol) = shifted.solution.as_mut() {
                sol.iter_mut().for_each(|v| *v += a.format.offset());
            }
            let json = serde_json::to_string_pretty(&shifted)?;
            if a.json {
                println!("{json}");
            } else {
                print!("{}", render_report(&report, a.format.offset()));
            }
            if let Some(out) = &a.out {
                fs::write(out, format!("{json}\n")).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(exit_code(report.status))
        }
        Command::Verify(a) => {
            let offset = a.format.offset();
            let ids = a
                .defenders
                .iter()
                .map(|&v| v.checked_sub(offset).context("defender ids start at 1 with --one-based"))
                .collect::<Result<Vec<_>>>()?;
            match cmd_verify(&a.instance, a.format.options(), &ids, a.k)? {
                VerifyOutcome::Feasible => {
                    println!("feasible");
                    Ok(exit::OPTIMAL)
                }
                VerifyOutcome::Violator(s) => {
                    let ids: Vec<String> = s.iter().map(|v| (v + offset).to_string()).collect();
                    println!("violator {{{}}}", ids.join(", "));
                    Ok(exit::NOT_DEFENSIVE)
                }
            }
        }
        Command::Bench(a) => {
            let file = match &a.plan {
                Some(path) => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    PlanSettings::parse(&text)?
                }
                None => PlanSettings::default(),
            };
            let flags = PlanSettings {
                families: a.families,
                n: a.n,
                p: a.p,
                k: a.k,
                replications: a.replications,
                mode: a.mode,
                initial_cuts: a.initial_cuts,
                warm_start: a.warm_start,
                cover: a.cover,
                budget: a.budget,
                buffer: a.buffer,
                time_limit: a.time_limit,
                seed: a.seed,
                jobs: a.jobs,
                out: a.out,
                instances: a.instances,
            };
            let (plan, warnings) = file.overlay(flags).into_plan()?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            let rows = run_bench(&plan, a.format.options())?;
            eprintln!("wrote {} rows to {}", rows.len(), plan.output.display());
            Ok(exit::OPTIMAL)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::ERROR as u8)
        }
    }
}
