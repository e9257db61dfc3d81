//! Benchmark plans: a cartesian grid of instance cells plus one solver
//! configuration.
//!
//! Plan files are `key = value` lines; `#` starts a comment and lists are
//! comma separated:
//!
//! ```text
//! families = erdos_renyi, chordal
//! n = 50, 100
//! p = 0.2, 0.5, 0.8
//! k = 2
//! replications = 5
//! mode = bbmc
//! initial_cuts = true
//! warm_start = true
//! time_limit = 600
//! out = results.csv
//! ```
//!
//! Flags given on the command line take precedence over the file, which
//! takes precedence over the defaults.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use defdom_core::graph::{Family, BA_MAX_DENSITY};
use defdom_core::master::DEFAULT_TIME_LIMIT;
use defdom_core::separation::{DEFAULT_BUDGET, DEFAULT_CAPACITY};
use defdom_core::{CoverMethod, Mode, SolveConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub family: Family,
    pub n: usize,
    pub density: f64,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub cells: Vec<Cell>,
    pub replications: usize,
    /// Template; `k` is replaced by each cell's value.
    pub cfg: SolveConfig,
    pub output: PathBuf,
    /// Load `{family}_n{n}_p{p}_r{rep}.txt` from here instead of generating.
    pub instances: Option<PathBuf>,
    pub jobs: usize,
}

/// Settings before defaults are applied; `None` means not given.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlanSettings {
    pub families: Option<Vec<Family>>,
    pub n: Option<Vec<usize>>,
    pub p: Option<Vec<f64>>,
    pub k: Option<Vec<usize>>,
    pub replications: Option<usize>,
    pub mode: Option<Mode>,
    pub initial_cuts: Option<bool>,
    pub warm_start: Option<bool>,
    pub cover: Option<CoverMethod>,
    pub budget: Option<usize>,
    pub buffer: Option<usize>,
    pub time_limit: Option<f64>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub instances: Option<PathBuf>,
}

fn list<T>(value: &str, key: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow!("{key}: cannot parse '{s}': {e}")))
        .collect()
}

fn one<T>(value: &str, key: &str) -> Result<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| anyhow!("{key}: cannot parse '{}': {e}", value.trim()))
}

impl PlanSettings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = PlanSettings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("expected key = value, line {}", i + 1))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let ctx = || format!("line {}", i + 1);
            match key.as_str() {
                "families" | "family" => s.families = Some(list(value, &key).with_context(ctx)?),
                "n" => s.n = Some(list(value, &key).with_context(ctx)?),
                "p" | "density" => s.p = Some(list(value, &key).with_context(ctx)?),
                "k" => s.k = Some(list(value, &key).with_context(ctx)?),
                "replications" => s.replications = Some(one(value, &key).with_context(ctx)?),
                "mode" => s.mode = Some(one(value, &key).with_context(ctx)?),
                "initial_cuts" => s.initial_cuts = Some(one(value, &key).with_context(ctx)?),
                "warm_start" => s.warm_start = Some(one(value, &key).with_context(ctx)?),
                "cover" => s.cover = Some(one(value, &key).with_context(ctx)?),
                "budget" => s.budget = Some(one(value, &key).with_context(ctx)?),
                "buffer" => s.buffer = Some(one(value, &key).with_context(ctx)?),
                "time_limit" => s.time_limit = Some(one(value, &key).with_context(ctx)?),
                "seed" => s.seed = Some(one(value, &key).with_context(ctx)?),
                "jobs" => s.jobs = Some(one(value, &key).with_context(ctx)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "instances" => s.instances = Some(PathBuf::from(value)),
                other => bail!("unknown plan key '{other}', line {}", i + 1),
            }
        }
        Ok(s)
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: PlanSettings) -> PlanSettings {
        PlanSettings {
            families: over.families.or(self.families),
            n: over.n.or(self.n),
            p: over.p.or(self.p),
            k: over.k.or(self.k),
            replications: over.replications.or(self.replications),
            mode: over.mode.or(self.mode),
            initial_cuts: over.initial_cuts.or(self.initial_cuts),
            warm_start: over.warm_start.or(self.warm_start),
            cover: over.cover.or(self.cover),
            budget: over.budget.or(self.budget),
            buffer: over.buffer.or(self.buffer),
            time_limit: over.time_limit.or(self.time_limit),
            seed: over.seed.or(self.seed),
            jobs: over.jobs.or(self.jobs),
            out: over.out.or(self.out),
            instances: over.instances.or(self.instances),
        }
    }

    /// Applies defaults and expands the grid. Returns the plan and warnings
    /// for dropped cells.
    pub fn into_plan(self) -> Result<(BenchPlan, Vec<String>)> {
        let families = self.families.unwrap_or_else(|| vec![Family::ErdosRenyi]);
        let ns = self.n.unwrap_or_else(|| vec![50]);
        let ps = self.p.unwrap_or_else(|| vec![0.2, 0.5, 0.8]);
        let ks = self.k.unwrap_or_else(|| vec![2]);
        let replications = self.replications.unwrap_or(5);
        if replications == 0 {
            bail!("replications must be at least 1");
        }
        let mut cfg = SolveConfig::new(1);
        cfg.mode = self.mode.unwrap_or(Mode::Bbmc);
        cfg.use_initial_cuts = self.initial_cuts.unwrap_or(false);
        cfg.use_warm_start = self.warm_start.unwrap_or(false);
        cfg.cover_method = self.cover.unwrap_or(CoverMethod::Auto);
        cfg.budget = self.budget.unwrap_or(DEFAULT_BUDGET);
        cfg.capacity = self.buffer.unwrap_or(DEFAULT_CAPACITY);
        cfg.time_limit = self.time_limit.unwrap_or(DEFAULT_TIME_LIMIT);
        cfg.seed = self.seed.unwrap_or(0);
        if cfg.budget == 0 || cfg.capacity == 0 {
            bail!("budget and buffer must be positive");
        }

        let mut cells = Vec::new();
        let mut warnings = Vec::new();
        for &family in &families {
            for &n in &ns {
                for &density in &ps {
                    if !(0.0..=1.0).contains(&density) {
                        bail!("density {density} is outside [0, 1]");
                    }
                    if family == Family::BarabasiAlbert && density >= BA_MAX_DENSITY {
                        warnings.push(format!(
                            "skipping {family} n={n} p={density}: preferential attachment cannot reach that density"
                        ));
                        continue;
                    }
                    for &k in &ks {
                        if k == 0 || k > n {
                            bail!("k={k} is invalid for n={n}");
                        }
                        cells.push(Cell { family, n, density, k });
                    }
                }
            }
        }
        let plan = BenchPlan {
            cells,
            replications,
            cfg,
            output: self.out.unwrap_or_else(|| PathBuf::from("bench.csv")),
            instances: self.instances,
            jobs: self.jobs.unwrap_or(1).max(1),
        };
        Ok((plan, warnings))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file() {
        let text = "# comment\nfamilies = er, chordal\nn = 50,100\np=0.2\nk = 2, 3 # trailing\nreplications = 3\nmode = bbc\nwarm-start = true\n";
        let s = PlanSettings::parse(text).unwrap();
        assert_eq!(s.families, Some(vec![Family::ErdosRenyi, Family::Chordal]));
        assert_eq!(s.n, Some(vec![50, 100]));
        assert_eq!(s.mode, Some(Mode::BbcSingle));
        assert_eq!(s.warm_start, Some(true));
        let (plan, warnings) = s.into_plan().unwrap();
        assert!(warnings.is_empty());
        assert_eq!(plan.cells.len(), 2 * 2 * 2);
        assert_eq!(plan.replications, 3);
        assert!(plan.cfg.use_warm_start && !plan.cfg.use_initial_cuts);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(PlanSettings::parse("nonsense").is_err());
        assert!(PlanSettings::parse("colour = red").is_err());
        assert!(PlanSettings::parse("n = fifty").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = PlanSettings::parse("n = 50\nmode = iterative\ntime_limit = 10").unwrap();
        let flags = PlanSettings {
            n: Some(vec![20]),
            ..Default::default()
        };
        let merged = file.overlay(flags);
        assert_eq!(merged.n, Some(vec![20]));
        assert_eq!(merged.mode, Some(Mode::Iterative));
        let (plan, _) = merged.into_plan().unwrap();
        assert_eq!(plan.cfg.time_limit, 10.0);
        assert_eq!(plan.cfg.budget, DEFAULT_BUDGET);
    }

    #[test]
    fn drops_dense_preferential_attachment_cells() {
        let s = PlanSettings::parse("families = ba, er\np = 0.5, 0.8").unwrap();
        let (plan, warnings) = s.into_plan().unwrap();
        assert_eq!(plan.cells.len(), 3);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn empty_grid() {
        let (plan, _) = PlanSettings::parse("families =").unwrap().into_plan().unwrap();
        assert!(plan.cells.is_empty());
    }
}
