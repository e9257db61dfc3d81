//! The covering master problem `min Σ x_i` over pooled feasibility cuts, its
//! two solve modes (branch-and-cut with lazy separation, classical iterative
//! decomposition) and an exhaustive oracle for small graphs.

mod brute;
pub mod lp;
mod search;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::heuristics::{clique_cover, initial_cuts, warm_start, CoverMethod};
use crate::separation::{FeasibilityCut, DEFAULT_BUDGET, DEFAULT_CAPACITY};
use crate::verify::DefenderSet;
use crate::vertex_set::VertexSet;

pub use brute::{brute_force_minimum, brute_force_optimum, DEFAULT_ORACLE_CAP};
pub use search::{solve, solve_bbc, solve_iterative};

use lp::{disjoint_cut_bound, BoundLp, CoverRows, Fixing};

pub const DEFAULT_TIME_LIMIT: f64 = 600.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Branch-and-cut adding the first violated cut found.
    BbcSingle,
    /// Branch-and-cut with the budgeted multi-cut buffer.
    Bbmc,
    /// Solve the master to optimality, separate, repeat.
    Iterative,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::BbcSingle => "bbc",
            Mode::Bbmc => "bbmc",
            Mode::Iterative => "iterative",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bbc" | "bbc_single" => Ok(Mode::BbcSingle),
            "bbmc" => Ok(Mode::Bbmc),
            "iterative" => Ok(Mode::Iterative),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub k: usize,
    pub mode: Mode,
    pub use_initial_cuts: bool,
    pub use_warm_start: bool,
    pub cover_method: CoverMethod,
    /// Separation visit budget `B`.
    pub budget: usize,
    /// Cut buffer capacity `C_max`.
    pub capacity: usize,
    /// Seconds.
    pub time_limit: f64,
    /// Recorded with the results; the solver itself has no random choices.
    pub seed: u64,
}

impl SolveConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            mode: Mode::Bbmc,
            use_initial_cuts: false,
            use_warm_start: false,
            cover_method: CoverMethod::Auto,
            budget: DEFAULT_BUDGET,
            capacity: DEFAULT_CAPACITY,
            time_limit: DEFAULT_TIME_LIMIT,
            seed: 0,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_enhancements(mut self, initial_cuts: bool, warm_start: bool) -> Self {
        self.use_initial_cuts = initial_cuts;
        self.use_warm_start = warm_start;
        self
    }

    pub fn with_time_limit(mut self, seconds: f64) -> Self {
        self.time_limit = seconds;
        self
    }

    /// `(B, C_max)` actually used: single-cut mode forces `(1, 1)`.
    pub fn separation_limits(&self) -> (usize, usize) {
        match self.mode {
            Mode::BbcSingle => (1, 1),
            _ => (self.budget, self.capacity),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.k == 0 || self.k > g.n() {
            return Err(Error::InvalidArgument(format!(
                "k must lie in 1..={} for this graph, got {}",
                g.n(),
                self.k
            )));
        }
        if self.budget == 0 || self.capacity == 0 {
            return Err(Error::InvalidArgument("budget and buffer capacity must be positive".into()));
        }
        if self.time_limit.is_nan() || self.time_limit < 0.0 {
            return Err(Error::InvalidArgument("time limit must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    /// Time limit reached with an incumbent.
    Feasible,
    #[serde(rename = "infeasible_time_limit_no_incumbent")]
    NoIncumbent,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Feasible => "feasible",
            SolveStatus::NoIncumbent => "infeasible_time_limit_no_incumbent",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub best_value: Option<usize>,
    pub lower_bound: usize,
    /// `100 (UB − LB) / UB`, or 100 without an incumbent.
    pub gap_percent: f64,
    /// Seconds.
    pub wall_time: f64,
    /// Cuts found by separation during the search (initial cuts excluded).
    pub cuts_added: usize,
    pub nodes_explored: usize,
    /// LP value of the initial cuts, when they were used.
    pub lb0: Option<f64>,
    /// Warm-start size, when it was used.
    pub ub0: Option<usize>,
    /// Best defender set found, ascending.
    pub solution: Option<Vec<usize>>,
}

pub fn gap_percent(upper: Option<usize>, lower: usize) -> f64 {
    match upper {
        None => 100.0,
        Some(0) => 0.0,
        Some(ub) => 100.0 * ub.saturating_sub(lower) as f64 / ub as f64,
    }
}

/// Cut pool, incumbent and bounds of the master problem.
#[derive(Clone, Debug)]
pub struct MasterModel {
    n: usize,
    cuts: Vec<FeasibilityCut>,
    rows: CoverRows,
    seen: HashSet<VertexSet>,
    incumbent: Option<DefenderSet>,
    lower_bound: usize,
    warm_start: Option<DefenderSet>,
    lb0: Option<f64>,
}

impl MasterModel {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            cuts: Vec::new(),
            rows: CoverRows::default(),
            seen: HashSet::new(),
            incumbent: None,
            lower_bound: 0,
            warm_start: None,
            lb0: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cuts(&self) -> &[FeasibilityCut] {
        &self.cuts
    }

    pub(crate) fn rows(&self) -> &CoverRows {
        &self.rows
    }

    /// Adds a cut unless one with the same violator is pooled already.
    pub fn add_cut(&mut self, cut: FeasibilityCut) -> bool {
        if !self.seen.insert(cut.violator().clone()) {
            return false;
        }
        self.rows.push(cut.coverage(), cut.rhs());
        self.cuts.push(cut);
        true
    }

    pub fn incumbent(&self) -> Option<&DefenderSet> {
        self.incumbent.as_ref()
    }

    pub fn incumbent_value(&self) -> Option<usize> {
        self.incumbent.as_ref().map(DefenderSet::len)
    }

    /// Keeps the smaller of `d` and the current incumbent. The caller vouches
    /// that `d` is k-defensive.
    pub fn offer_incumbent(&mut self, d: DefenderSet) -> bool {
        if self.incumbent_value().is_some_and(|v| v <= d.len()) {
            return false;
        }
        self.incumbent = Some(d);
        true
    }

    pub fn lower_bound(&self) -> usize {
        self.lower_bound
    }

    pub fn raise_lower_bound(&mut self, lb: usize) {
        self.lower_bound = self.lower_bound.max(lb);
    }

    pub fn warm_start(&self) -> Option<&DefenderSet> {
        self.warm_start.as_ref()
    }

    pub fn lb0(&self) -> Option<f64> {
        self.lb0
    }
}

/// Valid lower bound on `min{Σ x : pooled cuts, x ∈ [0,1]ⁿ}`.
pub fn lp_bound(model: &MasterModel) -> f64 {
    let none = Fixing::none(model.n);
    let lp = BoundLp::new(model.n).solve(&model.rows, &none);
    lp.bound.max(disjoint_cut_bound(model.n, &model.rows, &none) as f64).max(0.0)
}

/// Installs the initial cuts and the warm start requested by `cfg`.
pub fn apply_enhancements(mut model: MasterModel, g: &Graph, cfg: &SolveConfig) -> Result<MasterModel> {
    if cfg.use_initial_cuts {
        let set = initial_cuts(g, cfg.k);
        for cut in set.cuts {
            model.add_cut(cut);
        }
        let lb0 = lp_bound(&model);
        model.lb0 = Some(lb0);
        model.raise_lower_bound((lb0 - 1e-6).ceil().max(0.0) as usize);
    }
    if cfg.use_warm_start {
        let cover = clique_cover(g, cfg.cover_method)?;
        let d = warm_start(g, cfg.k, &cover);
        model.warm_start = Some(d.clone());
        model.offer_incumbent(d);
    }
    Ok(model)
}
