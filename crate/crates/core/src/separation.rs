//! Combinatorial Benders feasibility cuts.
//!
//! A Hall violator `S` at an integer point `x̂` (fewer chosen defenders in
//! `N[S]` than `|S|`) yields the cut `Σ_{i ∈ N[S]} x_i ≥ |S|` without
//! solving any dual subproblem. Cuts are sampled by a budgeted depth-first
//! search and kept in a bounded, dominance-free buffer.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::{Attack, DefenderSet};
use crate::vertex_set::VertexSet;
use crate::walk::{Control, SubsetWalker};

/// Default attempt budget `B`.
pub const DEFAULT_BUDGET: usize = 50_000;
/// Default buffer capacity `C_max`.
pub const DEFAULT_CAPACITY: usize = 50;

const DEADLINE_CHECK_INTERVAL: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Self(None)
    }

    pub fn at(instant: Instant) -> Self {
        Self(Some(instant))
    }

    pub fn after(limit: Duration) -> Self {
        Self(Instant::now().checked_add(limit))
    }

    pub fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    Completed,
    Stopped,
    TimedOut,
}

/// Visits square-connected `S` with `|S| <= k` in superset-first order,
/// passing `(S, N[S], max(0, |S| - |N[S] ∩ x̂|))` to `on_subset`.
///
/// Once `|N[S] ∩ x̂| >= k` no superset of `S` within the size limit can be
/// violated, so those are skipped. Every violator is still reached, since the
/// subsets on its search path are covered no better than it is.
pub(crate) fn scan_violators<F>(
    g: &Graph,
    square: &Graph,
    xhat: &VertexSet,
    k: usize,
    deadline: Deadline,
    mut on_subset: F,
) -> ScanOutcome
where
    F: FnMut(&VertexSet, &VertexSet, usize) -> Control,
{
    let mut steps = 0usize;
    let mut timed_out = false;
    let completed = SubsetWalker::new(g, square, k).walk(|s, cover| {
        steps += 1;
        if steps.is_multiple_of(DEADLINE_CHECK_INTERVAL) && deadline.expired() {
            timed_out = true;
            return Control::Stop;
        }
        let covered = cover.intersection_len(xhat);
        match on_subset(s, cover, s.len().saturating_sub(covered)) {
            Control::Continue if covered >= k => Control::Prune,
            control => control,
        }
    });
    match (completed, timed_out) {
        (true, _) => ScanOutcome::Completed,
        (false, true) => ScanOutcome::TimedOut,
        (false, false) => ScanOutcome::Stopped,
    }
}

/// `Σ_{i ∈ coverage} x_i ≥ rhs` with `coverage = N[violator]` and
/// `rhs = |violator|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FeasibilityCut {
    violator: VertexSet,
    coverage: VertexSet,
}

impl FeasibilityCut {
    pub fn violator(&self) -> &VertexSet {
        &self.violator
    }

    pub fn coverage(&self) -> &VertexSet {
        &self.coverage
    }

    pub fn rhs(&self) -> usize {
        self.violator.len()
    }

    /// `rhs − |coverage ∩ x̂|`; positive iff the cut is violated at `x̂`.
    pub fn violation(&self, xhat: &VertexSet) -> isize {
        self.rhs() as isize - self.coverage.intersection_len(xhat) as isize
    }

    pub fn is_satisfied_by(&self, x: &VertexSet) -> bool {
        self.violation(x) <= 0
    }

    /// Whether `self` is at least as strong as `weaker` by the superset rule:
    /// `weaker.S ⊂ self.S` and `|self.S ∖ weaker.S| ≥ |N[self.S] ∖ N[weaker.S]|`.
    pub fn dominates(&self, weaker: &FeasibilityCut) -> bool {
        weaker.violator.is_strict_subset(&self.violator)
            && self.violator.difference_len(&weaker.violator) >= self.coverage.difference_len(&weaker.coverage)
    }
}

impl std::fmt::Display for FeasibilityCut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sum x[{}] >= {}", self.coverage, self.rhs())
    }
}

pub fn cut_from_violator(g: &Graph, violator: VertexSet) -> Result<FeasibilityCut> {
    if violator.is_empty() {
        return Err(Error::InvalidArgument("a cut needs a nonempty violator set".into()));
    }
    let coverage = g.closed_neighborhood_of(&violator);
    Ok(FeasibilityCut { violator, coverage })
}

pub fn violation(cut: &FeasibilityCut, xhat: &DefenderSet) -> isize {
    cut.violation(xhat.as_set())
}

pub fn dominates(stronger: &FeasibilityCut, weaker: &FeasibilityCut) -> bool {
    stronger.dominates(weaker)
}

/// Extreme-ray candidate of the single-attack dual subproblem: `α_j = 1` on
/// the violator, `β_i = −1` on its closed neighborhood, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRay {
    pub alpha: BTreeMap<usize, i32>,
    pub beta: BTreeMap<usize, i32>,
}

impl DualRay {
    /// `Σ_j α_j + Σ_i β_i x̂_i`.
    pub fn objective(&self, xhat: &VertexSet) -> i64 {
        let a: i64 = self.alpha.values().map(|&v| v as i64).sum();
        let b: i64 = self
            .beta
            .iter()
            .filter(|(i, _)| xhat.contains(**i))
            .map(|(_, &v)| v as i64)
            .sum();
        a + b
    }

    /// `β ≤ 0` and `α_j + β_i ≤ 0` for every attacked `j` and `i ∈ N[j]`.
    pub fn is_feasible(&self, g: &Graph) -> bool {
        self.beta.values().all(|&b| b <= 0)
            && self.alpha.iter().all(|(&j, &a)| {
                g.closed_neighborhood(j)
                    .iter()
                    .all(|i| a + self.beta.get(&i).copied().unwrap_or(0) <= 0)
            })
    }
}

pub fn build_dual_ray(g: &Graph, attack: &Attack, violator: &VertexSet) -> Result<DualRay> {
    if !violator.is_subset(attack.vertices()) {
        return Err(Error::InvalidArgument("violator must be a subset of the attack".into()));
    }
    let cover_s = g.closed_neighborhood_of(violator);
    let cover_a = g.closed_neighborhood_of(attack.vertices());
    let alpha = attack
        .vertices()
        .iter()
        .map(|j| (j, i32::from(violator.contains(j))))
        .collect();
    let beta = cover_a
        .iter()
        .map(|i| (i, if cover_s.contains(i) { -1 } else { 0 }))
        .collect();
    Ok(DualRay { alpha, beta })
}

/// Bounded set of violated cuts, pairwise non-dominating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutBuffer {
    cuts: Vec<(FeasibilityCut, usize)>,
    capacity: usize,
}

impl CutBuffer {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "buffer capacity must be positive");
        Self {
            cuts: Vec::new(),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Buffered cuts with their violation at the point the buffer was built for.
    pub fn entries(&self) -> &[(FeasibilityCut, usize)] {
        &self.cuts
    }

    pub fn into_cuts(self) -> Vec<FeasibilityCut> {
        self.cuts.into_iter().map(|(c, _)| c).collect()
    }

    /// Offers a violator found at `xhat`.
    pub fn update(&mut self, g: &Graph, candidate: VertexSet, xhat: &VertexSet) -> Result<()> {
        let cut = cut_from_violator(g, candidate)?;
        let v = cut.violation(xhat);
        if v < 1 {
            return Err(Error::InvalidArgument(format!(
                "candidate {} is not violated at the current point",
                cut.violator()
            )));
        }
        self.offer(cut, v as usize);
        Ok(())
    }

    fn offer(&mut self, cut: FeasibilityCut, violation: usize) {
        let mut i = 0;
        while i < self.cuts.len() {
            let old = &self.cuts[i].0;
            if cut.dominates(old) {
                self.cuts.remove(i);
                continue;
            }
            if old.dominates(&cut) {
                return;
            }
            i += 1;
        }
        if self.cuts.len() < self.capacity {
            self.cuts.push((cut, violation));
            return;
        }
        // First minimum wins ties.
        let (min_at, min_violation) = self
            .cuts
            .iter()
            .enumerate()
            .map(|(i, (_, v))| (i, *v))
            .fold((0, usize::MAX), |best, cur| if cur.1 < best.1 { cur } else { best });
        if violation > min_violation {
            self.cuts[min_at] = (cut, violation);
        }
    }
}

pub fn buffer_update(mut buf: CutBuffer, g: &Graph, candidate: VertexSet, xhat: &DefenderSet) -> Result<CutBuffer> {
    buf.update(g, candidate, xhat.as_set())?;
    Ok(buf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparationParams {
    pub k: usize,
    pub budget: usize,
    pub capacity: usize,
}

impl SeparationParams {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            budget: DEFAULT_BUDGET,
            capacity: DEFAULT_CAPACITY,
        }
    }

    /// `B = 1`, `C_max = 1`: stop at the first violated cut.
    pub fn single(k: usize) -> Self {
        Self {
            k,
            budget: 1,
            capacity: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub buffer: CutBuffer,
    /// Subsets examined, violators or not.
    pub visited: usize,
    /// The deadline passed; an empty buffer then proves nothing.
    pub timed_out: bool,
}

/// Budgeted multi-cut separation at an integer point.
///
/// The search stops once at least `budget` subsets have been examined and the
/// buffer holds a cut, or when every candidate has been examined. An empty
/// buffer from a completed search means `xhat` is k-defensive.
pub fn separate_multi(g: &Graph, xhat: &DefenderSet, k: usize, budget: usize, capacity: usize) -> CutBuffer {
    let square = g.square();
    let params = SeparationParams { k, budget, capacity };
    separate_multi_in(g, &square, xhat.as_set(), params, Deadline::none()).buffer
}

pub fn separate_multi_in(
    g: &Graph,
    square: &Graph,
    xhat: &VertexSet,
    params: SeparationParams,
    deadline: Deadline,
) -> Separation {
    assert!(params.budget >= 1 && params.capacity >= 1 && params.k >= 1);
    let mut buffer = CutBuffer::new(params.capacity);
    let mut visited = 0usize;
    let outcome = scan_violators(g, square, xhat, params.k, deadline, |s, cover, violation| {
        if visited >= params.budget && !buffer.is_empty() {
            return Control::Stop;
        }
        visited += 1;
        if violation > 0 {
            let cut = FeasibilityCut {
                violator: s.clone(),
                coverage: cover.clone(),
            };
            buffer.offer(cut, violation);
        }
        Control::Continue
    });
    Separation {
        buffer,
        visited,
        timed_out: outcome == ScanOutcome::TimedOut,
    }
}
