//! Best-bound branch-and-bound over the master problem with depth-first
//! plunging, shared by the branch-and-cut and iterative modes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use crate::error::Result;
use crate::graph::Graph;
use crate::separation::{separate_multi_in, Deadline, SeparationParams};
use crate::verify::DefenderSet;
use crate::vertex_set::VertexSet;

use super::lp::{disjoint_cut_bound, BoundLp, Fixing, LpStatus};
use super::{apply_enhancements, gap_percent, MasterModel, Mode, SolveConfig, SolveReport, SolveStatus};

const INT_TOL: f64 = 1e-6;
const BOUND_TOL: f64 = 1e-6;
/// Without a warm start, the LP point is rounded up and checked at the root
/// and at every this many nodes.
const ROUNDING_EVERY: usize = 50;

struct Node {
    bound: usize,
    depth: usize,
    seq: u64,
    fixing: Fixing,
    basis: Vec<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    /// Max-heap order: lowest bound, then deepest, then oldest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .cmp(&self.bound)
            .then(self.depth.cmp(&other.depth))
            .then(other.seq.cmp(&self.seq))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Exhausted,
    TimedOut,
}

struct Outcome {
    end: End,
    /// Best solution with value below the starting cutoff.
    best: Option<VertexSet>,
    /// Lower bound on every solution not yet ruled out, capped at the final
    /// cutoff.
    lower_bound: usize,
}

enum Step {
    Done,
    Dive(Node),
    TimedOut(Node),
}

struct Search<'a> {
    g: &'a Graph,
    square: &'a Graph,
    /// `None` solves the master over the pooled cuts only.
    separation: Option<SeparationParams>,
    rounding: bool,
    deadline: Deadline,
    lp: BoundLp,
    frequency: Vec<usize>,
    counted_rows: usize,
    nodes: usize,
    cuts_added: usize,
    seq: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, square: &'a Graph, separation: Option<SeparationParams>, rounding: bool, deadline: Deadline) -> Self {
        Self {
            g,
            square,
            separation,
            rounding,
            deadline,
            lp: BoundLp::new(g.n()),
            frequency: vec![0; g.n()],
            counted_rows: 0,
            nodes: 0,
            cuts_added: 0,
            seq: 0,
        }
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    fn add_cuts(&mut self, model: &mut MasterModel, cuts: Vec<crate::separation::FeasibilityCut>) -> usize {
        let mut added = 0;
        for cut in cuts {
            if model.add_cut(cut) {
                added += 1;
            }
        }
        self.cuts_added += added;
        added
    }

    /// Explores until every node is solved or pruned against `cutoff`, which
    /// drops as better solutions turn up.
    fn run(&mut self, model: &mut MasterModel, mut cutoff: usize) -> Outcome {
        let n = self.g.n();
        let mut heap = BinaryHeap::new();
        let mut best = None;
        let root = Node {
            bound: model.lower_bound(),
            depth: 0,
            seq: self.next_seq(),
            fixing: Fixing::none(n),
            basis: self.lp.basis().to_vec(),
        };
        let mut current = Some(root);
        while let Some(node) = current.take().or_else(|| heap.pop()) {
            if node.bound >= cutoff {
                continue;
            }
            if self.deadline.expired() {
                heap.push(node);
                return self.timed_out(heap, best, cutoff);
            }
            self.nodes += 1;
            match self.process(model, node, &mut cutoff, &mut best, &mut heap) {
                Step::Done => {}
                Step::Dive(child) => current = Some(child),
                Step::TimedOut(node) => {
                    heap.push(node);
                    return self.timed_out(heap, best, cutoff);
                }
            }
        }
        Outcome {
            end: End::Exhausted,
            best,
            lower_bound: cutoff,
        }
    }

    fn timed_out(&self, heap: BinaryHeap<Node>, best: Option<VertexSet>, cutoff: usize) -> Outcome {
        let open = heap.iter().map(|n| n.bound).min().unwrap_or(cutoff);
        Outcome {
            end: End::TimedOut,
            best,
            lower_bound: open.min(cutoff),
        }
    }

    fn refresh_frequency(&mut self, model: &MasterModel) {
        let rows = model.rows();
        for cov in &rows.coverage[self.counted_rows..] {
            for &i in cov {
                self.frequency[i as usize] += 1;
            }
        }
        self.counted_rows = rows.len();
    }

    fn process(
        &mut self,
        model: &mut MasterModel,
        mut node: Node,
        cutoff: &mut usize,
        best: &mut Option<VertexSet>,
        heap: &mut BinaryHeap<Node>,
    ) -> Step {
        let n = self.g.n();
        let mut rounded = false;
        loop {
            if self.deadline.expired() {
                return Step::TimedOut(node);
            }
            self.lp.load_basis(&node.basis, model.rows());
            let sol = self.lp.solve(model.rows(), &node.fixing);
            if sol.status == LpStatus::Infeasible {
                return Step::Done;
            }
            let mut bound = (sol.bound - BOUND_TOL).ceil().max(0.0) as usize;
            if sol.status == LpStatus::IterationLimit {
                bound = bound.max(disjoint_cut_bound(n, model.rows(), &node.fixing));
            }
            bound = bound.max(node.bound);
            if bound >= *cutoff {
                return Step::Done;
            }
            node.bound = bound;
            node.basis.clear();
            node.basis.extend_from_slice(self.lp.basis());

            let free: Vec<usize> = (0..n).filter(|&i| node.fixing.is_free(i)).collect();
            let integral = free.iter().all(|&i| sol.x[i] <= INT_TOL || sol.x[i] >= 1.0 - INT_TOL)
                && (sol.status == LpStatus::Optimal || free.is_empty());
            if integral {
                let xhat = VertexSet::from_vertices(n, (0..n).filter(|&i| sol.x[i] > 0.5));
                let Some(params) = self.separation else {
                    *cutoff = xhat.len();
                    *best = Some(xhat);
                    return Step::Done;
                };
                let sep = separate_multi_in(self.g, self.square, &xhat, params, self.deadline);
                if sep.buffer.is_empty() {
                    if sep.timed_out {
                        return Step::TimedOut(node);
                    }
                    *cutoff = xhat.len();
                    *best = Some(xhat);
                    return Step::Done;
                }
                self.add_cuts(model, sep.buffer.into_cuts());
                continue;
            }

            if self.rounding && !rounded && (node.depth == 0 || self.nodes.is_multiple_of(ROUNDING_EVERY)) {
                rounded = true;
                if let Some(params) = self.separation {
                    let xr = VertexSet::from_vertices(n, (0..n).filter(|&i| sol.x[i] > INT_TOL));
                    if xr.len() < *cutoff {
                        let sep = separate_multi_in(self.g, self.square, &xr, params, self.deadline);
                        if sep.buffer.is_empty() && !sep.timed_out {
                            *cutoff = xr.len();
                            *best = Some(xr);
                            if bound >= *cutoff {
                                return Step::Done;
                            }
                        } else if self.add_cuts(model, sep.buffer.into_cuts()) > 0 {
                            continue;
                        }
                    }
                }
            }

            self.refresh_frequency(model);
            let var = self.branching_variable(&sol.x, &free);
            let mut zero = node.fixing.clone();
            zero.zero.insert(var);
            heap.push(Node {
                bound,
                depth: node.depth + 1,
                seq: self.next_seq(),
                fixing: zero,
                basis: node.basis.clone(),
            });
            let mut one = node.fixing;
            one.one.insert(var);
            return Step::Dive(Node {
                bound,
                depth: node.depth + 1,
                seq: self.next_seq(),
                fixing: one,
                basis: node.basis,
            });
        }
    }

    /// Most fractional free variable; ties go to the vertex in more pooled
    /// cuts, then to the lowest index. Falls back to the first free vertex
    /// when none is fractional.
    fn branching_variable(&self, x: &[f64], free: &[usize]) -> usize {
        let mut pick: Option<(usize, f64)> = None;
        for &i in free {
            let f = x[i].min(1.0 - x[i]);
            if f <= INT_TOL {
                continue;
            }
            let better = match pick {
                None => true,
                Some((j, fj)) => f > fj + 1e-9 || (f >= fj - 1e-9 && self.frequency[i] > self.frequency[j]),
            };
            if better {
                pick = Some((i, f));
            }
        }
        pick.map(|(i, _)| i).unwrap_or(free[0])
    }
}

struct Setup {
    start: Instant,
    deadline: Deadline,
    square: Graph,
    model: MasterModel,
    params: SeparationParams,
    ub0: Option<usize>,
}

fn setup(g: &Graph, cfg: &SolveConfig) -> Result<Setup> {
    cfg.validate(g)?;
    let start = Instant::now();
    let deadline = Deadline::at(start + Duration::from_secs_f64(cfg.time_limit.min(1e9)));
    let model = apply_enhancements(MasterModel::new(g.n()), g, cfg)?;
    let (budget, capacity) = cfg.separation_limits();
    Ok(Setup {
        start,
        deadline,
        square: g.square(),
        ub0: model.warm_start().map(DefenderSet::len),
        model,
        params: SeparationParams {
            k: cfg.k,
            budget,
            capacity,
        },
    })
}

fn report(s: &Setup, finished: bool, nodes: usize, cuts_added: usize) -> SolveReport {
    let model = &s.model;
    let ub = model.incumbent_value();
    let (status, lower_bound) = match (finished, ub) {
        (true, Some(v)) => (SolveStatus::Optimal, v),
        (false, Some(v)) => (SolveStatus::Feasible, model.lower_bound().min(v)),
        (_, None) => (SolveStatus::NoIncumbent, model.lower_bound()),
    };
    SolveReport {
        status,
        best_value: ub,
        lower_bound,
        gap_percent: gap_percent(ub, lower_bound),
        wall_time: s.start.elapsed().as_secs_f64(),
        cuts_added,
        nodes_explored: nodes,
        lb0: model.lb0(),
        ub0: s.ub0,
        solution: model.incumbent().map(|d| d.members().to_vec()),
    }
}

/// Branch-and-cut: integer nodes are separated and violated cuts are added to
/// the global pool until the node's point is k-defensive.
pub fn solve_bbc(g: &Graph, cfg: &SolveConfig) -> Result<SolveReport> {
    let mut s = setup(g, cfg)?;
    let rounding = !cfg.use_warm_start;
    let mut search = Search::new(g, &s.square, Some(s.params), rounding, s.deadline);
    let cutoff = s.model.incumbent_value().unwrap_or(g.n() + 1);
    let out = search.run(&mut s.model, cutoff);
    if let Some(best) = out.best {
        s.model.offer_incumbent(DefenderSet::new(best));
    }
    s.model.raise_lower_bound(out.lower_bound);
    let finished = out.end == End::Exhausted;
    let (nodes, cuts) = (search.nodes, search.cuts_added);
    drop(search);
    Ok(report(&s, finished, nodes, cuts))
}

/// Classical decomposition: solve the master over the pooled cuts, separate
/// its optimum, add the cuts and repeat until the optimum is k-defensive.
pub fn solve_iterative(g: &Graph, cfg: &SolveConfig) -> Result<SolveReport> {
    let mut s = setup(g, cfg)?;
    let mut search = Search::new(g, &s.square, None, false, s.deadline);
    let mut finished = false;
    loop {
        let cutoff = s.model.incumbent_value().unwrap_or(g.n() + 1);
        if s.model.lower_bound() >= cutoff {
            finished = true;
            break;
        }
        let out = search.run(&mut s.model, cutoff);
        if out.end == End::TimedOut {
            s.model.raise_lower_bound(out.lower_bound);
            break;
        }
        let Some(xstar) = out.best else {
            // Nothing beats the incumbent.
            s.model.raise_lower_bound(cutoff);
            finished = s.model.incumbent().is_some();
            break;
        };
        s.model.raise_lower_bound(xstar.len());
        let sep = separate_multi_in(g, &s.square, &xstar, s.params, s.deadline);
        if sep.buffer.is_empty() {
            if !sep.timed_out {
                s.model.offer_incumbent(DefenderSet::new(xstar));
                finished = true;
            }
            break;
        }
        search.add_cuts(&mut s.model, sep.buffer.into_cuts());
        if sep.timed_out || s.deadline.expired() {
            break;
        }
    }
    let (nodes, cuts) = (search.nodes, search.cuts_added);
    drop(search);
    Ok(report(&s, finished, nodes, cuts))
}

/// Dispatches on `cfg.mode`.
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveReport> {
    match cfg.mode {
        Mode::BbcSingle | Mode::Bbmc => solve_bbc(g, cfg),
        Mode::Iterative => solve_iterative(g, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family, GenSpec};
    use crate::master::brute_force_optimum;
    use crate::verify::is_k_defensive;

    fn variants(k: usize) -> Vec<SolveConfig> {
        let mut out = Vec::new();
        for mode in [Mode::BbcSingle, Mode::Bbmc, Mode::Iterative] {
            for (ic, ws) in [(false, false), (true, false), (false, true), (true, true)] {
                out.push(SolveConfig::new(k).with_mode(mode).with_enhancements(ic, ws));
            }
        }
        out
    }

    fn check(g: &Graph, k: usize, expected: usize) {
        for cfg in variants(k) {
            let r = solve(g, &cfg).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal, "{cfg:?}");
            assert_eq!(r.best_value, Some(expected), "{cfg:?}");
            assert_eq!(r.lower_bound, expected);
            assert_eq!(r.gap_percent, 0.0);
            let d = DefenderSet::from_vertices(g.n(), r.solution.unwrap());
            assert!(is_k_defensive(g, &d, k));
        }
    }

    #[test]
    fn closed_form_examples() {
        check(&Graph::path(4), 2, 2);
        check(&Graph::complete(5), 3, 3);
        check(&Graph::star(5), 2, 5);
        check(&Graph::empty(6), 1, 6);
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        for seed in 0..25 {
            let n = 4 + seed as usize % 8;
            let p = [0.2, 0.5, 0.8][seed as usize % 3];
            let g = generate(&GenSpec::new(Family::ErdosRenyi, n, p, seed)).unwrap().graph;
            for k in 1..=3.min(n) {
                let opt = brute_force_optimum(&g, k, 16).unwrap();
                check(&g, k, opt);
            }
        }
    }

    #[test]
    fn deterministic_counters() {
        let g = generate(&GenSpec::new(Family::ErdosRenyi, 25, 0.2, 3)).unwrap().graph;
        let cfg = SolveConfig::new(2);
        let a = solve(&g, &cfg).unwrap();
        let b = solve(&g, &cfg).unwrap();
        assert_eq!((a.nodes_explored, a.cuts_added, a.best_value), (b.nodes_explored, b.cuts_added, b.best_value));
    }

    #[test]
    fn zero_time_limit() {
        let g = generate(&GenSpec::new(Family::ErdosRenyi, 30, 0.2, 1)).unwrap().graph;
        let r = solve(&g, &SolveConfig::new(2).with_time_limit(0.0)).unwrap();
        assert_eq!(r.status, SolveStatus::NoIncumbent);
        assert_eq!(r.gap_percent, 100.0);
        let r = solve(&g, &SolveConfig::new(2).with_time_limit(0.0).with_enhancements(false, true)).unwrap();
        assert_eq!(r.status, SolveStatus::Feasible);
        assert!(r.gap_percent <= 100.0);
    }
}
