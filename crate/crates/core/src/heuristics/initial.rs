//! Initial cuts from independent attacks seeded by a maximal independent set.

use std::collections::HashSet;

use crate::graph::Graph;
use crate::master::lp::{disjoint_cut_bound, BoundLp, CoverRows, Fixing};
use crate::separation::{cut_from_violator, FeasibilityCut};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug)]
pub struct InitialCutSet {
    pub cuts: Vec<FeasibilityCut>,
    /// Lower bound implied by `cuts` alone (their LP relaxation value).
    pub lb0: f64,
}

/// Repeatedly takes the unmarked vertex of minimum degree (lowest index on
/// ties) and marks its closed neighbourhood.
pub fn greedy_mis(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut marked = VertexSet::new(n);
    let mut mis = VertexSet::new(n);
    for v in order {
        if !marked.contains(v) {
            mis.insert(v);
            marked.union_with(g.closed_neighborhood(v));
        }
    }
    mis
}

/// Grows an independent set from `seed`, always adding the vertex outside
/// `N[A]` with the smallest closed neighbourhood (lowest index on ties).
/// Returns the sequence of added vertices, at most `k` long.
fn grow_attack(g: &Graph, seed: usize, k: usize) -> Vec<usize> {
    let mut seq = vec![seed];
    let mut blocked = g.closed_neighborhood(seed).clone();
    while seq.len() < k {
        let next = (0..g.n())
            .filter(|&u| !blocked.contains(u))
            .min_by_key(|&u| (g.degree(u), u));
        let Some(u) = next else { break };
        seq.push(u);
        blocked.union_with(g.closed_neighborhood(u));
    }
    seq
}

/// For each size `t` in `1..=k` and each seed of [`greedy_mis`], the greedily
/// grown independent attack of size `t` yields the cut `Σ_{N[A]} x ≥ t`.
/// Seeds that cannot reach size `t` are skipped; repeated attacks are emitted
/// once.
pub fn initial_cuts(g: &Graph, k: usize) -> InitialCutSet {
    assert!(k >= 1, "k must be positive");
    let mis = greedy_mis(g);
    let grown: Vec<Vec<usize>> = mis.iter().map(|s| grow_attack(g, s, k)).collect();
    let mut seen = HashSet::new();
    let mut cuts = Vec::new();
    for t in 1..=k {
        for seq in &grown {
            if seq.len() < t {
                continue;
            }
            let attack = VertexSet::from_vertices(g.n(), seq[..t].iter().copied());
            if seen.insert(attack.clone()) {
                cuts.push(cut_from_violator(g, attack).expect("attack is nonempty"));
            }
        }
    }
    let lb0 = cut_set_bound(g.n(), &cuts);
    InitialCutSet { cuts, lb0 }
}

/// LP relaxation value of `min Σ x` over `cuts` and `0 ≤ x ≤ 1`.
pub fn cut_set_bound(n: usize, cuts: &[FeasibilityCut]) -> f64 {
    let mut rows = CoverRows::default();
    for c in cuts {
        rows.push(c.coverage(), c.rhs());
    }
    let none = Fixing::none(n);
    let lp = BoundLp::new(n).solve(&rows, &none);
    lp.bound.max(disjoint_cut_bound(n, &rows, &none) as f64).max(0.0)
}
