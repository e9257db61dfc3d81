//! Warm start from a clique cover with matching-based reduction.

use crate::graph::Graph;
use crate::matching::maximum_matching;
use crate::verify::{find_hall_violator_budgeted, DefenderSet, Verdict};
use crate::vertex_set::VertexSet;

use super::cover::CliqueCover;

/// Subsets the exact repair may examine, summed over its rounds.
pub const REPAIR_VISIT_BUDGET: usize = 2_000_000;

/// `Σ_C min(k, |C|)`: the size of the defender set that takes `min(k, |C|)`
/// vertices from every clique.
pub fn baseline_cover_bound(g: &Graph, k: usize, cover: &CliqueCover) -> usize {
    debug_assert!(cover.is_valid_for(g));
    cover.cliques().iter().map(|c| c.len().min(k)).sum()
}

/// Highest degree first, lowest index on ties.
fn by_degree(g: &Graph, vs: &mut [usize]) {
    vs.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
}

/// The matching-reduced cover heuristic, followed by a repair step.
///
/// For each clique, largest first, the current defenders are matched into the
/// clique (`d` may serve `v` when `v ∈ N[d]`) and the `min(k, |U|)`
/// highest-degree unsaturated vertices `U` join the defenders.
///
/// That pass alone can leave attacks spread over several cliques uncountered,
/// e.g. on a star with cliques `{c, l1}, {l2}, {l3}, {l4}` and `k = 2` it
/// returns `{c, l1}`, which cannot answer an attack on `{l2, l3}`. So Hall
/// violators are then searched for and each one is fixed by adding the
/// highest-degree undefended vertex of `N[S]`. If the search budget runs out,
/// defenders are added until every `N[v]` holds `min(k, |N[v]|)` of them,
/// which is sufficient on its own.
pub fn warm_start(g: &Graph, k: usize, cover: &CliqueCover) -> DefenderSet {
    let n = g.n();
    let mut members: Vec<usize> = Vec::new();
    let mut set = VertexSet::new(n);

    for clique in cover.cliques() {
        let right: Vec<usize> = clique.to_vec();
        let adj: Vec<Vec<usize>> = members
            .iter()
            .map(|&d| {
                let reach = g.closed_neighborhood(d);
                (0..right.len()).filter(|&j| reach.contains(right[j])).collect()
            })
            .collect();
        let m = maximum_matching(&adj, right.len());
        let mut unsaturated: Vec<usize> = (0..right.len())
            .filter(|&j| m.right[j].is_none())
            .map(|j| right[j])
            .collect();
        by_degree(g, &mut unsaturated);
        for &v in unsaturated.iter().take(k) {
            if set.insert(v) {
                members.push(v);
            }
        }
    }

    repair(g, k, &mut set);
    DefenderSet::new(set)
}

fn repair(g: &Graph, k: usize, set: &mut VertexSet) {
    let square = g.square();
    let mut remaining = REPAIR_VISIT_BUDGET;
    loop {
        let (verdict, visits) = find_hall_violator_budgeted(g, &square, set, k, remaining.max(1));
        remaining = remaining.saturating_sub(visits);
        match verdict {
            Verdict::Defensive => return,
            Verdict::Violator(s) => {
                let mut open = g.closed_neighborhood_of(&s).difference(set).to_vec();
                by_degree(g, &mut open);
                set.insert(open[0]);
            }
            Verdict::Undecided => break,
        }
        if remaining == 0 {
            break;
        }
    }
    enforce_local_condition(g, k, set);
}

/// Adds defenders until `|N[v] ∩ D| ≥ min(k, |N[v]|)` for every `v`.
///
/// Then any `S` with `|S| ≤ k` passes Hall's test: either some `v ∈ S` has
/// `|N[v]| ≥ k`, so `N[S]` already holds `k` defenders, or `N[S] ⊆ D`.
fn enforce_local_condition(g: &Graph, k: usize, set: &mut VertexSet) {
    for v in 0..g.n() {
        let nv = g.closed_neighborhood(v);
        let need = k.min(nv.len());
        let have = nv.intersection_len(set);
        if have < need {
            let mut open = nv.difference(set).to_vec();
            by_degree(g, &mut open);
            for &u in open.iter().take(need - have) {
                set.insert(u);
            }
        }
    }
}
