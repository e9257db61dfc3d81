//! Feasibility of defender sets: single-attack matching checks and the
//! Hall-violator search over attacks that are connected in the graph square.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::maximum_matching;
use crate::separation::{scan_violators, Deadline, ScanOutcome};
use crate::vertex_set::VertexSet;
use crate::walk::{Control, SubsetWalker};

/// A nonempty set of simultaneously attacked vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attack(VertexSet);

impl Attack {
    pub fn new(vertices: VertexSet) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("an attack needs at least one vertex".into()));
        }
        Ok(Self(vertices))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vs: I) -> Result<Self> {
        Self::new(VertexSet::from_vertices(n, vs))
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The chosen defenders (`x_i = 1` exactly for members).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefenderSet {
    n: usize,
    members: Vec<usize>,
    set: VertexSet,
}

impl From<DefenderSet> for Vec<usize> {
    fn from(d: DefenderSet) -> Self {
        d.members
    }
}

impl DefenderSet {
    pub fn new(members: VertexSet) -> Self {
        Self {
            n: members.universe(),
            members: members.to_vec(),
            set: members,
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vs: I) -> Self {
        Self::new(VertexSet::from_vertices(n, vs))
    }

    /// Checked construction from user-supplied ids.
    pub fn try_from_ids(n: usize, ids: &[usize]) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!(
                "defender {bad} out of range for a graph on {n} vertices"
            )));
        }
        Ok(Self::from_vertices(n, ids.iter().copied()))
    }

    pub fn empty(n: usize) -> Self {
        Self::new(VertexSet::new(n))
    }

    pub fn all(n: usize) -> Self {
        Self::new(VertexSet::full(n))
    }

    pub fn as_set(&self) -> &VertexSet {
        &self.set
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.n
    }
}

/// Whether the defenders can be assigned injectively to the attacked
/// vertices, each defender covering a vertex in its closed neighborhood.
pub fn counters(g: &Graph, d: &DefenderSet, a: &Attack) -> bool {
    let defenders = d.members();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in defenders.iter().enumerate() {
        index[v] = i;
    }
    let adj: Vec<Vec<usize>> = a
        .vertices()
        .iter()
        .map(|j| {
            g.closed_neighborhood(j)
                .iter()
                .filter(|&i| index[i] != usize::MAX)
                .map(|i| index[i])
                .collect()
        })
        .collect();
    maximum_matching(&adj, defenders.len()).saturates_left()
}

/// Some `S` with `|S| <= k`, `S` connected in the square and
/// `|N[S] ∩ d| < |S|`, or `None` when `d` is k-defensive.
pub fn find_hall_violator(g: &Graph, d: &DefenderSet, k: usize) -> Option<VertexSet> {
    let square = g.square();
    find_hall_violator_in(g, &square, d, k)
}

/// As [`find_hall_violator`], with a precomputed `g.square()`.
pub fn find_hall_violator_in(g: &Graph, square: &Graph, d: &DefenderSet, k: usize) -> Option<VertexSet> {
    let mut found = None;
    scan_violators(g, square, d.as_set(), k, Deadline::none(), |s, _cover, violation| {
        if violation > 0 {
            found = Some(s.clone());
            Control::Stop
        } else {
            Control::Continue
        }
    });
    found
}

/// Result of a violator search that may give up early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Defensive,
    Violator(VertexSet),
    /// The visit budget ran out before the search finished.
    Undecided,
}

/// Violator search that stops after `max_visits` subsets.
pub fn find_hall_violator_budgeted(
    g: &Graph,
    square: &Graph,
    d: &VertexSet,
    k: usize,
    max_visits: usize,
) -> (Verdict, usize) {
    let mut found = None;
    let mut visits = 0usize;
    let outcome = scan_violators(g, square, d, k, Deadline::none(), |s, _cover, violation| {
        visits += 1;
        if violation > 0 {
            found = Some(s.clone());
            return Control::Stop;
        }
        if visits >= max_visits {
            Control::Stop
        } else {
            Control::Continue
        }
    });
    let verdict = match (found, outcome) {
        (Some(s), _) => Verdict::Violator(s),
        (None, ScanOutcome::Completed) => Verdict::Defensive,
        (None, _) => Verdict::Undecided,
    };
    (verdict, visits)
}

pub fn is_k_defensive(g: &Graph, d: &DefenderSet, k: usize) -> bool {
    find_hall_violator(g, d, k).is_none()
}

/// All attacks of size `1..=k` that induce a connected subgraph of the
/// square, in canonical order (by size, then lexicographically).
pub fn enumerate_connected_attacks(g: &Graph, k: usize) -> std::vec::IntoIter<Attack> {
    let square = g.square();
    let mut out = Vec::new();
    SubsetWalker::new(g, &square, k).walk(|s, _| {
        out.push(Attack(s.clone()));
        Control::Continue
    });
    out.sort();
    out.into_iter()
}
