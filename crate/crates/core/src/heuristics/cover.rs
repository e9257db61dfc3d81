//! Clique covers: DSATUR colouring of the complement for general graphs, and
//! the greedy PEO construction, which is minimum on chordal graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{perfect_elimination_ordering, Graph};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMethod {
    Dsatur,
    Peo,
    /// PEO when the graph is chordal, DSATUR otherwise.
    Auto,
}

impl CoverMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverMethod::Dsatur => "dsatur",
            CoverMethod::Peo => "peo",
            CoverMethod::Auto => "auto",
        }
    }
}

impl fmt::Display for CoverMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoverMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dsatur" => Ok(CoverMethod::Dsatur),
            "peo" => Ok(CoverMethod::Peo),
            "auto" => Ok(CoverMethod::Auto),
            other => Err(Error::InvalidArgument(format!("unknown cover method '{other}'"))),
        }
    }
}

/// Pairwise disjoint cliques covering every vertex, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCover {
    cliques: Vec<VertexSet>,
    method: CoverMethod,
}

impl CliqueCover {
    /// Sorts by descending size; equal sizes keep their construction order.
    pub fn new(mut cliques: Vec<VertexSet>, method: CoverMethod) -> Self {
        cliques.sort_by_key(|c| std::cmp::Reverse(c.len()));
        Self { cliques, method }
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn method(&self) -> CoverMethod {
        self.method
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Every vertex covered and every listed set a clique of `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::new(g.n());
        for c in &self.cliques {
            if c.universe() != g.n() || !g.is_clique(c) {
                return false;
            }
            seen.union_with(c);
        }
        seen.len() == g.n()
    }
}

/// DSATUR on the complement. The next vertex has the most distinct colours
/// among its complement neighbours, then the highest complement degree, then
/// the lowest index; it takes the smallest colour not used by them.
pub fn clique_cover_dsatur(g: &Graph) -> CliqueCover {
    let n = g.n();
    let comp = g.complement();
    let mut color: Vec<Option<usize>> = vec![None; n];
    // seen[v] = colours present among v's complement neighbours.
    let mut seen: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
    let mut classes: Vec<VertexSet> = Vec::new();

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v].is_none())
            .max_by(|&a, &b| {
                seen[a]
                    .len()
                    .cmp(&seen[b].len())
                    .then(comp.degree(a).cmp(&comp.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("an uncoloured vertex remains");
        let c = (0..=classes.len()).find(|&c| !seen[v].contains(c)).expect("a free colour");
        if c == classes.len() {
            classes.push(VertexSet::new(n));
        }
        classes[c].insert(v);
        color[v] = Some(c);
        for &u in comp.neighbors(v) {
            seen[u].insert(c);
        }
    }
    CliqueCover::new(classes, CoverMethod::Dsatur)
}

/// Greedy cover along a perfect elimination ordering: each still uncovered
/// vertex opens a clique with its uncovered later neighbours.
pub fn clique_cover_peo(g: &Graph) -> Result<CliqueCover> {
    let order = perfect_elimination_ordering(g).ok_or(Error::NotChordal)?;
    let n = g.n();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut covered = VertexSet::new(n);
    let mut cliques = Vec::new();
    for &v in &order {
        if covered.contains(v) {
            continue;
        }
        let mut clique = VertexSet::new(n);
        clique.insert(v);
        for &u in g.neighbors(v) {
            if position[u] > position[v] && !covered.contains(u) {
                clique.insert(u);
            }
        }
        covered.union_with(&clique);
        cliques.push(clique);
    }
    Ok(CliqueCover::new(cliques, CoverMethod::Peo))
}

/// Resolves `Auto` and builds the cover.
pub fn clique_cover(g: &Graph, method: CoverMethod) -> Result<CliqueCover> {
    match method {
        CoverMethod::Dsatur => Ok(clique_cover_dsatur(g)),
        CoverMethod::Peo => clique_cover_peo(g),
        CoverMethod::Auto => clique_cover_peo(g).or_else(|_| Ok(clique_cover_dsatur(g))),
    }
}
