//! Depth-first enumeration of vertex sets that are connected in the graph
//! square, shared by the feasibility check and the cut separator.
//!
//! Each set is grown from its minimum vertex with an extension set of
//! exclusive neighbors (the ESU scheme), so every connected set of size at
//! most `max_size` is visited exactly once, supersets immediately after the
//! set they extend.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    /// Skip the supersets reached through this set.
    Prune,
    Stop,
}

struct Level {
    set: VertexSet,
    cover: VertexSet,
    blocked: VertexSet,
    ext: VertexSet,
}

impl Level {
    fn new(n: usize) -> Self {
        Self {
            set: VertexSet::new(n),
            cover: VertexSet::new(n),
            blocked: VertexSet::new(n),
            ext: VertexSet::new(n),
        }
    }
}

pub struct SubsetWalker<'a> {
    graph: &'a Graph,
    square: &'a Graph,
    max_size: usize,
}

impl<'a> SubsetWalker<'a> {
    /// `square` must be `graph.square()`.
    pub fn new(graph: &'a Graph, square: &'a Graph, max_size: usize) -> Self {
        debug_assert_eq!(graph.n(), square.n());
        Self {
            graph,
            square,
            max_size,
        }
    }

    /// Calls `visit(S, N[S])` for every nonempty `S` with `|S| <= max_size`
    /// and `square[S]` connected, except supersets of pruned sets. Returns
    /// `false` if the visitor stopped early.
    pub fn walk<F>(&self, mut visit: F) -> bool
    where
        F: FnMut(&VertexSet, &VertexSet) -> Control,
    {
        let n = self.graph.n();
        if self.max_size == 0 || n == 0 {
            return true;
        }
        let mut levels: Vec<Level> = (0..self.max_size).map(|_| Level::new(n)).collect();
        for root in 0..n {
            let top = &mut levels[0];
            top.set.clear();
            top.set.insert(root);
            top.cover.clone_from(self.graph.closed_neighborhood(root));
            top.blocked.clone_from(self.square.closed_neighborhood(root));
            top.ext.clear();
            for &u in self.square.neighbors(root) {
                if u > root {
                    top.ext.insert(u);
                }
            }
            let control = visit(&top.set, &top.cover);
            if control == Control::Stop {
                return false;
            }
            if control == Control::Continue && self.max_size > 1 && !self.extend(root, &mut levels, &mut visit) {
                return false;
            }
        }
        true
    }

    /// `levels[0]` holds the current set; deeper entries are scratch space for
    /// its descendants.
    fn extend<F>(&self, root: usize, levels: &mut [Level], visit: &mut F) -> bool
    where
        F: FnMut(&VertexSet, &VertexSet) -> Control,
    {
        let (cur, rest) = levels.split_first_mut().expect("at least one level");
        while let Some(w) = cur.ext.first() {
            cur.ext.remove(w);
            let control = {
                let child = &mut rest[0];
                child.set.clone_from(&cur.set);
                child.set.insert(w);
                child.cover.clone_from(&cur.cover);
                child.cover.union_with(self.graph.closed_neighborhood(w));

                child.ext.clone_from(&cur.ext);
                for &u in self.square.neighbors(w) {
                    if u > root && !cur.blocked.contains(u) {
                        child.ext.insert(u);
                    }
                }
                child.blocked.clone_from(&cur.blocked);
                child.blocked.union_with(self.square.closed_neighborhood(w));

                visit(&child.set, &child.cover)
            };
            if control == Control::Stop {
                return false;
            }
            if control == Control::Continue && rest.len() > 1 && !self.extend(root, rest, visit) {
                return false;
            }
        }
        true
    }
}
