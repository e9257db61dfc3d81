//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `left[i]` is the right vertex matched to left vertex `i`.
    pub left: Vec<Option<usize>>,
    /// `right[j]` is the left vertex matched to right vertex `j`.
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn saturates_left(&self) -> bool {
        self.size == self.left.len()
    }
}

/// Maximum matching of the bipartite graph whose left vertex `i` is adjacent
/// to the right vertices `adj[i]` (all `< right_count`).
pub fn maximum_matching(adj: &[Vec<usize>], right_count: usize) -> Matching {
    let left_count = adj.len();
    let mut pair_left = vec![NIL; left_count];
    let mut pair_right = vec![NIL; right_count];
    let mut dist = vec![0usize; left_count];
    let mut size = 0;

    // Greedy initial matching.
    for (i, ns) in adj.iter().enumerate() {
        if let Some(&j) = ns.iter().find(|&&j| pair_right[j] == NIL) {
            pair_left[i] = j;
            pair_right[j] = i;
            size += 1;
        }
    }

    while bfs(adj, &pair_left, &pair_right, &mut dist) {
        let mut it = vec![0usize; left_count];
        for i in 0..left_count {
            if pair_left[i] == NIL && dfs(i, adj, &mut pair_left, &mut pair_right, &mut dist, &mut it) {
                size += 1;
            }
        }
    }

    let opt = |v: Vec<usize>| v.into_iter().map(|x| (x != NIL).then_some(x)).collect();
    Matching {
        left: opt(pair_left),
        right: opt(pair_right),
        size,
    }
}

fn bfs(adj: &[Vec<usize>], pair_left: &[usize], pair_right: &[usize], dist: &mut [usize]) -> bool {
    let mut queue = VecDeque::new();
    for (i, d) in dist.iter_mut().enumerate() {
        if pair_left[i] == NIL {
            *d = 0;
            queue.push_back(i);
        } else {
            *d = NIL;
        }
    }
    let mut found = false;
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            let k = pair_right[j];
            if k == NIL {
                found = true;
            } else if dist[k] == NIL {
                dist[k] = dist[i] + 1;
                queue.push_back(k);
            }
        }
    }
    found
}

fn dfs(
    i: usize,
    adj: &[Vec<usize>],
    pair_left: &mut [usize],
    pair_right: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[i] < adj[i].len() {
        let j = adj[i][it[i]];
        it[i] += 1;
        let k = pair_right[j];
        if k == NIL || (dist[k] == dist[i] + 1 && dfs(k, adj, pair_left, pair_right, dist, it)) {
            pair_left[i] = j;
            pair_right[j] = i;
            return true;
        }
    }
    dist[i] = NIL;
    false
}
