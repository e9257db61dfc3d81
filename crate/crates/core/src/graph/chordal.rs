use super::Graph;

/// Maximum cardinality search. Returns vertices in visit order; ties go to
/// the lowest index.
fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    // buckets[w] holds unvisited vertices of weight w; lazily cleaned.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    buckets[0] = (0..n).rev().collect();
    let mut top = 0;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && weight[v] == top => break v,
                Some(_) => continue,
                None => top -= 1,
            }
        };
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    order
}

/// A perfect elimination ordering of `g`, or `None` if `g` is not chordal.
///
/// The reverse of an MCS visit order is a PEO exactly when the graph is
/// chordal, so the candidate order is checked before it is returned.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    let n = g.n();
    let mut position = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        position[v] = i;
    }
    for &v in &peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| position[u] > position[v])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| position[u]) else {
            continue;
        };
        if later.iter().any(|&u| u != parent && !g.has_edge(parent, u)) {
            return None;
        }
    }
    Some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_chordal(&Graph::complete(5)));
        assert!(is_chordal(&Graph::path(6)));
        assert!(is_chordal(&Graph::empty(4)));
        assert!(is_chordal(&Graph::star(4)));
        assert!(!is_chordal(&Graph::cycle(4)));
        assert!(!is_chordal(&Graph::cycle(6)));
        assert!(is_chordal(&Graph::cycle(3)));
    }

    #[test]
    fn chorded_cycle() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_chordal(&g));
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert!(!is_chordal(&g));
    }

    #[test]
    fn returned_order_is_a_peo() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let peo = perfect_elimination_ordering(&g).unwrap();
        assert_eq!(peo.len(), 6);
        let mut seen = [false; 6];
        for &v in &peo {
            let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !seen[u] && u != v).collect();
            for (i, &a) in later.iter().enumerate() {
                for &b in &later[i + 1..] {
                    assert!(g.has_edge(a, b));
                }
            }
            seen[v] = true;
        }
    }
}
