//! Exhaustive optimum for small graphs, independent of the subset search used
//! by the solver: every `S` with `|S| ≤ k` is checked against Hall's
//! condition with bit masks.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::DefenderSet;

pub const DEFAULT_ORACLE_CAP: usize = 16;

/// Size of a minimum k-defensive set, by increasing cardinality.
pub fn brute_force_optimum(g: &Graph, k: usize, n_cap: usize) -> Result<usize> {
    brute_force_minimum(g, k, n_cap).map(|d| d.len())
}

/// A minimum k-defensive set (the lexicographically first mask of least
/// size in Gosper order).
pub fn brute_force_minimum(g: &Graph, k: usize, n_cap: usize) -> Result<DefenderSet> {
    let n = g.n();
    if n > n_cap || n > 30 {
        return Err(Error::TooLarge { n, cap: n_cap.min(30) });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.closed_neighborhood(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    // (|S|, N[S]) for every nonempty S with |S| <= k.
    let mut attacks: Vec<(u32, u32)> = Vec::new();
    for s in 1u32..1 << n {
        let size = s.count_ones();
        if size as usize > k {
            continue;
        }
        let cover = (0..n).filter(|&v| s & 1 << v != 0).fold(0, |m, v| m | closed[v]);
        attacks.push((size, cover));
    }
    let feasible = |d: u32| attacks.iter().all(|&(size, cover)| (cover & d).count_ones() >= size);

    for size in 0..=n {
        let mut found = None;
        for_each_mask(n, size, |d| {
            if feasible(d) {
                found = Some(d);
                true
            } else {
                false
            }
        });
        if let Some(d) = found {
            return Ok(DefenderSet::from_vertices(n, (0..n).filter(|&v| d & 1 << v != 0)));
        }
    }
    unreachable!("the whole vertex set is always feasible")
}

/// Calls `f` on every `n`-bit mask with `size` ones in increasing order until
/// it returns `true`.
fn for_each_mask<F: FnMut(u32) -> bool>(n: usize, size: usize, mut f: F) {
    if size == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << n;
    let mut m: u64 = (1 << size) - 1;
    while m < limit {
        if f(m as u32) {
            return;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_k_defensive;

    #[test]
    fn examples() {
        assert_eq!(brute_force_optimum(&Graph::complete(6), 4, 16).unwrap(), 4);
        assert_eq!(brute_force_optimum(&Graph::empty(7), 1, 16).unwrap(), 7);
        assert_eq!(brute_force_optimum(&Graph::path(4), 2, 16).unwrap(), 2);
        for q in 2..=8 {
            assert_eq!(brute_force_optimum(&Graph::star(q), 2, 16).unwrap(), q);
        }
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(matches!(brute_force_optimum(&Graph::empty(17), 1, 16), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn result_is_defensive() {
        let g = Graph::cycle(7);
        for k in 1..=3 {
            let d = brute_force_minimum(&g, k, 16).unwrap();
            assert!(is_k_defensive(&g, &d, k));
        }
    }

    #[test]
    fn masks_enumerated() {
        let mut seen = Vec::new();
        for_each_mask(4, 2, |m| {
            seen.push(m);
            false
        });
        assert_eq!(seen, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }
}
