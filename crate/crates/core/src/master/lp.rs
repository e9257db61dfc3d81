//! LP relaxation bounds for the covering master problem.
//!
//! The relaxation `min Σ x_i  s.t.  Σ_{i ∈ C_r} x_i ≥ b_r,  l ≤ x ≤ u` is
//! solved through its dual
//!
//! ```text
//! max  Σ_r b'_r y_r − Σ_i (u_i − l_i) w_i
//! s.t. Σ_{r ∋ i} y_r − w_i + s_i = 1    for every vertex i
//!      y, w, s ≥ 0
//! ```
//!
//! with `b'_r = b_r − |C_r ∩ {l_i = 1}|`, by a revised primal simplex with a
//! dense basis inverse. Only `n` rows exist however many cuts are pooled,
//! branching fixes change objective coefficients only, and new cuts are new
//! columns, so any earlier basis stays feasible and can warm-start a node.
//! Every iterate is dual feasible, so the reported bound is valid even when
//! the iteration limit stops the simplex early.

use crate::vertex_set::VertexSet;

const PRICE_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 100;
const DEGENERATE_STREAK_FOR_BLAND: usize = 50;

/// Coverage lists and right-hand sides of the pooled cuts, in pool order.
#[derive(Clone, Debug, Default)]
pub struct CoverRows {
    pub coverage: Vec<Vec<u32>>,
    pub rhs: Vec<u32>,
}

impl CoverRows {
    pub fn push(&mut self, coverage: &VertexSet, rhs: usize) {
        self.coverage.push(coverage.iter().map(|v| v as u32).collect());
        self.rhs.push(rhs as u32);
    }

    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }
}

/// Variables fixed by branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixing {
    pub zero: VertexSet,
    pub one: VertexSet,
}

impl Fixing {
    pub fn none(n: usize) -> Self {
        Self {
            zero: VertexSet::new(n),
            one: VertexSet::new(n),
        }
    }

    #[inline]
    pub fn is_free(&self, v: usize) -> bool {
        !self.zero.contains(v) && !self.one.contains(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// No `x` within the bounds satisfies every cut.
    Infeasible,
    /// Stopped early; the bound is valid but may not be tight.
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Certified lower bound on the relaxation (and the integer) optimum;
    /// `+∞` when infeasible.
    pub bound: f64,
    /// Primal point; meaningful when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub iterations: usize,
}

/// Column ids: `0..n` slacks, `n..2n` surpluses `w`, `2n + r` cut `r`.
#[derive(Clone, Debug)]
pub struct BoundLp {
    n: usize,
    basis: Vec<usize>,
    binv: Vec<f64>,
    beta: Vec<f64>,
    factored: bool,
    pivots_since_factor: usize,
    max_iterations: usize,
}

impl BoundLp {
    pub fn new(n: usize) -> Self {
        let mut lp = Self {
            n,
            basis: (0..n).collect(),
            binv: vec![0.0; n * n],
            beta: vec![1.0; n],
            factored: false,
            pivots_since_factor: 0,
            max_iterations: 20_000,
        };
        lp.reset_to_slack();
        lp
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    fn reset_to_slack(&mut self) {
        let n = self.n;
        self.basis = (0..n).collect();
        self.binv.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..n {
            self.binv[i * n + i] = 1.0;
        }
        self.beta = vec![1.0; n];
        self.factored = true;
        self.pivots_since_factor = 0;
    }

    /// Loads `basis` (e.g. a parent node's) unless it is already current.
    /// Falls back to the slack basis when it is singular or infeasible.
    pub fn load_basis(&mut self, basis: &[usize], rows: &CoverRows) {
        if self.factored && basis == self.basis.as_slice() {
            return;
        }
        self.basis = basis.to_vec();
        if !self.refactor(rows) {
            self.reset_to_slack();
        }
    }

    /// Recomputes the inverse and basic values from scratch.
    ///
    /// Slack and surplus columns are signed unit vectors, so with `R` the rows
    /// they occupy and `C` the rest, only the block of cut columns on `C`
    /// needs a dense inverse; the unit rows follow by substitution.
    fn refactor(&mut self, rows: &CoverRows) -> bool {
        let n = self.n;
        let mut unit_pos = vec![usize::MAX; n];
        let mut cut_pos = Vec::new();
        for (pos, &j) in self.basis.iter().enumerate() {
            if j < 2 * n {
                let row = j % n;
                if unit_pos[row] != usize::MAX {
                    return false;
                }
                unit_pos[row] = pos;
            } else if j - 2 * n >= rows.len() {
                return false;
            } else {
                cut_pos.push(pos);
            }
        }
        let free_rows: Vec<usize> = (0..n).filter(|&r| unit_pos[r] == usize::MAX).collect();
        let m = cut_pos.len();
        if free_rows.len() != m {
            return false;
        }
        let mut local = vec![usize::MAX; n];
        for (i, &r) in free_rows.iter().enumerate() {
            local[r] = i;
        }
        // A_C: rows C, columns the basic cuts.
        let mut block = vec![0.0; m * m];
        for (c, &pos) in cut_pos.iter().enumerate() {
            for &i in &rows.coverage[self.basis[pos] - 2 * n] {
                let l = local[i as usize];
                if l != usize::MAX {
                    block[l * m + c] = 1.0;
                }
            }
        }
        let Some(block_inv) = invert(block, m) else {
            return false;
        };
        self.binv.iter_mut().for_each(|v| *v = 0.0);
        for (c, &pos) in cut_pos.iter().enumerate() {
            for (l, &r) in free_rows.iter().enumerate() {
                self.binv[pos * n + r] = block_inv[c * m + l];
            }
        }
        for row in 0..n {
            let pos = unit_pos[row];
            if pos == usize::MAX {
                continue;
            }
            let sign = if self.basis[pos] < n { 1.0 } else { -1.0 };
            // x_p = sign (y_row − Σ_q a_q[row] x_q)
            let mut acc = vec![0.0; m];
            for &q in &cut_pos {
                let cov = &rows.coverage[self.basis[q] - 2 * n];
                if cov.binary_search(&(row as u32)).is_ok() {
                    for (l, &r) in free_rows.iter().enumerate() {
                        acc[l] += self.binv[q * n + r];
                    }
                }
            }
            self.binv[pos * n + row] = sign;
            for (l, &r) in free_rows.iter().enumerate() {
                self.binv[pos * n + r] = -sign * acc[l];
            }
        }
        self.beta = (0..n).map(|i| self.binv[i * n..(i + 1) * n].iter().sum()).collect();
        self.factored = true;
        self.pivots_since_factor = 0;
        self.beta.iter().all(|&b| b >= -1e-7)
    }

    #[inline]
    fn for_column<F: FnMut(usize, f64)>(&self, j: usize, rows: &CoverRows, mut f: F) {
        let n = self.n;
        if j < n {
            f(j, 1.0);
        } else if j < 2 * n {
            f(j - n, -1.0);
        } else {
            for &i in &rows.coverage[j - 2 * n] {
                f(i as usize, 1.0);
            }
        }
    }

    /// Solves the relaxation under `fixing` starting from the current basis.
    pub fn solve(&mut self, rows: &CoverRows, fixing: &Fixing) -> LpSolution {
        let n = self.n;
        // A cut whose free-or-one coverage is too small cannot be satisfied.
        for (cov, &rhs) in rows.coverage.iter().zip(&rows.rhs) {
            let available = cov.iter().filter(|&&i| !fixing.zero.contains(i as usize)).count();
            if available < rhs as usize {
                return LpSolution {
                    status: LpStatus::Infeasible,
                    bound: f64::INFINITY,
                    x: Vec::new(),
                    iterations: 0,
                };
            }
        }

        let upper: Vec<f64> = (0..n).map(|i| if fixing.is_free(i) { 1.0 } else { 0.0 }).collect();
        let cut_cost: Vec<f64> = rows
            .coverage
            .iter()
            .zip(&rows.rhs)
            .map(|(cov, &rhs)| {
                let ones = cov.iter().filter(|&&i| fixing.one.contains(i as usize)).count();
                rhs as f64 - ones as f64
            })
            .collect();
        let cost = |j: usize| -> f64 {
            if j < n {
                0.0
            } else if j < 2 * n {
                -upper[j - n]
            } else {
                cut_cost[j - 2 * n]
            }
        };

        if !self.factored {
            self.reset_to_slack();
        }
        let mut in_basis = vec![false; 2 * n + rows.len()];
        for &j in &self.basis {
            in_basis[j] = true;
        }

        let mut pi = vec![0.0; n];
        let mut alpha = vec![0.0; n];
        let mut iterations = 0;
        let mut degenerate_streak = 0;
        let mut status = LpStatus::IterationLimit;

        while iterations < self.max_iterations {
            if self.pivots_since_factor >= REFACTOR_EVERY && !self.refactor(rows) {
                self.reset_to_slack();
                in_basis.iter_mut().for_each(|b| *b = false);
                for &j in &self.basis {
                    in_basis[j] = true;
                }
            }

            // π = c_B B⁻¹
            pi.iter_mut().for_each(|p| *p = 0.0);
            for (row, &j) in self.basis.iter().enumerate() {
                let c = cost(j);
                if c != 0.0 {
                    let r = &self.binv[row * n..(row + 1) * n];
                    for (p, &b) in pi.iter_mut().zip(r) {
                        *p += c * b;
                    }
                }
            }

            let bland = degenerate_streak >= DEGENERATE_STREAK_FOR_BLAND;
            let mut entering = None;
            let mut best = PRICE_TOL;
            let total = 2 * n + rows.len();
            for j in 0..total {
                if in_basis[j] {
                    continue;
                }
                let d = if j < n {
                    -pi[j]
                } else if j < 2 * n {
                    -upper[j - n] + pi[j - n]
                } else {
                    let r = j - 2 * n;
                    if cut_cost[r] <= 0.0 {
                        continue;
                    }
                    cut_cost[r] - rows.coverage[r].iter().map(|&i| pi[i as usize]).sum::<f64>()
                };
                if d > best {
                    best = d;
                    entering = Some(j);
                    if bland {
                        break;
                    }
                }
            }
            let Some(q) = entering else {
                status = LpStatus::Optimal;
                break;
            };

            // α = B⁻¹ a_q
            alpha.iter_mut().for_each(|a| *a = 0.0);
            {
                let binv = &self.binv;
                self.for_column(q, rows, |k, v| {
                    for (i, a) in alpha.iter_mut().enumerate() {
                        *a += v * binv[i * n + k];
                    }
                });
            }

            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..n {
                if alpha[i] > PIVOT_TOL {
                    let ratio = self.beta[i].max(0.0) / alpha[i];
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            if ratio < best_ratio - 1e-12 {
                                true
                            } else if ratio <= best_ratio + 1e-12 {
                                if bland {
                                    self.basis[i] < self.basis[l]
                                } else {
                                    alpha[i] > alpha[l]
                                }
                            } else {
                                false
                            }
                        }
                    };
                    if better {
                        leave = Some(i);
                        best_ratio = ratio;
                    }
                }
            }
            let Some(p) = leave else {
                // Unbounded dual ray: the covering system is infeasible.
                return LpSolution {
                    status: LpStatus::Infeasible,
                    bound: f64::INFINITY,
                    x: Vec::new(),
                    iterations,
                };
            };

            let theta = best_ratio;
            for i in 0..n {
                self.beta[i] -= theta * alpha[i];
            }
            self.beta[p] = theta;
            let ap = alpha[p];
            {
                let (before, rest) = self.binv.split_at_mut(p * n);
                let (prow, after) = rest.split_at_mut(n);
                prow.iter_mut().for_each(|v| *v /= ap);
                for (i, row) in before.chunks_mut(n).enumerate() {
                    let f = alpha[i];
                    if f != 0.0 {
                        row.iter_mut().zip(prow.iter()).for_each(|(r, &pv)| *r -= f * pv);
                    }
                }
                for (off, row) in after.chunks_mut(n).enumerate() {
                    let f = alpha[p + 1 + off];
                    if f != 0.0 {
                        row.iter_mut().zip(prow.iter()).for_each(|(r, &pv)| *r -= f * pv);
                    }
                }
            }
            in_basis[self.basis[p]] = false;
            in_basis[q] = true;
            self.basis[p] = q;
            self.pivots_since_factor += 1;
            iterations += 1;
            degenerate_streak = if theta < 1e-12 { degenerate_streak + 1 } else { 0 };
        }

        // y from the basic cut columns; the Lagrangian value at any y ≥ 0 is a
        // valid bound regardless of rounding in the simplex.
        let mut y = vec![0.0; rows.len()];
        for (row, &j) in self.basis.iter().enumerate() {
            if j >= 2 * n {
                y[j - 2 * n] = self.beta[row].max(0.0);
            }
        }
        let bound = lagrangian_bound(n, rows, fixing, &y);

        let x = (0..n)
            .map(|i| {
                if fixing.one.contains(i) {
                    1.0
                } else if fixing.zero.contains(i) {
                    0.0
                } else {
                    pi[i].clamp(0.0, 1.0)
                }
            })
            .collect();
        LpSolution {
            status,
            bound,
            x,
            iterations,
        }
    }
}

/// `min_{l ≤ x ≤ u} Σ x_i + Σ_r y_r (b_r − Σ_{i ∈ C_r} x_i)` for `y ≥ 0`.
pub fn lagrangian_bound(n: usize, rows: &CoverRows, fixing: &Fixing, y: &[f64]) -> f64 {
    let mut z = vec![0.0; n];
    let mut value = 0.0;
    for ((cov, &rhs), &yr) in rows.coverage.iter().zip(&rows.rhs).zip(y) {
        if yr <= 0.0 {
            continue;
        }
        value += rhs as f64 * yr;
        for &i in cov {
            z[i as usize] += yr;
        }
    }
    for (i, zi) in z.into_iter().enumerate() {
        if fixing.one.contains(i) {
            value += 1.0 - zi;
        } else if !fixing.zero.contains(i) {
            value += (1.0 - zi).min(0.0);
        }
    }
    value
}

/// Greedy 0/1 dual bound: `|fixed ones|` plus the residual right-hand sides
/// of a family of cuts whose free coverage is pairwise disjoint.
pub fn disjoint_cut_bound(n: usize, rows: &CoverRows, fixing: &Fixing) -> usize {
    let residual: Vec<(usize, Vec<u32>)> = rows
        .coverage
        .iter()
        .zip(&rows.rhs)
        .map(|(cov, &rhs)| {
            let ones = cov.iter().filter(|&&i| fixing.one.contains(i as usize)).count();
            let free: Vec<u32> = cov.iter().copied().filter(|&i| fixing.is_free(i as usize)).collect();
            ((rhs as usize).saturating_sub(ones), free)
        })
        .collect();
    let mut order: Vec<usize> = (0..residual.len()).filter(|&r| residual[r].0 > 0).collect();
    order.sort_by(|&a, &b| {
        let ka = residual[a].0 as f64 / residual[a].1.len().max(1) as f64;
        let kb = residual[b].0 as f64 / residual[b].1.len().max(1) as f64;
        kb.total_cmp(&ka).then(a.cmp(&b))
    });
    let mut used = VertexSet::new(n);
    let mut total = fixing.one.len();
    for r in order {
        let (rhs, free) = &residual[r];
        if free.iter().all(|&i| !used.contains(i as usize)) {
            for &i in free {
                used.insert(i as usize);
            }
            total += rhs;
        }
    }
    total
}

/// Gauss–Jordan inverse with partial pivoting; `None` if singular.
fn invert(mut a: Vec<f64>, n: usize) -> Option<Vec<f64>> {
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))?;
        if a[pivot * n + col].abs() < 1e-10 {
            return None;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let d = a[col * n + col];
        for k in 0..n {
            a[col * n + k] /= d;
            inv[col * n + k] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = a[r * n + col];
                if f != 0.0 {
                    for k in 0..n {
                        a[r * n + k] -= f * a[col * n + k];
                        inv[r * n + k] -= f * inv[col * n + k];
                    }
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: usize, cuts: &[(&[usize], usize)]) -> CoverRows {
        let mut r = CoverRows::default();
        for (cov, rhs) in cuts {
            r.push(&VertexSet::from_vertices(n, cov.iter().copied()), *rhs);
        }
        r
    }

    fn solve(n: usize, r: &CoverRows, f: &Fixing) -> LpSolution {
        BoundLp::new(n).solve(r, f)
    }

    #[test]
    fn no_cuts_gives_zero() {
        let s = solve(5, &CoverRows::default(), &Fixing::none(5));
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.bound.abs() < 1e-9);
        assert!(s.x.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn uniform_cut() {
        let r = rows(6, &[(&[0, 1, 2, 3, 4], 3)]);
        let s = solve(6, &r, &Fixing::none(6));
        assert!((s.bound - 3.0).abs() < 1e-9);
        assert!((s.x.iter().sum::<f64>() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn disjoint_cuts_add() {
        let r = rows(8, &[(&[0, 1, 2], 2), (&[3, 4, 5, 6], 3)]);
        let s = solve(8, &r, &Fixing::none(8));
        assert!((s.bound - 5.0).abs() < 1e-9);
        assert_eq!(disjoint_cut_bound(8, &r, &Fixing::none(8)), 5);
    }

    #[test]
    fn fractional_triangle() {
        // x0+x1 ≥ 1, x1+x2 ≥ 1, x0+x2 ≥ 1: optimum 1.5 at x = ½.
        let r = rows(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]);
        let s = solve(3, &r, &Fixing::none(3));
        assert!((s.bound - 1.5).abs() < 1e-9);
        for x in &s.x {
            assert!((x - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn fixings() {
        let r = rows(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], 1)]);
        let mut f = Fixing::none(3);
        f.zero.insert(0);
        let s = solve(3, &r, &f);
        assert!((s.bound - 2.0).abs() < 1e-9);
        let mut f = Fixing::none(3);
        f.one.insert(0);
        let s = solve(3, &r, &f);
        assert!((s.bound - 2.0).abs() < 1e-9);
        let mut f = Fixing::none(3);
        f.zero.insert(0);
        f.zero.insert(1);
        assert_eq!(solve(3, &r, &f).status, LpStatus::Infeasible);
    }

    #[test]
    fn warm_start_after_new_cut() {
        let n = 4;
        let mut r = rows(n, &[(&[0, 1], 1)]);
        let mut lp = BoundLp::new(n);
        let s = lp.solve(&r, &Fixing::none(n));
        assert!((s.bound - 1.0).abs() < 1e-9);
        r.push(&VertexSet::from_vertices(n, [2, 3]), 2);
        let basis = lp.basis().to_vec();
        lp.load_basis(&basis, &r);
        let s = lp.solve(&r, &Fixing::none(n));
        assert!((s.bound - 3.0).abs() < 1e-9);
    }

    #[test]
    fn iteration_limit_still_bounds() {
        let r = rows(6, &[(&[0, 1], 1), (&[2, 3], 1), (&[4, 5], 1), (&[1, 2], 1)]);
        let mut lp = BoundLp::new(6).with_max_iterations(1);
        let s = lp.solve(&r, &Fixing::none(6));
        assert_eq!(s.status, LpStatus::IterationLimit);
        assert!(s.bound <= 3.0 + 1e-9);
    }

    #[test]
    fn structured_refactor_matches_dense_inverse() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(3..9);
            let mut r = CoverRows::default();
            for _ in 0..rng.gen_range(2..8) {
                let cov: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if !cov.is_empty() {
                    let rhs = rng.gen_range(1..=cov.len());
                    r.push(&VertexSet::from_vertices(n, cov), rhs);
                }
            }
            let mut f = Fixing::none(n);
            f.one.insert(0);
            let mut lp = BoundLp::new(n);
            lp.solve(&r, &f);
            let incremental = lp.binv.clone();
            assert!(lp.refactor(&r));
            let mut dense = vec![0.0; n * n];
            for (col, &j) in lp.basis.iter().enumerate() {
                lp.for_column(j, &r, |row, v| dense[row * n + col] = v);
            }
            let expected = invert(dense, n).unwrap();
            for (a, b) in lp.binv.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-9);
            }
            for (a, b) in incremental.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-7);
            }
        }
    }

    /// Brute force over a fine grid is too coarse for an LP oracle; compare
    /// against vertex enumeration of small systems instead.
    #[test]
    fn matches_vertex_enumeration_on_small_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_xoshiro::Xoshiro256PlusPlus::seed_from_u64(9);
        for _ in 0..200 {
            let n = rng.gen_range(2..5);
            let m = rng.gen_range(1..5);
            let mut r = CoverRows::default();
            for _ in 0..m {
                let cov: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
                if cov.is_empty() {
                    continue;
                }
                let rhs = rng.gen_range(1..=cov.len());
                r.push(&VertexSet::from_vertices(n, cov), rhs);
            }
            let s = solve(n, &r, &Fixing::none(n));
            let best = enumerate_vertices(n, &r);
            assert!((s.bound - best).abs() < 1e-7, "{} vs {}", s.bound, best);
        }
    }

    /// Minimum of Σx over basic solutions of {Ax ≥ b, 0 ≤ x ≤ 1}, by trying
    /// every choice of n tight constraints.
    fn enumerate_vertices(n: usize, r: &CoverRows) -> f64 {
        let mut cons: Vec<(Vec<f64>, f64)> = Vec::new();
        for (cov, &rhs) in r.coverage.iter().zip(&r.rhs) {
            let mut a = vec![0.0; n];
            for &i in cov {
                a[i as usize] = 1.0;
            }
            cons.push((a, rhs as f64));
        }
        for i in 0..n {
            let mut a = vec![0.0; n];
            a[i] = 1.0;
            cons.push((a.clone(), 0.0));
            a[i] = -1.0;
            cons.push((a, -1.0));
        }
        let total = cons.len();
        let mut best = f64::INFINITY;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let mut mat = vec![0.0; n * n];
            let mut rhs = vec![0.0; n];
            for (row, &c) in idx.iter().enumerate() {
                mat[row * n..(row + 1) * n].copy_from_slice(&cons[c].0);
                rhs[row] = cons[c].1;
            }
            if let Some(inv) = invert(mat, n) {
                let x: Vec<f64> = (0..n).map(|i| (0..n).map(|k| inv[i * n + k] * rhs[k]).sum()).collect();
                let ok = cons
                    .iter()
                    .all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() >= b - 1e-9);
                if ok {
                    best = best.min(x.iter().sum());
                }
            }
            // next combination
            let mut i = n;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] < total - n + i {
                    idx[i] += 1;
                    for j in i + 1..n {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}
