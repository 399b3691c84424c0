//! Exact 0-1 bipartite assignment with linear side constraints.
//!
//! Maximizes `sum w_ij x_ij` over matchings restricted to admissible pairs,
//! subject to `sum coef_ij x_ij >= rhs` for each side constraint. The default
//! backend is a depth-first branch and bound over shippers; bounds come from
//! the Hungarian algorithm on the residual problem.

use crate::error::SolveError;
use crate::model::{FeasibilityMask, Matrix, Pair};

/// Slack applied to side constraints and objective comparisons.
pub const SOLVER_TOL: f64 = 1e-9;

/// `sum coef_ij x_ij >= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct SideConstraint {
    pub coef: Matrix,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coverage {
    /// Every solution matches as many pairs as the admissible graph allows.
    #[default]
    MaxCardinality,
    /// Each shipper and carrier used at most once; partial matchings allowed.
    AtMostOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    BranchAndBound,
    /// Plain depth-first enumeration of every matching.
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub backend: Backend,
    pub coverage: Coverage,
}

/// Optimal pair list and its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub pairs: Vec<Pair>,
    pub value: f64,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Size of a maximum matching over admissible pairs.
pub fn max_cardinality(feasible: &FeasibilityMask) -> usize {
    let rows: Vec<usize> = (0..feasible.rows()).collect();
    let cols = vec![false; feasible.cols()];
    kuhn(feasible, &rows, &cols)
}

/// Maximum matching between `rows` and the columns not marked `used`.
fn kuhn(feasible: &FeasibilityMask, rows: &[usize], used: &[bool]) -> usize {
    fn augment(
        feasible: &FeasibilityMask,
        used: &[bool],
        r: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for c in 0..feasible.cols() {
            if used[c] || seen[c] || !feasible.get(r, c) {
                continue;
            }
            seen[c] = true;
            let free = match owner[c] {
                None => true,
                Some(o) => augment(feasible, used, o, seen, owner),
            };
            if free {
                owner[c] = Some(r);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; feasible.cols()];
    let mut count = 0;
    for &r in rows {
        let mut seen = vec![false; feasible.cols()];
        if augment(feasible, used, r, &mut seen, &mut owner) {
            count += 1;
        }
    }
    count
}

/// Minimum-cost assignment of every row to a distinct column (`rows <= cols`).
/// Returns the column chosen for each row.
pub fn hungarian_min(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let m = cost[0].len();
    assert!(n <= m, "hungarian_min needs rows <= cols");
    // 1-based potentials; p[j] is the row assigned to column j.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; m + 1];
        let mut done = vec![false; m + 1];
        loop {
            done[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=m {
                if done[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if done[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=m {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Best attainable `sum w x` over rows `rows` and unused columns.
/// With `cover_all`, every row must be matched; otherwise rows may stay single.
/// Returns `-inf` when no admissible completion exists.
fn residual_max(
    w: &Matrix,
    feasible: &FeasibilityMask,
    rows: &[usize],
    used: &[bool],
    cover_all: bool,
) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let cols: Vec<usize> = (0..w.cols()).filter(|&c| !used[c]).collect();
    let width = cols.len() + if cover_all { 0 } else { rows.len() };
    if width < rows.len() {
        return f64::NEG_INFINITY;
    }
    let mut scale = 1.0;
    for &r in rows {
        for &c in &cols {
            if feasible.get(r, c) {
                scale += 2.0 * w.get(r, c).abs();
            }
        }
    }
    let forbidden = scale;
    let cost: Vec<Vec<f64>> = rows
        .iter()
        .map(|&r| {
            let mut row: Vec<f64> = cols
                .iter()
                .map(|&c| if feasible.get(r, c) { -w.get(r, c) } else { forbidden })
                .collect();
            if !cover_all {
                row.extend(std::iter::repeat(0.0).take(rows.len()));
            }
            row
        })
        .collect();
    let choice = hungarian_min(&cost);
    let mut total = 0.0;
    for (k, &r) in rows.iter().enumerate() {
        let slot = choice[k];
        if slot < cols.len() {
            let c = cols[slot];
            if !feasible.get(r, c) {
                return f64::NEG_INFINITY;
            }
            total += w.get(r, c);
        }
    }
    total
}

struct Search<'a> {
    w: &'a Matrix,
    constraints: &'a [SideConstraint],
    feasible: &'a FeasibilityMask,
    required: Option<usize>,
    bounding: bool,
    used: Vec<bool>,
    pairs: Vec<Pair>,
    value: f64,
    sums: Vec<f64>,
    best: Option<(f64, Vec<Pair>)>,
    nodes: u64,
}

impl Search<'_> {
    fn pruned(&self, s: usize) -> bool {
        let m = self.w.rows();
        let remaining = m - s;
        let need = self.required.map_or(0, |k| k.saturating_sub(self.pairs.len()));
        if need > remaining {
            return true;
        }
        if !self.bounding {
            return false;
        }
        let rows: Vec<usize> = (s..m).collect();
        if need > 0 && kuhn(self.feasible, &rows, &self.used) < need {
            return true;
        }
        let cover_all = self.required.is_some() && need == remaining;
        if let Some((best, _)) = &self.best {
            let ub = self.value + residual_max(self.w, self.feasible, &rows, &self.used, cover_all);
            if ub <= best + SOLVER_TOL {
                return true;
            }
        }
        for (k, con) in self.constraints.iter().enumerate() {
            let reach =
                self.sums[k] + residual_max(&con.coef, self.feasible, &rows, &self.used, cover_all);
            if reach < con.rhs - SOLVER_TOL {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self) {
        if let Some(k) = self.required {
            if self.pairs.len() != k {
                return;
            }
        }
        let ok = self
            .constraints
            .iter()
            .zip(&self.sums)
            .all(|(con, &sum)| sum >= con.rhs - SOLVER_TOL);
        if !ok {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => self.value > best + SOLVER_TOL,
        };
        if better {
            self.best = Some((self.value, self.pairs.clone()));
        }
    }

    fn dfs(&mut self, s: usize) {
        self.nodes += 1;
        if s == self.w.rows() {
            self.leaf();
            return;
        }
        if self.pruned(s) {
            return;
        }
        for c in 0..self.w.cols() {
            if self.used[c] || !self.feasible.get(s, c) {
                continue;
            }
            self.used[c] = true;
            self.pairs.push((s, c));
            self.value += self.w.get(s, c);
            for (k, con) in self.constraints.iter().enumerate() {
                self.sums[k] += con.coef.get(s, c);
            }
            self.dfs(s + 1);
            for (k, con) in self.constraints.iter().enumerate() {
                self.sums[k] -= con.coef.get(s, c);
            }
            self.value -= self.w.get(s, c);
            self.pairs.pop();
            self.used[c] = false;
        }
        let remaining = self.w.rows() - s;
        let need = self.required.map_or(0, |k| k.saturating_sub(self.pairs.len()));
        if need < remaining {
            self.dfs(s + 1);
        }
    }
}

/// Exact maximizer of `sum w x` under the side constraints.
///
/// Among optimal matchings (values within [`SOLVER_TOL`]) the first in
/// depth-first order wins: shippers ascending, carriers ascending, "unmatched"
/// last. For matchings of equal size this is the lexicographically smallest
/// sorted pair list.
pub fn solve_linear(
    w: &Matrix,
    constraints: &[SideConstraint],
    feasible: &FeasibilityMask,
    opts: SearchOptions,
) -> Result<Solution, SolveError> {
    assert_eq!((w.rows(), w.cols()), (feasible.rows(), feasible.cols()));
    for con in constraints {
        assert_eq!((con.coef.rows(), con.coef.cols()), (w.rows(), w.cols()));
    }
    let required = match opts.coverage {
        Coverage::MaxCardinality => Some(max_cardinality(feasible)),
        Coverage::AtMostOne => None,
    };
    let mut search = Search {
        w,
        constraints,
        feasible,
        required,
        bounding: opts.backend == Backend::BranchAndBound,
        used: vec![false; w.cols()],
        pairs: Vec::with_capacity(w.rows()),
        value: 0.0,
        sums: vec![0.0; constraints.len()],
        best: None,
        nodes: 0,
    };
    search.dfs(0);
    let nodes = search.nodes;
    match search.best {
        Some((_, pairs)) => {
            // Recompute in pair order so the value does not depend on search history.
            let value = pairs.iter().map(|&(i, j)| w.get(i, j)).sum();
            Ok(Solution {
                pairs,
                value,
                nodes,
            })
        }
        None => Err(SolveError::Infeasible),
    }
}

/// Sum of `m_ij` over the pairs, accumulated in pair order.
pub fn pair_sum(m: &Matrix, pairs: &[Pair]) -> f64 {
    pairs.iter().map(|&(i, j)| m.get(i, j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: Vec<Vec<f64>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hungarian_square() {
        let cost = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        let a = hungarian_min(&cost);
        let total: f64 = a.iter().enumerate().map(|(r, &c)| cost[r][c]).sum();
        assert_eq!(total, 5.0);
    }

    #[test]
    fn hungarian_rectangular() {
        let cost = vec![vec![5.0, 1.0, 9.0, 0.5], vec![1.0, 2.0, 9.0, 7.0]];
        assert_eq!(hungarian_min(&cost), vec![3, 0]);
    }

    #[test]
    fn single_pair() {
        let w = mat(vec![vec![1.0]]);
        let sol = solve_linear(&w, &[], &FeasibilityMask::all(1, 1), SearchOptions::default())
            .unwrap();
        assert_eq!(sol.pairs, vec![(0, 0)]);
        assert_eq!(sol.value, 1.0);
    }

    #[test]
    fn coverage_modes_differ_on_negative_weights() {
        let w = mat(vec![vec![-1.0, -2.0], vec![-3.0, -1.0]]);
        let all = FeasibilityMask::all(2, 2);
        let full = solve_linear(&w, &[], &all, SearchOptions::default()).unwrap();
        assert_eq!(full.pairs, vec![(0, 0), (1, 1)]);
        let partial = SearchOptions {
            coverage: Coverage::AtMostOne,
            ..Default::default()
        };
        let none = solve_linear(&w, &[], &all, partial).unwrap();
        assert!(none.pairs.is_empty());
    }

    #[test]
    fn respects_mask_and_constraints() {
        let w = mat(vec![vec![5.0, 1.0], vec![1.0, 5.0]]);
        let mut mask = FeasibilityMask::all(2, 2);
        mask.set(0, 0, false);
        let sol = solve_linear(&w, &[], &mask, SearchOptions::default()).unwrap();
        assert_eq!(sol.pairs, vec![(0, 1), (1, 0)]);

        let con = SideConstraint {
            coef: mat(vec![vec![0.0, 1.0], vec![1.0, 0.0]]),
            rhs: 2.0,
        };
        let sol = solve_linear(&w, &[con.clone()], &FeasibilityMask::all(2, 2), SearchOptions::default())
            .unwrap();
        assert_eq!(sol.pairs, vec![(0, 1), (1, 0)]);
        let impossible = SideConstraint { rhs: 2.5, ..con };
        assert_eq!(
            solve_linear(&w, &[impossible], &FeasibilityMask::all(2, 2), SearchOptions::default()),
            Err(SolveError::Infeasible)
        );
    }

    #[test]
    fn ties_resolve_to_smallest_pair_list() {
        let w = mat(vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]]);
        for backend in [Backend::BranchAndBound, Backend::Enumeration] {
            let opts = SearchOptions {
                backend,
                ..Default::default()
            };
            let sol = solve_linear(&w, &[], &FeasibilityMask::all(2, 3), opts).unwrap();
            assert_eq!(sol.pairs, vec![(0, 0), (1, 1)]);
        }
    }

    #[test]
    fn unmatched_rows_when_graph_is_thin() {
        let w = mat(vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]]);
        let mut mask = FeasibilityMask::all(3, 2);
        mask.set(1, 0, false);
        mask.set(1, 1, false);
        assert_eq!(max_cardinality(&mask), 2);
        let sol = solve_linear(&w, &[], &mask, SearchOptions::default()).unwrap();
        assert_eq!(sol.pairs, vec![(0, 0), (2, 1)]);
    }
}
