//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use fairmatch_core::{FeasibilityMask, Matrix, Pair};

/// Calls `visit` with every matching of exactly `size` pairs over feasible cells,
/// pairs sorted by shipper.
pub fn for_each_matching(mask: &FeasibilityMask, size: usize, visit: &mut dyn FnMut(&[Pair])) {
    fn rec(
        mask: &FeasibilityMask,
        i: usize,
        size: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Pair>,
        visit: &mut dyn FnMut(&[Pair]),
    ) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        if i == mask.rows() || mask.rows() - i < size - cur.len() {
            return;
        }
        for j in 0..mask.cols() {
            if mask.get(i, j) && !used[j] {
                used[j] = true;
                cur.push((i, j));
                rec(mask, i + 1, size, used, cur, visit);
                cur.pop();
                used[j] = false;
            }
        }
        rec(mask, i + 1, size, used, cur, visit);
    }
    let mut used = vec![false; mask.cols()];
    rec(mask, 0, size, &mut used, &mut Vec::new(), visit);
}

/// Largest matching size, found by trying sizes from the top down.
pub fn max_matching_size(mask: &FeasibilityMask) -> usize {
    for size in (0..=mask.rows().min(mask.cols())).rev() {
        let mut found = false;
        for_each_matching(mask, size, &mut |_| found = true);
        if found {
            return size;
        }
    }
    0
}

pub fn sum(m: &Matrix, pairs: &[Pair]) -> f64 {
    pairs.iter().map(|&(i, j)| m.get(i, j)).sum()
}

/// Every maximum-cardinality matching with its `(f1, f2)`.
pub fn all_outcomes(alpha: &Matrix, beta: &Matrix, mask: &FeasibilityMask) -> Vec<(Vec<Pair>, f64, f64)> {
    let size = max_matching_size(mask);
    let mut out = Vec::new();
    for_each_matching(mask, size, &mut |p| {
        let f2: f64 = p.iter().map(|&(i, j)| beta.get(j, i)).sum();
        out.push((p.to_vec(), sum(alpha, p), f2));
    });
    out
}

/// Best `score` over maximum-cardinality matchings passing `keep`, with the
/// objective values of the first matching attaining it.
pub fn best_by(
    alpha: &Matrix,
    beta: &Matrix,
    mask: &FeasibilityMask,
    keep: impl Fn(f64, f64) -> bool,
    score: impl Fn(f64, f64) -> f64,
) -> Option<(f64, f64, f64)> {
    let size = max_matching_size(mask);
    let mut best: Option<(f64, f64, f64)> = None;
    for_each_matching(mask, size, &mut |p| {
        let f1 = sum(alpha, p);
        let f2: f64 = p.iter().map(|&(i, j)| beta.get(j, i)).sum();
        if keep(f1, f2) {
            let v = score(f1, f2);
            if best.map_or(true, |(b, _, _)| v > b) {
                best = Some((v, f1, f2));
            }
        }
    });
    best
}

/// Linear membership used by the oracles, written directly from the definition.
pub fn oracle_u(f: f64, lo: f64, hi: f64) -> f64 {
    if hi == lo {
        1.0
    } else {
        ((f - lo) / (hi - lo)).clamp(0.0, 1.0)
    }
}

pub mod checks;
