//! Randomized property checks, shared by the acceptance harness and the
//! proptest suites. Each returns a description of the first violation.

use fairmatch_core::evogame::{jacobian, replicator_rhs, GameParams, GameState, PARAM_NAMES};
use fairmatch_core::matcher::{membership, Backend, Coverage, FuzzyBounds, SearchOptions, Side};
use fairmatch_core::rsdat::{rsdat_matrix, rsdat_weights, AdjacencyScales};
use fairmatch_core::satisfaction::ifs_score;
use fairmatch_core::{FeasibilityMask, IFNumber, MatchingProblem, Matrix};
use rand::Rng;

use super::{best_by, oracle_u};

const EPS: f64 = 1e-9;

pub fn random_problem(rng: &mut impl Rng, max_side: usize) -> MatchingProblem {
    let m = rng.gen_range(1..=max_side);
    let n = rng.gen_range(1..=max_side);
    let cell = |rng: &mut dyn rand::RngCore| (rng.gen_range(0..=100) as f64) / 100.0;
    let alpha = Matrix::from_fn(m, n, |_, _| cell(rng));
    let beta = Matrix::from_fn(n, m, |_, _| cell(rng));
    let mut mask = FeasibilityMask::from_fn(m, n, |_, _| rng.gen_bool(0.8));
    if mask.count() == 0 {
        mask.set(rng.gen_range(0..m), rng.gen_range(0..n), true);
    }
    MatchingProblem::new(alpha, beta, mask).expect("consistent shapes")
}

/// Solver optimum equals brute force for a random weighting, with and without
/// lower bounds, for both backends; LP3 equals brute force and carries zero
/// non-membership.
pub fn solver_matches_oracle(rng: &mut impl Rng) -> Result<(), String> {
    let base = random_problem(rng, 5);
    let (a, b, mask) = (base.alpha(), base.beta(), base.feasible());
    let c1 = rng.gen_range(-1.0..1.0);
    let c2 = rng.gen_range(-1.0..1.0);
    let oracle = best_by(a, b, mask, |_, _| true, |f1, f2| c1 * f1 + c2 * f2).map(|t| t.0);
    let (l1, l2) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
    let bounded = best_by(
        a,
        b,
        mask,
        |f1, f2| f1 >= l1 - EPS && f2 >= l2 - EPS,
        |f1, f2| c1 * f1 + c2 * f2,
    )
    .map(|t| t.0);
    for backend in [Backend::BranchAndBound, Backend::Enumeration] {
        let p = base.clone().with_search(SearchOptions {
            backend,
            coverage: Coverage::MaxCardinality,
        });
        let got = p.solve_assignment(c1, c2, None).map_err(|e| e.to_string())?;
        let value = c1 * got.f1 + c2 * got.f2;
        let want = oracle.ok_or("oracle found no matching")?;
        if (value - want).abs() > 1e-7 {
            return Err(format!("{backend:?}: solver {value} vs oracle {want}"));
        }
        match (p.solve_assignment(c1, c2, Some((l1, l2))), bounded) {
            (Ok(s), Some(want)) => {
                let value = c1 * s.f1 + c2 * s.f2;
                if (value - want).abs() > 1e-7 || s.f1 < l1 - 1e-7 || s.f2 < l2 - 1e-7 {
                    return Err(format!("{backend:?} bounded: {value} vs oracle {want}"));
                }
            }
            (Err(_), None) => {}
            (got, want) => return Err(format!("{backend:?} bounded: {got:?} vs oracle {want:?}")),
        }
    }

    let gamma = rng.gen_range(0.05..=1.0);
    let bounds = base.bounds(gamma).map_err(|e| e.to_string())?;
    let (u1, u2) = (
        |f: f64| oracle_u(f, bounds.f1l, bounds.f1u),
        |f: f64| oracle_u(f, bounds.f2l, bounds.f2u),
    );
    let want = best_by(
        a,
        b,
        mask,
        |f1, f2| f1 >= bounds.f1ul - EPS && f2 >= bounds.f2ul - EPS,
        |f1, f2| u1(f1) + u2(f2),
    );
    match (base.solve_lp3(&bounds), want) {
        (Ok(s), Some((want, _, _))) => {
            if (s.u1 + s.u2 - want).abs() > 1e-7 {
                return Err(format!("LP3 {} vs oracle {want}", s.u1 + s.u2));
            }
            if s.v1 != 0.0 || s.v2 != 0.0 {
                return Err(format!("LP3 optimum has non-membership ({}, {})", s.v1, s.v2));
            }
            if (s.s1 - s.u1).abs() > 0.0 || (s.s2 - s.u2).abs() > 0.0 {
                return Err("LP3 optimum has s != u".into());
            }
        }
        (Err(_), None) => {}
        (got, want) => return Err(format!("LP3 {got:?} vs oracle {want:?}")),
    }
    Ok(())
}

fn random_params(rng: &mut impl Rng) -> GameParams {
    let mut p = if rng.gen_bool(0.5) {
        GameParams::array1()
    } else {
        GameParams::array2()
    };
    for name in PARAM_NAMES {
        let v = p.get(name).unwrap();
        p.set(name, v * rng.gen_range(0.5..1.5)).unwrap();
    }
    p
}

/// Analytic Jacobian against central differences with step 1e-5.
pub fn jacobian_matches_fd(rng: &mut impl Rng) -> Result<(), String> {
    let p = random_params(rng);
    let s = GameState::new(
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.05..0.95),
    )
    .unwrap();
    let h = 1e-5;
    let j = jacobian(s, &p);
    let scale = j.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-12);
    for c in 0..3 {
        let mut plus = s.to_array();
        let mut minus = s.to_array();
        plus[c] += h;
        minus[c] -= h;
        let fp = replicator_rhs(GameState::from_array(plus), &p);
        let fm = replicator_rhs(GameState::from_array(minus), &p);
        for r in 0..3 {
            let fd = (fp[r] - fm[r]) / (2.0 * h);
            let rel = (fd - j[r][c]).abs() / scale;
            if rel > 1e-6 {
                return Err(format!("J[{r}][{c}] = {} vs fd {fd} at {s:?}", j[r][c]));
            }
        }
    }
    Ok(())
}

/// Memberships stay in [0, 1], follow their piecewise-linear definitions and
/// satisfy `s = u - v`.
pub fn membership_is_clamped(rng: &mut impl Rng) -> Result<(), String> {
    let lo = rng.gen_range(-5.0..5.0);
    let hi = lo + rng.gen_range(0.01..5.0);
    let gamma = rng.gen_range(0.0..=1.0);
    let bounds = FuzzyBounds::from_extremes(lo, hi, lo, hi, gamma);
    let ul = hi - gamma * (hi - lo);
    let f = rng.gen_range(lo - 2.0..hi + 2.0);
    let m = membership(f, &bounds, Side::Shipper);
    let want_v = if f >= ul {
        0.0
    } else if f <= lo {
        1.0
    } else {
        (ul - f) / (ul - lo)
    };
    let ok = (0.0..=1.0).contains(&m.u)
        && (0.0..=1.0).contains(&m.v)
        && m.s == m.u - m.v
        && (m.u - oracle_u(f, lo, hi)).abs() < 1e-12
        && (m.v - want_v).abs() < 1e-6;
    if ok {
        Ok(())
    } else {
        Err(format!("f={f} lo={lo} hi={hi} ul={ul}: {m:?}, expected v={want_v}"))
    }
}

/// Complementary comparison matrix and normalized positive weights.
pub fn rsdat_is_complementary(rng: &mut impl Rng) -> Result<(), String> {
    let k = rng.gen_range(2..=9);
    let scales: Vec<f64> = (0..k - 1).map(|_| rng.gen_range(0.01..0.99)).collect();
    let adj = AdjacencyScales::from_scales(scales.clone()).map_err(|e| e.to_string())?;
    let m = rsdat_matrix(&adj);
    for a in 0..k {
        if m.get(a, a) != 0.5 {
            return Err(format!("diagonal {a} is {}", m.get(a, a)));
        }
        for b in 0..k {
            if (m.get(a, b) + m.get(b, a) - 1.0).abs() > 1e-12 {
                return Err(format!("I[{a}][{b}] + I[{b}][{a}] != 1 for {scales:?}"));
            }
        }
    }
    let w = rsdat_weights(&adj);
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > 1e-12 || w.iter().any(|x| !x.is_finite()) {
        return Err(format!("weights {w:?} sum to {total}"));
    }
    Ok(())
}

/// Score at the three reference fuzzy numbers.
pub fn score_spot_values() -> Result<(), String> {
    let e = std::f64::consts::E;
    for (mu, nu, want) in [(0.5, 0.5, 1.0), (1.0, 0.0, e), (0.0, 1.0, 1.0 / e)] {
        let got = ifs_score(IFNumber::new(mu, nu).unwrap());
        if (got - want).abs() > 1e-9 {
            return Err(format!("S({mu}, {nu}) = {got}, expected {want}"));
        }
    }
    Ok(())
}
