//! Eigenvalue-based stability of the eight pure-strategy equilibria, and the
//! sufficient conditions for (1,1,0) or (1,1,1) to be the unique stable point.

use nalgebra::Matrix3;
use serde::Serialize;

use super::{jacobian, GameParams, GameState, Vertex};

/// Eigenvalues within this distance of zero make a point nonhyperbolic.
pub const EIG_TOL: f64 = 1e-9;

/// Slack for the strict inequalities and equalities of the condition check.
pub const CONDITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquilibriumClass {
    Stable,
    Unstable,
    Saddle,
    Nonhyperbolic,
}

impl EquilibriumClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EquilibriumClass::Stable => "stable",
            EquilibriumClass::Unstable => "unstable",
            EquilibriumClass::Saddle => "saddle",
            EquilibriumClass::Nonhyperbolic => "nonhyperbolic",
        }
    }
}

pub fn classify(lambda: &[f64; 3]) -> EquilibriumClass {
    if lambda.iter().any(|l| l.abs() <= EIG_TOL) {
        EquilibriumClass::Nonhyperbolic
    } else if lambda.iter().all(|&l| l < -EIG_TOL) {
        EquilibriumClass::Stable
    } else if lambda.iter().all(|&l| l > EIG_TOL) {
        EquilibriumClass::Unstable
    } else {
        EquilibriumClass::Saddle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexEigen {
    pub vertex: Vertex,
    pub lambda: [f64; 3],
    pub class: EquilibriumClass,
}

/// Closed-form eigenvalues at E1..E8.
pub fn vertex_eigenvalues(p: &GameParams) -> Vec<VertexEigen> {
    let wait_i = p.c_i - p.c_i * p.sigma1;
    let wait_p = p.c_p - p.c_p * p.sigma2;
    let (ai, bp) = (p.subsidy_i(), p.subsidy_p());
    // Shipper's gain from accepting when the carrier accepts, without subsidy.
    let gain_i = -p.h * p.w_i + p.search_cost_i - p.q2 * p.r_i_low - p.q1 * p.r_i_high
        + p.r_i * p.u_i
        + p.c_p * p.sigma2;
    let gain_p = -p.f * p.w_p + p.search_cost_p - p.p2 * p.r_p_low - p.p1 * p.r_p_high
        + p.r_p * p.u_p
        + p.c_i * p.sigma1;
    let rep_i = p.eta * p.f_g_i - ai;
    let rep_p = p.eta * p.f_g_p - bp;

    let table: [[f64; 3]; 8] = [
        [-wait_i, -wait_p, -p.d_g],
        [-wait_i + ai, -wait_p + bp, p.d_g],
        [gain_i, wait_p, -p.d_g + rep_p],
        [gain_i + ai, wait_p - bp, p.d_g - rep_p],
        [wait_i, gain_p, -p.d_g + rep_i],
        [wait_i - ai, gain_p + bp, p.d_g - rep_i],
        [-gain_i, -gain_p, -p.d_g + rep_i + rep_p],
        [-gain_i - ai, -gain_p - bp, p.d_g - rep_i - rep_p],
    ];
    Vertex::ALL
        .iter()
        .zip(table)
        .map(|(&vertex, lambda)| VertexEigen {
            vertex,
            lambda,
            class: classify(&lambda),
        })
        .collect()
}

/// Real parts of the Jacobian eigenvalues at `s`, sorted ascending.
pub fn numeric_eigenvalues(s: GameState, p: &GameParams) -> [f64; 3] {
    let j = jacobian(s, p);
    let m = Matrix3::from_fn(|r, c| j[r][c]);
    let eig = m.complex_eigenvalues();
    let mut re = [eig[0].re, eig[1].re, eig[2].re];
    re.sort_by(f64::total_cmp);
    re
}

pub fn classify_equilibria(p: &GameParams) -> Vec<(Vertex, EquilibriumClass)> {
    vertex_eigenvalues(p)
        .into_iter()
        .map(|e| (e.vertex, e.class))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    /// (1,1,0): both accept, no subsidy.
    E7,
    /// (1,1,1): both accept, platform subsidizes.
    E8,
}

impl Target {
    pub fn vertex(self) -> Vertex {
        match self {
            Target::E7 => Vertex::from_bits(1, 1, 0),
            Target::E8 => Vertex::from_bits(1, 1, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub label: &'static str,
    pub lhs: f64,
    pub relation: &'static str,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub target: Target,
    pub holds: bool,
    pub conditions: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn failures(&self) -> Vec<&'static str> {
        self.conditions
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.label)
            .collect()
    }
}

fn greater(label: &'static str, lhs: f64, rhs: f64) -> ConditionCheck {
    ConditionCheck {
        label,
        lhs,
        relation: ">",
        rhs,
        holds: lhs > rhs + CONDITION_TOL,
    }
}

fn less(label: &'static str, lhs: f64, rhs: f64) -> ConditionCheck {
    ConditionCheck {
        label,
        lhs,
        relation: "<",
        rhs,
        holds: lhs < rhs - CONDITION_TOL,
    }
}

/// Sufficient conditions for `target` to be the unique stable vertex.
pub fn check_conditions(p: &GameParams, target: Target) -> ConditionReport {
    let (ai, bp) = (p.subsidy_i(), p.subsidy_p());
    let (sub_i, sub_p) = match target {
        Target::E7 => (0.0, 0.0),
        Target::E8 => (ai, bp),
    };
    let shipper_rhs = p.h * p.w_i + p.q2 * p.r_i_low + p.q1 * p.r_i_high
        - p.r_i * p.u_i
        - p.c_p * p.sigma2
        - sub_i;
    let carrier_rhs = p.f * p.w_p + p.p2 * p.r_p_low + p.p1 * p.r_p_high
        - p.r_p * p.u_p
        - p.c_i * p.sigma1
        - sub_p;
    let platform_rhs = p.eta * p.f_g_i + p.eta * p.f_g_p - ai - bp;
    let platform = match target {
        Target::E7 => greater("platform: subsidy management cost", p.d_g, platform_rhs),
        Target::E8 => less("platform: subsidy management cost", p.d_g, platform_rhs),
    };
    let wait_i = p.c_i - p.c_i * p.sigma1;
    let wait_p = p.c_p - p.c_p * p.sigma2;
    let sharing = ConditionCheck {
        label: "cost sharing: one waiting cost fully shifted",
        lhs: wait_i.abs().min(wait_p.abs()),
        relation: "=",
        rhs: 0.0,
        holds: wait_i.abs() <= CONDITION_TOL || wait_p.abs() <= CONDITION_TOL,
    };
    let conditions = vec![
        greater("shipper: re-search cost", p.search_cost_i, shipper_rhs),
        greater("carrier: re-search cost", p.search_cost_p, carrier_rhs),
        platform,
        sharing,
    ];
    ConditionReport {
        target,
        holds: conditions.iter().all(|c| c.holds),
        conditions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(p: &GameParams, bits: (u8, u8, u8)) -> VertexEigen {
        let v = Vertex::from_bits(bits.0, bits.1, bits.2);
        vertex_eigenvalues(p).into_iter().find(|e| e.vertex == v).unwrap()
    }

    #[test]
    fn closed_forms_match_numeric_eigenvalues() {
        for p in [GameParams::array1(), GameParams::array2()] {
            for e in vertex_eigenvalues(&p) {
                let mut closed = e.lambda;
                closed.sort_by(f64::total_cmp);
                let numeric = numeric_eigenvalues(e.vertex.state(), &p);
                for k in 0..3 {
                    assert!((closed[k] - numeric[k]).abs() < 1e-12, "{}", e.vertex);
                }
                let j = jacobian(e.vertex.state(), &p);
                assert_eq!([j[0][0], j[1][1], j[2][2]], e.lambda, "{}", e.vertex);
            }
        }
    }

    #[test]
    fn array1_eigenvalues() {
        let p = GameParams::array1();
        let e1 = at(&p, (0, 0, 0));
        assert_eq!(e1.lambda[0], 0.0);
        assert!((e1.lambda[1] + 4.0).abs() < 1e-12);
        assert_eq!(e1.lambda[2], -3.0);
        assert_eq!(e1.class, EquilibriumClass::Nonhyperbolic);
        let e7 = at(&p, (1, 1, 0));
        for (got, want) in e7.lambda.iter().zip([-1.0, -5.0, -1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(e7.class, EquilibriumClass::Stable);
    }

    #[test]
    fn unique_stable_vertices() {
        let stable = |p: &GameParams| -> Vec<Vertex> {
            classify_equilibria(p)
                .into_iter()
                .filter(|(_, c)| *c == EquilibriumClass::Stable)
                .map(|(v, _)| v)
                .collect()
        };
        assert_eq!(stable(&GameParams::array1()), vec![Vertex::from_bits(1, 1, 0)]);
        assert_eq!(stable(&GameParams::array2()), vec![Vertex::from_bits(1, 1, 1)]);
    }

    #[test]
    fn conditions_hold_for_reference_arrays() {
        assert!(check_conditions(&GameParams::array1(), Target::E7).holds);
        assert!(check_conditions(&GameParams::array2(), Target::E8).holds);
        assert!(!check_conditions(&GameParams::array1(), Target::E8).holds);
    }

    #[test]
    fn lowered_management_cost_breaks_e7() {
        let p = GameParams::array1().with("d_g", 0.5).unwrap();
        let report = check_conditions(&p, Target::E7);
        assert_eq!(report.failures(), vec!["platform: subsidy management cost"]);
    }

    #[test]
    fn half_sharing_breaks_the_sharing_condition() {
        let p = GameParams::array1()
            .with("sigma1", 0.5)
            .unwrap()
            .with("sigma2", 0.5)
            .unwrap();
        let report = check_conditions(&p, Target::E7);
        assert!(!report.holds);
        assert!(report.failures().contains(&"cost sharing: one waiting cost fully shifted"));
        let stable: Vec<_> = classify_equilibria(&p)
            .into_iter()
            .filter(|(_, c)| *c == EquilibriumClass::Stable)
            .collect();
        assert_ne!(stable.len(), 1, "no unique stable vertex without full cost shifting");
    }

    #[test]
    fn classification_rules() {
        assert_eq!(classify(&[-1.0, -2.0, -3.0]), EquilibriumClass::Stable);
        assert_eq!(classify(&[1.0, 2.0, 3.0]), EquilibriumClass::Unstable);
        assert_eq!(classify(&[1.0, -2.0, 3.0]), EquilibriumClass::Saddle);
        assert_eq!(classify(&[1e-10, -2.0, 3.0]), EquilibriumClass::Nonhyperbolic);
    }
}
