use serde::{Deserialize, Serialize};

use crate::error::ValidationError;

/// Payoff, probability and cost parameters of the shipper-carrier-platform game.
///
/// Suffix `_i` is the shipper side, `_p` the carrier side, `_g` the platform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameParams {
    /// Waiting response time cost of the shipper.
    pub c_i: f64,
    /// Share of the shipper's waiting cost borne by a rejecting carrier.
    pub sigma1: f64,
    /// Commission rate charged to the shipper.
    pub h: f64,
    /// Order value on the shipper side.
    pub w_i: f64,
    /// Shipper's cost of searching again after rejecting.
    pub search_cost_i: f64,
    /// Probability of a low return when the shipper searches alone.
    pub q2: f64,
    pub r_i_low: f64,
    /// Probability of a high return when the shipper searches alone.
    pub q1: f64,
    pub r_i_high: f64,
    /// Shipper's return from an accepted platform match.
    pub r_i: f64,
    /// Platform service level towards shippers.
    pub u_i: f64,
    pub c_p: f64,
    /// Share of the carrier's waiting cost borne by a rejecting shipper.
    pub sigma2: f64,
    /// Subsidy intensity towards shippers.
    pub alpha: f64,
    /// Maximum shipper subsidy.
    pub s_i: f64,
    pub f: f64,
    pub w_p: f64,
    pub search_cost_p: f64,
    pub p2: f64,
    pub r_p_low: f64,
    pub p1: f64,
    pub r_p_high: f64,
    pub r_p: f64,
    pub u_p: f64,
    /// Subsidy intensity towards carriers.
    pub beta: f64,
    pub s_p: f64,
    /// Platform's subsidy management cost.
    pub d_g: f64,
    /// Fairness factor scaling the platform's reputation revenue.
    pub eta: f64,
    pub f_g_i: f64,
    pub f_g_p: f64,
}

/// Names accepted by [`GameParams::get`] / [`GameParams::set`], in field order.
pub const PARAM_NAMES: [&str; 30] = [
    "c_i",
    "sigma1",
    "h",
    "w_i",
    "search_cost_i",
    "q2",
    "r_i_low",
    "q1",
    "r_i_high",
    "r_i",
    "u_i",
    "c_p",
    "sigma2",
    "alpha",
    "s_i",
    "f",
    "w_p",
    "search_cost_p",
    "p2",
    "r_p_low",
    "p1",
    "r_p_high",
    "r_p",
    "u_p",
    "beta",
    "s_p",
    "d_g",
    "eta",
    "f_g_i",
    "f_g_p",
];

const UNIT_PARAMS: [&str; 13] = [
    "sigma1", "sigma2", "h", "f", "q1", "q2", "p1", "p2", "u_i", "u_p", "alpha", "beta", "eta",
];

/// Shared parameters of the two reference arrays; `d_g` distinguishes them.
const REFERENCE: GameParams = GameParams {
    c_i: 5.0,
    sigma1: 1.0,
    h: 0.1,
    w_i: 20.0,
    search_cost_i: 10.0,
    q2: 0.6,
    r_i_low: 25.0,
    q1: 0.4,
    r_i_high: 35.0,
    r_i: 30.0,
    u_i: 0.7,
    c_p: 5.0,
    sigma2: 0.2,
    alpha: 0.6,
    s_i: 10.0,
    f: 0.1,
    w_p: 20.0,
    search_cost_p: 10.0,
    p2: 0.6,
    r_p_low: 25.0,
    p1: 0.4,
    r_p_high: 35.0,
    r_p: 30.0,
    u_p: 0.7,
    beta: 0.6,
    s_p: 10.0,
    d_g: 3.0,
    eta: 0.7,
    f_g_i: 10.0,
    f_g_p: 10.0,
};

impl GameParams {
    /// Regime whose unique stable state is (1,1,0).
    pub fn array1() -> Self {
        REFERENCE
    }

    /// Regime whose unique stable state is (1,1,1): array 1 with `d_g = 0.5`.
    pub fn array2() -> Self {
        GameParams {
            d_g: 0.5,
            ..REFERENCE
        }
    }

    /// Built-in scenario by name (`array1`, `array2`).
    pub fn scenario(name: &str) -> Option<Self> {
        match name {
            "array1" => Some(Self::array1()),
            "array2" => Some(Self::array2()),
            _ => None,
        }
    }

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match canonical(name)? {
            "c_i" => &mut self.c_i,
            "sigma1" => &mut self.sigma1,
            "h" => &mut self.h,
            "w_i" => &mut self.w_i,
            "search_cost_i" => &mut self.search_cost_i,
            "q2" => &mut self.q2,
            "r_i_low" => &mut self.r_i_low,
            "q1" => &mut self.q1,
            "r_i_high" => &mut self.r_i_high,
            "r_i" => &mut self.r_i,
            "u_i" => &mut self.u_i,
            "c_p" => &mut self.c_p,
            "sigma2" => &mut self.sigma2,
            "alpha" => &mut self.alpha,
            "s_i" => &mut self.s_i,
            "f" => &mut self.f,
            "w_p" => &mut self.w_p,
            "search_cost_p" => &mut self.search_cost_p,
            "p2" => &mut self.p2,
            "r_p_low" => &mut self.r_p_low,
            "p1" => &mut self.p1,
            "r_p_high" => &mut self.r_p_high,
            "r_p" => &mut self.r_p,
            "u_p" => &mut self.u_p,
            "beta" => &mut self.beta,
            "s_p" => &mut self.s_p,
            "d_g" => &mut self.d_g,
            "eta" => &mut self.eta,
            "f_g_i" => &mut self.f_g_i,
            "f_g_p" => &mut self.f_g_p,
            _ => return None,
        })
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        let mut copy = *self;
        copy.slot(name).map(|v| *v)
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), ValidationError> {
        match self.slot(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(ValidationError::new(
                name.to_string(),
                "unknown game parameter",
            )),
        }
    }

    /// Copy with one parameter replaced.
    pub fn with(mut self, name: &str, value: f64) -> Result<Self, ValidationError> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        for name in PARAM_NAMES {
            let v = self.get(name).expect("listed name");
            if !v.is_finite() {
                return Err(ValidationError::new(name, format!("{v} is not finite")));
            }
            if UNIT_PARAMS.contains(&name) {
                if !(0.0..=1.0).contains(&v) {
                    return Err(ValidationError::new(name, format!("{v} is outside [0, 1]")));
                }
            } else if v < 0.0 {
                return Err(ValidationError::new(name, format!("{v} must be non-negative")));
            }
        }
        if (self.q1 + self.q2 - 1.0).abs() > 1e-9 {
            return Err(ValidationError::new(
                "q1 + q2",
                format!("{} must equal 1", self.q1 + self.q2),
            ));
        }
        if (self.p1 + self.p2 - 1.0).abs() > 1e-9 {
            return Err(ValidationError::new(
                "p1 + p2",
                format!("{} must equal 1", self.p1 + self.p2),
            ));
        }
        Ok(())
    }

    /// Coefficient of `y` in the shipper's replicator bracket.
    pub fn k_shipper(&self) -> f64 {
        self.c_i - self.h * self.w_i + self.search_cost_i
            - self.q2 * self.r_i_low
            - self.q1 * self.r_i_high
            + self.r_i * self.u_i
            - self.c_i * self.sigma1
            + self.c_p * self.sigma2
    }

    /// Coefficient of `x` in the carrier's replicator bracket.
    pub fn k_carrier(&self) -> f64 {
        self.c_p - self.f * self.w_p + self.search_cost_p
            - self.p2 * self.r_p_low
            - self.p1 * self.r_p_high
            + self.r_p * self.u_p
            + self.c_i * self.sigma1
            - self.c_p * self.sigma2
    }

    /// Shipper's subsidy income `alpha * S_I`.
    pub fn subsidy_i(&self) -> f64 {
        self.alpha * self.s_i
    }

    pub fn subsidy_p(&self) -> f64 {
        self.beta * self.s_p
    }
}

/// Accepts the conventional symbol aliases used on the command line.
fn canonical(name: &str) -> Option<&'static str> {
    let lower = name.to_ascii_lowercase();
    let alias = match lower.as_str() {
        "alpha_s" => "alpha",
        "beta_s" => "beta",
        "q_i" | "qi" => "search_cost_i",
        "q_p" | "qp" => "search_cost_p",
        "r_i_l" | "ril" => "r_i_low",
        "r_i_u" | "riu" => "r_i_high",
        "r_p_l" | "rpl" => "r_p_low",
        "r_p_u" | "rpu" => "r_p_high",
        "ui" => "u_i",
        "up" => "u_p",
        "dg" => "d_g",
        "fgi" | "f_gi" => "f_g_i",
        "fgp" | "f_gp" => "f_g_p",
        other => other,
    };
    PARAM_NAMES.iter().copied().find(|&n| n == alias)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrays_are_valid() {
        GameParams::array1().validate().unwrap();
        GameParams::array2().validate().unwrap();
        assert_eq!(GameParams::array2().d_g, 0.5);
    }

    #[test]
    fn aliases_resolve() {
        let p = GameParams::array1();
        assert_eq!(p.get("alpha_s"), Some(0.6));
        assert_eq!(p.get("u_I"), Some(0.7));
        assert_eq!(p.get("Q_I"), Some(10.0));
        assert_eq!(p.get("nope"), None);
        let q = p.with("eta", 0.9).unwrap();
        assert_eq!(q.eta, 0.9);
        assert!(p.with("bogus", 1.0).is_err());
    }

    #[test]
    fn validation_rules() {
        let p = GameParams::array1();
        assert_eq!(p.with("q1", 0.5).unwrap().validate().unwrap_err().field, "q1 + q2");
        assert_eq!(p.with("sigma1", 1.5).unwrap().validate().unwrap_err().field, "sigma1");
        assert_eq!(p.with("d_g", -1.0).unwrap().validate().unwrap_err().field, "d_g");
    }

    #[test]
    fn every_name_round_trips() {
        let mut p = GameParams::array1();
        for (k, name) in PARAM_NAMES.iter().enumerate() {
            p.set(name, k as f64).unwrap();
            assert_eq!(p.get(name), Some(k as f64));
        }
    }

    #[test]
    fn bracket_coefficients_array1() {
        let p = GameParams::array1();
        // 5 - 2 + 10 - 15 - 14 + 21 - 5 + 1
        assert_eq!(p.k_shipper(), 1.0);
        // 5 - 2 + 10 - 15 - 14 + 21 + 5 - 1
        assert_eq!(p.k_carrier(), 9.0);
    }
}
