//! Tripartite evolutionary game: replicator dynamics, vertex stability,
//! trajectory integration and parameter sweeps.

pub mod integrate;
pub mod params;
pub mod stability;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::ValidationError;

pub use integrate::{integrate, IntegrateOptions, Trajectory};
pub use params::{GameParams, PARAM_NAMES};
pub use stability::{
    check_conditions, classify, classify_equilibria, numeric_eigenvalues, vertex_eigenvalues,
    ConditionCheck, ConditionReport, EquilibriumClass, Target, VertexEigen, EIG_TOL,
};
pub use sweep::{parameter_sweep, CriticalInterval, SweepOutcome, SweepPoint, Terminal};

/// Probabilities of shipper acceptance `x`, carrier acceptance `y` and
/// platform subsidy `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GameState {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, ValidationError> {
        for (name, v) in [("x", x), ("y", y), ("z", z)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ValidationError::new(name, format!("{v} is outside [0, 1]")));
            }
        }
        Ok(Self { x, y, z })
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        Self { x, y, z }
    }

    pub fn clamped(self) -> Self {
        Self {
            x: self.x.clamp(0.0, 1.0),
            y: self.y.clamp(0.0, 1.0),
            z: self.z.clamp(0.0, 1.0),
        }
    }

    /// Infinity-norm distance.
    pub fn distance(self, other: GameState) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl Default for GameState {
    fn default() -> Self {
        Self {
            x: 0.6,
            y: 0.6,
            z: 0.6,
        }
    }
}

/// Pure-strategy corners E1..E8 in the order (0,0,0), (0,0,1), ..., (1,1,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(u8);

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.coords())
    }
}

impl Vertex {
    pub const ALL: [Vertex; 8] = [
        Vertex(0),
        Vertex(1),
        Vertex(2),
        Vertex(3),
        Vertex(4),
        Vertex(5),
        Vertex(6),
        Vertex(7),
    ];

    /// `x`, `y`, `z` bits, each 0 or 1.
    pub fn from_bits(x: u8, y: u8, z: u8) -> Self {
        Vertex((x & 1) << 2 | (y & 1) << 1 | (z & 1))
    }

    /// 1-based label index: E1 = (0,0,0) ... E8 = (1,1,1).
    pub fn number(self) -> u8 {
        self.0 + 1
    }

    pub fn bits(self) -> (u8, u8, u8) {
        (self.0 >> 2 & 1, self.0 >> 1 & 1, self.0 & 1)
    }

    pub fn state(self) -> GameState {
        let (x, y, z) = self.bits();
        GameState {
            x: x as f64,
            y: y as f64,
            z: z as f64,
        }
    }

    pub fn nearest(s: GameState) -> Self {
        let bit = |v: f64| u8::from(v >= 0.5);
        Vertex::from_bits(bit(s.x), bit(s.y), bit(s.z))
    }

    pub fn label(self) -> String {
        format!("E{}", self.number())
    }

    pub fn coords(self) -> String {
        let (x, y, z) = self.bits();
        format!("({x},{y},{z})")
    }
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coords())
    }
}

/// Replicator right-hand side `(F(x), F(y), F(z))`.
pub fn replicator_rhs(s: GameState, p: &GameParams) -> [f64; 3] {
    let GameState { x, y, z } = s;
    let fx = x
        * (1.0 - x)
        * (-p.c_i + p.c_i * p.sigma1 + p.k_shipper() * y + p.subsidy_i() * z);
    let fy = y
        * (1.0 - y)
        * (-p.c_p + p.c_p * p.sigma2 + p.k_carrier() * x + p.subsidy_p() * z);
    let fz = z
        * (1.0 - z)
        * (-p.d_g + x * p.eta * p.f_g_i + y * p.eta * p.f_g_p - x * p.subsidy_i() - y * p.subsidy_p());
    [fx, fy, fz]
}

/// Analytic Jacobian, `j[r][c] = dF_r / d(state_c)`.
pub fn jacobian(s: GameState, p: &GameParams) -> [[f64; 3]; 3] {
    let GameState { x, y, z } = s;
    let (kx, ky) = (p.k_shipper(), p.k_carrier());
    let (ai, bp) = (p.subsidy_i(), p.subsidy_p());
    let bracket_x = -p.c_i + p.c_i * p.sigma1 + kx * y + ai * z;
    let bracket_y = -p.c_p + p.c_p * p.sigma2 + ky * x + bp * z;
    let bracket_z = -p.d_g + x * p.eta * p.f_g_i + y * p.eta * p.f_g_p - x * ai - y * bp;
    let (vx, vy, vz) = (x * (1.0 - x), y * (1.0 - y), z * (1.0 - z));
    [
        [(1.0 - 2.0 * x) * bracket_x, vx * kx, vx * ai],
        [vy * ky, (1.0 - 2.0 * y) * bracket_y, vy * bp],
        [
            vz * (p.eta * p.f_g_i - ai),
            vz * (p.eta * p.f_g_p - bp),
            (1.0 - 2.0 * z) * bracket_z,
        ],
    ]
}
