//! One-parameter sweeps: terminal vertex per value and where it switches.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::ValidationError;

use super::{integrate, GameParams, GameState, IntegrateOptions, Vertex};

/// A run counts as reaching a vertex within this infinity-norm distance.
pub const VERTEX_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Terminal {
    /// Within [`VERTEX_TOL`] of a vertex at the end of the run.
    Vertex { vertex: Vertex },
    /// The vector field vanished away from every vertex, e.g. on a neutral edge
    /// where an eigenvalue is zero. `nearest` is the closest vertex.
    Stalled { nearest: Vertex, distance: f64 },
    /// Still moving at `t_max`.
    Undecided,
}

impl Terminal {
    /// Vertex used to compare neighbouring sweep values.
    pub fn attributed(&self) -> Option<Vertex> {
        match *self {
            Terminal::Vertex { vertex } => Some(vertex),
            Terminal::Stalled { nearest, .. } => Some(nearest),
            Terminal::Undecided => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Terminal::Vertex { vertex } => vertex.coords(),
            Terminal::Stalled { nearest, distance } => {
                format!("stalled near {} ({distance:.4})", nearest.coords())
            }
            Terminal::Undecided => "undecided".to_string(),
        }
    }
}

/// Classifies the end point of a run.
pub fn terminal_of(state: GameState, settled: bool) -> Terminal {
    let nearest = Vertex::nearest(state);
    let distance = state.distance(nearest.state());
    if distance <= VERTEX_TOL {
        Terminal::Vertex { vertex: nearest }
    } else if settled {
        Terminal::Stalled { nearest, distance }
    } else {
        Terminal::Undecided
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub final_state: GameState,
    pub terminal: Terminal,
    /// First time after which the run stays within [`VERTEX_TOL`] of its vertex.
    pub time_to_converge: Option<f64>,
    pub end_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalInterval {
    pub low: f64,
    pub high: f64,
    pub below: Vertex,
    pub above: Vertex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub parameter: String,
    pub points: Vec<SweepPoint>,
    pub critical: Vec<CriticalInterval>,
}

/// Integrates from `state0` once per value of `name` (in parallel) and reports
/// each terminal vertex plus the gaps where it changes.
pub fn parameter_sweep(
    params: &GameParams,
    name: &str,
    values: &[f64],
    state0: GameState,
    opts: &IntegrateOptions,
) -> Result<SweepOutcome, ValidationError> {
    let variants: Vec<(f64, GameParams)> = values
        .iter()
        .map(|&v| {
            let p = params.with(name, v)?;
            p.validate()?;
            Ok((v, p))
        })
        .collect::<Result<_, ValidationError>>()?;
    opts.validate()?;
    let points: Vec<SweepPoint> = variants
        .par_iter()
        .map(|(value, p)| {
            let traj = integrate(state0, p, opts).expect("options validated");
            let final_state = traj.final_state();
            let terminal = terminal_of(final_state, traj.settled);
            let time_to_converge = match terminal {
                Terminal::Vertex { vertex } => traj.entry_time(vertex.state(), VERTEX_TOL),
                _ => None,
            };
            SweepPoint {
                value: *value,
                final_state,
                terminal,
                time_to_converge,
                end_time: traj.end_time(),
            }
        })
        .collect();
    let critical = points
        .windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0].terminal.attributed()?, w[1].terminal.attributed()?);
            (a != b).then_some(CriticalInterval {
                low: w[0].value,
                high: w[1].value,
                below: a,
                above: b,
            })
        })
        .collect();
    Ok(SweepOutcome {
        parameter: name.to_string(),
        points,
        critical,
    })
}
