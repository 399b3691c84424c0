//! Fixed-step RK4 on the replicator system, clamped to the unit cube.

use crate::error::ValidationError;

use super::{replicator_rhs, GameParams, GameState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub dt: f64,
    pub t_max: f64,
    /// Stop once `max |F| < stop_tol`.
    pub stop_tol: f64,
    /// Keep every `sample_every`-th step (the last state is always kept).
    pub sample_every: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_max: 200.0,
            stop_tol: 1e-8,
            sample_every: 1,
        }
    }
}

impl IntegrateOptions {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(ValidationError::new("dt", format!("{} must be positive", self.dt)));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(ValidationError::new(
                "t_max",
                format!("{} must be non-negative", self.t_max),
            ));
        }
        if self.sample_every == 0 {
            return Err(ValidationError::new("sample_every", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// `(t, state)` samples, starting with the initial state.
    pub points: Vec<(f64, GameState)>,
    /// True when the run stopped because the vector field vanished.
    pub settled: bool,
}

impl Trajectory {
    pub fn last(&self) -> (f64, GameState) {
        *self.points.last().expect("trajectory always holds the initial state")
    }

    pub fn final_state(&self) -> GameState {
        self.last().1
    }

    pub fn end_time(&self) -> f64 {
        self.last().0
    }

    /// Earliest sample time after which the trajectory stays within `tol` of `target`.
    pub fn entry_time(&self, target: GameState, tol: f64) -> Option<f64> {
        let mut entry = None;
        for &(t, s) in &self.points {
            if s.distance(target) <= tol {
                entry.get_or_insert(t);
            } else {
                entry = None;
            }
        }
        entry
    }
}

fn axpy(s: [f64; 3], k: [f64; 3], h: f64) -> GameState {
    GameState::from_array([s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]])
}

fn sup_norm(f: [f64; 3]) -> f64 {
    f.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// One clamped RK4 step.
pub fn rk4_step(s: GameState, p: &GameParams, dt: f64) -> GameState {
    let a = s.to_array();
    let k1 = replicator_rhs(s, p);
    let k2 = replicator_rhs(axpy(a, k1, dt / 2.0), p);
    let k3 = replicator_rhs(axpy(a, k2, dt / 2.0), p);
    let k4 = replicator_rhs(axpy(a, k3, dt), p);
    let mut next = [0.0; 3];
    for d in 0..3 {
        next[d] = a[d] + dt / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
    }
    GameState::from_array(next).clamped()
}

pub fn integrate(
    state0: GameState,
    params: &GameParams,
    opts: &IntegrateOptions,
) -> Result<Trajectory, ValidationError> {
    opts.validate()?;
    let steps = (opts.t_max / opts.dt).round() as usize;
    let mut s = state0.clamped();
    let mut points = vec![(0.0, s)];
    let mut settled = sup_norm(replicator_rhs(s, params)) < opts.stop_tol;
    let mut k = 0;
    while !settled && k < steps {
        s = rk4_step(s, params, opts.dt);
        k += 1;
        settled = sup_norm(replicator_rhs(s, params)) < opts.stop_tol;
        if k % opts.sample_every == 0 || settled || k == steps {
            points.push((k as f64 * opts.dt, s));
        }
    }
    Ok(Trajectory { points, settled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evogame::Vertex;

    #[test]
    fn vertex_start_is_constant() {
        let p = GameParams::array1();
        for v in Vertex::ALL {
            let traj = integrate(v.state(), &p, &IntegrateOptions::default()).unwrap();
            assert!(traj.settled);
            assert_eq!(traj.points.len(), 1);
            assert_eq!(traj.final_state(), v.state());
        }
    }

    #[test]
    fn reference_runs_reach_their_targets() {
        let opts = IntegrateOptions::default();
        let t1 = integrate(GameState::default(), &GameParams::array1(), &opts).unwrap();
        assert!(t1.final_state().distance(Vertex::from_bits(1, 1, 0).state()) < 1e-3);
        let t2 = integrate(GameState::default(), &GameParams::array2(), &opts).unwrap();
        assert!(t2.final_state().distance(Vertex::from_bits(1, 1, 1).state()) < 1e-3);
        assert!(t2.entry_time(Vertex::from_bits(1, 1, 1).state(), 1e-3).is_some());
    }

    #[test]
    fn face_starts_stay_on_the_face() {
        let p = GameParams::array2();
        let s0 = GameState::new(0.0, 0.3, 0.8).unwrap();
        let traj = integrate(s0, &p, &IntegrateOptions::default()).unwrap();
        assert!(traj.points.iter().all(|(_, s)| s.x.abs() <= 1e-12));
    }

    #[test]
    fn sampling_keeps_last_state() {
        let opts = IntegrateOptions {
            t_max: 1.0,
            sample_every: 30,
            stop_tol: 0.0,
            ..Default::default()
        };
        let traj = integrate(GameState::default(), &GameParams::array1(), &opts).unwrap();
        let times: Vec<f64> = traj.points.iter().map(|p| p.0).collect();
        assert_eq!(times.len(), 5);
        assert!((traj.end_time() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bad_step_rejected() {
        let opts = IntegrateOptions {
            dt: 0.0,
            ..Default::default()
        };
        assert!(integrate(GameState::default(), &GameParams::array1(), &opts).is_err());
    }
}
