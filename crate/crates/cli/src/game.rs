//! Game-side subcommands: simulate, sweep, classify.

use std::fs;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use fairmatch_core::evogame::{
    check_conditions, integrate, parameter_sweep, vertex_eigenvalues, IntegrateOptions, Target,
    Trajectory,
};
use fairmatch_core::{GameParams, GameState};
use serde_json::{json, Value};

use crate::output::{parse_values, Cell, OutputArgs, Sink, Table};
use crate::Outcome;

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Built-in scenario (array1, array2) or a parameter JSON file.
    #[arg(long, default_value = "array1")]
    pub scenario: String,
    /// Override one parameter; repeatable.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
}

impl ScenarioArgs {
    pub fn params(&self) -> Result<GameParams> {
        let mut p = match GameParams::scenario(&self.scenario) {
            Some(p) => p,
            None => {
                let text = fs::read_to_string(&self.scenario).with_context(|| {
                    format!(
                        "{:?} is neither array1, array2 nor a readable file",
                        self.scenario
                    )
                })?;
                serde_json::from_str(&text)
                    .with_context(|| format!("invalid parameter file {}", self.scenario))?
            }
        };
        for kv in &self.set {
            let Some((name, value)) = kv.split_once('=') else {
                bail!("--set expects NAME=VALUE, got {kv:?}");
            };
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("invalid value in --set {kv}"))?;
            p.set(name.trim(), value)?;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Args)]
pub struct StartArgs {
    #[arg(long, default_value_t = 0.6)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.6)]
    pub y0: f64,
    #[arg(long, default_value_t = 0.6)]
    pub z0: f64,
}

impl StartArgs {
    pub fn state(&self) -> Result<GameState> {
        Ok(GameState::new(self.x0, self.y0, self.z0)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct IntegrateArgs {
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 200.0)]
    pub tmax: f64,
    /// Stop once every component of the vector field is below this.
    #[arg(long, default_value_t = 1e-8)]
    pub stop_tol: f64,
    /// Keep every n-th step in the trajectory output.
    #[arg(long, default_value_t = 1)]
    pub sample_every: usize,
}

impl IntegrateArgs {
    pub fn options(&self) -> Result<IntegrateOptions> {
        let o = IntegrateOptions {
            dt: self.dt,
            t_max: self.tmax,
            stop_tol: self.stop_tol,
            sample_every: self.sample_every,
        };
        o.validate()?;
        Ok(o)
    }
}

pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut t = Table::new(&["t", "x", "y", "z"]);
    for (time, s) in &traj.points {
        t.push(vec![(*time).into(), s.x.into(), s.y.into(), s.z.into()]);
    }
    t
}

pub fn trajectory_json(traj: &Trajectory) -> Value {
    Value::Array(
        traj.points
            .iter()
            .map(|(t, s)| json!({"t": t, "x": s.x, "y": s.y, "z": s.z}))
            .collect(),
    )
}

pub fn terminal_of(traj: &Trajectory) -> fairmatch_core::evogame::Terminal {
    fairmatch_core::evogame::sweep::terminal_of(traj.final_state(), traj.settled)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub start: StartArgs,
    #[command(flatten)]
    pub integrate: IntegrateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_simulate(args: &SimulateArgs) -> Result<Outcome> {
    let p = args.scenario.params()?;
    let traj = integrate(args.start.state()?, &p, &args.integrate.options()?)?;
    let terminal = terminal_of(&traj);
    eprintln!(
        "end t={:.4} state=({:.6}, {:.6}, {:.6}) terminal={}",
        traj.end_time(),
        traj.final_state().x,
        traj.final_state().y,
        traj.final_state().z,
        terminal.describe()
    );
    let report = json!({
        "scenario": args.scenario.scenario,
        "params": p,
        "settled": traj.settled,
        "terminal": terminal,
        "points": trajectory_json(&traj),
    });
    Sink {
        args: &args.output,
        default_precision: 6,
    }
    .emit(&[&trajectory_table(&traj)], report)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Parameter to vary.
    #[arg(long)]
    pub param: String,
    /// Values as a:step:b or a comma-separated list.
    #[arg(long)]
    pub values: String,
    #[command(flatten)]
    pub start: StartArgs,
    #[command(flatten)]
    pub integrate: IntegrateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_sweep(args: &SweepArgs) -> Result<Outcome> {
    let p = args.scenario.params()?;
    let values = parse_values(&args.values)?;
    let outcome = parameter_sweep(
        &p,
        &args.param,
        &values,
        args.start.state()?,
        &args.integrate.options()?,
    )?;
    let mut table = Table::new(&[
        "value",
        "x",
        "y",
        "z",
        "terminal",
        "vertex",
        "distance",
        "time_to_converge",
        "end_time",
    ]);
    for pt in &outcome.points {
        let s = pt.final_state;
        let vertex = pt.terminal.attributed();
        table.push(vec![
            pt.value.into(),
            s.x.into(),
            s.y.into(),
            s.z.into(),
            pt.terminal.describe().into(),
            vertex.map_or(Cell::Empty, |v| v.coords().into()),
            vertex.map(|v| s.distance(v.state())).into(),
            pt.time_to_converge.into(),
            pt.end_time.into(),
        ]);
    }
    for c in &outcome.critical {
        eprintln!(
            "critical interval for {}: ({}, {}) {} -> {}",
            outcome.parameter,
            c.low,
            c.high,
            c.below.coords(),
            c.above.coords()
        );
    }
    let report = serde_json::to_value(&outcome)?;
    Sink {
        args: &args.output,
        default_precision: 6,
    }
    .emit(&[&table], report)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    E7,
    E8,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Only check the uniqueness conditions for this vertex.
    #[arg(long, value_enum)]
    pub target: Option<TargetArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_classify(args: &ClassifyArgs) -> Result<Outcome> {
    let p = args.scenario.params()?;
    let eig = vertex_eigenvalues(&p);
    let mut eig_table = Table::new(&["vertex", "label", "lambda1", "lambda2", "lambda3", "class"]);
    for e in &eig {
        eig_table.push(vec![
            e.vertex.coords().into(),
            e.vertex.label().into(),
            e.lambda[0].into(),
            e.lambda[1].into(),
            e.lambda[2].into(),
            e.class.as_str().into(),
        ]);
    }
    let targets = match args.target {
        Some(TargetArg::E7) => vec![Target::E7],
        Some(TargetArg::E8) => vec![Target::E8],
        None => vec![Target::E7, Target::E8],
    };
    let reports: Vec<_> = targets.iter().map(|&t| check_conditions(&p, t)).collect();
    let mut cond_table = Table::new(&["target", "condition", "lhs", "relation", "rhs", "holds"]);
    for r in &reports {
        for c in &r.conditions {
            cond_table.push(vec![
                r.target.vertex().coords().into(),
                c.label.into(),
                c.lhs.into(),
                c.relation.into(),
                c.rhs.into(),
                c.holds.into(),
            ]);
        }
    }
    let report = json!({
        "eigenvalues": eig.iter().map(|e| json!({
            "vertex": e.vertex,
            "label": e.vertex.label(),
            "lambda": e.lambda,
            "class": e.class,
        })).collect::<Vec<_>>(),
        "conditions": reports,
    });
    Sink {
        args: &args.output,
        default_precision: 4,
    }
    .emit(&[&eig_table, &cond_table], report)?;
    Ok(Outcome::Done)
}
