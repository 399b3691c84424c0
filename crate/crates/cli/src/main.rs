//! `fairmatch`: fair shipper-carrier matching and the platform evolutionary game.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 infeasible or not converged.

mod game;
mod matching;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fairmatch_core::evogame::integrate;
use fairmatch_core::{write_scheme, SolveError};
use serde_json::json;

use crate::game::{IntegrateArgs, ScenarioArgs, StartArgs};
use crate::matching::{InstanceArgs, MethodArg, SolverArgs};
use crate::output::{OutputArgs, Sink, Table};

#[derive(Debug, Parser)]
#[command(
    name = "fairmatch",
    version,
    about = "Fair shipper-carrier matching and platform game dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one matching instance.
    Match(matching::MatchArgs),
    /// Re-solve while one side's upper limit follows gamma.
    Sensitivity(matching::SensitivityArgs),
    /// Proposed method against max-min, ideal point and linear weighting.
    Compare(matching::CompareArgs),
    /// Indicator weights from adjacent scales or an evaluation matrix.
    Weights(matching::WeightsArgs),
    /// Integrate the replicator dynamics from one start.
    Simulate(game::SimulateArgs),
    /// Terminal vertex for each value of one parameter.
    Sweep(game::SweepArgs),
    /// Vertex eigenvalues and uniqueness conditions.
    Classify(game::ClassifyArgs),
    /// Match, then run the game, optionally handing the fairness factor over.
    Pipeline(PipelineArgs),
}

pub enum Outcome {
    Done,
    /// Output was produced, but the problem has no acceptable answer.
    Unsolved(String),
}

#[derive(Debug, Args)]
struct PipelineArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Fuzzy)]
    method: MethodArg,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(flatten)]
    start: StartArgs,
    #[command(flatten)]
    integrate: IntegrateArgs,
    /// Use the scheme's fairness factor as the game's eta when it lies in [0, 1].
    #[arg(long)]
    handoff_eta: bool,
    /// Directory for scheme.json and trajectory.csv.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

fn run_pipeline(args: &PipelineArgs) -> Result<Outcome> {
    let mut config = args.solver.config()?;
    config.method = args.method.method();
    let (inst, problem) = matching::build_problem(&args.instance, &config)?;
    let bounds = problem.bounds(inst.gamma)?;
    let out = matching::solve(&problem, &bounds, &inst, &config)?;
    let scheme = &out.scheme;

    let mut params = args.scenario.params()?;
    let mut handed_over = false;
    if args.handoff_eta {
        match scheme.eta {
            Some(eta) if (0.0..=1.0).contains(&eta) => {
                params.set("eta", eta)?;
                handed_over = true;
            }
            other => eprintln!(
                "warning: scheme fairness factor {} is outside [0, 1]; keeping game eta {}",
                other.map_or("undefined".to_string(), |e| e.to_string()),
                params.eta
            ),
        }
    }
    let opts = args.integrate.options()?;
    let traj = integrate(args.start.state()?, &params, &opts)?;
    let terminal = game::terminal_of(&traj);
    let end = traj.final_state();

    let mut table = Table::new(&[
        "method",
        "pairs",
        "f1",
        "f2",
        "s1",
        "s2",
        "overall",
        "scheme_eta",
        "converged",
        "game_eta",
        "x",
        "y",
        "z",
        "terminal",
        "end_time",
    ]);
    table.push(vec![
        config.method.label().into(),
        scheme.pair_string().into(),
        scheme.f1.into(),
        scheme.f2.into(),
        scheme.s1.into(),
        scheme.s2.into(),
        scheme.overall().into(),
        scheme.eta.into(),
        out.converged.into(),
        params.eta.into(),
        end.x.into(),
        end.y.into(),
        end.z.into(),
        terminal.describe().into(),
        traj.end_time().into(),
    ]);
    let sink = Sink {
        args: &args.output,
        default_precision: 6,
    };
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        write_scheme(scheme, dir.join("scheme.json"))?;
        let csv = game::trajectory_table(&traj).to_csv(sink.precision())?;
        output::write_text(Some(&dir.join("trajectory.csv")), &csv)?;
    }
    let report = json!({
        "matching": {
            "method": config.method.label(),
            "bounds": matching::bounds_json(&bounds),
            "scheme": matching::scheme_json(scheme),
            "converged": out.converged,
        },
        "game": {
            "scenario": args.scenario.scenario,
            "eta": params.eta,
            "eta_from_scheme": handed_over,
            "settled": traj.settled,
            "terminal": terminal,
            "final_state": end,
            "end_time": traj.end_time(),
        },
    });
    sink.emit(&[&table], report)?;
    if out.converged {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Unsolved(
            "matching did not reach the fairness interval".into(),
        ))
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Match(a) => matching::run_match(a),
        Command::Sensitivity(a) => matching::run_sensitivity(a),
        Command::Compare(a) => matching::run_compare(a),
        Command::Weights(a) => matching::run_weights(a),
        Command::Simulate(a) => game::run_simulate(a),
        Command::Sweep(a) => game::run_sweep(a),
        Command::Classify(a) => game::run_classify(a),
        Command::Pipeline(a) => run_pipeline(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Unsolved(msg)) => {
            eprintln!("fairmatch: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("fairmatch: {e:#}");
            match e.downcast_ref::<SolveError>() {
                Some(SolveError::Validation(_)) | None => ExitCode::from(1),
                Some(_) => ExitCode::from(2),
            }
        }
    }
}
