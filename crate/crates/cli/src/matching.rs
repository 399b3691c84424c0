//! Matching-side subcommands: match, sensitivity, compare, weights.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use fairmatch_core::matcher::{
    Backend, BenchmarkSpace, Coverage, InteractiveOutcome, IterationRecord, Method, SearchOptions,
    Side,
};
use fairmatch_core::rsdat::{rsdat_weights, AdjacencyScales};
use fairmatch_core::satisfaction::criteria_weights;
use fairmatch_core::scenarios::case_study;
use fairmatch_core::{
    load_instance, FuzzyBounds, MatchingInstance, MatchingProblem, MatchingScheme, Matrix,
    SatisfactionOptions, SolverConfig,
};
use serde_json::{json, Value};

use crate::output::{parse_values, Cell, OutputArgs, Sink, Table};
use crate::Outcome;

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Instance JSON file; the built-in case study when omitted.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Overrides the instance's dissatisfaction interval limitation.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Overrides the lower end of the fairness interval.
    #[arg(long)]
    pub eta_lo: Option<f64>,
    /// Overrides the upper end of the fairness interval.
    #[arg(long)]
    pub eta_hi: Option<f64>,
    /// Use the symmetric denominators instead of the printed ones.
    #[arg(long)]
    pub symmetric_satisfaction: bool,
}

impl InstanceArgs {
    pub fn load(&self) -> Result<MatchingInstance> {
        let mut inst = match &self.instance {
            Some(path) => load_instance(path)?,
            None => case_study(),
        };
        if let Some(g) = self.gamma {
            inst.gamma = g;
        }
        if let Some(lo) = self.eta_lo {
            inst.eta_interval[0] = lo;
        }
        if let Some(hi) = self.eta_hi {
            inst.eta_interval[1] = hi;
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn satisfaction_options(&self) -> SatisfactionOptions {
        SatisfactionOptions {
            eq1_verbatim: !self.symmetric_satisfaction,
            benefit_verbatim: !self.symmetric_satisfaction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Fuzzy,
    Maxmin,
    Ideal,
    Linear,
}

impl MethodArg {
    pub fn method(self) -> Method {
        match self {
            MethodArg::Fuzzy => Method::FuzzyInteractive,
            MethodArg::Maxmin => Method::MaxMin,
            MethodArg::Ideal => Method::IdealPoint,
            MethodArg::Linear => Method::LinearWeighted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Objective,
    Membership,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Bnb,
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverageArg {
    Max,
    AtMostOne,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Membership raise per fairness-loop iteration.
    #[arg(long)]
    pub theta_step: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Linear-weighting coefficients, e.g. 0.5,0.5.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Space in which the benchmark methods measure the objectives.
    #[arg(long, value_enum)]
    pub space: Option<SpaceArg>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    /// Matching-size rule: maximum cardinality, or at most one partner each.
    #[arg(long, value_enum)]
    pub coverage: Option<CoverageArg>,
}

impl SolverArgs {
    pub fn config(&self) -> Result<SolverConfig> {
        let mut c = SolverConfig::default();
        if let Some(s) = self.theta_step {
            c.theta_step = s;
        }
        if let Some(n) = self.max_iterations {
            c.max_iterations = n;
        }
        if let Some(l) = &self.lambda {
            let v = parse_values(l)?;
            if v.len() != 2 {
                bail!("--lambda needs two values, got {}", v.len());
            }
            c.lambda = [v[0], v[1]];
        }
        if let Some(s) = self.space {
            c.benchmark_space = match s {
                SpaceArg::Objective => BenchmarkSpace::Objective,
                SpaceArg::Membership => BenchmarkSpace::Membership,
            };
        }
        let defaults = SearchOptions::default();
        c.search = SearchOptions {
            backend: match self.backend {
                Some(BackendArg::Bnb) => Backend::BranchAndBound,
                Some(BackendArg::Enumeration) => Backend::Enumeration,
                None => defaults.backend,
            },
            coverage: match self.coverage {
                Some(CoverageArg::Max) => Coverage::MaxCardinality,
                Some(CoverageArg::AtMostOne) => Coverage::AtMostOne,
                None => defaults.coverage,
            },
        };
        c.validate()?;
        Ok(c)
    }
}

pub fn build_problem(
    inst_args: &InstanceArgs,
    config: &SolverConfig,
) -> Result<(MatchingInstance, MatchingProblem)> {
    let inst = inst_args.load()?;
    let problem = MatchingProblem::from_instance(&inst, inst_args.satisfaction_options())?
        .with_search(config.search);
    Ok((inst, problem))
}

pub fn bounds_json(b: &FuzzyBounds) -> Value {
    serde_json::to_value(b).expect("bounds serialize")
}

pub fn scheme_json(s: &MatchingScheme) -> Value {
    serde_json::to_value(s.report()).expect("report serializes")
}

fn iterations_table(records: &[IterationRecord]) -> Table {
    let mut t = Table::new(&[
        "iteration",
        "floors",
        "pairs",
        "f1",
        "f2",
        "u1",
        "u2",
        "ratio",
        "error",
    ]);
    for r in records {
        let floors = r
            .floors
            .iter()
            .map(|f| format!("u{}>={:.4}", f.side.index(), f.theta))
            .collect::<Vec<_>>()
            .join(" ");
        let (pairs, f1, f2, u1, u2) = match &r.scheme {
            Some(s) => (
                s.pair_string(),
                Cell::from(s.f1),
                Cell::from(s.f2),
                Cell::from(s.u1),
                Cell::from(s.u2),
            ),
            None => (
                String::new(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ),
        };
        t.push(vec![
            r.iteration.into(),
            floors.into(),
            pairs.into(),
            f1,
            f2,
            u1,
            u2,
            r.ratio.into(),
            r.error
                .as_ref()
                .map(|e| e.to_string())
                .unwrap_or_default()
                .into(),
        ]);
    }
    t
}

fn iterations_json(records: &[IterationRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!({
                    "iteration": r.iteration,
                    "floors": r.floors.iter().map(|f| json!({"side": f.side, "theta": f.theta})).collect::<Vec<_>>(),
                    "scheme": r.scheme.as_ref().map(scheme_json),
                    "ratio": r.ratio.filter(|x| x.is_finite()),
                    "error": r.error.as_ref().map(|e| e.to_string()),
                })
            })
            .collect(),
    )
}

/// Solves with the configured method; the fuzzy method also returns its log.
pub fn solve(
    problem: &MatchingProblem,
    bounds: &FuzzyBounds,
    inst: &MatchingInstance,
    config: &SolverConfig,
) -> Result<InteractiveOutcome> {
    Ok(match config.method.benchmark() {
        None => problem.interactive_solve(bounds, inst.eta_interval, config)?,
        Some(b) => InteractiveOutcome {
            scheme: problem.benchmark_solve(bounds, b, config)?,
            converged: true,
            iterations: Vec::new(),
        },
    })
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Fuzzy)]
    pub method: MethodArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Also write the fairness-loop iteration log as CSV.
    #[arg(long)]
    pub log: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_match(args: &MatchArgs) -> Result<Outcome> {
    let mut config = args.solver.config()?;
    config.method = args.method.method();
    let (inst, problem) = build_problem(&args.instance, &config)?;
    let bounds = problem.bounds(inst.gamma)?;
    let out = solve(&problem, &bounds, &inst, &config)?;
    let s = &out.scheme;

    let mut table = Table::new(&[
        "method",
        "pairs",
        "f1",
        "f2",
        "u1",
        "v1",
        "s1",
        "u2",
        "v2",
        "s2",
        "overall",
        "eta",
        "converged",
        "iterations",
    ]);
    table.push(vec![
        config.method.label().into(),
        s.pair_string().into(),
        s.f1.into(),
        s.f2.into(),
        s.u1.into(),
        s.v1.into(),
        s.s1.into(),
        s.u2.into(),
        s.v2.into(),
        s.s2.into(),
        s.overall().into(),
        s.eta.into(),
        out.converged.into(),
        out.iterations.len().into(),
    ]);
    let report = json!({
        "method": config.method.label(),
        "gamma": inst.gamma,
        "eta_interval": inst.eta_interval,
        "bounds": bounds_json(&bounds),
        "scheme": scheme_json(s),
        "converged": out.converged,
        "iterations": iterations_json(&out.iterations),
    });
    let sink = Sink {
        args: &args.output,
        default_precision: 6,
    };
    sink.emit(&[&table], report)?;
    if let Some(path) = &args.log {
        let text = iterations_table(&out.iterations).to_csv(sink.precision())?;
        crate::output::write_text(Some(path), &text)?;
    }
    if out.converged {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Unsolved(format!(
            "fairness interval [{}, {}] not reached after {} iterations; reporting the closest scheme",
            inst.eta_interval[0],
            inst.eta_interval[1],
            out.iterations.len()
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Shipper,
    Carrier,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Side whose upper limit is recomputed for each gamma.
    #[arg(long, value_enum)]
    pub side: SideArg,
    /// Gamma values as a:step:b or a comma-separated list.
    #[arg(long, default_value = "0.1:0.1:1.0")]
    pub gammas: String,
    /// Decimals kept on the other side's reference upper limit ("none" keeps it exact).
    #[arg(long, default_value = "2")]
    pub reference_decimals: String,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_sensitivity(args: &SensitivityArgs) -> Result<Outcome> {
    let mut config = args.solver.config()?;
    config.reference_decimals = match args.reference_decimals.as_str() {
        "none" => None,
        d => Some(
            d.parse()
                .context("--reference-decimals expects an integer or \"none\"")?,
        ),
    };
    let gammas = parse_values(&args.gammas)?;
    if let Some(g) = gammas.iter().find(|g| !(**g > 0.0 && **g <= 1.0)) {
        bail!("gamma {g} is outside (0, 1]");
    }
    let (inst, problem) = build_problem(&args.instance, &config)?;
    let reference = problem.bounds(inst.gamma)?;
    let side = match args.side {
        SideArg::Shipper => Side::Shipper,
        SideArg::Carrier => Side::Carrier,
    };
    let rows = problem.gamma_sweep(&reference, &gammas, side, inst.eta_interval, &config);

    let mut table = Table::new(&[
        "gamma", "side", "f1ul", "f2ul", "pairs", "f1", "f2", "s1", "s2", "overall", "eta", "fair",
        "error",
    ]);
    let mut json_rows = Vec::new();
    for r in &rows {
        let (pairs, f1, f2, s1, s2, overall, eta) = match &r.scheme {
            Some(s) => (
                s.pair_string(),
                Cell::from(s.f1),
                Cell::from(s.f2),
                Cell::from(s.s1),
                Cell::from(s.s2),
                Cell::from(s.overall()),
                Cell::from(s.eta),
            ),
            None => (
                String::new(),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ),
        };
        table.push(vec![
            r.gamma.into(),
            side.as_str().into(),
            r.f1ul.into(),
            r.f2ul.into(),
            pairs.into(),
            f1,
            f2,
            s1,
            s2,
            overall,
            eta,
            r.fair.map_or(Cell::Empty, Cell::Flag),
            r.error
                .as_ref()
                .map(|e| e.to_string())
                .unwrap_or_default()
                .into(),
        ]);
        json_rows.push(json!({
            "gamma": r.gamma,
            "f1ul": r.f1ul,
            "f2ul": r.f2ul,
            "scheme": r.scheme.as_ref().map(scheme_json),
            "fair": r.fair,
            "error": r.error.as_ref().map(|e| e.to_string()),
        }));
    }
    let report = json!({
        "side": side,
        "reference_gamma": inst.gamma,
        "reference_bounds": bounds_json(&reference),
        "eta_interval": inst.eta_interval,
        "rows": json_rows,
    });
    Sink {
        args: &args.output,
        default_precision: 4,
    }
    .emit(&[&table], report)?;
    Ok(Outcome::Done)
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run_compare(args: &CompareArgs) -> Result<Outcome> {
    let config = args.solver.config()?;
    let (inst, problem) = build_problem(&args.instance, &config)?;
    let bounds = problem.bounds(inst.gamma)?;
    let rows = problem.compare(&bounds, inst.eta_interval, &config)?;
    let mut table = Table::new(&[
        "method",
        "pairs",
        "f1",
        "f2",
        "f1_plus_f2",
        "s1",
        "s2",
        "overall",
        "eta",
        "converged",
    ]);
    let mut json_rows = Vec::new();
    for r in &rows {
        let s = &r.scheme;
        table.push(vec![
            r.method.label().into(),
            s.pair_string().into(),
            s.f1.into(),
            s.f2.into(),
            (s.f1 + s.f2).into(),
            s.s1.into(),
            s.s2.into(),
            s.overall().into(),
            s.eta.into(),
            r.converged.into(),
        ]);
        json_rows.push(json!({
            "method": r.method.label(),
            "scheme": scheme_json(s),
            "converged": r.converged,
        }));
    }
    let report = json!({
        "gamma": inst.gamma,
        "bounds": bounds_json(&bounds),
        "benchmark_space": config.benchmark_space,
        "rows": json_rows,
    });
    Sink {
        args: &args.output,
        default_precision: 2,
    }
    .emit(&[&table], report)?;
    if rows[0].converged {
        Ok(Outcome::Done)
    } else {
        Ok(Outcome::Unsolved(
            "the proposed method did not reach the fairness interval".into(),
        ))
    }
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    /// Adjacent importance scales, e.g. 0.6,0.6 (indicators in descending importance).
    #[arg(long, conflicts_with_all = ["scales_file", "criteria"])]
    pub scales: Option<String>,
    /// File holding the scales, separated by commas or whitespace.
    #[arg(long, conflicts_with = "criteria")]
    pub scales_file: Option<PathBuf>,
    /// Indicator names, comma-separated; o1, o2, ... by default.
    #[arg(long)]
    pub ids: Option<String>,
    /// CSV evaluation matrix (rows: assessments, columns: criteria, no header)
    /// weighted by normalized column sums instead.
    #[arg(long)]
    pub criteria: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn read_matrix(path: &PathBuf) -> Result<Matrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        rows.push(
            record
                .iter()
                .map(|v| {
                    v.parse::<f64>()
                        .with_context(|| format!("invalid number {v:?}"))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(rows)?)
}

pub fn run_weights(args: &WeightsArgs) -> Result<Outcome> {
    let (weights, prefix) = if let Some(path) = &args.criteria {
        (criteria_weights(&read_matrix(path)?)?, "c")
    } else {
        let text = match (&args.scales, &args.scales_file) {
            (Some(s), _) => s.clone(),
            (None, Some(path)) => fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(","),
            (None, None) => bail!("one of --scales, --scales-file or --criteria is required"),
        };
        let scales: Vec<f64> = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .with_context(|| format!("invalid scale {s:?}"))
            })
            .collect::<Result<_>>()?;
        let adj = AdjacencyScales::from_scales(scales)?;
        for a in adj.order_conflicts() {
            eprintln!(
                "warning: scale {} between indicators {} and {} is below 0.5 and contradicts the declared order",
                adj.scales()[a],
                a + 1,
                a + 2
            );
        }
        (rsdat_weights(&adj), "o")
    };
    let ids: Vec<String> = match &args.ids {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => (1..=weights.len())
            .map(|k| format!("{prefix}{k}"))
            .collect(),
    };
    if ids.len() != weights.len() {
        bail!(
            "--ids lists {} names for {} weights",
            ids.len(),
            weights.len()
        );
    }
    let mut table = Table::new(&["indicator", "weight"]);
    for (id, w) in ids.iter().zip(&weights) {
        table.push(vec![id.as_str().into(), (*w).into()]);
    }
    let report = json!({ "weights": ids.iter().zip(&weights).map(|(i, w)| json!({"indicator": i, "weight": w})).collect::<Vec<_>>() });
    Sink {
        args: &args.output,
        default_precision: 4,
    }
    .emit(&[&table], report)?;
    Ok(Outcome::Done)
}
