//! Domain types shared by the satisfaction, matching and reporting code, plus
//! instance/scheme file I/O.
//!
//! Indices are 0-based in memory and 1-based in every file this module writes
//! or reads that carries (shipper, carrier) pairs.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{IoError, ValidationError};

/// Validation tolerance for sums and equalities.
pub const VALIDATION_TOL: f64 = 1e-9;

/// Default magnitude of the intolerable-violation sentinel `-M`.
pub const DEFAULT_BIG_M: f64 = 1e6;

/// Number of indicators per side (A1..A9, B1..B9).
pub const INDICATOR_COUNT: usize = 9;

/// Dense row-major matrix, serialized as a list of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, ValidationError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(ValidationError::new(
                    format!("row {}", r + 1),
                    format!("has {} entries, expected {ncols}", row.len()),
                ));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for Matrix {
    type Error = ValidationError;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self, Self::Error> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<f64>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

/// Boolean m×n mask of admissible (shipper, carrier) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityMask {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl FeasibilityMask {
    pub fn all(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![true; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r * self.cols + c] = value;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

/// Intuitionistic fuzzy number. The hesitation degree is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawIfNumber")]
pub struct IFNumber {
    mu: f64,
    nu: f64,
}

#[derive(Deserialize)]
struct RawIfNumber {
    mu: f64,
    nu: f64,
}

impl TryFrom<RawIfNumber> for IFNumber {
    type Error = ValidationError;

    fn try_from(raw: RawIfNumber) -> Result<Self, Self::Error> {
        IFNumber::new(raw.mu, raw.nu)
    }
}

impl IFNumber {
    pub fn new(mu: f64, nu: f64) -> Result<Self, ValidationError> {
        let in_unit = |v: f64| (0.0..=1.0).contains(&v);
        if !in_unit(mu) {
            return Err(ValidationError::new("mu", format!("{mu} is outside [0, 1]")));
        }
        if !in_unit(nu) {
            return Err(ValidationError::new("nu", format!("{nu} is outside [0, 1]")));
        }
        if mu + nu > 1.0 + VALIDATION_TOL {
            return Err(ValidationError::new(
                "mu + nu",
                format!("{} exceeds 1", mu + nu),
            ));
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn hesitation(&self) -> f64 {
        (1.0 - self.mu - self.nu).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndicatorKind {
    IntervalExpectation,
    CostExpectation,
    FixedExpectation,
    BenefitExpectation,
    PreferenceSequenceExpectation,
    Attribute,
    Reliability,
}

impl IndicatorKind {
    pub fn is_expectation(self) -> bool {
        !matches!(self, IndicatorKind::Attribute | IndicatorKind::Reliability)
    }

    /// Attribute indicators never contribute to comprehensive satisfaction.
    pub fn aggregates(self) -> bool {
        self != IndicatorKind::Attribute
    }
}

/// A1..A9: delivery date, price, vehicle type, weight, length, size,
/// departure, delivery place, reliability.
pub const SHIPPER_INDICATORS: [IndicatorKind; INDICATOR_COUNT] = [
    IndicatorKind::IntervalExpectation,
    IndicatorKind::CostExpectation,
    IndicatorKind::FixedExpectation,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Reliability,
];

/// B1..B9: delivery date, price, vehicle type, deadweight, length, volume,
/// departure, delivery place preferences, reliability.
pub const CARRIER_INDICATORS: [IndicatorKind; INDICATOR_COUNT] = [
    IndicatorKind::Attribute,
    IndicatorKind::BenefitExpectation,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::Attribute,
    IndicatorKind::PreferenceSequenceExpectation,
    IndicatorKind::Reliability,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tolerability {
    #[default]
    Tolerable,
    Intolerable,
}

/// An expectation indicator value together with its tolerability flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation<T> {
    pub value: T,
    #[serde(default)]
    pub tolerability: Tolerability,
}

impl<T> Expectation<T> {
    pub fn tolerable(value: T) -> Self {
        Self {
            value,
            tolerability: Tolerability::Tolerable,
        }
    }

    pub fn intolerable(value: T) -> Self {
        Self {
            value,
            tolerability: Tolerability::Intolerable,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShipperProfile {
    /// A1: acceptable delivery interval `[a^L, a^U]` in days.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delivery_window: Option<Expectation<[f64; 2]>>,
    /// A2: acceptable delivery price.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub price: Option<Expectation<f64>>,
    /// A3: required vehicle type code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_type: Option<Expectation<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cargo_weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cargo_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cargo_volume: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub departure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destination: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    /// Per-shipper indicator weights; falls back to `weights.shipper`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[f64; INDICATOR_COUNT]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierProfile {
    /// B1: offered delivery time in days.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delivery_days: Option<f64>,
    /// B2: quoted price.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub price: Option<Expectation<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deadweight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_volume: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub departure: Option<String>,
    /// B8: ordered delivery-place preferences, most preferred first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub destination_preferences: Option<Expectation<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<[f64; INDICATOR_COUNT]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideWeights {
    pub shipper: [f64; INDICATOR_COUNT],
    pub carrier: [f64; INDICATOR_COUNT],
}

/// Reliability evaluation: either an IFN to be scored or an already scored value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReliabilityEntry {
    Score(f64),
    Fuzzy(IFNumber),
}

fn default_big_m() -> f64 {
    DEFAULT_BIG_M
}

/// A complete matching problem as loaded from disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingInstance {
    pub shippers: Vec<ShipperProfile>,
    pub carriers: Vec<CarrierProfile>,
    pub weights: SideWeights,
    /// m×n, shipper i's reliability evaluation of carrier j.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliability_shipper: Option<Vec<Vec<ReliabilityEntry>>>,
    /// n×m, carrier j's reliability evaluation of shipper i.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliability_carrier: Option<Vec<Vec<ReliabilityEntry>>>,
    /// m×n comprehensive satisfaction of shippers towards carriers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfaction_alpha: Option<Matrix>,
    /// n×m comprehensive satisfaction of carriers towards shippers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satisfaction_beta: Option<Matrix>,
    pub gamma: f64,
    pub eta_interval: [f64; 2],
    #[serde(default = "default_big_m")]
    pub big_m: f64,
}

fn check_unit_param(field: String, value: Option<f64>) -> Result<(), ValidationError> {
    match value {
        Some(v) if !(v > 0.0 && v <= 1.0) => Err(ValidationError::new(
            field,
            format!("{v} must lie in (0, 1]"),
        )),
        _ => Ok(()),
    }
}

fn check_weights(
    field: &str,
    weights: &[f64; INDICATOR_COUNT],
    kinds: &[IndicatorKind; INDICATOR_COUNT],
) -> Result<(), ValidationError> {
    for (f, (&w, kind)) in weights.iter().zip(kinds).enumerate() {
        if !(0.0..=1.0).contains(&w) {
            return Err(ValidationError::new(
                format!("{field}[{}]", f + 1),
                format!("weight {w} is outside [0, 1]"),
            ));
        }
        if !kind.aggregates() && w != 0.0 {
            return Err(ValidationError::new(
                format!("{field}[{}]", f + 1),
                format!("attribute indicator must have weight 0, got {w}"),
            ));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > VALIDATION_TOL {
        return Err(ValidationError::new(
            field.to_string(),
            format!("weights sum to {sum}, expected 1"),
        ));
    }
    Ok(())
}

fn check_reliability(
    field: &str,
    entries: &[Vec<ReliabilityEntry>],
    rows: usize,
    cols: usize,
) -> Result<(), ValidationError> {
    if entries.len() != rows {
        return Err(ValidationError::new(
            field.to_string(),
            format!("has {} rows, expected {rows}", entries.len()),
        ));
    }
    for (r, row) in entries.iter().enumerate() {
        if row.len() != cols {
            return Err(ValidationError::new(
                format!("{field}[{}]", r + 1),
                format!("has {} entries, expected {cols}", row.len()),
            ));
        }
    }
    Ok(())
}

impl MatchingInstance {
    /// Instance with pre-aggregated satisfaction matrices and no raw indicators.
    pub fn from_matrices(
        alpha: Matrix,
        beta: Matrix,
        gamma: f64,
        eta_interval: [f64; 2],
    ) -> Result<Self, ValidationError> {
        let mut weights = [0.0; INDICATOR_COUNT];
        weights[INDICATOR_COUNT - 1] = 1.0;
        let instance = Self {
            shippers: vec![ShipperProfile::default(); alpha.rows()],
            carriers: vec![CarrierProfile::default(); alpha.cols()],
            weights: SideWeights {
                shipper: weights,
                carrier: weights,
            },
            reliability_shipper: None,
            reliability_carrier: None,
            satisfaction_alpha: Some(alpha),
            satisfaction_beta: Some(beta),
            gamma,
            eta_interval,
            big_m: DEFAULT_BIG_M,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn shipper_count(&self) -> usize {
        self.shippers.len()
    }

    pub fn carrier_count(&self) -> usize {
        self.carriers.len()
    }

    /// True when both satisfaction matrices are supplied and need no aggregation.
    pub fn has_matrices(&self) -> bool {
        self.satisfaction_alpha.is_some() && self.satisfaction_beta.is_some()
    }

    pub fn shipper_weights(&self, i: usize) -> &[f64; INDICATOR_COUNT] {
        self.shippers[i].weights.as_ref().unwrap_or(&self.weights.shipper)
    }

    pub fn carrier_weights(&self, j: usize) -> &[f64; INDICATOR_COUNT] {
        self.carriers[j].weights.as_ref().unwrap_or(&self.weights.carrier)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let m = self.shippers.len();
        let n = self.carriers.len();
        if m == 0 {
            return Err(ValidationError::new("shippers", "at least one shipper is required"));
        }
        if n == 0 {
            return Err(ValidationError::new("carriers", "at least one carrier is required"));
        }
        check_weights("weights.shipper", &self.weights.shipper, &SHIPPER_INDICATORS)?;
        check_weights("weights.carrier", &self.weights.carrier, &CARRIER_INDICATORS)?;

        for (i, s) in self.shippers.iter().enumerate() {
            let at = |name: &str| format!("shippers[{}].{name}", i + 1);
            if let Some(w) = &s.weights {
                check_weights(&at("weights"), w, &SHIPPER_INDICATORS)?;
            }
            check_unit_param(at("theta"), s.theta)?;
            check_unit_param(at("omega"), s.omega)?;
            check_unit_param(at("phi"), s.phi)?;
            if let Some(window) = &s.delivery_window {
                let [lo, hi] = window.value;
                if lo > hi {
                    return Err(ValidationError::new(
                        at("delivery_window"),
                        format!("lower bound {lo} exceeds upper bound {hi}"),
                    ));
                }
            }
        }
        for (j, c) in self.carriers.iter().enumerate() {
            let at = |name: &str| format!("carriers[{}].{name}", j + 1);
            if let Some(w) = &c.weights {
                check_weights(&at("weights"), w, &CARRIER_INDICATORS)?;
            }
            check_unit_param(at("omega"), c.omega)?;
            check_unit_param(at("tau"), c.tau)?;
            if let Some(prefs) = &c.destination_preferences {
                for (k, place) in prefs.value.iter().enumerate() {
                    if prefs.value[..k].contains(place) {
                        return Err(ValidationError::new(
                            at("destination_preferences"),
                            format!("location {place:?} appears more than once"),
                        ));
                    }
                }
            }
        }

        if let Some(rel) = &self.reliability_shipper {
            check_reliability("reliability_shipper", rel, m, n)?;
        }
        if let Some(rel) = &self.reliability_carrier {
            check_reliability("reliability_carrier", rel, n, m)?;
        }
        if let Some(alpha) = &self.satisfaction_alpha {
            if alpha.rows() != m || alpha.cols() != n {
                return Err(ValidationError::new(
                    "satisfaction_alpha",
                    format!("is {}x{}, expected {m}x{n}", alpha.rows(), alpha.cols()),
                ));
            }
        }
        if let Some(beta) = &self.satisfaction_beta {
            if beta.rows() != n || beta.cols() != m {
                return Err(ValidationError::new(
                    "satisfaction_beta",
                    format!("is {}x{}, expected {n}x{m}", beta.rows(), beta.cols()),
                ));
            }
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(ValidationError::new(
                "gamma",
                format!("{} must lie in (0, 1)", self.gamma),
            ));
        }
        let [lo, hi] = self.eta_interval;
        if !(lo > 0.0 && lo <= hi) {
            return Err(ValidationError::new(
                "eta_interval",
                format!("[{lo}, {hi}] must satisfy 0 < lower <= upper"),
            ));
        }
        if !(self.big_m > 0.0 && self.big_m.is_finite()) {
            return Err(ValidationError::new(
                "big_m",
                format!("{} must be a positive finite number", self.big_m),
            ));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization is infallible")
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<MatchingInstance, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let instance = MatchingInstance::from_json(&text).map_err(|source| IoError::Schema {
        path: path.to_path_buf(),
        source,
    })?;
    instance.validate()?;
    Ok(instance)
}

pub fn write_instance(instance: &MatchingInstance, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, instance.to_json() + "\n").map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// A (shipper, carrier) pair, 0-based.
pub type Pair = (usize, usize);

/// A feasible 0-1 assignment with its objective values and fuzzy satisfactions.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingScheme {
    /// Sorted by shipper index; each shipper and each carrier appears at most once.
    pub pairs: Vec<Pair>,
    pub f1: f64,
    pub f2: f64,
    pub u1: f64,
    pub v1: f64,
    pub s1: f64,
    pub u2: f64,
    pub v2: f64,
    pub s2: f64,
    /// Fairness factor `s1 / s2`; `None` when `s2 == 0`.
    pub eta: Option<f64>,
}

impl MatchingScheme {
    pub fn overall(&self) -> f64 {
        self.s1 + self.s2
    }

    /// `u1 / u2`, the ratio the interactive fairness loop tests.
    pub fn membership_ratio(&self) -> Option<f64> {
        (self.u2 != 0.0).then(|| self.u1 / self.u2)
    }

    /// Pairs as 1-based `(shipper, carrier)` tuples.
    pub fn pairs_one_based(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    /// Pair list in the `(1,4)(2,1)...` notation.
    pub fn pair_string(&self) -> String {
        format_pairs(&self.pairs)
    }

    pub fn report(&self) -> SchemeReport {
        SchemeReport {
            pairs: self.pairs_one_based().into_iter().map(|(i, j)| [i, j]).collect(),
            f1: self.f1,
            f2: self.f2,
            u1: self.u1,
            v1: self.v1,
            s1: self.s1,
            u2: self.u2,
            v2: self.v2,
            s2: self.s2,
            overall: self.overall(),
            eta: self.eta,
            rounded: RoundedMetrics {
                f1: round2(self.f1),
                f2: round2(self.f2),
                s1: round2(self.s1),
                s2: round2(self.s2),
                overall: round2(self.overall()),
                eta: self.eta.map(round2),
            },
        }
    }
}

pub fn format_pairs(pairs: &[Pair]) -> String {
    pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
        .collect()
}

/// Round to two decimals, the precision the published tables use.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundedMetrics {
    pub f1: f64,
    pub f2: f64,
    pub s1: f64,
    pub s2: f64,
    pub overall: f64,
    pub eta: Option<f64>,
}

/// Output schema of a matching scheme: full-precision metrics and 2-decimal mirrors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeReport {
    /// 1-based `[shipper, carrier]` pairs.
    pub pairs: Vec<[usize; 2]>,
    pub f1: f64,
    pub f2: f64,
    pub u1: f64,
    pub v1: f64,
    pub s1: f64,
    pub u2: f64,
    pub v2: f64,
    pub s2: f64,
    pub overall: f64,
    pub eta: Option<f64>,
    pub rounded: RoundedMetrics,
}

pub fn write_scheme(scheme: &MatchingScheme, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(&scheme.report()).expect("report serialization");
    fs::write(path, text + "\n").map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

impl fmt::Display for MatchingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} f1={:.4} f2={:.4} s1={:.4} s2={:.4}",
            self.pair_string(),
            self.f1,
            self.f2,
            self.s1,
            self.s2
        )?;
        match self.eta {
            Some(eta) => write!(f, " eta={eta:.4}"),
            None => write!(f, " eta=undefined"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> MatchingInstance {
        MatchingInstance::from_matrices(
            Matrix::from_rows(vec![vec![0.5, 0.7]]).unwrap(),
            Matrix::from_rows(vec![vec![0.4], vec![0.9]]).unwrap(),
            0.2,
            [0.75, 1.0],
        )
        .unwrap()
    }

    #[test]
    fn empty_shipper_list_is_rejected() {
        let mut inst = tiny();
        inst.shippers.clear();
        inst.satisfaction_alpha = None;
        let err = inst.validate().unwrap_err();
        assert_eq!(err.field, "shippers");
    }

    #[test]
    fn weights_must_sum_to_one() {
        let mut inst = tiny();
        inst.weights.shipper = [0.5, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let err = inst.validate().unwrap_err();
        assert_eq!(err.field, "weights.shipper");
        assert!(err.message.contains("sum"));
    }

    #[test]
    fn attribute_weights_must_be_zero() {
        let mut inst = tiny();
        inst.weights.carrier = [0.0, 0.5, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0];
        let err = inst.validate().unwrap_err();
        assert_eq!(err.field, "weights.carrier[6]");
    }

    #[test]
    fn matrix_dimensions_are_checked() {
        let mut inst = tiny();
        inst.satisfaction_beta = Some(Matrix::from_rows(vec![vec![0.4, 0.9]]).unwrap());
        assert_eq!(inst.validate().unwrap_err().field, "satisfaction_beta");
    }

    #[test]
    fn gamma_and_eta_interval_ranges() {
        let mut inst = tiny();
        inst.gamma = 1.0;
        assert_eq!(inst.validate().unwrap_err().field, "gamma");
        let mut inst = tiny();
        inst.eta_interval = [1.0, 0.5];
        assert_eq!(inst.validate().unwrap_err().field, "eta_interval");
    }

    #[test]
    fn duplicate_preferences_rejected() {
        let mut inst = tiny();
        inst.carriers[0].destination_preferences =
            Some(Expectation::tolerable(vec!["a".into(), "b".into(), "a".into()]));
        assert_eq!(
            inst.validate().unwrap_err().field,
            "carriers[1].destination_preferences"
        );
    }

    #[test]
    fn ifnumber_invariants() {
        assert!(IFNumber::new(0.6, 0.3).is_ok());
        assert!(IFNumber::new(0.6, 0.5).is_err());
        assert!(IFNumber::new(-0.1, 0.5).is_err());
        let x = IFNumber::new(0.6, 0.3).unwrap();
        assert!((x.hesitation() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn reliability_entries_parse_both_forms() {
        let rows: Vec<Vec<ReliabilityEntry>> =
            serde_json::from_str(r#"[[1.07, {"mu": 0.6, "nu": 0.2}]]"#).unwrap();
        assert_eq!(rows[0][0], ReliabilityEntry::Score(1.07));
        assert!(matches!(rows[0][1], ReliabilityEntry::Fuzzy(_)));
        let bad: Result<Vec<ReliabilityEntry>, _> = serde_json::from_str(r#"[{"mu": 0.9, "nu": 0.5}]"#);
        assert!(bad.is_err());
    }

    #[test]
    fn empty_scheme_report_has_empty_pairs() {
        let scheme = MatchingScheme {
            pairs: vec![],
            f1: 0.0,
            f2: 0.0,
            u1: 0.0,
            v1: 1.0,
            s1: -1.0,
            u2: 0.0,
            v2: 1.0,
            s2: -1.0,
            eta: Some(1.0),
        };
        let json = serde_json::to_string(&scheme.report()).unwrap();
        assert!(json.contains(r#""pairs":[]"#));
    }

    #[test]
    fn rounded_mirrors() {
        let scheme = MatchingScheme {
            pairs: vec![(0, 3), (1, 0)],
            f1: 6.82,
            f2: 7.05,
            u1: 0.8622,
            v1: 0.0,
            s1: 0.8622,
            u2: 0.8790,
            v2: 0.0,
            s2: 0.8790,
            eta: Some(0.8622 / 0.8790),
        };
        let report = scheme.report();
        assert_eq!(report.rounded.s1, 0.86);
        assert_eq!(report.rounded.s2, 0.88);
        assert_eq!(report.pairs, vec![[1, 4], [2, 1]]);
        assert_eq!(scheme.pair_string(), "(1,4)(2,1)");
    }
}
