//! Indicator satisfaction, reliability scoring and comprehensive aggregation.
//!
//! Every per-indicator function returns a value in `[-1, 1]`, or exactly
//! `-big_m` when an intolerable expectation is violated.

use crate::error::{SatisfactionError, ValidationError};
use crate::model::{
    FeasibilityMask, IFNumber, MatchingInstance, Matrix, ReliabilityEntry, Tolerability,
    DEFAULT_BIG_M,
};

/// Switches between the printed formulas and the symmetric-denominator variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatisfactionOptions {
    /// Below-interval branch uses `aU - b` as printed; otherwise `aU - aL`.
    pub eq1_verbatim: bool,
    /// Benefit first branch uses `amax - b` as printed; otherwise `amax - amin`.
    pub benefit_verbatim: bool,
}

impl Default for SatisfactionOptions {
    fn default() -> Self {
        Self {
            eq1_verbatim: true,
            benefit_verbatim: true,
        }
    }
}

fn check_param(name: &'static str, value: f64) -> Result<(), SatisfactionError> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(SatisfactionError::Parameter { name, value })
    }
}

/// `num / den`, with `0/0` taken as `zero_over_zero`.
fn ratio(num: f64, den: f64, zero_over_zero: f64) -> f64 {
    if den == 0.0 {
        zero_over_zero
    } else {
        num / den
    }
}

/// Interval-type expectation (delivery date): earlier inside the window is better.
pub fn interval_satisfaction(
    b: f64,
    interval: [f64; 2],
    theta: f64,
    tolerability: Tolerability,
    big_m: f64,
) -> Result<f64, SatisfactionError> {
    interval_satisfaction_with(b, interval, theta, tolerability, big_m, true)
}

/// As [`interval_satisfaction`], optionally with the symmetric below-interval
/// denominator `aU - aL` (ratio clamped to 1 so the range stays `[-1, 1]`).
pub fn interval_satisfaction_with(
    b: f64,
    interval: [f64; 2],
    theta: f64,
    tolerability: Tolerability,
    big_m: f64,
    verbatim: bool,
) -> Result<f64, SatisfactionError> {
    check_param("theta", theta)?;
    let [lo, hi] = interval;
    if lo > hi {
        return Err(SatisfactionError::Interval {
            lower: lo,
            upper: hi,
        });
    }
    if (lo..=hi).contains(&b) {
        return Ok(theta + (1.0 - theta) * ratio(hi - b, hi - lo, 1.0));
    }
    if tolerability == Tolerability::Intolerable {
        return Ok(-big_m);
    }
    if b < lo {
        let r = if verbatim {
            (lo - b) / (hi - b)
        } else {
            ratio(lo - b, hi - lo, 1.0).min(1.0)
        };
        Ok(-theta * r)
    } else {
        Ok(-theta * (b - hi) / (b - lo))
    }
}

/// Cost-type expectation (shipper's price): cheaper is better.
///
/// `b_range` is `[b_min, b_max]` over all carriers' quotes and must contain `b`.
pub fn cost_satisfaction(
    b: f64,
    a: f64,
    b_range: [f64; 2],
    omega: f64,
    tolerability: Tolerability,
    big_m: f64,
) -> Result<f64, SatisfactionError> {
    check_param("omega", omega)?;
    let [bmin, bmax] = b_range;
    if bmin > bmax {
        return Err(SatisfactionError::Interval {
            lower: bmin,
            upper: bmax,
        });
    }
    if b < bmin || b > bmax {
        return Err(SatisfactionError::Missing(ValidationError::new(
            "price",
            format!("quote {b} lies outside the market range [{bmin}, {bmax}]"),
        )));
    }
    if b <= a {
        return Ok(omega + (1.0 - omega) * ratio(a - b, a - bmin, 0.0));
    }
    match tolerability {
        Tolerability::Tolerable => Ok(-omega * (b - a) / (bmax - a)),
        Tolerability::Intolerable => Ok(-big_m),
    }
}

/// Fixed expectation (vehicle type): exact match or penalty.
pub fn fixed_satisfaction<T: PartialEq + ?Sized>(
    b: &T,
    a: &T,
    phi: f64,
    tolerability: Tolerability,
    big_m: f64,
) -> Result<f64, SatisfactionError> {
    check_param("phi", phi)?;
    if b == a {
        return Ok(1.0);
    }
    match tolerability {
        Tolerability::Tolerable => Ok(-phi),
        Tolerability::Intolerable => Ok(-big_m),
    }
}

/// Benefit-type expectation (carrier's price): a higher offer `a` is better.
///
/// `a_range` is `[a_min, a_max]` over all shippers' offers and must contain `a`.
pub fn benefit_satisfaction(
    a: f64,
    b: f64,
    a_range: [f64; 2],
    omega: f64,
    tolerability: Tolerability,
    big_m: f64,
) -> Result<f64, SatisfactionError> {
    benefit_satisfaction_with(a, b, a_range, omega, tolerability, big_m, true)
}

/// As [`benefit_satisfaction`], optionally with first-branch denominator `amax - amin`.
pub fn benefit_satisfaction_with(
    a: f64,
    b: f64,
    a_range: [f64; 2],
    omega: f64,
    tolerability: Tolerability,
    big_m: f64,
    verbatim: bool,
) -> Result<f64, SatisfactionError> {
    check_param("omega", omega)?;
    let [amin, amax] = a_range;
    if amin > amax {
        return Err(SatisfactionError::Interval {
            lower: amin,
            upper: amax,
        });
    }
    if a < amin || a > amax {
        return Err(SatisfactionError::Missing(ValidationError::new(
            "price",
            format!("offer {a} lies outside the market range [{amin}, {amax}]"),
        )));
    }
    if a >= b {
        let den = if verbatim { amax - b } else { amax - amin };
        return Ok(omega + (1.0 - omega) * ratio(a - b, den, 1.0).min(1.0));
    }
    match tolerability {
        Tolerability::Tolerable => Ok(-omega * (b - a) / (b - amin)),
        Tolerability::Intolerable => Ok(-big_m),
    }
}

/// Preference-sequence expectation: `rank^(-tau)`, or `-big_m` when absent.
pub fn preference_satisfaction<T: PartialEq>(
    a: &T,
    prefs: &[T],
    tau: f64,
    big_m: f64,
) -> Result<f64, SatisfactionError> {
    check_param("tau", tau)?;
    Ok(match prefs.iter().position(|p| p == a) {
        Some(idx) => ((idx + 1) as f64).powf(-tau),
        None => -big_m,
    })
}

/// `x * log2(x / q)` with `0 * log(0 / q) = 0` and zero-denominator terms dropped.
fn xlog2(x: f64, q: f64) -> f64 {
    if x <= 0.0 || q <= 0.0 {
        0.0
    } else {
        x * (x / q).log2()
    }
}

fn cross_entropy(u: f64, v: f64) -> f64 {
    let mean = (u + v) / 2.0;
    xlog2(u, mean) + xlog2(1.0 - u, 1.0 - mean)
}

/// Cross-entropy score of an intuitionistic fuzzy number.
pub fn ifs_score(x: IFNumber) -> f64 {
    let (mu, nu) = (x.mu(), x.nu());
    let pi = 1.0 - mu - nu;
    let h = (cross_entropy(mu, nu) + cross_entropy(nu, mu)) / 2.0;
    let sign = match mu.partial_cmp(&nu) {
        Some(std::cmp::Ordering::Greater) => 1.0,
        Some(std::cmp::Ordering::Less) => -1.0,
        _ => 0.0,
    };
    (mu - nu + h * sign * pi).exp() / (1.0 + pi * pi)
}

pub fn reliability_value(entry: &ReliabilityEntry) -> f64 {
    match entry {
        ReliabilityEntry::Score(s) => *s,
        ReliabilityEntry::Fuzzy(x) => ifs_score(*x),
    }
}

/// Criterion weights from a `p x q` evaluation matrix: normalized column sums.
pub fn criteria_weights(v: &Matrix) -> Result<Vec<f64>, SatisfactionError> {
    if v.rows() == 0 || v.cols() == 0 {
        return Err(SatisfactionError::DegenerateCriteria("matrix is empty"));
    }
    let mut cols = vec![0.0; v.cols()];
    for r in 0..v.rows() {
        for (c, acc) in cols.iter_mut().enumerate() {
            let x = v.get(r, c);
            if !(x >= 0.0) {
                return Err(SatisfactionError::DegenerateCriteria(
                    "entries must be non-negative",
                ));
            }
            *acc += x;
        }
    }
    let total: f64 = cols.iter().sum();
    if total <= 0.0 {
        return Err(SatisfactionError::DegenerateCriteria("all entries are zero"));
    }
    Ok(cols.into_iter().map(|c| c / total).collect())
}

/// Per-indicator satisfaction of one directed pair. `None` means the data needed
/// to evaluate the indicator is absent on one side.
type IndicatorRow = [Option<f64>; crate::model::INDICATOR_COUNT];

fn missing(field: String, what: &str) -> SatisfactionError {
    SatisfactionError::Missing(ValidationError::new(field, format!("{what} is required")))
}

fn price_range(values: impl Iterator<Item = Option<f64>>) -> Option<[f64; 2]> {
    let mut range: Option<[f64; 2]> = None;
    for v in values.flatten() {
        range = Some(match range {
            None => [v, v],
            Some([lo, hi]) => [lo.min(v), hi.max(v)],
        });
    }
    range
}

struct Evaluator<'a> {
    inst: &'a MatchingInstance,
    opts: SatisfactionOptions,
    carrier_prices: Option<[f64; 2]>,
    shipper_prices: Option<[f64; 2]>,
}

impl<'a> Evaluator<'a> {
    fn new(inst: &'a MatchingInstance, opts: SatisfactionOptions) -> Self {
        Self {
            inst,
            opts,
            carrier_prices: price_range(
                inst.carriers.iter().map(|c| c.price.as_ref().map(|p| p.value)),
            ),
            shipper_prices: price_range(
                inst.shippers.iter().map(|s| s.price.as_ref().map(|p| p.value)),
            ),
        }
    }

    fn shipper_row(&self, i: usize, j: usize) -> Result<IndicatorRow, SatisfactionError> {
        let s = &self.inst.shippers[i];
        let c = &self.inst.carriers[j];
        let big_m = self.inst.big_m;
        let at = |name: &str| format!("shippers[{}].{name}", i + 1);
        let mut row: IndicatorRow = [None; 9];

        if let (Some(window), Some(days)) = (&s.delivery_window, c.delivery_days) {
            let theta = s.theta.ok_or_else(|| missing(at("theta"), "theta"))?;
            row[0] = Some(interval_satisfaction_with(
                days,
                window.value,
                theta,
                window.tolerability,
                big_m,
                self.opts.eq1_verbatim,
            )?);
        }
        if let (Some(price), Some(quote), Some(range)) =
            (&s.price, &c.price, self.carrier_prices)
        {
            let omega = s.omega.ok_or_else(|| missing(at("omega"), "omega"))?;
            row[1] = Some(cost_satisfaction(
                quote.value,
                price.value,
                range,
                omega,
                price.tolerability,
                big_m,
            )?);
        }
        if let (Some(wanted), Some(offered)) = (&s.vehicle_type, &c.vehicle_type) {
            let phi = s.phi.ok_or_else(|| missing(at("phi"), "phi"))?;
            row[2] = Some(fixed_satisfaction(
                offered.as_str(),
                wanted.value.as_str(),
                phi,
                wanted.tolerability,
                big_m,
            )?);
        }
        if let Some(rel) = &self.inst.reliability_shipper {
            row[8] = Some(reliability_value(&rel[i][j]));
        }
        Ok(row)
    }

    fn carrier_row(&self, j: usize, i: usize) -> Result<IndicatorRow, SatisfactionError> {
        let s = &self.inst.shippers[i];
        let c = &self.inst.carriers[j];
        let big_m = self.inst.big_m;
        let at = |name: &str| format!("carriers[{}].{name}", j + 1);
        let mut row: IndicatorRow = [None; 9];

        if let (Some(expect), Some(offer), Some(range)) =
            (&c.price, &s.price, self.shipper_prices)
        {
            let omega = c.omega.ok_or_else(|| missing(at("omega"), "omega"))?;
            row[1] = Some(benefit_satisfaction_with(
                offer.value,
                expect.value,
                range,
                omega,
                expect.tolerability,
                big_m,
                self.opts.benefit_verbatim,
            )?);
        }
        if let (Some(prefs), Some(dest)) = (&c.destination_preferences, &s.destination) {
            let tau = c.tau.ok_or_else(|| missing(at("tau"), "tau"))?;
            row[7] = Some(preference_satisfaction(dest, &prefs.value, tau, big_m)?);
        }
        if let Some(rel) = &self.inst.reliability_carrier {
            row[8] = Some(reliability_value(&rel[j][i]));
        }
        Ok(row)
    }
}

fn weighted(
    row: &IndicatorRow,
    weights: &[f64; 9],
    field: impl Fn(usize) -> String,
) -> Result<f64, SatisfactionError> {
    let mut total = 0.0;
    for (f, (&w, value)) in weights.iter().zip(row).enumerate() {
        if w == 0.0 {
            continue;
        }
        match value {
            Some(v) => total += w * v,
            None => return Err(missing(field(f), "indicator value for a weighted indicator")),
        }
    }
    Ok(total)
}

/// Comprehensive satisfaction matrices `(alpha: m x n, beta: n x m)`.
///
/// Supplied matrices are returned unchanged; otherwise every weighted indicator
/// must be computable from the raw profiles.
pub fn aggregate(
    inst: &MatchingInstance,
    opts: SatisfactionOptions,
) -> Result<(Matrix, Matrix), SatisfactionError> {
    let m = inst.shipper_count();
    let n = inst.carrier_count();
    let ev = Evaluator::new(inst, opts);
    let alpha = match &inst.satisfaction_alpha {
        Some(a) => a.clone(),
        None => {
            let mut a = Matrix::zeros(m, n);
            for i in 0..m {
                for j in 0..n {
                    let row = ev.shipper_row(i, j)?;
                    let value = weighted(&row, inst.shipper_weights(i), |f| {
                        format!("shippers[{}] indicator A{} for carrier {}", i + 1, f + 1, j + 1)
                    })?;
                    a.set(i, j, value);
                }
            }
            a
        }
    };
    let beta = match &inst.satisfaction_beta {
        Some(b) => b.clone(),
        None => {
            let mut b = Matrix::zeros(n, m);
            for j in 0..n {
                for i in 0..m {
                    let row = ev.carrier_row(j, i)?;
                    let value = weighted(&row, inst.carrier_weights(j), |f| {
                        format!("carriers[{}] indicator B{} for shipper {}", j + 1, f + 1, i + 1)
                    })?;
                    b.set(j, i, value);
                }
            }
            b
        }
    };
    Ok((alpha, beta))
}

fn fits(need: Option<f64>, have: Option<f64>) -> bool {
    match (need, have) {
        (Some(n), Some(h)) => n <= h,
        _ => true,
    }
}

/// Admissible pairs: capacities fit, departures agree, and no indicator hit the
/// intolerable sentinel. All-true when both matrices were supplied directly.
pub fn feasibility_screen(
    inst: &MatchingInstance,
    opts: SatisfactionOptions,
) -> Result<FeasibilityMask, SatisfactionError> {
    let m = inst.shipper_count();
    let n = inst.carrier_count();
    if inst.has_matrices() {
        return Ok(FeasibilityMask::all(m, n));
    }
    let ev = Evaluator::new(inst, opts);
    let sentinel = -inst.big_m;
    let mut mask = FeasibilityMask::all(m, n);
    for i in 0..m {
        let s = &inst.shippers[i];
        for j in 0..n {
            let c = &inst.carriers[j];
            let departure_ok = match (&s.departure, &c.departure) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            let attributes_ok = fits(s.cargo_weight, c.deadweight)
                && fits(s.cargo_length, c.vehicle_length)
                && fits(s.cargo_volume, c.vehicle_volume)
                && departure_ok;
            let hit = |row: &IndicatorRow| row.iter().flatten().any(|&v| v == sentinel);
            let ok = attributes_ok
                && !hit(&ev.shipper_row(i, j)?)
                && !hit(&ev.carrier_row(j, i)?);
            mask.set(i, j, ok);
        }
    }
    Ok(mask)
}

/// Default `-M` sentinel, re-exported for callers building raw inputs.
pub const BIG_M: f64 = DEFAULT_BIG_M;
