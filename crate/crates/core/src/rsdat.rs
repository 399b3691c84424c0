//! Indicator weighting from adjacent relative-importance scales.
//!
//! Indicators are listed in descending importance; `scales[a]` compares
//! indicator `a` with `a + 1` (0.5 = equally important).

use crate::error::ValidationError;
use crate::model::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyScales {
    ids: Vec<String>,
    scales: Vec<f64>,
}

impl AdjacencyScales {
    pub fn new(ids: Vec<String>, scales: Vec<f64>) -> Result<Self, ValidationError> {
        if ids.is_empty() {
            return Err(ValidationError::new("ids", "at least one indicator is required"));
        }
        if scales.len() + 1 != ids.len() {
            return Err(ValidationError::new(
                "scales",
                format!("expected {} adjacent scales for {} indicators, got {}", ids.len() - 1, ids.len(), scales.len()),
            ));
        }
        for (a, &s) in scales.iter().enumerate() {
            if !(s > 0.0 && s < 1.0) {
                return Err(ValidationError::new(
                    format!("scales[{}]", a + 1),
                    format!("{s} must lie in (0, 1)"),
                ));
            }
        }
        Ok(Self { ids, scales })
    }

    /// Scales only; indicators are named `o1..ok`.
    pub fn from_scales(scales: Vec<f64>) -> Result<Self, ValidationError> {
        let ids = (1..=scales.len() + 1).map(|k| format!("o{k}")).collect();
        Self::new(ids, scales)
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Positions of scales below 0.5, which contradict the declared order.
    pub fn order_conflicts(&self) -> Vec<usize> {
        self.scales
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0.5)
            .map(|(a, _)| a)
            .collect()
    }
}

/// Full complementary comparison matrix.
pub fn rsdat_matrix(scales: &AdjacencyScales) -> Matrix {
    let k = scales.len();
    let mut m = Matrix::from_fn(k, k, |_, _| 0.5);
    for a in 0..k {
        for b in a + 1..k {
            let prev = m.get(a, b - 1);
            let value = if b == a + 1 {
                scales.scales[a]
            } else {
                prev + 2.0 * (1.0 - prev) * (scales.scales[b - 1] - 0.5)
            };
            m.set(a, b, value);
            m.set(b, a, 1.0 - value);
        }
    }
    m
}

/// Normalized off-diagonal row sums.
pub fn rsdat_weights(scales: &AdjacencyScales) -> Vec<f64> {
    let k = scales.len();
    if k == 1 {
        return vec![1.0];
    }
    let m = rsdat_matrix(scales);
    let raw: Vec<f64> = (0..k)
        .map(|a| (0..k).filter(|&b| b != a).map(|b| m.get(a, b)).sum())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
