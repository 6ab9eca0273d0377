//! Lacunary sequences and the metrics they define.
//!
//! A sequence a_1 >= a_2 >= ... >= a_m > 0 is k-lacunary when
//! a_{i+1} <= a_i / k. It defines a metric on m+1 points by
//! d(i,j) = a_min(i,j): a length-m sequence yields an (m+1)-point space, so
//! every value participates (the last point reuses no value of its own).

use serde::{Deserialize, Serialize};

use crate::approx;
use crate::error::HstError;
use crate::metric::MetricSpace;

/// A validated k-lacunary sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LacunarySequence {
    values: Vec<f64>,
    k: f64,
}

impl LacunarySequence {
    /// Validates positivity and a_{i+1} <= a_i / k (relative slack 1e-9).
    pub fn new(values: Vec<f64>, k: f64) -> Result<Self, HstError> {
        if !(k >= 1.0) || !k.is_finite() {
            return Err(HstError::BadParameters(format!("separation parameter k = {k} must be >= 1")));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(HstError::NotLacunary { k, position: i });
            }
        }
        for i in 0..values.len().saturating_sub(1) {
            if !approx::le(values[i + 1], values[i] / k) {
                return Err(HstError::NotLacunary { k, position: i + 1 });
            }
        }
        Ok(LacunarySequence { values, k })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of points of the metric this sequence defines.
    pub fn point_count(&self) -> usize {
        self.values.len() + 1
    }
}

/// The (m+1)-point metric of a length-m lacunary sequence:
/// d(i,j) = a_min(i,j) for i < j (0-based: d(i,j) = values[i]).
pub fn lacunary_metric(seq: &LacunarySequence) -> Result<MetricSpace, HstError> {
    let m = seq.len();
    if m < 1 {
        return Err(HstError::BadParameters("sequence must have at least one value".into()));
    }
    let n = m + 1;
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            dist[i * n + j] = seq.values[i];
            dist[j * n + i] = seq.values[i];
        }
    }
    Ok(MetricSpace::new_unchecked(labels, dist))
}

/// Thins an a-lacunary sequence into a b-lacunary one, b > a > 1.
///
/// Keeps indices 0, s, 2s, ... with stride s = ceil(1 + log_a b), so the
/// output has length >= ceil(m / s) and consecutive kept values shrink by at
/// least a^s >= a * b > b. Keeping the first index preserves the largest
/// scale.
pub fn lacunary_subsequence(seq: &LacunarySequence, b: f64) -> Result<LacunarySequence, HstError> {
    let a = seq.k();
    if !(a > 1.0) || !(b > a) {
        return Err(HstError::BadParameters(format!(
            "need b > a > 1, got a = {a}, b = {b}"
        )));
    }
    let stride = approx::ceil_tol(1.0 + b.ln() / a.ln()) as usize;
    let kept: Vec<f64> = seq.values.iter().step_by(stride).copied().collect();
    LacunarySequence::new(kept, b)
}
