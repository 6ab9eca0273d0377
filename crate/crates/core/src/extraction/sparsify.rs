//! Sequence sparsification: rounding to powers of (1+eps) and keeping one
//! residue class of the exponent.
//!
//! Input: positive a_1..a_m with a_j <= 2 a_i for all i < j. Output: indices
//! L with |L| >= m / r, r = ceil(log_{1+eps}(2k)) + 1, and values
//! b_i = (1+eps)^{t(a_i)} in [a_i, (1+eps) a_i] such that any two kept values
//! are equal or separated by a factor k. Two kept exponents in the same
//! residue class mod r are either equal or differ by at least r, and the
//! prefix-dominance condition rules out increases, so distinct kept values
//! drop by (1+eps)^r >= 2k.

use crate::approx;
use crate::error::ExtractError;

/// Output of [`sparsify_sequence`].
#[derive(Debug, Clone, PartialEq)]
pub struct SparsifiedSequence {
    /// Kept positions (ascending, 0-based).
    pub kept: Vec<usize>,
    /// Rounded values b_i for the kept positions, in the same order.
    pub values: Vec<f64>,
    /// Number of residue classes r.
    pub classes: usize,
}

/// The unique integer t with (1+eps)^(t-1) < a <= (1+eps)^t.
fn exponent(a: f64, eps: f64) -> i64 {
    let base = 1.0 + eps;
    let mut t = (a.ln() / base.ln()).ceil() as i64;
    // settle float boundaries exactly against powi
    while power(base, t - 1) >= a {
        t -= 1;
    }
    while power(base, t) < a {
        t += 1;
    }
    t
}

fn power(base: f64, t: i64) -> f64 {
    if t >= 0 {
        base.powi(t as i32)
    } else {
        1.0 / base.powi(-t as i32)
    }
}

pub fn sparsify_sequence(
    a: &[f64],
    eps: f64,
    k: f64,
) -> Result<SparsifiedSequence, ExtractError> {
    if !(eps > 0.0) || !(k >= 1.0) {
        return Err(ExtractError::InvalidParameter(format!(
            "need eps > 0 and k >= 1, got eps = {eps}, k = {k}"
        )));
    }
    if a.is_empty() || a.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(ExtractError::InvalidParameter("sequence must be positive and finite".into()));
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if !approx::le(a[j], 2.0 * a[i]) {
                return Err(ExtractError::PrefixDominanceViolated { i, j });
            }
        }
    }
    let base = 1.0 + eps;
    let r = (approx::ceil_tol((2.0 * k).ln() / base.ln()).max(0.0) as usize) + 1;
    let ts: Vec<i64> = a.iter().map(|&x| exponent(x, eps)).collect();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (i, &t) in ts.iter().enumerate() {
        classes[t.rem_euclid(r as i64) as usize].push(i);
    }
    let (best, _) = classes
        .iter()
        .enumerate()
        .max_by(|(ia, x), (ib, y)| x.len().cmp(&y.len()).then(ib.cmp(ia)))
        .expect("r >= 1");
    let kept = classes[best].clone();
    let values = kept.iter().map(|&i| power(base, ts[i])).collect();
    Ok(SparsifiedSequence { kept, values, classes: r })
}
