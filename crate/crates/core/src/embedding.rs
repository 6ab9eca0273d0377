//! Embedding certificates: bijections with recomputable distortion.
//!
//! The distortion of a bijection f is the product of its maximal expansion
//! sup d_B(f(x),f(y)) / d_A(x,y) and maximal contraction
//! sup d_A(x,y) / d_B(f(x),f(y)). Every extraction algorithm returns an
//! [`EmbeddingCert`] as its proof of work; `verify` recomputes all three
//! quantities from the stored map.

use serde::{Deserialize, Serialize};

use crate::approx;
use crate::error::MetricError;
use crate::metric::MetricSpace;

/// A bijection between two equal-sized spaces with its certified ratios.
///
/// `map[i]` is the target index of source point `i`. A certificate is
/// non-contractive iff `contraction <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingCert {
    pub source: MetricSpace,
    pub target: MetricSpace,
    pub map: Vec<usize>,
    pub expansion: f64,
    pub contraction: f64,
    pub distortion: f64,
}

impl EmbeddingCert {
    /// Certificate for a single-point space; all ratios are 1 by convention
    /// (the supremum over an empty pair set).
    pub fn trivial(source: MetricSpace, target: MetricSpace) -> Self {
        assert_eq!(source.len(), 1);
        assert_eq!(target.len(), 1);
        EmbeddingCert {
            source,
            target,
            map: vec![0],
            expansion: 1.0,
            contraction: 1.0,
            distortion: 1.0,
        }
    }

    pub fn is_non_contractive(&self) -> bool {
        approx::le(self.contraction, 1.0)
    }

    /// Recomputes expansion/contraction/distortion from the map and checks
    /// that the stored values match within relative slack and distortion >= 1.
    pub fn verify(&self) -> Result<(), MetricError> {
        let fresh = distortion_of(&self.map, &self.source, &self.target);
        let fresh = match fresh {
            Ok(c) => c,
            Err(MetricError::TooSmall { .. }) if self.source.len() == 1 => {
                return if self.expansion == 1.0 && self.contraction == 1.0 && self.distortion == 1.0
                {
                    Ok(())
                } else {
                    Err(MetricError::SizeMismatch { a: 1, b: 1 })
                };
            }
            Err(e) => return Err(e),
        };
        let ok = approx::eq(fresh.expansion, self.expansion)
            && approx::eq(fresh.contraction, self.contraction)
            && approx::eq(fresh.distortion, self.distortion)
            && approx::ge(self.distortion, 1.0);
        if ok {
            Ok(())
        } else {
            Err(MetricError::SizeMismatch { a: self.source.len(), b: self.target.len() })
        }
    }
}

/// Computes the certificate of the bijection `map : A -> B`.
///
/// Requires `|A| = |B| >= 2` and `map` bijective.
pub fn distortion_of(
    map: &[usize],
    a: &MetricSpace,
    b: &MetricSpace,
) -> Result<EmbeddingCert, MetricError> {
    if a.len() != b.len() || map.len() != a.len() {
        return Err(MetricError::SizeMismatch { a: a.len(), b: b.len() });
    }
    if a.len() < 2 {
        return Err(MetricError::TooSmall { need: 2, got: a.len() });
    }
    let mut hit = vec![false; b.len()];
    for &t in map {
        if t >= b.len() || hit[t] {
            return Err(MetricError::SizeMismatch { a: a.len(), b: b.len() });
        }
        hit[t] = true;
    }
    let mut expansion = 0.0f64;
    let mut contraction = 0.0f64;
    for (i, j, da) in a.pairs() {
        let db = b.d(map[i], map[j]);
        expansion = expansion.max(db / da);
        contraction = contraction.max(da / db);
    }
    Ok(EmbeddingCert {
        source: a.clone(),
        target: b.clone(),
        map: map.to_vec(),
        expansion,
        contraction,
        distortion: expansion * contraction,
    })
}
