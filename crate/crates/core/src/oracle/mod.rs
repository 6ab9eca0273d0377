//! Exact, exponential-time deciders and maximizers for alpha-embeddability
//! into equilateral, k-lacunary, and binary k-HST spaces.
//!
//! These are the ground truth the extraction algorithms and upper-bound
//! constructions are checked against. Searches are deliberately exhaustive;
//! each query is guarded by a configurable cap and exceeding a cap is an
//! error, never a silent approximation. A slower reference path (no greedy
//! shortcuts, no pruning) lives in [`reference`] and is used by the test
//! suites to certify the fast deciders at small scale.
//!
//! Both deciders normalize the embedding to be non-contractive with
//! expansion at most alpha (c = 1). This loses no generality: distortion and
//! the lacunarity/separation constraints are scale invariant, so any witness
//! can be rescaled until its contraction is exactly 1.

pub mod binary_hst;
pub mod bounds;
pub mod clique;
pub mod equilateral;
pub mod fourpoint;
pub mod lacunary;
pub mod reference;
pub mod scalar;

use serde::{Deserialize, Serialize};

use crate::approx;
use crate::embedding::distortion_of;
use crate::error::{MetricError, OracleError};
use crate::hst::{hst_metric, HstTree};
use crate::lacunary::{lacunary_metric, LacunarySequence};
use crate::metric::{restrict, MetricSpace};

pub use binary_hst::{is_binary_hst_embeddable, max_binary_hst_subset};
pub use bounds::{bound_binary_hst_size, bound_lacunary_size};
pub use equilateral::max_equilateral_subset;
pub use fourpoint::four_point_check;
pub use lacunary::{is_lacunary_embeddable, max_lacunary_subset};

/// Search caps. Exceeding a cap raises [`OracleError::CapExceeded`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    /// Max points for the equilateral clique search.
    pub equilateral_n: usize,
    /// Max points for exhaustive lacunary subset maximization.
    pub lacunary_subset_n: usize,
    /// Max points per lacunary embeddability decision (ordering search).
    pub lacunary_perm_n: usize,
    /// Max points for exhaustive binary-HST subset maximization.
    pub binary_subset_n: usize,
    /// Max points per binary-HST embeddability decision (topology search).
    pub binary_topology_n: usize,
    /// Max vertices for exact clique/independence certification of graphs.
    pub ramsey_exact_n: usize,
    /// Max points a composition power may produce.
    pub composition_max_points: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            equilateral_n: 40,
            lacunary_subset_n: 12,
            lacunary_perm_n: 9,
            binary_subset_n: 10,
            binary_topology_n: 8,
            ramsey_exact_n: 24,
            composition_max_points: 4096,
        }
    }
}

/// Arithmetic mode for the deciders: f64 with 1e-9 relative slack, or exact
/// rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Arith {
    #[default]
    #[serde(rename = "float")]
    Float,
    #[serde(rename = "rational")]
    Rational,
}

/// Target class of an oracle query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleClass {
    Equilateral,
    Lacunary,
    BinaryHst,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub ms: u64,
}

/// Witness structure accompanying an optimum subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessStructure {
    /// Common distance of the equilateral target.
    Equilateral { distance: f64 },
    /// Realized label sequence, aligned with the witness order.
    Lacunary { sequence: Vec<f64>, k: f64 },
    /// Realized binary HST over the witness points.
    BinaryHst { tree: HstTree, k: f64 },
}

/// Exact optimum for a target class at distortion alpha, plus the witness.
///
/// For the lacunary class the `witness` indices are listed in embedding
/// order (the order matching `structure.sequence`), not sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub class: OracleClass,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub optimum: usize,
    pub witness: Vec<usize>,
    pub structure: WitnessStructure,
    pub stats: SearchStats,
}

impl OracleReport {
    /// Re-verifies the witness independently of the search: the certificate
    /// onto the witness structure has distortion <= alpha and the structure
    /// passes its class predicate.
    pub fn verify(&self, m: &MetricSpace) -> Result<(), OracleError> {
        let w = restrict(m, &self.witness).map_err(OracleError::Metric)?;
        match &self.structure {
            WitnessStructure::Equilateral { distance } => {
                if w.len() >= 2 {
                    let target = MetricSpace::equilateral(w.len(), *distance);
                    let map: Vec<usize> = (0..w.len()).collect();
                    let cert = distortion_of(&map, &w.induced, &target).map_err(OracleError::Metric)?;
                    check_distortion(cert.distortion, self.alpha)?;
                }
            }
            WitnessStructure::Lacunary { sequence, k } => {
                if w.len() >= 2 {
                    let seq = LacunarySequence::new(sequence.clone(), *k)
                        .map_err(|e| OracleError::BadParameters(e.to_string()))?;
                    let target = lacunary_metric(&seq)
                        .map_err(|e| OracleError::BadParameters(e.to_string()))?;
                    let map: Vec<usize> = (0..w.len()).collect();
                    let cert = distortion_of(&map, &w.induced, &target).map_err(OracleError::Metric)?;
                    check_distortion(cert.distortion, self.alpha)?;
                }
            }
            WitnessStructure::BinaryHst { tree, k } => {
                if !tree.is_binary() || !approx::ge(tree.separation(), *k) {
                    return Err(OracleError::BadParameters(
                        "witness tree fails the binary k-HST predicate".into(),
                    ));
                }
                if w.len() >= 2 {
                    let target = hst_metric(tree).map_err(|e| OracleError::BadParameters(e.to_string()))?;
                    let map = map_by_labels(&w.induced, &target)?;
                    let cert = distortion_of(&map, &w.induced, &target).map_err(OracleError::Metric)?;
                    check_distortion(cert.distortion, self.alpha)?;
                }
            }
        }
        Ok(())
    }
}

fn check_distortion(distortion: f64, alpha: f64) -> Result<(), OracleError> {
    if approx::le(distortion, alpha) {
        Ok(())
    } else {
        Err(OracleError::BadParameters(format!(
            "witness distortion {distortion} exceeds alpha {alpha}"
        )))
    }
}

/// Bijection source index -> target index matching points by label.
pub fn map_by_labels(source: &MetricSpace, target: &MetricSpace) -> Result<Vec<usize>, OracleError> {
    if source.len() != target.len() {
        return Err(OracleError::Metric(MetricError::SizeMismatch {
            a: source.len(),
            b: target.len(),
        }));
    }
    let mut map = Vec::with_capacity(source.len());
    for i in 0..source.len() {
        let l = source.label(i);
        match (0..target.len()).find(|&j| target.label(j) == l) {
            Some(j) => map.push(j),
            None => {
                return Err(OracleError::BadParameters(format!("label {l:?} missing in target")))
            }
        }
    }
    Ok(map)
}

pub(crate) fn cap_check(got: usize, cap: usize, cap_name: &'static str) -> Result<(), OracleError> {
    if got > cap {
        Err(OracleError::CapExceeded { cap_name, cap, got })
    } else {
        Ok(())
    }
}
