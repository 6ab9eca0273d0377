//! Constructive lower-bound algorithms: dense annulus, sequence
//! sparsification, k-increasing extraction, the equilateral/lacunary and
//! equilateral/binary-HST dichotomies, the triangle-dichotomy HST
//! construction, HST relabeling, and monochromatic subsets.
//!
//! Every algorithm returns a [`DichotomyResult`] (or a close relative)
//! carrying a [`SubspaceWitness`], the structured target it embeds into, an
//! [`EmbeddingCert`] proving the distortion, and a guarantee record stating
//! the size and distortion bounds the run must satisfy. Results self-verify:
//! recomputing the certificate from the witness and structure reproduces the
//! stored numbers. Tie-breaking is lowest-index-first everywhere, so runs
//! are deterministic.

pub mod annulus;
pub mod dichotomy;
pub mod greedy;
pub mod hst_dichotomy;
pub mod increasing;
pub mod mono;
pub mod relabel;
pub mod sparsify;
pub mod triangle;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::approx;
use crate::embedding::{distortion_of, EmbeddingCert};
use crate::error::ExtractError;
use crate::hst::{hst_metric, HstTree};
use crate::lacunary::{lacunary_metric, LacunarySequence};
use crate::metric::{restrict, MetricSpace, SubspaceWitness};

pub use annulus::{find_dense_annulus, AnnulusResult};
pub use dichotomy::{equilateral_or_lacunary, increasing_dichotomy};
pub use greedy::{greedy_equilateral_or_lacunary, GreedyRun};
pub use hst_dichotomy::{hst_dichotomy, DichotomyMode};
pub use increasing::{extract_k_increasing, IncreasingExtraction};
pub use mono::monochromatic_subset;
pub use relabel::hst_relabel;
pub use sparsify::{sparsify_sequence, SparsifiedSequence};
pub use triangle::triangle_to_binary_hst;

/// Which structured class a dichotomy landed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DichotomyKind {
    Equilateral,
    Lacunary,
    BinaryHst,
    /// Output of the plain k-increasing extraction (not a dichotomy branch).
    Increasing,
}

impl DichotomyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DichotomyKind::Equilateral => "equilateral",
            DichotomyKind::Lacunary => "lacunary",
            DichotomyKind::BinaryHst => "binary-hst",
            DichotomyKind::Increasing => "increasing",
        }
    }
}

/// Structured witness accompanying a dichotomy result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DichotomyStructure {
    Lacunary(LacunarySequence),
    Hst(HstTree),
}

/// The claimed bounds a run must satisfy, plus the parameters it ran with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Guarantee {
    /// Claimed lower bound on the witness size (real-valued; the witness has
    /// at least ceil(size_bound - slack) points).
    pub size_bound: f64,
    /// Claimed upper bound on the certified distortion.
    pub distortion_bound: f64,
    /// Parameters the bounds were computed from.
    pub params: BTreeMap<String, f64>,
}

impl Guarantee {
    pub fn new(size_bound: f64, distortion_bound: f64) -> Self {
        Guarantee { size_bound, distortion_bound, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

/// Tagged outcome of a dichotomy: an equilateral witness or a structured
/// (lacunary / binary-HST) witness, with its certificate and guarantee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyResult {
    pub kind: DichotomyKind,
    /// Parent-space indices of the witness (sorted ascending).
    pub indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<DichotomyStructure>,
    pub cert: EmbeddingCert,
    pub guarantee: Guarantee,
}

impl DichotomyResult {
    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn witness(&self, parent: &MetricSpace) -> Result<SubspaceWitness, ExtractError> {
        Ok(restrict(parent, &self.indices)?)
    }

    /// Recomputes the certificate from the witness and structure and checks
    /// every stored claim: certificate consistency, distortion within the
    /// guarantee, witness size at least the guarantee, and the structure's
    /// own class predicate.
    pub fn verify(&self, parent: &MetricSpace) -> Result<(), ExtractError> {
        let w = self.witness(parent)?;
        if w.induced.labels() != self.cert.source.labels() {
            return Err(ExtractError::CertMismatch("witness does not match certificate source".into()));
        }
        self.cert.verify().map_err(ExtractError::Metric)?;
        if !approx::le(self.cert.distortion, self.guarantee.distortion_bound) {
            return Err(ExtractError::CertMismatch(format!(
                "distortion {} exceeds guarantee {}",
                self.cert.distortion, self.guarantee.distortion_bound
            )));
        }
        if (self.size() as f64) < approx::ceil_tol(self.guarantee.size_bound) {
            return Err(ExtractError::CertMismatch(format!(
                "witness size {} below guarantee {}",
                self.size(),
                self.guarantee.size_bound
            )));
        }
        match (&self.kind, &self.structure) {
            (DichotomyKind::Equilateral, None) => {
                // target must be equilateral
                let t = &self.cert.target;
                if t.len() >= 2 && !approx::eq(t.diameter(), t.min_distance()) {
                    return Err(ExtractError::CertMismatch("equilateral target is not equilateral".into()));
                }
            }
            (DichotomyKind::Lacunary, Some(DichotomyStructure::Lacunary(seq))) => {
                // re-validate the sequence invariant at its own parameter
                LacunarySequence::new(seq.values().to_vec(), seq.k())
                    .map_err(ExtractError::Hst)?;
                let target = lacunary_metric(seq).map_err(ExtractError::Hst)?;
                if self.cert.target != target {
                    return Err(ExtractError::CertMismatch("stored target differs from structure metric".into()));
                }
            }
            (DichotomyKind::BinaryHst | DichotomyKind::Increasing, Some(DichotomyStructure::Hst(tree))) => {
                tree.validate().map_err(ExtractError::Hst)?;
                if self.kind == DichotomyKind::BinaryHst && !tree.is_binary() {
                    return Err(ExtractError::NotBinary { got: tree.max_outdegree() });
                }
                if self.kind == DichotomyKind::Increasing && !tree.is_k_increasing() {
                    return Err(ExtractError::NotIncreasing);
                }
                if let Some(k) = self.guarantee.params.get("k") {
                    if !approx::ge(tree.separation(), *k) {
                        return Err(ExtractError::SeparationTooSmall {
                            got: tree.separation(),
                            need: *k,
                        });
                    }
                }
                let target = hst_metric(tree).map_err(ExtractError::Hst)?;
                if self.cert.target != target {
                    return Err(ExtractError::CertMismatch("stored target differs from structure metric".into()));
                }
            }
            _ => {
                return Err(ExtractError::CertMismatch(format!(
                    "kind {:?} does not match structure {:?}",
                    self.kind,
                    self.structure.as_ref().map(|_| "present")
                )));
            }
        }
        Ok(())
    }
}

/// Builds a sorted witness plus a certificate onto `target`, where
/// `ordered_points` lists parent indices in target order (parent point
/// `ordered_points[t]` maps to target index `t`).
pub(crate) fn witness_and_cert(
    parent: &MetricSpace,
    ordered_points: &[usize],
    target: &MetricSpace,
) -> Result<(Vec<usize>, EmbeddingCert), ExtractError> {
    let mut sorted: Vec<usize> = ordered_points.to_vec();
    sorted.sort_unstable();
    let w = restrict(parent, &sorted)?;
    if sorted.len() == 1 {
        let t = restrict(target, &[0])?;
        return Ok((sorted, EmbeddingCert::trivial(w.induced, t.induced)));
    }
    let map: Vec<usize> = sorted
        .iter()
        .map(|&p| {
            ordered_points
                .iter()
                .position(|&q| q == p)
                .expect("ordered_points and sorted witness hold the same set")
        })
        .collect();
    let cert = distortion_of(&map, &w.induced, target).map_err(ExtractError::Metric)?;
    Ok((sorted, cert))
}

/// Equilateral target for a witness: common distance = witness diameter, so
/// the map is non-contractive and the distortion equals the aspect ratio.
pub(crate) fn equilateral_target(witness: &MetricSpace) -> MetricSpace {
    MetricSpace::equilateral(witness.len(), witness.diameter().max(f64::MIN_POSITIVE))
}
