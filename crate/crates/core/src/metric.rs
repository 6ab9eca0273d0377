//! Finite metric spaces: validated distance matrices, subspace restriction,
//! aspect ratio, and equilateral distortion.
//!
//! A [`MetricSpace`] is the universal currency of the crate: a list of opaque
//! point labels plus a full symmetric distance matrix. Validation enforces
//! symmetry, positivity off the diagonal (duplicate points are rejected; the
//! algorithms assume distinct points), and the triangle inequality within a
//! relative slack of 1e-9.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::approx;
use crate::error::MetricError;

/// A finite metric space with labeled points.
///
/// Immutable after construction; all operations are pure. The matrix is
/// stored row-major as a flat vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    n: usize,
}

impl MetricSpace {
    /// Builds a space from labeled rows, checking every type invariant.
    ///
    /// This is the `validate_metric` operation; [`validate_metric`] is a free
    /// function alias.
    pub fn from_matrix(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = rows.len();
        if labels.len() != n {
            return Err(MetricError::LabelMismatch { labels: labels.len(), matrix: n });
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, got: r.len(), expected: n });
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for r in &rows {
            dist.extend_from_slice(r);
        }
        let space = MetricSpace { labels, dist, n };
        space.check_invariants()?;
        Ok(space)
    }

    /// Builds a space whose validity is guaranteed by construction.
    ///
    /// Generators (lacunary metrics, HST metrics, compositions, graph
    /// metrics, uniform-[1,2] samples) produce matrices that are metrics by
    /// the defining formula; skipping the O(n^3) triangle scan keeps large
    /// instances cheap. Debug builds still verify.
    pub(crate) fn new_unchecked(labels: Vec<String>, dist: Vec<f64>) -> Self {
        let n = labels.len();
        debug_assert_eq!(dist.len(), n * n);
        let space = MetricSpace { labels, dist, n };
        debug_assert!(space.check_invariants().is_ok(), "generator produced an invalid metric");
        space
    }

    fn check_invariants(&self) -> Result<(), MetricError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let d = self.dist[i * n + j];
                if !d.is_finite() {
                    return Err(MetricError::NonFinite { i, j });
                }
                if d < 0.0 {
                    return Err(MetricError::NegativeDistance { i, j });
                }
            }
        }
        for i in 0..n {
            if self.dist[i * n + i] != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let dij = self.dist[i * n + j];
                let dji = self.dist[j * n + i];
                if !approx::eq(dij, dji) {
                    return Err(MetricError::SymmetryError { i, j });
                }
                if dij <= 0.0 {
                    return Err(MetricError::ZeroOffDiagonal { i, j });
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                if i == j {
                    continue;
                }
                let dij = self.dist[i * n + j];
                for k in (i + 1)..n {
                    if k == j {
                        continue;
                    }
                    // d(i,k) <= d(i,j) + d(j,k) within relative slack
                    if !approx::le(self.dist[i * n + k], dij + self.dist[j * n + k]) {
                        return Err(MetricError::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Distance between points `i` and `j`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Iterates over all unordered pairs `(i, j, d(i,j))` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.d(i, j))))
    }

    /// Largest pairwise distance (0 for fewer than 2 points).
    pub fn diameter(&self) -> f64 {
        self.pairs().map(|(_, _, d)| d).fold(0.0, f64::max)
    }

    /// Smallest positive pairwise distance (+inf for fewer than 2 points).
    pub fn min_distance(&self) -> f64 {
        self.pairs().map(|(_, _, d)| d).fold(f64::INFINITY, f64::min)
    }

    /// First pair (lexicographic) attaining the diameter.
    pub fn diametrical_pair(&self) -> Option<(usize, usize)> {
        let diam = self.diameter();
        self.pairs().find(|&(_, _, d)| d == diam).map(|(i, j, _)| (i, j))
    }

    /// Rescales every distance by `t > 0`.
    pub fn scaled(&self, t: f64) -> MetricSpace {
        assert!(t > 0.0 && t.is_finite());
        MetricSpace {
            labels: self.labels.clone(),
            dist: self.dist.iter().map(|d| d * t).collect(),
            n: self.n,
        }
    }

    /// The n-point equilateral space at common distance `w`.
    pub fn equilateral(n: usize, w: f64) -> MetricSpace {
        assert!(w > 0.0 && n > 0);
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        let mut dist = vec![w; n * n];
        for i in 0..n {
            dist[i * n + i] = 0.0;
        }
        MetricSpace::new_unchecked(labels, dist)
    }
}

/// Validates a labeled square matrix into a [`MetricSpace`].
pub fn validate_metric(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<MetricSpace, MetricError> {
    MetricSpace::from_matrix(labels, rows)
}

/// A subspace of a metric space, remembering where it came from.
///
/// `indices` lists parent indices (distinct, order preserved); `induced` is
/// the parent matrix restricted to them, bitwise equal entry by entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceWitness {
    pub indices: Vec<usize>,
    pub induced: MetricSpace,
}

impl SubspaceWitness {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Checks the witness against its parent: indices in range and distinct,
    /// induced matrix bitwise equal to the restriction.
    pub fn verify(&self, parent: &MetricSpace) -> Result<(), MetricError> {
        let fresh = restrict(parent, &self.indices)?;
        if fresh.induced.dist != self.induced.dist || fresh.induced.labels != self.induced.labels {
            return Err(MetricError::SizeMismatch { a: self.len(), b: fresh.len() });
        }
        Ok(())
    }
}

/// Restricts `space` to the given indices, preserving their order.
pub fn restrict(space: &MetricSpace, subset: &[usize]) -> Result<SubspaceWitness, MetricError> {
    if subset.is_empty() {
        return Err(MetricError::EmptySubset);
    }
    let mut seen = vec![false; space.len()];
    for &i in subset {
        if i >= space.len() {
            return Err(MetricError::IndexOutOfRange { index: i, size: space.len() });
        }
        if seen[i] {
            return Err(MetricError::DuplicateIndex { index: i });
        }
        seen[i] = true;
    }
    let m = subset.len();
    let labels = subset.iter().map(|&i| space.labels[i].clone()).collect();
    let mut dist = Vec::with_capacity(m * m);
    for &i in subset {
        for &j in subset {
            dist.push(space.d(i, j));
        }
    }
    Ok(SubspaceWitness {
        indices: subset.to_vec(),
        induced: MetricSpace { labels, dist, n: m },
    })
}

/// Aspect ratio `Phi(X)` = diameter / minimum distance. Needs 2 points.
pub fn aspect_ratio(space: &MetricSpace) -> Result<f64, MetricError> {
    if space.len() < 2 {
        return Err(MetricError::TooSmall { need: 2, got: space.len() });
    }
    Ok(space.diameter() / space.min_distance())
}

/// Least distortion of any bijection onto an equilateral space.
///
/// Any bijection onto an equilateral space with common distance `w` has
/// expansion `w / min_d` and contraction `max_d / w`, so the distortion is
/// `max_d / min_d = Phi(space)` independently of `w`. Hence the equilateral
/// distortion equals the aspect ratio exactly.
pub fn equilateral_distortion(space: &MetricSpace) -> Result<f64, MetricError> {
    aspect_ratio(space)
}

// --- JSON (metric-v1) ---------------------------------------------------

/// Provenance block embedded in generated instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: std::collections::BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub prng: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct MetricJson {
    format: String,
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

/// A metric space plus optional provenance, matching the metric-v1 format.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFile {
    pub space: MetricSpace,
    pub provenance: Option<Provenance>,
}

impl Serialize for MetricFile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.space.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.space.d(i, j)).collect())
            .collect();
        MetricJson {
            format: "metric-v1".to_string(),
            labels: self.space.labels().to_vec(),
            dist: rows,
            provenance: self.provenance.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricFile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MetricJson::deserialize(deserializer)?;
        if raw.format != "metric-v1" {
            return Err(D::Error::custom(format!("unsupported format {:?}", raw.format)));
        }
        let space = MetricSpace::from_matrix(raw.labels, raw.dist).map_err(D::Error::custom)?;
        Ok(MetricFile { space, provenance: raw.provenance })
    }
}

impl Serialize for MetricSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MetricFile { space: self.clone(), provenance: None }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(MetricFile::deserialize(deserializer)?.space)
    }
}
