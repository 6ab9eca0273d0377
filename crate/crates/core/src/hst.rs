//! Hierarchically well-separated trees.
//!
//! An HST is a rooted tree whose internal vertices carry positive labels
//! Delta(u), strictly decreasing from parent to child, with leaves carrying
//! points (and label 0). The metric on the leaves is d(x,y) = Delta(lca(x,y)).
//! The tree is a k-HST when every internal child label is at most 1/k of its
//! parent's label; it is k-increasing when every vertex has at most one
//! non-leaf child, and binary when out-degrees are at most 2.
//!
//! Canonical form collapses unary internal chains (keeping the larger label,
//! i.e. the ancestor's) and drops empty branches; predicates and the
//! binary-subtree extraction operate on canonical trees.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::HstError;
use crate::metric::MetricSpace;

#[derive(Debug, Clone, PartialEq)]
pub enum HstTree {
    Leaf { point: String },
    Internal { label: f64, children: Vec<HstTree> },
}

impl HstTree {
    pub fn leaf(point: impl Into<String>) -> Self {
        HstTree::Leaf { point: point.into() }
    }

    pub fn internal(label: f64, children: Vec<HstTree>) -> Self {
        HstTree::Internal { label, children }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, HstTree::Leaf { .. })
    }

    /// Label of this vertex (0 for leaves).
    pub fn label(&self) -> f64 {
        match self {
            HstTree::Leaf { .. } => 0.0,
            HstTree::Internal { label, .. } => *label,
        }
    }

    /// Leaf point ids in depth-first order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            HstTree::Leaf { point } => out.push(point),
            HstTree::Internal { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            HstTree::Leaf { .. } => 1,
            HstTree::Internal { children, .. } => children.iter().map(HstTree::leaf_count).sum(),
        }
    }

    /// Smallest point id below this vertex (lexicographic).
    fn min_point(&self) -> &str {
        match self {
            HstTree::Leaf { point } => point,
            HstTree::Internal { children, .. } => {
                children.iter().map(HstTree::min_point).min().unwrap_or("")
            }
        }
    }

    /// Collapses unary internal chains and drops empty branches.
    ///
    /// A unary internal vertex is merged with its only child; the surviving
    /// vertex keeps the larger (ancestor) label. An internal vertex whose only
    /// child is a leaf disappears entirely.
    pub fn canonical(self) -> HstTree {
        match self {
            leaf @ HstTree::Leaf { .. } => leaf,
            HstTree::Internal { label, children } => {
                let mut kids: Vec<HstTree> = children
                    .into_iter()
                    .filter_map(|c| match c {
                        HstTree::Internal { children, .. } if children.is_empty() => None,
                        c => Some(c.canonical()),
                    })
                    .collect();
                if kids.len() == 1 {
                    match kids.pop().unwrap() {
                        HstTree::Leaf { point } => HstTree::Leaf { point },
                        HstTree::Internal { children, .. } => HstTree::Internal { label, children },
                    }
                } else {
                    HstTree::Internal { label, children: kids }
                }
            }
        }
    }

    /// Checks the defining-tree invariants on an already-canonical tree:
    /// positive internal labels, strict decrease along internal edges, and
    /// at least two children per internal vertex.
    pub fn validate(&self) -> Result<(), HstError> {
        match self {
            HstTree::Leaf { .. } => Ok(()),
            HstTree::Internal { label, children } => {
                if !label.is_finite() || *label <= 0.0 {
                    return Err(HstError::InvalidTree(format!("internal label {label} not positive")));
                }
                if children.len() < 2 {
                    return Err(HstError::InvalidTree(
                        "internal vertex with fewer than 2 children (not canonical)".into(),
                    ));
                }
                for c in children {
                    if let HstTree::Internal { label: cl, .. } = c {
                        if !(*cl < *label) {
                            return Err(HstError::InvalidTree(format!(
                                "child label {cl} does not decrease below parent label {label}"
                            )));
                        }
                    }
                    c.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Largest out-degree over internal vertices (0 for a single leaf).
    pub fn max_outdegree(&self) -> usize {
        match self {
            HstTree::Leaf { .. } => 0,
            HstTree::Internal { children, .. } => children
                .iter()
                .map(HstTree::max_outdegree)
                .max()
                .unwrap_or(0)
                .max(children.len()),
        }
    }

    pub fn is_binary(&self) -> bool {
        self.max_outdegree() <= 2
    }

    /// True iff every vertex has at most one non-leaf child (the internal
    /// vertices form a path).
    pub fn is_k_increasing(&self) -> bool {
        match self {
            HstTree::Leaf { .. } => true,
            HstTree::Internal { children, .. } => {
                let internal_kids = children.iter().filter(|c| !c.is_leaf()).count();
                internal_kids <= 1 && children.iter().all(HstTree::is_k_increasing)
            }
        }
    }

    /// Largest k for which the tree is a k-HST: the minimum over internal
    /// parent-child edges of Delta(parent) / Delta(child). +infinity when the
    /// tree has no internal-internal edge.
    pub fn separation(&self) -> f64 {
        match self {
            HstTree::Leaf { .. } => f64::INFINITY,
            HstTree::Internal { label, children } => {
                let mut sep = f64::INFINITY;
                for c in children {
                    if let HstTree::Internal { label: cl, .. } = c {
                        sep = sep.min(label / cl);
                    }
                    sep = sep.min(c.separation());
                }
                sep
            }
        }
    }

    /// Returns self with children recursively sorted by smallest descendant
    /// point id, the canonical serialization order.
    pub fn sorted(self) -> HstTree {
        match self {
            leaf @ HstTree::Leaf { .. } => leaf,
            HstTree::Internal { label, children } => {
                let mut kids: Vec<HstTree> = children.into_iter().map(HstTree::sorted).collect();
                kids.sort_by(|a, b| a.min_point().cmp(b.min_point()));
                HstTree::Internal { label, children: kids }
            }
        }
    }
}

/// Free-function aliases matching the operation names.
pub fn hst_separation(tree: &HstTree) -> f64 {
    tree.separation()
}

pub fn max_outdegree(tree: &HstTree) -> usize {
    tree.max_outdegree()
}

pub fn is_binary(tree: &HstTree) -> bool {
    tree.is_binary()
}

pub fn is_k_increasing(tree: &HstTree) -> bool {
    tree.is_k_increasing()
}

/// Leaf metric of the tree: d(x,y) = Delta(lca(x,y)), points in depth-first
/// leaf order. Needs at least 2 leaves. An HST metric is an ultrametric, so
/// the output is a valid metric space.
pub fn hst_metric(tree: &HstTree) -> Result<MetricSpace, HstError> {
    let n = tree.leaf_count();
    if n < 2 {
        return Err(HstError::TooFewLeaves { need: 2, got: n });
    }
    tree.validate()?;
    let labels: Vec<String> = tree.leaves().into_iter().map(str::to_string).collect();
    let mut dist = vec![0.0; n * n];
    // Post-order: pairs split between two children of u are at distance
    // Delta(u); record each child's leaf index range.
    fn fill(node: &HstTree, next: &mut usize, dist: &mut [f64], n: usize) -> (usize, usize) {
        match node {
            HstTree::Leaf { .. } => {
                let i = *next;
                *next += 1;
                (i, i + 1)
            }
            HstTree::Internal { label, children } => {
                let start = *next;
                let mut ranges = Vec::with_capacity(children.len());
                for c in children {
                    ranges.push(fill(c, next, dist, n));
                }
                for (a, &(s1, e1)) in ranges.iter().enumerate() {
                    for &(s2, e2) in ranges.iter().skip(a + 1) {
                        for i in s1..e1 {
                            for j in s2..e2 {
                                dist[i * n + j] = *label;
                                dist[j * n + i] = *label;
                            }
                        }
                    }
                }
                (start, *next)
            }
        }
    }
    let mut next = 0;
    fill(tree, &mut next, &mut dist, n);
    Ok(MetricSpace::new_unchecked(labels, dist))
}

/// Result of the leaf-maximum binary-subtree extraction.
#[derive(Debug, Clone)]
pub struct BinarySubtree {
    pub tree: HstTree,
    pub leaf_count: usize,
    /// The proof-level lower bound n^(1 / log2 h) for the input's n and h.
    pub guaranteed_leaves: f64,
}

/// Extracts the leaf-maximum binary subtree by bottom-up dynamic programming.
///
/// best(v) = 1 for leaves, otherwise max over child pairs of
/// best(c1) + best(c2); among equal sums the lexicographically smallest child
/// index pair wins. The result keeps the original labels and has at least
/// n^(1 / log2 h) leaves for a tree with n leaves and max out-degree h >= 2.
pub fn binary_subtree(tree: &HstTree) -> Result<BinarySubtree, HstError> {
    let n = tree.leaf_count();
    if n < 2 {
        return Err(HstError::TooFewLeaves { need: 2, got: n });
    }
    tree.validate()?;
    fn best(node: &HstTree) -> (usize, HstTree) {
        match node {
            HstTree::Leaf { point } => (1, HstTree::leaf(point.clone())),
            HstTree::Internal { label, children } => {
                let scored: Vec<(usize, HstTree)> = children.iter().map(best).collect();
                let mut pick = (0, 0, 0usize);
                for i in 0..scored.len() {
                    for j in (i + 1)..scored.len() {
                        let sum = scored[i].0 + scored[j].0;
                        if sum > pick.0 {
                            pick = (sum, i, j);
                        }
                    }
                }
                let (sum, i, j) = pick;
                let mut picked: Vec<HstTree> = Vec::with_capacity(2);
                let mut scored = scored;
                // Drain in reverse so indices stay valid.
                picked.push(scored.swap_remove(j).1);
                picked.push(scored.swap_remove(i).1);
                picked.reverse();
                (sum, HstTree::Internal { label: *label, children: picked })
            }
        }
    }
    let h = tree.max_outdegree().max(2);
    let (count, sub) = best(tree);
    let guaranteed = (n as f64).powf(1.0 / (h as f64).log2());
    debug_assert_eq!(sub.leaf_count(), count);
    Ok(BinarySubtree { tree: sub, leaf_count: count, guaranteed_leaves: guaranteed })
}

// --- JSON (hst-v1) --------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum HstJson {
    Internal {
        #[serde(skip_serializing_if = "Option::is_none")]
        format: Option<String>,
        label: f64,
        children: Vec<HstJson>,
    },
    Leaf {
        point: String,
    },
}

fn to_json(node: &HstTree, root: bool) -> HstJson {
    match node {
        HstTree::Leaf { point } => HstJson::Leaf { point: point.clone() },
        HstTree::Internal { label, children } => HstJson::Internal {
            format: root.then(|| "hst-v1".to_string()),
            label: *label,
            children: children.iter().map(|c| to_json(c, false)).collect(),
        },
    }
}

fn from_json(node: HstJson) -> HstTree {
    match node {
        HstJson::Leaf { point } => HstTree::Leaf { point },
        HstJson::Internal { label, children, .. } => HstTree::Internal {
            label,
            children: children.into_iter().map(from_json).collect(),
        },
    }
}

impl Serialize for HstTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Canonical serialization sorts children by smallest descendant id.
        let sorted = self.clone().sorted();
        to_json(&sorted, true).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HstTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = HstJson::deserialize(deserializer)?;
        if let HstJson::Internal { format, .. } = &raw {
            if let Some(f) = format {
                if f != "hst-v1" {
                    return Err(D::Error::custom(format!("unsupported format {f:?}")));
                }
            }
        }
        let tree = from_json(raw).canonical();
        tree.validate().map_err(D::Error::custom)?;
        Ok(tree)
    }
}
