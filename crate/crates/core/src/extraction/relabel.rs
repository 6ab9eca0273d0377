//! Relabeling a binary HST with exact cross-block distances.
//!
//! Input: a metric L and a binary tree over L's points whose metric is
//! c-equivalent to L via the non-contractive identity-on-labels map
//! (d_L <= d_tree <= c * d_L), with tree separation at least c*k. Replacing
//! every internal label by Delta'(u) = max{d_L(x,y) : x, y across u's child
//! blocks} yields a binary k-HST: Delta'(v) <= Delta(v) <= Delta(u)/(ck)
//! <= Delta'(u)/k for an internal child v. The new tree is non-contractive
//! over L by construction, and for a cross pair (x, y) at u with maximal
//! pair (a, b): d_L(x,y) >= d_L(a,b) - d_L(a,x) - d_L(b,y)
//! >= Delta'(u) - 2 Delta(u)/(ck) >= Delta'(u) (k-2)/k, so the distortion is
//! at most k/(k-2). The paper's case is c = 3; any c >= 1 works.

use crate::approx;
use crate::embedding::{distortion_of, EmbeddingCert};
use crate::error::ExtractError;
use crate::hst::{hst_metric, HstTree};
use crate::metric::MetricSpace;
use crate::oracle::map_by_labels;

pub fn hst_relabel(
    l: &MetricSpace,
    tree: &HstTree,
    c: f64,
    k: f64,
) -> Result<(HstTree, EmbeddingCert), ExtractError> {
    if !(c >= 1.0) {
        return Err(ExtractError::InvalidParameter(format!("c = {c} must be >= 1")));
    }
    if !(k > 2.0) {
        return Err(ExtractError::KTooSmall { k });
    }
    tree.validate()?;
    if !tree.is_binary() {
        return Err(ExtractError::NotBinary { got: tree.max_outdegree() });
    }
    let sep = tree.separation();
    if !approx::ge(sep, c * k) {
        return Err(ExtractError::SeparationTooSmall { got: sep, need: c * k });
    }
    let tree_metric = hst_metric(tree)?;
    if tree_metric.len() != l.len() {
        return Err(ExtractError::CertMismatch(format!(
            "tree has {} leaves, L has {} points",
            tree_metric.len(),
            l.len()
        )));
    }
    let map = map_by_labels(l, &tree_metric).map_err(|e| ExtractError::CertMismatch(e.to_string()))?;
    // Verify d_L <= d_tree <= c * d_L pairwise.
    for (i, j, dl) in l.pairs() {
        let dt = tree_metric.d(map[i], map[j]);
        if !approx::ge(dt, dl) || !approx::le(dt, c * dl) {
            return Err(ExtractError::CertMismatch(format!(
                "pair ({i},{j}): tree distance {dt} outside [d_L, c*d_L] = [{dl}, {}]",
                c * dl
            )));
        }
    }
    // Leaf label -> L index, for cross-block maxima.
    let index_of = |point: &str| -> usize {
        (0..l.len()).find(|&i| l.label(i) == point).expect("leaf labels match L")
    };
    let relabeled = relabel(tree, l, &index_of);
    relabeled.validate()?;
    let out_metric = hst_metric(&relabeled)?;
    let out_map = map_by_labels(l, &out_metric).map_err(|e| ExtractError::CertMismatch(e.to_string()))?;
    let cert = distortion_of(&out_map, l, &out_metric).map_err(ExtractError::Metric)?;
    Ok((relabeled, cert))
}

fn relabel(node: &HstTree, l: &MetricSpace, index_of: &dyn Fn(&str) -> usize) -> HstTree {
    match node {
        HstTree::Leaf { point } => HstTree::leaf(point.clone()),
        HstTree::Internal { children, .. } => {
            let blocks: Vec<Vec<usize>> = children
                .iter()
                .map(|c| c.leaves().into_iter().map(index_of).collect())
                .collect();
            let mut max_cross = 0.0f64;
            for (a, block_a) in blocks.iter().enumerate() {
                for block_b in blocks.iter().skip(a + 1) {
                    for &i in block_a {
                        for &j in block_b {
                            max_cross = max_cross.max(l.d(i, j));
                        }
                    }
                }
            }
            HstTree::internal(
                max_cross,
                children.iter().map(|c| relabel(c, l, index_of)).collect(),
            )
        }
    }
}
