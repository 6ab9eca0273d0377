//! Dichotomy over an externally supplied HST embedding: a big equilateral
//! set from a high-degree vertex, or a large binary subtree.
//!
//! Input: M, a tree over M's points, and a verified non-contractive
//! c-equivalence (d_M <= d_tree <= c * d_M). The built-in provider for such
//! embeddings is `extract_k_increasing`, whose output is a k-HST; any
//! external k-HST embedding works as well.
//!
//! Case 1 — some vertex has out-degree above h: one leaf per child gives
//! points whose tree distances all equal Delta(u), hence d_M in
//! [Delta(u)/c, Delta(u)]. Coarse mode returns them directly (distortion at
//! most c). Fine mode colors each pair by the (1+eps)-band of
//! Delta(u)/d_M(x,y) — ceil(log_{1+eps} c) bands cover [1, c] with the top
//! band closed so d = Delta(u) is colorable — and extracts a monochromatic
//! subset, which is (1+eps)-equilateral.
//!
//! Case 2 — all out-degrees at most h: the leaf-maximum binary subtree has
//! at least (leaf count)^(1/log2 h) leaves. Coarse mode returns it with the
//! restricted certificate; fine mode relabels it with exact cross-block
//! distances, which needs input separation at least c*k' for
//! k' = max(k, 2 + 2/eps) and yields distortion k'/(k'-2) <= 1+eps.

use crate::approx;
use crate::error::ExtractError;
use crate::extraction::mono::{monochromatic_bound, monochromatic_subset};
use crate::extraction::{
    equilateral_target, witness_and_cert, DichotomyKind, DichotomyResult, DichotomyStructure,
    Guarantee,
};
use crate::hst::{binary_subtree, hst_metric, HstTree};
use crate::metric::{restrict, MetricSpace};
use crate::oracle::map_by_labels;

/// Distortion regime of [`hst_dichotomy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DichotomyMode {
    /// Pass the input distortion c through (the alpha > 2 regime).
    Coarse,
    /// Improve to 1+eps via band coloring / relabeling (needs separation).
    Fine,
}

pub fn hst_dichotomy(
    m: &MetricSpace,
    tree: &HstTree,
    eps: f64,
    h: usize,
    k: f64,
    mode: DichotomyMode,
) -> Result<DichotomyResult, ExtractError> {
    if h < 2 {
        return Err(ExtractError::InvalidParameter(format!("h = {h} must be >= 2")));
    }
    if !(eps > 0.0) {
        return Err(ExtractError::InvalidParameter(format!("eps = {eps} must be > 0")));
    }
    if !(k >= 1.0) {
        return Err(ExtractError::InvalidParameter(format!("k = {k} must be >= 1")));
    }
    tree.validate()?;
    let tree_metric = hst_metric(tree)?;
    let leaf_map = map_by_labels(m, &tree_metric).map_err(|e| ExtractError::CertMismatch(e.to_string()))?;
    // Verify the non-contractive c-equivalence and measure c.
    let mut c: f64 = 1.0;
    for (i, j, dm) in m.pairs() {
        let dt = tree_metric.d(leaf_map[i], leaf_map[j]);
        if !approx::ge(dt, dm) {
            return Err(ExtractError::CertMismatch(format!(
                "pair ({i},{j}): tree distance {dt} below d_M = {dm} (not non-contractive)"
            )));
        }
        c = c.max(dt / dm);
    }
    let k_fine = k.max(2.0 + 2.0 / eps);
    if mode == DichotomyMode::Fine {
        let sep = tree.separation();
        if !approx::ge(sep, c * k_fine) {
            return Err(ExtractError::SeparationTooSmall { got: sep, need: c * k_fine });
        }
    }

    // Tree-leaf index -> parent index.
    let mut leaf_to_parent = vec![usize::MAX; tree_metric.len()];
    for (parent, &leaf) in leaf_map.iter().enumerate() {
        leaf_to_parent[leaf] = parent;
    }

    // Case 1: first vertex (depth-first) with out-degree above h.
    if let Some((label, reps)) = find_wide_vertex(tree, h, &mut 0) {
        let parents: Vec<usize> = reps.iter().map(|&leaf| leaf_to_parent[leaf]).collect();
        return match mode {
            DichotomyMode::Coarse => {
                let w = restrict(m, &parents)?;
                let target = equilateral_target(&w.induced);
                let (indices, cert) = witness_and_cert(m, &parents, &target)?;
                let guarantee = Guarantee::new((h + 1) as f64, c)
                    .with("c", c)
                    .with("h", h as f64)
                    .with("outdegree", reps.len() as f64);
                Ok(DichotomyResult {
                    kind: DichotomyKind::Equilateral,
                    indices,
                    structure: None,
                    cert,
                    guarantee,
                })
            }
            DichotomyMode::Fine => {
                // (1+eps)-band coloring of Delta(u) / d_M, bands 1..=D.
                let d_colors =
                    (approx::ceil_tol(c.ln() / (1.0 + eps).ln()).max(1.0)) as usize;
                let nn = parents.len();
                let mut colors = vec![vec![0usize; nn]; nn];
                for a in 0..nn {
                    for b in (a + 1)..nn {
                        let ratio = label / m.d(parents[a], parents[b]);
                        let band = (ratio.ln() / (1.0 + eps).ln()).floor() as i64 + 1;
                        let band = band.clamp(1, d_colors as i64) as usize;
                        colors[a][b] = band;
                        colors[b][a] = band;
                    }
                }
                let mono = monochromatic_subset(&colors, d_colors)?;
                let chosen: Vec<usize> = mono.iter().map(|&p| parents[p]).collect();
                let w = restrict(m, &chosen)?;
                let target = equilateral_target(&w.induced);
                let (indices, cert) = witness_and_cert(m, &chosen, &target)?;
                let guarantee =
                    Guarantee::new(monochromatic_bound(h + 1, d_colors) as f64, 1.0 + eps)
                        .with("c", c)
                        .with("h", h as f64)
                        .with("colors", d_colors as f64)
                        .with("eps", eps);
                Ok(DichotomyResult {
                    kind: DichotomyKind::Equilateral,
                    indices,
                    structure: None,
                    cert,
                    guarantee,
                })
            }
        };
    }

    // Case 2: binary subtree, optionally relabeled.
    let bs = binary_subtree(tree)?;
    let sub_leaves: Vec<usize> = bs
        .tree
        .leaves()
        .iter()
        .map(|p| {
            (0..tree_metric.len())
                .find(|&i| tree_metric.label(i) == *p)
                .expect("subtree leaves come from the tree")
        })
        .collect();
    let parents: Vec<usize> = sub_leaves.iter().map(|&leaf| leaf_to_parent[leaf]).collect();
    match mode {
        DichotomyMode::Coarse => {
            let target = hst_metric(&bs.tree)?;
            let (indices, cert) = witness_and_cert(m, &parents, &target)?;
            let guarantee = Guarantee::new(bs.guaranteed_leaves, c)
                .with("c", c)
                .with("h", h as f64)
                .with("k", tree.separation().min(1e12));
            Ok(DichotomyResult {
                kind: DichotomyKind::BinaryHst,
                indices,
                structure: Some(DichotomyStructure::Hst(bs.tree)),
                cert,
                guarantee,
            })
        }
        DichotomyMode::Fine => {
            let mut sorted = parents;
            sorted.sort_unstable();
            let w = restrict(m, &sorted)?;
            // hst_relabel matches leaves to points by label, so the sorted
            // witness order is fine.
            let (relabeled, cert) =
                crate::extraction::relabel::hst_relabel(&w.induced, &bs.tree, c, k_fine)?;
            let distortion_bound = (1.0 + eps).max(k_fine / (k_fine - 2.0));
            let guarantee = Guarantee::new(bs.guaranteed_leaves, distortion_bound)
                .with("c", c)
                .with("h", h as f64)
                .with("k", k_fine)
                .with("eps", eps);
            Ok(DichotomyResult {
                kind: DichotomyKind::BinaryHst,
                indices: sorted,
                structure: Some(DichotomyStructure::Hst(relabeled)),
                cert,
                guarantee,
            })
        }
    }
}

/// First vertex in depth-first order with more than `h` children; returns
/// its label and one leaf position (smallest) per child.
fn find_wide_vertex(tree: &HstTree, h: usize, offset: &mut usize) -> Option<(f64, Vec<usize>)> {
    match tree {
        HstTree::Leaf { .. } => {
            *offset += 1;
            None
        }
        HstTree::Internal { label, children } => {
            if children.len() > h {
                let mut reps = Vec::with_capacity(children.len());
                let mut pos = *offset;
                for ch in children {
                    reps.push(pos); // first leaf of the child in DFS order
                    pos += ch.leaf_count();
                }
                return Some((*label, reps));
            }
            for ch in children {
                if let Some(found) = find_wide_vertex(ch, h, offset) {
                    return Some(found);
                }
            }
            None
        }
    }
}
