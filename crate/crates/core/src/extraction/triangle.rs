//! From triple-far spaces to binary HSTs.
//!
//! If every 3-point subspace of M has aspect ratio at least k > 2, then the
//! recursive diametrical bipartition turns M into a binary (k/2)-HST with
//! distortion at most k/(k-2): take a diametrical pair (x, xbar) and the
//! balls B(x, diam/k), B(xbar, diam/k). They are disjoint (k > 2) and cover
//! M (a leftover point would form a triple of aspect ratio below k with the
//! diametrical pair). Joining the recursively built subtrees under a root
//! labeled diam(M) keeps the map non-contractive; cross pairs lose at most
//! the two ball radii, giving the k/(k-2) expansion bound. Balls are closed
//! here so the cover argument survives the validation slack.

use crate::approx;
use crate::embedding::{distortion_of, EmbeddingCert};
use crate::error::ExtractError;
use crate::hst::{hst_metric, HstTree};
use crate::metric::MetricSpace;
use crate::oracle::map_by_labels;

/// Checks the precondition: every triple has aspect ratio >= k.
/// Returns the first offending triple otherwise.
fn check_triples(m: &MetricSpace, k: f64) -> Result<(), ExtractError> {
    let n = m.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for l in (j + 1)..n {
                let a = m.d(i, j);
                let b = m.d(i, l);
                let c = m.d(j, l);
                let phi = a.max(b).max(c) / a.min(b).min(c);
                if !approx::ge(phi, k) {
                    return Err(ExtractError::TripleTooFlat { i, j, k: l, phi, required: k });
                }
            }
        }
    }
    Ok(())
}

pub fn triangle_to_binary_hst(
    m: &MetricSpace,
    k: f64,
) -> Result<(HstTree, EmbeddingCert), ExtractError> {
    if !(k > 2.0) {
        return Err(ExtractError::KTooSmall { k });
    }
    if m.len() < 2 {
        return Err(ExtractError::TooSmall { need: 2, got: m.len() });
    }
    check_triples(m, k)?;
    let all: Vec<usize> = (0..m.len()).collect();
    let tree = build(m, &all, k).canonical();
    tree.validate()?;
    let target = hst_metric(&tree)?;
    let map = map_by_labels(m, &target)
        .map_err(|e| ExtractError::CertMismatch(e.to_string()))?;
    let cert = distortion_of(&map, m, &target).map_err(ExtractError::Metric)?;
    Ok((tree, cert))
}

fn build(m: &MetricSpace, points: &[usize], k: f64) -> HstTree {
    if points.len() == 1 {
        return HstTree::leaf(m.label(points[0]));
    }
    let mut diam = 0.0f64;
    let (mut x, mut xbar) = (points[0], points[1]);
    for (a, &i) in points.iter().enumerate() {
        for &j in points.iter().skip(a + 1) {
            let d = m.d(i, j);
            if d > diam {
                diam = d;
                x = i;
                xbar = j;
            }
        }
    }
    let radius = diam / k;
    let mut near_x = Vec::new();
    let mut near_xbar = Vec::new();
    for &p in points {
        if approx::le(m.d(x, p), radius) {
            near_x.push(p);
        } else if approx::le(m.d(xbar, p), radius) {
            near_xbar.push(p);
        } else {
            // Unreachable under the checked precondition: (x, xbar, p) would
            // be a triple of aspect ratio below k.
            unreachable!("ball cover failed; triple ({x},{xbar},{p}) is flatter than {k}");
        }
    }
    debug_assert!(!near_x.is_empty() && !near_xbar.is_empty());
    HstTree::internal(diam, vec![build(m, &near_x, k), build(m, &near_xbar, k)])
}
