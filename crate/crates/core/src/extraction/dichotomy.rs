//! The equilateral-or-lacunary dichotomy on k-increasing trees, and its
//! composition with the k-increasing extraction.
//!
//! In a k-increasing tree with m leaves the internal vertices form a path.
//! Either some vertex holds at least ceil(sqrt(m)) leaf children (these
//! leaves are an exact equilateral subspace), or at least floor(sqrt(m))
//! path vertices have a leaf child, and picking one leaf per such vertex
//! yields an isometric k-lacunary subspace: for picked leaves y_i under path
//! vertices v_1, ..., v_t (root first), d(y_i, y_j) = Delta(v_min(i,j)), and
//! the labels decrease by factor k along the path.

use crate::error::ExtractError;
use crate::extraction::increasing::extract_k_increasing;
use crate::extraction::{
    equilateral_target, witness_and_cert, DichotomyKind, DichotomyResult, DichotomyStructure,
    Guarantee,
};
use crate::hst::{hst_metric, HstTree};
use crate::lacunary::{lacunary_metric, LacunarySequence};
use crate::metric::{restrict, MetricSpace};

/// Internal path vertices of a k-increasing tree, root first, with the leaf
/// children of each (positions into the tree's depth-first leaf order).
fn leaf_bunches(tree: &HstTree) -> Vec<(f64, Vec<usize>)> {
    let mut out = Vec::new();
    let mut node = tree;
    let mut offset = 0usize;
    loop {
        match node {
            HstTree::Leaf { .. } => break,
            HstTree::Internal { label, children } => {
                let mut leaves_here = Vec::new();
                let mut next: Option<(&HstTree, usize)> = None;
                let mut pos = offset;
                for c in children {
                    if c.is_leaf() {
                        leaves_here.push(pos);
                        pos += 1;
                    } else {
                        next = Some((c, pos));
                        pos += c.leaf_count();
                    }
                }
                out.push((*label, leaves_here));
                match next {
                    Some((c, p)) => {
                        node = c;
                        offset = p;
                    }
                    None => break,
                }
            }
        }
    }
    out
}

/// Splits a k-increasing tree into an exact equilateral or exact k-lacunary
/// leaf subspace of size at least floor(sqrt(m)).
///
/// The returned result is relative to the tree's own leaf metric: `indices`
/// index into [`hst_metric`]'s point order.
pub fn increasing_dichotomy(tree: &HstTree) -> Result<DichotomyResult, ExtractError> {
    if !tree.is_k_increasing() {
        return Err(ExtractError::NotIncreasing);
    }
    tree.validate()?;
    let m = tree.leaf_count();
    if m == 1 {
        // A single leaf is trivially equilateral.
        let space = MetricSpace::from_matrix(
            vec![tree.leaves()[0].to_string()],
            vec![vec![0.0]],
        )
        .map_err(ExtractError::Metric)?;
        return Ok(DichotomyResult {
            kind: DichotomyKind::Equilateral,
            indices: vec![0],
            structure: None,
            cert: crate::embedding::EmbeddingCert::trivial(space.clone(), space),
            guarantee: Guarantee::new(1.0, 1.0).with("m", 1.0),
        });
    }
    let space = hst_metric(tree)?;
    let bunches = leaf_bunches(tree);
    let need_eq = (m as f64).sqrt().ceil() as usize;
    let floor_sqrt = (m as f64).sqrt().floor();

    // Case (a): some vertex has >= ceil(sqrt(m)) leaf children.
    let best = bunches
        .iter()
        .enumerate()
        .max_by(|(ia, (_, a)), (ib, (_, b))| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .expect("tree has an internal vertex");
    if bunches[best].1.len() >= need_eq {
        let indices = bunches[best].1.clone();
        let w = restrict(&space, &indices)?;
        let target = equilateral_target(&w.induced);
        let (indices, cert) = witness_and_cert(&space, &indices, &target)?;
        let guarantee = Guarantee::new(floor_sqrt.max(1.0), 1.0).with("m", m as f64);
        return Ok(DichotomyResult {
            kind: DichotomyKind::Equilateral,
            indices,
            structure: None,
            cert,
            guarantee,
        });
    }

    // Case (b): one leaf per path vertex that has one. If only one vertex
    // had leaf children it would hold all m of them and case (a) would have
    // fired, so at least two vertices contribute here.
    let picked: Vec<(f64, usize)> = bunches
        .iter()
        .filter(|(_, leaves)| !leaves.is_empty())
        .map(|(label, leaves)| (*label, leaves[0]))
        .collect();
    debug_assert!(picked.len() >= 2);
    debug_assert!(picked.len() as f64 >= floor_sqrt);
    let values: Vec<f64> = picked.iter().take(picked.len() - 1).map(|&(l, _)| l).collect();
    // Largest k the picked labels certify: the smallest consecutive ratio.
    // Consecutive picked vertices are at least one path edge apart, so this
    // is at least the tree's separation.
    let k_seq = if values.len() < 2 {
        tree.separation().min(1e12)
    } else {
        values.windows(2).map(|w| w[0] / w[1]).fold(f64::INFINITY, f64::min)
    };
    let seq = LacunarySequence::new(values, k_seq.max(1.0)).map_err(ExtractError::Hst)?;
    let target = lacunary_metric(&seq).map_err(ExtractError::Hst)?;
    let ordered: Vec<usize> = picked.iter().map(|&(_, leaf)| leaf).collect();
    let (indices, cert) = witness_and_cert(&space, &ordered, &target)?;
    let guarantee = Guarantee::new(floor_sqrt.max(1.0), 1.0)
        .with("m", m as f64)
        .with("k", seq.k());
    Ok(DichotomyResult {
        kind: DichotomyKind::Lacunary,
        indices,
        structure: Some(DichotomyStructure::Lacunary(seq)),
        cert,
        guarantee,
    })
}

/// Full pipeline: k-increasing extraction followed by the tree dichotomy.
/// Certified distortion at most 1+eps; size at least
/// floor(sqrt(extraction's size guarantee)).
pub fn equilateral_or_lacunary(
    m: &MetricSpace,
    eps: f64,
    k: f64,
) -> Result<DichotomyResult, ExtractError> {
    let ex = extract_k_increasing(m, eps, k)?;
    let inner = increasing_dichotomy(ex.tree())?;
    // Map tree-leaf indices back to parent indices: hst_metric's point order
    // matches the extraction witness order via the stored certificate map.
    let leaf_to_parent: Vec<usize> = {
        let mut v = vec![usize::MAX; ex.result.indices.len()];
        for (src_pos, &leaf_pos) in ex.result.cert.map.iter().enumerate() {
            v[leaf_pos] = ex.result.indices[src_pos];
        }
        v
    };
    let ordered_parents: Vec<usize> = {
        // Recover the inner result's target order: inner.cert.map sends
        // sorted-witness positions to target positions; invert it.
        let mut by_target = vec![usize::MAX; inner.indices.len()];
        for (pos, &t) in inner.cert.map.iter().enumerate() {
            by_target[t] = inner.indices[pos];
        }
        by_target.into_iter().map(|leaf| leaf_to_parent[leaf]).collect()
    };
    let (indices, cert) = if ordered_parents.len() == 1 {
        let w = restrict(m, &ordered_parents)?;
        (ordered_parents.clone(), crate::embedding::EmbeddingCert::trivial(w.induced.clone(), inner.cert.target.clone()))
    } else {
        witness_and_cert(m, &ordered_parents, &inner.cert.target)?
    };
    let size_bound = ex.result.guarantee.size_bound.max(1.0).sqrt().floor().max(1.0);
    let mut guarantee = Guarantee::new(size_bound, 1.0 + eps)
        .with("eps", eps)
        .with("chain_length", ex.chain_length as f64)
        .with("classes", ex.classes as f64)
        .with("extracted", ex.result.size() as f64);
    if inner.kind == DichotomyKind::Lacunary {
        if let Some(kk) = inner.guarantee.params.get("k") {
            guarantee = guarantee.with("k", *kk);
        }
    }
    Ok(DichotomyResult {
        kind: inner.kind,
        indices,
        structure: inner.structure,
        cert,
        guarantee,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx;
    use crate::instances::families::{random_hst, uniform_random_metric};

    fn star(n: usize) -> HstTree {
        HstTree::internal(1.0, (0..n).map(|i| HstTree::leaf(format!("p{i}"))).collect())
    }

    fn caterpillar(labels: &[f64]) -> HstTree {
        // one leaf per path vertex; the deepest vertex holds a second leaf
        let mut node = HstTree::leaf("z");
        for (i, &l) in labels.iter().enumerate().rev() {
            node = HstTree::internal(l, vec![HstTree::leaf(format!("l{i}")), node]);
        }
        node
    }

    #[test]
    fn star_goes_equilateral() {
        let d = increasing_dichotomy(&star(9)).unwrap();
        assert_eq!(d.kind, DichotomyKind::Equilateral);
        assert_eq!(d.size(), 9);
        assert_eq!(d.cert.distortion, 1.0);
    }

    #[test]
    fn caterpillar_goes_lacunary() {
        let t = caterpillar(&[8.0, 4.0, 2.0, 1.0]);
        let space = hst_metric(&t).unwrap();
        let d = increasing_dichotomy(&t).unwrap();
        assert_eq!(d.kind, DichotomyKind::Lacunary);
        assert_eq!(d.size(), 4);
        assert_eq!(d.cert.distortion, 1.0);
        d.verify(&space).unwrap();
    }

    #[test]
    fn mixed_tree_meets_sqrt_bound() {
        // 9 leaves, max bunch 2: lacunary branch with >= 3 points
        let t = HstTree::internal(
            81.0,
            vec![
                HstTree::leaf("a0"),
                HstTree::leaf("a1"),
                HstTree::internal(
                    27.0,
                    vec![
                        HstTree::leaf("b0"),
                        HstTree::leaf("b1"),
                        HstTree::internal(
                            9.0,
                            vec![
                                HstTree::leaf("c0"),
                                HstTree::leaf("c1"),
                                HstTree::internal(
                                    3.0,
                                    vec![
                                        HstTree::leaf("d0"),
                                        HstTree::internal(
                                            1.0,
                                            vec![HstTree::leaf("e0"), HstTree::leaf("e1")],
                                        ),
                                    ],
                                ),
                            ],
                        ),
                    ],
                ),
            ],
        );
        let space = hst_metric(&t).unwrap();
        let d = increasing_dichotomy(&t).unwrap();
        assert_eq!(d.kind, DichotomyKind::Lacunary);
        assert!(d.size() >= 3);
        d.verify(&space).unwrap();
    }

    #[test]
    fn pipeline_on_equilateral_keeps_everything() {
        let m = MetricSpace::equilateral(9, 1.0);
        let d = equilateral_or_lacunary(&m, 1.0, 2.0).unwrap();
        assert_eq!(d.kind, DichotomyKind::Equilateral);
        assert_eq!(d.size(), 9);
        d.verify(&m).unwrap();
    }

    #[test]
    fn pipeline_on_lacunary_input() {
        let seq = crate::lacunary::LacunarySequence::new(vec![16.0, 4.0, 1.0], 2.0).unwrap();
        let m = lacunary_metric(&seq).unwrap();
        let d = equilateral_or_lacunary(&m, 0.5, 2.0).unwrap();
        assert!(approx::le(d.cert.distortion, 1.5));
        d.verify(&m).unwrap();
    }

    #[test]
    fn pipeline_random_grid() {
        for seed in 0..10 {
            let m = uniform_random_metric(64, 100 + seed);
            let d = equilateral_or_lacunary(&m, 1.0, 2.0).unwrap();
            d.verify(&m).unwrap();
        }
    }

    #[test]
    fn dichotomy_on_random_increasing_trees() {
        for seed in 0..20 {
            // max_children high with mostly-leaf splits gives k-increasing
            // trees often; filter on the predicate
            let t = random_hst(12, 2.0, 11, 1.0, seed);
            if !t.is_k_increasing() {
                continue;
            }
            let space = hst_metric(&t).unwrap();
            let d = increasing_dichotomy(&t).unwrap();
            assert!(d.size() as f64 >= (12.0f64).sqrt().floor());
            d.verify(&space).unwrap();
        }
    }
}
