//! Exact alpha-embeddability into binary k-HSTs.
//!
//! A space S embeds with distortion <= alpha into a binary k-HST iff some
//! rooted leaf-labeled binary topology admits labels with
//! d(x,y) <= Delta(lca(x,y)) <= alpha * d(x,y) for every pair and
//! Delta(child) <= Delta(parent) / k (non-contractive normalization, no loss
//! of generality). Topologies are enumerated by leaf insertion, (2m-3)!! of
//! them; per topology the labels are assigned greedily top-down:
//! Delta_u = min(alpha * min-cross-pair(u), Delta_parent / k), feasible iff
//! Delta_u >= max-cross-pair(u) at every internal vertex. Greedy-maximal
//! labels are optimal since a larger parent label only relaxes its children.
//! k must exceed 1 so witness labels strictly decrease.

use std::time::Instant;

use num::rational::BigRational;

use crate::error::OracleError;
use crate::hst::HstTree;
use crate::metric::MetricSpace;
use crate::oracle::lacunary::next_combination;
use crate::oracle::scalar::{Scalar, ScalarMatrix};
use crate::oracle::{
    bound_binary_hst_size, cap_check, Arith, Caps, OracleClass, OracleReport, SearchStats,
    WitnessStructure,
};

/// Outcome of a binary-HST embeddability decision.
#[derive(Debug, Clone)]
pub struct BinaryHstDecision {
    pub feasible: bool,
    /// Witness tree over the input's point labels.
    pub tree: Option<HstTree>,
    pub nodes: u64,
}

pub fn is_binary_hst_embeddable(
    s: &MetricSpace,
    alpha: f64,
    k: f64,
    caps: &Caps,
    arith: Arith,
) -> Result<BinaryHstDecision, OracleError> {
    check_params(alpha, k)?;
    cap_check(s.len(), caps.binary_topology_n, "binary_topology_n")?;
    Ok(match arith {
        Arith::Float => decide::<f64>(s, alpha, k),
        Arith::Rational => decide::<BigRational>(s, alpha, k),
    })
}

fn check_params(alpha: f64, k: f64) -> Result<(), OracleError> {
    if !(alpha >= 1.0) || !(k > 1.0) {
        return Err(OracleError::BadParameters(format!(
            "need alpha >= 1 and k > 1, got alpha = {alpha}, k = {k}"
        )));
    }
    Ok(())
}

/// Rooted leaf-labeled binary topology on point indices.
#[derive(Debug, Clone)]
pub(crate) enum Topo {
    Leaf(usize),
    Node(Box<Topo>, Box<Topo>),
}

impl Topo {
    fn mask(&self) -> u32 {
        match self {
            Topo::Leaf(i) => 1 << i,
            Topo::Node(l, r) => l.mask() | r.mask(),
        }
    }

    /// Grafts `leaf` above the node at preorder position `pos`, counting the
    /// root as position 0. Returns None when pos is past the last node.
    fn graft(&self, pos: &mut usize, leaf: usize) -> Option<Topo> {
        if *pos == 0 {
            return Some(Topo::Node(Box::new(self.clone()), Box::new(Topo::Leaf(leaf))));
        }
        *pos -= 1;
        match self {
            Topo::Leaf(_) => None,
            Topo::Node(l, r) => {
                if let Some(nl) = l.graft(pos, leaf) {
                    return Some(Topo::Node(Box::new(nl), Box::new((**r).clone())));
                }
                if let Some(nr) = r.graft(pos, leaf) {
                    return Some(Topo::Node(Box::new((**l).clone()), Box::new(nr)));
                }
                None
            }
        }
    }

    fn node_count(&self) -> usize {
        match self {
            Topo::Leaf(_) => 1,
            Topo::Node(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }
}

/// Enumerates all rooted leaf-labeled binary topologies on n >= 2 leaves,
/// stopping early when the visitor returns true.
pub(crate) fn enumerate_topologies(n: usize, visit: &mut impl FnMut(&Topo) -> bool) -> bool {
    fn grow(t: &Topo, next: usize, n: usize, visit: &mut impl FnMut(&Topo) -> bool) -> bool {
        if next == n {
            return visit(t);
        }
        let positions = t.node_count();
        for p in 0..positions {
            let mut pos = p;
            let grown = t.graft(&mut pos, next).expect("position in range");
            if grow(&grown, next + 1, n, visit) {
                return true;
            }
        }
        false
    }
    assert!(n >= 2);
    let base = Topo::Node(Box::new(Topo::Leaf(0)), Box::new(Topo::Leaf(1)));
    grow(&base, 2, n, visit)
}

fn decide<T: Scalar>(s: &MetricSpace, alpha: f64, k: f64) -> BinaryHstDecision {
    let n = s.len();
    if n <= 1 {
        return BinaryHstDecision { feasible: true, tree: None, nodes: 0 };
    }
    if n == 2 {
        // One topology; Delta = alpha * d >= d always works.
        let tree = HstTree::internal(
            alpha * s.d(0, 1),
            vec![HstTree::leaf(s.label(0)), HstTree::leaf(s.label(1))],
        );
        return BinaryHstDecision { feasible: true, tree: Some(tree), nodes: 1 };
    }
    let d = ScalarMatrix::<T>::from_metric(s);
    let alpha_s = T::from_f64(alpha);
    let k_s = T::from_f64(k);
    let mut nodes = 0u64;
    let mut found: Option<HstTree> = None;
    enumerate_topologies(n, &mut |topo| {
        nodes += 1;
        if let Some(tree) = label_topology(topo, s, &d, &alpha_s, &k_s, None) {
            found = Some(tree);
            true
        } else {
            false
        }
    });
    BinaryHstDecision { feasible: found.is_some(), tree: found, nodes }
}

/// Tries to label a topology greedily; returns the witness tree on success.
fn label_topology<T: Scalar>(
    topo: &Topo,
    s: &MetricSpace,
    d: &ScalarMatrix<T>,
    alpha: &T,
    k: &T,
    cap: Option<&T>,
) -> Option<HstTree> {
    match topo {
        Topo::Leaf(i) => Some(HstTree::leaf(s.label(*i))),
        Topo::Node(l, r) => {
            let (lm, rm) = (l.mask(), r.mask());
            let mut min_cross: Option<T> = None;
            let mut max_cross: Option<T> = None;
            for i in 0..s.len() {
                if lm >> i & 1 == 0 {
                    continue;
                }
                for j in 0..s.len() {
                    if rm >> j & 1 == 0 {
                        continue;
                    }
                    let dij = d.d(i, j);
                    min_cross = Some(match min_cross {
                        None => dij.clone(),
                        Some(m) => {
                            if dij < &m {
                                dij.clone()
                            } else {
                                m
                            }
                        }
                    });
                    max_cross = Some(match max_cross {
                        None => dij.clone(),
                        Some(m) => {
                            if dij > &m {
                                dij.clone()
                            } else {
                                m
                            }
                        }
                    });
                }
            }
            let (min_cross, max_cross) = (min_cross.unwrap(), max_cross.unwrap());
            let reach = alpha.mul(&min_cross);
            let delta = match cap {
                None => reach,
                Some(c) => T::min_of(reach, c.div(k)),
            };
            if !max_cross.le_slack(&delta) {
                return None;
            }
            let lt = label_topology(l, s, d, alpha, k, Some(&delta))?;
            let rt = label_topology(r, s, d, alpha, k, Some(&delta))?;
            Some(HstTree::internal(delta.to_f64(), vec![lt, rt]))
        }
    }
}

/// Exact maximum subset size admitting a binary k-HST alpha-embedding.
pub fn max_binary_hst_subset(
    m: &MetricSpace,
    alpha: f64,
    k: f64,
    caps: &Caps,
    arith: Arith,
) -> Result<OracleReport, OracleError> {
    check_params(alpha, k)?;
    if m.len() < 2 {
        return Err(OracleError::BadParameters("need at least 2 points".into()));
    }
    cap_check(m.len(), caps.binary_subset_n, "binary_subset_n")?;
    let start = Instant::now();
    let n = m.len();
    let phi = (m.diameter() / m.min_distance()).max(1.0);
    let bound = bound_binary_hst_size(alpha, k, phi)?;
    let s_hi = n.min(crate::approx::floor_tol(bound).max(2.0) as usize);
    cap_check(s_hi, caps.binary_topology_n, "binary_topology_n")?;
    let mut nodes = 0u64;
    for size in (2..=s_hi).rev() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let w = crate::metric::restrict(m, &subset).expect("in range");
            let decision = match arith {
                Arith::Float => decide::<f64>(&w.induced, alpha, k),
                Arith::Rational => decide::<BigRational>(&w.induced, alpha, k),
            };
            nodes += decision.nodes;
            if decision.feasible {
                return Ok(OracleReport {
                    class: OracleClass::BinaryHst,
                    alpha,
                    k: Some(k),
                    optimum: size,
                    witness: subset,
                    structure: WitnessStructure::BinaryHst {
                        tree: decision.tree.expect("witness tree for size >= 2"),
                        k,
                    },
                    stats: SearchStats { nodes, ms: start.elapsed().as_millis() as u64 },
                });
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("every pair embeds into a single-edge binary HST");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hst::hst_metric;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn topology_counts_are_double_factorials() {
        for (n, expect) in [(2, 1u64), (3, 3), (4, 15), (5, 105), (6, 945)] {
            let mut count = 0u64;
            enumerate_topologies(n, &mut |_| {
                count += 1;
                false
            });
            assert_eq!(count, expect, "n = {n}");
        }
    }

    #[test]
    fn four_point_equilateral_needs_alpha_two() {
        let m = MetricSpace::equilateral(4, 1.0);
        let no = is_binary_hst_embeddable(&m, 1.0, 2.0, &caps(), Arith::Float).unwrap();
        assert!(!no.feasible);
        let yes = is_binary_hst_embeddable(&m, 2.0, 2.0, &caps(), Arith::Float).unwrap();
        assert!(yes.feasible);
        let t = yes.tree.unwrap();
        assert!(t.is_binary());
        assert!(crate::approx::ge(t.separation(), 2.0));
    }

    #[test]
    fn two_points_always_embed() {
        let m = MetricSpace::equilateral(2, 3.0);
        let d = is_binary_hst_embeddable(&m, 1.0, 100.0, &caps(), Arith::Float).unwrap();
        assert!(d.feasible);
    }

    #[test]
    fn hst_leaf_metric_embeds_isometrically() {
        // balanced binary 2-HST
        let t = HstTree::internal(
            4.0,
            vec![
                HstTree::internal(1.0, vec![HstTree::leaf("a"), HstTree::leaf("b")]),
                HstTree::internal(2.0, vec![HstTree::leaf("c"), HstTree::leaf("d")]),
            ],
        );
        let m = hst_metric(&t).unwrap();
        let d = is_binary_hst_embeddable(&m, 1.0, 2.0, &caps(), Arith::Float).unwrap();
        assert!(d.feasible, "identity embedding exists");
    }

    #[test]
    fn equilateral_optimum_is_two_at_alpha_one() {
        let m = MetricSpace::equilateral(5, 1.0);
        let r = max_binary_hst_subset(&m, 1.0, 2.0, &caps(), Arith::Float).unwrap();
        assert_eq!(r.optimum, 2);
        r.verify(&m).unwrap();
    }
}
