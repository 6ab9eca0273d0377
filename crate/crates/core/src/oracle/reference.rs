//! Slow reference paths for the oracles.
//!
//! These take no shortcuts: subset maximization enumerates every subset with
//! no size ceiling, the lacunary reference tries every ordering with no
//! first-element prune, and feasibility is decided by backward interval
//! propagation instead of the forward greedy. They exist to certify the fast
//! deciders on small instances and as independent oracles for frozen test
//! values.

use crate::approx;
use crate::hst::HstTree;
use crate::metric::{restrict, MetricSpace};
use crate::oracle::binary_hst::{enumerate_topologies, Topo};

/// Exhaustive maximum subset with aspect ratio at most alpha.
pub fn ref_max_equilateral(m: &MetricSpace, alpha: f64) -> (usize, Vec<usize>) {
    let n = m.len();
    assert!(n <= 20, "reference path is exponential");
    let mut best: Vec<usize> = vec![0];
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best.len() {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (a, &i) in subset.iter().enumerate() {
            for &j in subset.iter().skip(a + 1) {
                lo = lo.min(m.d(i, j));
                hi = hi.max(m.d(i, j));
            }
        }
        if approx::le(hi, alpha * lo) {
            best = subset;
        }
    }
    (best.len(), best)
}

/// Backward-propagation feasibility for one fixed ordering: the minimal
/// admissible value lo_i = max(M_i, k * lo_{i+1}) must not exceed
/// alpha * m_i at any position.
fn ordering_feasible_backward(m: &MetricSpace, order: &[usize], alpha: f64, k: f64) -> bool {
    let n = order.len();
    if n <= 1 {
        return true;
    }
    let mut maxs = vec![0.0f64; n - 1];
    let mut mins = vec![f64::INFINITY; n - 1];
    for i in 0..(n - 1) {
        for j in (i + 1)..n {
            let d = m.d(order[i], order[j]);
            maxs[i] = maxs[i].max(d);
            mins[i] = mins[i].min(d);
        }
    }
    let mut lo = 0.0f64;
    for i in (0..(n - 1)).rev() {
        lo = maxs[i].max(k * lo);
        if !approx::le(lo, alpha * mins[i]) {
            return false;
        }
    }
    true
}

/// Unpruned lacunary embeddability: every ordering, backward propagation.
pub fn ref_is_lacunary(s: &MetricSpace, alpha: f64, k: f64) -> bool {
    let n = s.len();
    assert!(n <= 9, "reference path is factorial");
    if n <= 1 {
        return true;
    }
    let mut order: Vec<usize> = (0..n).collect();
    permutations(&mut order, 0, &mut |perm| ordering_feasible_backward(s, perm, alpha, k))
}

fn permutations(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == items.len() {
        return visit(items);
    }
    for i in at..items.len() {
        items.swap(at, i);
        if permutations(items, at + 1, visit) {
            items.swap(at, i);
            return true;
        }
        items.swap(at, i);
    }
    false
}

/// Exhaustive lacunary subset maximization over all subsets, largest first.
pub fn ref_max_lacunary(m: &MetricSpace, alpha: f64, k: f64) -> usize {
    let n = m.len();
    assert!(n <= 9);
    for size in (2..=n).rev() {
        let mut found = false;
        for_subsets(n, size, &mut |subset| {
            let w = restrict(m, subset).expect("in range");
            if ref_is_lacunary(&w.induced, alpha, k) {
                found = true;
                return true;
            }
            false
        });
        if found {
            return size;
        }
    }
    2.min(n)
}

/// Backward need-propagation for a binary topology: the minimal feasible
/// label of u is need(u) = max(max_cross(u), k * need(internal children));
/// the topology is labelable iff need(u) <= alpha * min_cross(u) everywhere.
fn topology_feasible_backward(topo: &Topo, m: &MetricSpace, alpha: f64, k: f64) -> bool {
    fn need(topo: &Topo, m: &MetricSpace, alpha: f64, k: f64, ok: &mut bool) -> Option<f64> {
        match topo {
            Topo::Leaf(_) => None,
            Topo::Node(l, r) => {
                let ln = need(l, m, alpha, k, ok);
                let rn = need(r, m, alpha, k, ok);
                if !*ok {
                    return Some(f64::INFINITY);
                }
                let (lm, rm) = (leaves(l), leaves(r));
                let mut max_cross = 0.0f64;
                let mut min_cross = f64::INFINITY;
                for &i in &lm {
                    for &j in &rm {
                        max_cross = max_cross.max(m.d(i, j));
                        min_cross = min_cross.min(m.d(i, j));
                    }
                }
                let mut nd = max_cross;
                if let Some(x) = ln {
                    nd = nd.max(k * x);
                }
                if let Some(x) = rn {
                    nd = nd.max(k * x);
                }
                if !approx::le(nd, alpha * min_cross) {
                    *ok = false;
                }
                Some(nd)
            }
        }
    }
    fn leaves(topo: &Topo) -> Vec<usize> {
        match topo {
            Topo::Leaf(i) => vec![*i],
            Topo::Node(l, r) => {
                let mut out = leaves(l);
                out.extend(leaves(r));
                out
            }
        }
    }
    let mut ok = true;
    need(topo, m, alpha, k, &mut ok);
    ok
}

/// Unpruned binary-HST embeddability: every topology, backward propagation.
pub fn ref_is_binary_hst(s: &MetricSpace, alpha: f64, k: f64) -> bool {
    let n = s.len();
    assert!(n <= 8);
    if n <= 2 {
        return true;
    }
    enumerate_topologies(n, &mut |t| topology_feasible_backward(t, s, alpha, k))
}

/// Exhaustive binary-HST subset maximization.
pub fn ref_max_binary_hst(m: &MetricSpace, alpha: f64, k: f64) -> usize {
    let n = m.len();
    assert!(n <= 8);
    for size in (2..=n).rev() {
        let mut found = false;
        for_subsets(n, size, &mut |subset| {
            let w = restrict(m, subset).expect("in range");
            if ref_is_binary_hst(&w.induced, alpha, k) {
                found = true;
                return true;
            }
            false
        });
        if found {
            return size;
        }
    }
    2.min(n)
}

/// Exhaustive maximum monochromatic subset for a complete edge coloring.
pub fn ref_max_monochromatic(n: usize, color: &dyn Fn(usize, usize) -> usize) -> usize {
    assert!(n <= 20);
    let mut best = 1.min(n);
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if subset.len() <= best {
            continue;
        }
        let mut colors = subset
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| subset.iter().skip(a + 1).map(move |&j| color(i, j)));
        let first = colors.next();
        let mono = match first {
            None => true,
            Some(c) => colors.all(|x| x == c),
        };
        if mono {
            best = subset.len();
        }
    }
    best
}

/// Exhaustive maximum leaf subset whose induced lca-tree is binary.
///
/// A leaf subset induces a binary tree iff every internal vertex of the
/// original tree has at most 2 children branches containing selected leaves.
pub fn ref_max_binary_leafset(tree: &HstTree) -> usize {
    let leaf_ids: Vec<String> = tree.leaves().iter().map(|s| s.to_string()).collect();
    let n = leaf_ids.len();
    assert!(n <= 16, "reference path is exponential");
    let mut best = 0usize;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if induced_binary(tree, &leaf_ids, mask).0 {
            best = size;
        }
    }
    best
}

/// Returns (still binary, number of selected leaves below this node).
fn induced_binary(node: &HstTree, leaf_ids: &[String], mask: u32) -> (bool, usize) {
    match node {
        HstTree::Leaf { point } => {
            let idx = leaf_ids.iter().position(|p| p == point).expect("leaf id");
            (true, (mask >> idx & 1) as usize)
        }
        HstTree::Internal { children, .. } => {
            let mut selected = 0usize;
            let mut branches = 0usize;
            for c in children {
                let (ok, cnt) = induced_binary(c, leaf_ids, mask);
                if !ok {
                    return (false, 0);
                }
                if cnt > 0 {
                    branches += 1;
                }
                selected += cnt;
            }
            (branches <= 2, selected)
        }
    }
}

fn for_subsets(n: usize, size: usize, visit: &mut impl FnMut(&[usize]) -> bool) {
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        if visit(&subset) {
            return;
        }
        if !crate::oracle::lacunary::next_combination(&mut subset, n) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_reference() {
        let m = MetricSpace::equilateral(5, 1.0);
        assert_eq!(ref_max_equilateral(&m, 1.0).0, 5);
    }

    #[test]
    fn lacunary_reference_on_the_boundary_case() {
        let m = MetricSpace::equilateral(3, 1.0);
        assert!(ref_is_lacunary(&m, 2.0, 2.0));
        assert!(!ref_is_lacunary(&m, 1.9, 2.0));
        assert_eq!(ref_max_lacunary(&MetricSpace::equilateral(5, 1.0), 2.0, 2.0), 3);
    }

    #[test]
    fn binary_hst_reference() {
        let m = MetricSpace::equilateral(4, 1.0);
        assert!(!ref_is_binary_hst(&m, 1.0, 2.0));
        assert!(ref_is_binary_hst(&m, 2.0, 2.0));
        assert_eq!(ref_max_binary_hst(&m, 1.0, 2.0), 2);
    }
}
