//! Standard instance families: equilateral, path, uniform-random metrics,
//! geometric lacunary metrics, and random HSTs.

use rand::Rng;

use crate::hst::HstTree;
use crate::lacunary::{lacunary_metric, LacunarySequence};
use crate::metric::MetricSpace;

use super::rng::prng;

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// n points at common distance 1.
pub fn equilateral_metric(n: usize) -> MetricSpace {
    MetricSpace::equilateral(n, 1.0)
}

/// Path graph metric: d(i,j) = |i - j|.
pub fn path_metric(n: usize) -> MetricSpace {
    assert!(n >= 2);
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = (i as f64 - j as f64).abs();
        }
    }
    MetricSpace::new_unchecked(point_labels(n), dist)
}

/// Independent uniform-[1,2] pair distances. Any such matrix satisfies the
/// triangle inequality (1 + 1 >= 2), so it is always a metric.
pub fn uniform_random_metric(n: usize, seed: u64) -> MetricSpace {
    assert!(n >= 2);
    let mut rng = prng(seed);
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.gen_range(1.0..=2.0);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    MetricSpace::new_unchecked(point_labels(n), dist)
}

/// The (m+1)-point metric of the geometric k-lacunary sequence
/// (k^(m-1), ..., k, 1).
pub fn geometric_lacunary_metric(k: f64, m: usize) -> MetricSpace {
    assert!(m >= 1 && k >= 1.0);
    let values: Vec<f64> = (0..m).map(|i| k.powi((m - 1 - i) as i32)).collect();
    let seq = LacunarySequence::new(values, k).expect("geometric sequence is k-lacunary");
    lacunary_metric(&seq).expect("nonempty")
}

/// Random HST with the requested number of leaves, separation at least `k`,
/// and out-degrees between 2 and `max_children`. The root label is `scale`.
///
/// Child labels are parent / (k * u) with u uniform in [1, 2], so the
/// separation is at least k by construction.
pub fn random_hst(
    leaves: usize,
    k: f64,
    max_children: usize,
    scale: f64,
    seed: u64,
) -> HstTree {
    assert!(leaves >= 2 && k >= 1.0 && max_children >= 2 && scale > 0.0);
    let mut rng = prng(seed);
    let mut next_id = 0usize;
    let tree = build(&mut rng, leaves, k, max_children, scale, &mut next_id);
    debug_assert!(tree.validate().is_ok());
    tree
}

fn build(
    rng: &mut super::rng::Prng,
    leaves: usize,
    k: f64,
    max_children: usize,
    label: f64,
    next_id: &mut usize,
) -> HstTree {
    if leaves == 1 {
        let id = *next_id;
        *next_id += 1;
        return HstTree::leaf(format!("p{id:04}"));
    }
    let parts = rng.gen_range(2..=max_children.min(leaves));
    // Distribute leaves over the parts, each at least one.
    let mut counts = vec![1usize; parts];
    for _ in 0..(leaves - parts) {
        let i = rng.gen_range(0..parts);
        counts[i] += 1;
    }
    let children = counts
        .into_iter()
        .map(|c| {
            let child_label = label / (k * rng.gen_range(1.0..=2.0));
            build(rng, c, k, max_children, child_label, next_id)
        })
        .collect();
    HstTree::internal(label, children)
}
