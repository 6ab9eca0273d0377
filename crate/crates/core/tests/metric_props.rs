//! Invariants of the metric foundation: distortion, aspect ratio, and the
//! equilateral-distortion identity.

use mdich_core::instances::families::uniform_random_metric;
use mdich_core::{aspect_ratio, distortion_of, equilateral_distortion, restrict, MetricSpace};
use proptest::prelude::*;

fn rel_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn identity_distortion_is_one_and_never_below() {
    for seed in 0..50 {
        let m = uniform_random_metric(2 + (seed as usize % 9), seed);
        let id: Vec<usize> = (0..m.len()).collect();
        let cert = distortion_of(&id, &m, &m).unwrap();
        assert_eq!(cert.distortion, 1.0);
        // any permutation has distortion >= 1
        let mut perm = id.clone();
        perm.rotate_left(1);
        let cert = distortion_of(&perm, &m, &m).unwrap();
        assert!(cert.distortion >= 1.0 - 1e-12);
        cert.verify().unwrap();
    }
}

#[test]
fn aspect_ratio_is_monotone_under_restriction() {
    for seed in 0..50 {
        let m = uniform_random_metric(8, 100 + seed);
        let full = aspect_ratio(&m).unwrap();
        for mask in 0u32..(1 << 8) {
            if mask.count_ones() < 2 {
                continue;
            }
            let subset: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
            let w = restrict(&m, &subset).unwrap();
            let phi = aspect_ratio(&w.induced).unwrap();
            assert!(phi <= full * (1.0 + 1e-9));
        }
    }
}

/// Brute-force sweep oracle: the least distortion onto a same-size
/// equilateral space, sweeping the common distance over all pair distances.
/// By symmetry of the target, the identity map suffices per distance.
fn equilateral_sweep(m: &MetricSpace) -> f64 {
    let id: Vec<usize> = (0..m.len()).collect();
    let mut best = f64::INFINITY;
    for (_, _, w) in m.pairs() {
        let target = MetricSpace::equilateral(m.len(), w);
        let cert = distortion_of(&id, m, &target).unwrap();
        best = best.min(cert.distortion);
    }
    best
}

#[test]
fn equilateral_distortion_equals_aspect_ratio() {
    // frozen small cases
    let eq3 = MetricSpace::equilateral(3, 5.0);
    assert_eq!(equilateral_distortion(&eq3).unwrap(), 1.0);
    for seed in 0..60 {
        let n = 2 + (seed as usize % 5); // up to 6 points
        let m = uniform_random_metric(n, 200 + seed);
        let direct = equilateral_distortion(&m).unwrap();
        assert!(rel_eq(direct, aspect_ratio(&m).unwrap()));
        assert!(rel_eq(direct, equilateral_sweep(&m)));
    }
}

proptest! {
    #[test]
    fn distortion_is_scale_invariant(seed in 0u64..500, t in 0.001f64..1000.0) {
        let m = uniform_random_metric(5, seed);
        let scaled = m.scaled(t);
        let id: Vec<usize> = (0..5).collect();
        let cert = distortion_of(&id, &m, &scaled).unwrap();
        prop_assert!(rel_eq(cert.distortion, 1.0));
        // and against an independent random space
        let other = uniform_random_metric(5, seed.wrapping_add(1));
        let d1 = distortion_of(&id, &m, &other).unwrap().distortion;
        let d2 = distortion_of(&id, &m, &other.scaled(t)).unwrap().distortion;
        prop_assert!(rel_eq(d1, d2));
    }

    #[test]
    fn metric_json_round_trip(seed in 0u64..200) {
        let m = uniform_random_metric(6, seed);
        let text = serde_json::to_string(&m).unwrap();
        let back: MetricSpace = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, m);
    }
}
