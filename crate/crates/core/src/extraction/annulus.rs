//! The dense-annulus construction.
//!
//! For any metric space M and eps in (0,1] there are a center x, a subset A,
//! and a scale lambda in [1,2] such that |A| >= eps*n/4 and every z in A has
//! lambda*diam/(2(1+eps)) <= d(x,z) <= lambda*diam/2.
//!
//! Construction: take a diametrical pair (x, xbar). The far half-sets
//! W = {y : d(y,x) >= diam/2} and W' = {y : d(y,xbar) >= diam/2} cover M
//! (a point near both endpoints would contradict the triangle inequality),
//! so the larger one has at least n/2 points. Split it into
//! ceil(log_{1+eps} 2) multiplicative layers around its endpoint and keep
//! the most populous layer. The top layer is closed at lambda*diam/2 so the
//! diametrical partner itself is always layerable.

use crate::approx;
use crate::error::ExtractError;
use crate::metric::MetricSpace;

/// A dense annulus around a center point.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusResult {
    /// Center index x.
    pub center: usize,
    /// Annulus members (ascending indices, excludes the center).
    pub subset: Vec<usize>,
    /// Scale lambda in [1, 2].
    pub lambda: f64,
    /// Diameter of the input space.
    pub diameter: f64,
    /// Size of the far half-set the annulus was carved from.
    pub half_set_size: usize,
    /// Number of layers used in the pigeonhole.
    pub layer_count: usize,
}

impl AnnulusResult {
    /// Lower annulus bound lambda * diam / (2 (1 + eps)).
    pub fn inner_radius(&self, eps: f64) -> f64 {
        self.lambda * self.diameter / (2.0 * (1.0 + eps))
    }

    /// Upper annulus bound lambda * diam / 2 (closed).
    pub fn outer_radius(&self) -> f64 {
        self.lambda * self.diameter / 2.0
    }
}

pub fn find_dense_annulus(m: &MetricSpace, eps: f64) -> Result<AnnulusResult, ExtractError> {
    if m.len() < 2 {
        return Err(ExtractError::TooSmall { need: 2, got: m.len() });
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(ExtractError::InvalidParameter(format!("eps = {eps} must be in (0, 1]")));
    }
    let n = m.len();
    let diam = m.diameter();
    let (x, xbar) = m.diametrical_pair().expect("n >= 2");
    let half = diam / 2.0;
    let far_x: Vec<usize> = (0..n).filter(|&y| approx::ge(m.d(x, y), half)).collect();
    let far_xbar: Vec<usize> = (0..n).filter(|&y| approx::ge(m.d(xbar, y), half)).collect();
    // The far half-sets cover M; ties go to the first endpoint.
    debug_assert!(far_x.len() + far_xbar.len() >= n);
    let (center, far) = if far_x.len() >= far_xbar.len() { (x, far_x) } else { (xbar, far_xbar) };

    let r = approx::ceil_tol((2.0f64).ln() / (1.0 + eps).ln()).max(1.0) as usize;
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); r];
    for &z in &far {
        let ratio = m.d(center, z) / half;
        // layer i (1-based): (1+eps)^(i-1) <= ratio < (1+eps)^i, clamped so
        // ratio = 2 (the diametrical partner) lands in the top layer.
        let i = (ratio.ln() / (1.0 + eps).ln()).floor() as i64 + 1;
        let i = i.clamp(1, r as i64) as usize;
        layers[i - 1].push(z);
    }
    let (best_idx, _) = layers
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .expect("r >= 1");
    let i0 = best_idx + 1;
    let lambda = (1.0 + eps).powi(i0 as i32).min(2.0);
    Ok(AnnulusResult {
        center,
        subset: layers[best_idx].clone(),
        lambda,
        diameter: diam,
        half_set_size: far.len(),
        layer_count: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::families::uniform_random_metric;

    /// Postcondition checker used by the examples: annulus band bounds, the
    /// pigeonhole size bound |A| >= |W| / r, and the proof-level eps*n/4.
    pub(crate) fn check_annulus(m: &MetricSpace, eps: f64, a: &AnnulusResult) {
        assert!(a.lambda >= 1.0 - 1e-12 && a.lambda <= 2.0 + 1e-12);
        let lo = a.inner_radius(eps);
        let hi = a.outer_radius();
        for &z in &a.subset {
            let d = m.d(a.center, z);
            assert!(approx::ge(d, lo), "d = {d} below {lo}");
            assert!(approx::le(d, hi), "d = {d} above {hi}");
        }
        assert!(a.subset.len() * a.layer_count >= a.half_set_size);
        assert!(a.subset.len() as f64 >= eps * m.len() as f64 / 4.0 - 1e-9);
    }

    #[test]
    fn two_point_space() {
        let m = MetricSpace::equilateral(2, 1.0);
        let a = find_dense_annulus(&m, 0.5).unwrap();
        assert_eq!(a.center, 0); // first diametrical endpoint wins the tie
        assert_eq!(a.subset, vec![1]);
        check_annulus(&m, 0.5, &a);
    }

    #[test]
    fn equilateral_four_single_annulus() {
        let m = MetricSpace::equilateral(4, 1.0);
        let a = find_dense_annulus(&m, 1.0).unwrap();
        assert_eq!(a.center, 0);
        assert_eq!(a.subset, vec![1, 2, 3]);
        assert_eq!(a.lambda, 2.0);
        check_annulus(&m, 1.0, &a);
    }

    #[test]
    fn random_spaces_satisfy_postconditions() {
        for seed in 0..100 {
            let m = uniform_random_metric(64, seed);
            let a = find_dense_annulus(&m, 0.5).unwrap();
            check_annulus(&m, 0.5, &a);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = MetricSpace::equilateral(3, 1.0);
        assert!(find_dense_annulus(&m, 0.0).is_err());
        assert!(find_dense_annulus(&m, 1.5).is_err());
        let one = crate::metric::restrict(&m, &[0]).unwrap();
        assert!(matches!(
            find_dense_annulus(&one.induced, 0.5),
            Err(ExtractError::TooSmall { .. })
        ));
    }
}
