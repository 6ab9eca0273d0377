//! Extraction of a subset (1+eps)-equivalent to a k-increasing space.
//!
//! The algorithm runs internally with eps' = sqrt(1+eps) - 1, so the final
//! certified distortion (1+eps')^2 is at most 1+eps.
//!
//! Iterate the dense annulus: starting from the whole space, each step
//! records the annulus center x_i and the scale l_i = lambda_i * diam / 2,
//! then recurses into the annulus until a single point remains (which is
//! kept as the last center, reusing the previous scale). For a < b the pair
//! distance d(x_a, x_b) lies in [l_a / (1+eps'), l_a], and l_b <= 2 l_a, so
//! the scales satisfy the sparsification lemma's prefix condition.
//! Sparsifying (l_i) with (eps', k) picks the kept centers and their rounded
//! labels b_i; grouping equal labels into a caterpillar of internal vertices
//! yields a k-increasing k-HST, and the map x_i -> leaf i is non-contractive
//! with expansion at most (1+eps')^2.

use crate::error::ExtractError;
use crate::extraction::annulus::find_dense_annulus;
use crate::extraction::sparsify::sparsify_sequence;
use crate::extraction::{witness_and_cert, DichotomyKind, DichotomyResult, DichotomyStructure, Guarantee};
use crate::hst::{hst_metric, HstTree};
use crate::metric::{restrict, MetricSpace};

/// Output of the k-increasing extraction: a dichotomy-like record whose
/// structure is the k-increasing tree, plus the run data the guarantees are
/// stated in.
#[derive(Debug, Clone)]
pub struct IncreasingExtraction {
    pub result: DichotomyResult,
    /// Number of annulus iterations (centers kept before sparsification).
    pub chain_length: usize,
    /// Claimed lower bound on chain_length: ln(n) / ln(4/eps').
    pub chain_bound: f64,
    /// Residue classes r = ceil(log_{1+eps'}(2k)) + 1.
    pub classes: usize,
    /// The internal eps'.
    pub eps_inner: f64,
}

impl IncreasingExtraction {
    pub fn tree(&self) -> &HstTree {
        match self.result.structure.as_ref() {
            Some(DichotomyStructure::Hst(t)) => t,
            _ => unreachable!("increasing extraction always stores a tree"),
        }
    }
}

pub fn extract_k_increasing(
    m: &MetricSpace,
    eps: f64,
    k: f64,
) -> Result<IncreasingExtraction, ExtractError> {
    if m.len() < 2 {
        return Err(ExtractError::TooSmall { need: 2, got: m.len() });
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(ExtractError::InvalidParameter(format!("eps = {eps} must be in (0, 1]")));
    }
    if !(k >= 1.0) {
        return Err(ExtractError::InvalidParameter(format!("k = {k} must be >= 1")));
    }
    let eps_inner = (1.0 + eps).sqrt() - 1.0;

    // Annulus iteration.
    let mut active: Vec<usize> = (0..m.len()).collect();
    let mut centers: Vec<usize> = Vec::new();
    let mut scales: Vec<f64> = Vec::new();
    loop {
        if active.len() == 1 {
            centers.push(active[0]);
            let last = *scales.last().expect("first iteration sees >= 2 points");
            scales.push(last);
            break;
        }
        let sub = restrict(m, &active)?;
        let ann = find_dense_annulus(&sub.induced, eps_inner)?;
        centers.push(active[ann.center]);
        scales.push(ann.lambda * ann.diameter / 2.0);
        active = ann.subset.iter().map(|&local| active[local]).collect();
    }
    let chain_length = centers.len();

    // Sparsify the scale sequence; kept centers become the leaves.
    let sparse = sparsify_sequence(&scales, eps_inner, k)?;
    let kept_centers: Vec<usize> = sparse.kept.iter().map(|&i| centers[i]).collect();
    let labels: Vec<f64> = sparse.values.clone();

    // Group consecutive equal labels into one internal vertex each; the
    // internal vertices form a path (deepest built first).
    let tree = build_caterpillar(&kept_centers, &labels, m);
    let guarantee = Guarantee::new(
        (chain_length as f64 / sparse.classes as f64).ceil(),
        1.0 + eps,
    )
    .with("eps", eps)
    .with("eps_inner", eps_inner)
    .with("k", k)
    .with("chain_length", chain_length as f64)
    .with("classes", sparse.classes as f64);

    let result = if kept_centers.len() == 1 {
        let single = HstTree::leaf(m.label(kept_centers[0]));
        let (indices, cert) = {
            let w = restrict(m, &kept_centers)?;
            let t = w.induced.clone();
            (kept_centers.clone(), crate::embedding::EmbeddingCert::trivial(w.induced, t))
        };
        DichotomyResult {
            kind: DichotomyKind::Increasing,
            indices,
            structure: Some(DichotomyStructure::Hst(single)),
            cert,
            guarantee,
        }
    } else {
        let target = hst_metric(&tree)?;
        // Tree leaves come out in caterpillar order = kept-center order.
        let (indices, cert) = witness_and_cert(m, &kept_centers, &target)?;
        DichotomyResult {
            kind: DichotomyKind::Increasing,
            indices,
            structure: Some(DichotomyStructure::Hst(tree)),
            cert,
            guarantee,
        }
    };

    Ok(IncreasingExtraction {
        result,
        chain_length,
        chain_bound: (m.len() as f64).ln() / (4.0 / eps_inner).ln(),
        classes: sparse.classes,
        eps_inner,
    })
}

/// Builds the caterpillar: distinct labels c_1 > c_2 > ... become internal
/// vertices; vertex i holds the leaves whose label is c_i plus vertex i+1.
fn build_caterpillar(points: &[usize], labels: &[f64], m: &MetricSpace) -> HstTree {
    debug_assert_eq!(points.len(), labels.len());
    // Group consecutive runs of equal labels (labels are nonincreasing).
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for (&p, &b) in points.iter().zip(labels) {
        match groups.last_mut() {
            Some((val, members)) if *val == b => members.push(p),
            _ => groups.push((b, vec![p])),
        }
    }
    // Deepest group first.
    let mut below: Option<HstTree> = None;
    for &(label, ref members) in groups.iter().rev() {
        let mut children: Vec<HstTree> =
            members.iter().map(|&p| HstTree::leaf(m.label(p))).collect();
        if let Some(sub) = below.take() {
            children.push(sub);
        }
        below = Some(HstTree::internal(label, children));
    }
    below.expect("at least one group").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx;
    use crate::instances::families::uniform_random_metric;

    /// The postcondition checker shared with the acceptance suite: tree
    /// class, separation, certificate shape, and the two size guarantees.
    pub(crate) fn check_extraction(m: &MetricSpace, eps: f64, k: f64, ex: &IncreasingExtraction) {
        let r = &ex.result;
        r.verify(m).unwrap();
        let tree = ex.tree();
        assert!(tree.is_k_increasing());
        if !tree.is_leaf() {
            assert!(approx::ge(tree.separation(), k), "separation {}", tree.separation());
        }
        assert!(approx::le(r.cert.distortion, 1.0 + eps));
        assert!(r.cert.is_non_contractive());
        assert!(ex.chain_length as f64 >= ex.chain_bound - 1e-9);
        let need = (ex.chain_length as f64 / ex.classes as f64).ceil() as usize;
        assert!(r.size() >= need, "size {} < ceil(m/r) = {need}", r.size());
    }

    #[test]
    fn equilateral_input_gives_distortion_one() {
        for n in [3usize, 8, 17] {
            let m = MetricSpace::equilateral(n, 1.0);
            let ex = extract_k_increasing(&m, 1.0, 2.0).unwrap();
            // all annuli at one scale: everything kept, distortion exactly 1
            assert_eq!(ex.result.size(), n);
            assert_eq!(ex.result.cert.distortion, 1.0);
            check_extraction(&m, 1.0, 2.0, &ex);
        }
    }

    #[test]
    fn two_point_input() {
        let m = MetricSpace::equilateral(2, 3.0);
        let ex = extract_k_increasing(&m, 0.5, 2.0).unwrap();
        assert_eq!(ex.chain_length, 2);
        assert_eq!(ex.result.size(), 2);
        check_extraction(&m, 0.5, 2.0, &ex);
    }

    #[test]
    fn random_grid_satisfies_postconditions() {
        for n in [16usize, 64] {
            for eps in [0.5, 1.0] {
                for k in [1.0, 2.0, 4.0] {
                    for seed in 0..5 {
                        let m = uniform_random_metric(n, seed);
                        let ex = extract_k_increasing(&m, eps, k).unwrap();
                        check_extraction(&m, eps, k, &ex);
                    }
                }
            }
        }
    }

    #[test]
    fn per_pair_ratio_band() {
        // every pair of kept points has tree/space ratio in [1, (1+eps')^2]
        let m = uniform_random_metric(48, 9);
        let eps = 0.5;
        let ex = extract_k_increasing(&m, eps, 2.0).unwrap();
        let cert = &ex.result.cert;
        let band = (1.0 + ex.eps_inner).powi(2);
        for (i, j, ds) in cert.source.pairs() {
            let dt = cert.target.d(cert.map[i], cert.map[j]);
            let ratio = dt / ds;
            assert!(approx::ge(ratio, 1.0) && approx::le(ratio, band), "ratio {ratio}");
        }
    }
}
