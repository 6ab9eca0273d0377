//! Simple metric composition M_beta[N] and its structure lemmas.
//!
//! The beta-composition replaces every point of M (rescaled by beta * gamma,
//! gamma = diam(N) / min-distance(M)) with an isometric copy of N:
//! within-copy distances equal d_N, cross-copy distances equal
//! beta * gamma * d_M. For beta >= 1 the result is always a metric. Flat
//! subsets of a composition live in one factor (decompose_flat), and
//! lacunary-embeddable subsets split into a transversal part plus one copy
//! (decompose_lacunary, via the four-point inequality).

use crate::approx;
use crate::error::InstanceError;
use crate::metric::{aspect_ratio, restrict, MetricSpace};
use crate::oracle::fourpoint::four_point_check;
use crate::oracle::Arith;

/// A composition L = M_beta[N] with its factors and parameters.
///
/// Product point ids are `(m-label,n-label)` pairs; the point at product
/// index `i * |N| + j` is copy `i`, inner point `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionRecord {
    pub m: MetricSpace,
    pub n: MetricSpace,
    pub beta: f64,
    pub gamma: f64,
    pub product: MetricSpace,
}

impl CompositionRecord {
    /// Copy index (position in M) of a product point.
    pub fn copy_of(&self, product_index: usize) -> usize {
        product_index / self.n.len()
    }

    /// Inner index (position in N) of a product point.
    pub fn inner_of(&self, product_index: usize) -> usize {
        product_index % self.n.len()
    }
}

/// Computes M_beta[N].
///
/// Needs |M| >= 2 (gamma divides by M's minimum distance) and |N| >= 1.
/// A singleton inner factor makes gamma = 0 and the defining formula
/// degenerate; in that case the composition is the isometric relabeling of M
/// (each point replaced by the single point of N), which is what the
/// iterated singleton-base powers expect.
pub fn metric_composition(
    m: &MetricSpace,
    n: &MetricSpace,
    beta: f64,
) -> Result<CompositionRecord, InstanceError> {
    if m.len() < 2 {
        return Err(InstanceError::DegenerateFactor(format!(
            "outer factor needs >= 2 points, got {}",
            m.len()
        )));
    }
    if n.is_empty() {
        return Err(InstanceError::DegenerateFactor("inner factor is empty".into()));
    }
    if !(beta >= 1.0) {
        return Err(InstanceError::PreconditionViolated(format!("beta = {beta} must be >= 1")));
    }
    let gamma = n.diameter() / m.min_distance();
    let cross = if n.len() == 1 { 1.0 } else { beta * gamma };
    let (mm, nn) = (m.len(), n.len());
    let total = mm * nn;
    let mut labels = Vec::with_capacity(total);
    for i in 0..mm {
        for j in 0..nn {
            labels.push(format!("({},{})", m.label(i), n.label(j)));
        }
    }
    let mut dist = vec![0.0; total * total];
    for i in 0..mm {
        for j in 0..nn {
            let a = i * nn + j;
            for k in 0..mm {
                for l in 0..nn {
                    let b = k * nn + l;
                    dist[a * total + b] = if i == k { n.d(j, l) } else { cross * m.d(i, k) };
                }
            }
        }
    }
    let product = MetricSpace::new_unchecked(labels, dist);
    Ok(CompositionRecord { m: m.clone(), n: n.clone(), beta, gamma, product })
}

/// Base of an iterated composition power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionBase {
    /// M_1 = M, M_i = M_beta[M_{i-1}].
    CopyOfM,
    /// M_0 = {a}, M_i = M_beta[M_{i-1}].
    Singleton,
}

/// Iterated composition M_i = M_beta[M_{i-1}]; both base conventions give
/// |M|^t points after t steps.
pub fn composition_power(
    m: &MetricSpace,
    beta: f64,
    t: usize,
    base: CompositionBase,
    max_points: usize,
) -> Result<MetricSpace, InstanceError> {
    if t < 1 {
        return Err(InstanceError::PreconditionViolated("t must be >= 1".into()));
    }
    let points = m
        .len()
        .checked_pow(t as u32)
        .filter(|&p| p <= max_points)
        .ok_or(InstanceError::SizeCapExceeded {
            points: m.len().saturating_pow(t as u32),
            cap: max_points,
        })?;
    let _ = points;
    let mut current = match base {
        CompositionBase::CopyOfM => m.clone(),
        CompositionBase::Singleton => {
            let single = MetricSpace::from_matrix(vec!["a".into()], vec![vec![0.0]])
                .expect("singleton is a metric");
            metric_composition(m, &single, beta)?.product
        }
    };
    for _ in 1..t {
        current = metric_composition(m, &current, beta)?.product;
    }
    Ok(current)
}

/// Where a flat subset of a composition lives.
#[derive(Debug, Clone, PartialEq)]
pub enum FlatDecomposition {
    /// Subset inside copy `copy`; `map` sends subset position -> N index.
    InN { copy: usize, map: Vec<usize> },
    /// Transversal subset; `map` sends subset position -> M index. The
    /// subset is isometric to the beta*gamma dilate of that M-subset.
    InM { map: Vec<usize>, scale: f64 },
}

/// Classifies a subset S of the product with Phi(S) <= alpha < beta as lying
/// inside one copy (isometric into N) or meeting every copy at most once
/// (isometric into a dilate of M).
pub fn decompose_flat(
    record: &CompositionRecord,
    subset: &[usize],
    alpha: f64,
) -> Result<FlatDecomposition, InstanceError> {
    if !(alpha < record.beta) {
        return Err(InstanceError::PreconditionViolated(format!(
            "need alpha < beta, got alpha = {alpha}, beta = {}",
            record.beta
        )));
    }
    let w = restrict(&record.product, subset).map_err(InstanceError::Metric)?;
    if subset.len() >= 2 {
        let phi = aspect_ratio(&w.induced).map_err(InstanceError::Metric)?;
        if !approx::le(phi, alpha) {
            return Err(InstanceError::PreconditionViolated(format!(
                "Phi(S) = {phi} exceeds alpha = {alpha}"
            )));
        }
    }
    let copies: Vec<usize> = subset.iter().map(|&i| record.copy_of(i)).collect();
    let all_same = copies.windows(2).all(|w| w[0] == w[1]);
    if all_same {
        return Ok(FlatDecomposition::InN {
            copy: copies[0],
            map: subset.iter().map(|&i| record.inner_of(i)).collect(),
        });
    }
    // Not all in one copy: the hypothesis forces pairwise distinct copies.
    for (a, &ca) in copies.iter().enumerate() {
        for (b, &cb) in copies.iter().enumerate().skip(a + 1) {
            if ca == cb {
                let outside = (0..subset.len()).find(|&c| copies[c] != ca).expect("mixed");
                return Err(InstanceError::HypothesisViolated {
                    a: subset[a],
                    b: subset[b],
                    c: subset[outside],
                });
            }
        }
    }
    Ok(FlatDecomposition::InM {
        map: copies,
        scale: record.beta * record.gamma,
    })
}

/// Splits an (alpha,k)-lacunary-embeddable subset S into a transversal part
/// T (isometric into a dilate of M) and S \ T inside a single copy
/// (isometric into N). Requires beta >= max(1, alpha/k). If two different
/// copies each hold two points of S, the four-point inequality is violated
/// and the offending quadruple is reported.
pub fn decompose_lacunary(
    record: &CompositionRecord,
    subset: &[usize],
    alpha: f64,
    k: f64,
) -> Result<(Vec<usize>, Vec<usize>), InstanceError> {
    if !(record.beta >= (alpha / k).max(1.0)) {
        return Err(InstanceError::PreconditionViolated(format!(
            "need beta >= max(1, alpha/k), got beta = {}, alpha = {alpha}, k = {k}",
            record.beta
        )));
    }
    let w = restrict(&record.product, subset).map_err(InstanceError::Metric)?;
    let copies: Vec<usize> = subset.iter().map(|&i| record.copy_of(i)).collect();
    // Find copies holding >= 2 points.
    let mut multi: Vec<usize> = Vec::new();
    for (pos, &c) in copies.iter().enumerate() {
        if copies[..pos].contains(&c) && !multi.contains(&c) {
            multi.push(c);
        }
    }
    if multi.len() > 1 {
        // Two doubled copies: the quadruple (p,q | r,s) has within-copy
        // distances at most diam(N) and cross distances at least
        // beta * diam(N), so it violates the four-point inequality whenever
        // beta > alpha/k strictly. At the exact boundary beta = alpha/k the
        // inequality holds with equality and carries no information.
        let c0 = multi[0];
        let c1 = multi[1];
        let in_c0: Vec<usize> = (0..subset.len()).filter(|&p| copies[p] == c0).collect();
        let in_c1: Vec<usize> = (0..subset.len()).filter(|&p| copies[p] == c1).collect();
        let quad = [in_c0[0], in_c0[1], in_c1[0], in_c1[1]];
        let lhs = w.induced.d(quad[0], quad[1]).max(w.induced.d(quad[2], quad[3]));
        let mut rhs = f64::INFINITY;
        for &p in &quad[..2] {
            for &q in &quad[2..] {
                rhs = rhs.min(w.induced.d(p, q));
            }
        }
        if !approx::ge(lhs, (k / alpha) * rhs) {
            debug_assert!(!four_point_check(&w.induced, alpha, k, Arith::Float).ok);
            return Err(InstanceError::FourPointViolation {
                x1: subset[quad[0]],
                x2: subset[quad[1]],
                x3: subset[quad[2]],
                x4: subset[quad[3]],
            });
        }
        return Err(InstanceError::PreconditionViolated(format!(
            "two copies each hold two points of S; beta = {} equals alpha/k so the four-point \
             inequality is tight and cannot separate copies",
            record.beta
        )));
    }
    let heavy = multi.first().copied();
    let mut transversal = Vec::new();
    let mut rest = Vec::new();
    for (pos, &idx) in subset.iter().enumerate() {
        if Some(copies[pos]) == heavy {
            rest.push(idx);
        } else {
            transversal.push(idx);
        }
    }
    Ok((transversal, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::families::uniform_random_metric;
    use crate::metric::validate_metric;

    fn two_point(d: f64) -> MetricSpace {
        MetricSpace::equilateral(2, d)
    }

    #[test]
    fn defining_formula() {
        let m = two_point(1.0);
        let n = two_point(1.0);
        let rec = metric_composition(&m, &n, 2.0).unwrap();
        assert_eq!(rec.gamma, 1.0);
        assert_eq!(rec.product.len(), 4);
        // within copies 1, across 2
        assert_eq!(rec.product.d(0, 1), 1.0);
        assert_eq!(rec.product.d(2, 3), 1.0);
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(rec.product.d(a, b), 2.0);
        }
        assert_eq!(rec.product.label(0), "(e0,e0)");
    }

    #[test]
    fn gamma_scales_cross_distances() {
        let m = two_point(2.0); // min distance 2
        let n = two_point(6.0); // diameter 6
        let rec = metric_composition(&m, &n, 1.5).unwrap();
        assert_eq!(rec.gamma, 3.0);
        // cross = beta * gamma * d_M = 1.5 * 3 * 2 = 9
        assert_eq!(rec.product.d(0, 2), 9.0);
    }

    #[test]
    fn random_products_validate() {
        for seed in 0..100 {
            let m = uniform_random_metric(2 + (seed as usize % 7), seed);
            let n = uniform_random_metric(2 + ((seed as usize + 3) % 7), seed + 1000);
            let rec = metric_composition(&m, &n, 1.0 + (seed % 5) as f64 / 2.0).unwrap();
            let p = &rec.product;
            validate_metric(
                p.labels().to_vec(),
                (0..p.len()).map(|i| (0..p.len()).map(|j| p.d(i, j)).collect()).collect(),
            )
            .unwrap();
        }
    }

    #[test]
    fn power_conventions() {
        let m = two_point(1.0);
        // t = 1 copy base is M itself
        let p1 = composition_power(&m, 2.0, 1, CompositionBase::CopyOfM, 4096).unwrap();
        assert_eq!(p1, m);
        // nested composition matches the power
        let p2 = composition_power(&m, 2.0, 2, CompositionBase::CopyOfM, 4096).unwrap();
        let nested = metric_composition(&m, &m, 2.0).unwrap().product;
        assert_eq!(p2.len(), nested.len());
        for (i, j, d) in p2.pairs() {
            assert_eq!(d, nested.d(i, j));
        }
        // singleton base: same matrices, |M|^t points
        let s2 = composition_power(&m, 2.0, 2, CompositionBase::Singleton, 4096).unwrap();
        assert_eq!(s2.len(), 4);
        for (i, j, d) in s2.pairs() {
            assert_eq!(d, p2.d(i, j));
        }
        // size law
        let m3 = MetricSpace::equilateral(3, 1.0);
        let p3 = composition_power(&m3, 2.0, 3, CompositionBase::CopyOfM, 4096).unwrap();
        assert_eq!(p3.len(), 27);
        // cap
        assert!(matches!(
            composition_power(&m3, 2.0, 9, CompositionBase::CopyOfM, 4096),
            Err(InstanceError::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn flat_decomposition_cases() {
        let m = two_point(1.0);
        let n = MetricSpace::equilateral(3, 1.0);
        let rec = metric_composition(&m, &n, 2.0).unwrap();
        // inside one copy
        match decompose_flat(&rec, &[0, 1, 2], 1.5).unwrap() {
            FlatDecomposition::InN { copy, map } => {
                assert_eq!(copy, 0);
                assert_eq!(map, vec![0, 1, 2]);
            }
            other => panic!("expected InN, got {other:?}"),
        }
        // one point per copy
        match decompose_flat(&rec, &[1, 4], 1.5).unwrap() {
            FlatDecomposition::InM { map, scale } => {
                assert_eq!(map, vec![0, 1]);
                assert_eq!(scale, 2.0);
            }
            other => panic!("expected InM, got {other:?}"),
        }
        // mixed subsets have Phi >= beta and fail the precondition
        assert!(matches!(
            decompose_flat(&rec, &[0, 1, 4], 1.5),
            Err(InstanceError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn lacunary_decomposition_cases() {
        let m = two_point(1.0);
        let n = MetricSpace::equilateral(3, 1.0);
        let rec = metric_composition(&m, &n, 2.0).unwrap();
        // inside one copy: T is empty
        let (t, rest) = decompose_lacunary(&rec, &[0, 1, 2], 2.0, 2.0).unwrap();
        assert!(t.is_empty());
        assert_eq!(rest, vec![0, 1, 2]);
        // transversal: everything goes to T
        let (t, rest) = decompose_lacunary(&rec, &[0, 3], 2.0, 2.0).unwrap();
        assert_eq!(t, vec![0, 3]);
        assert!(rest.is_empty());
        // a pair of points in each of two copies violates the inequality
        let err = decompose_lacunary(&rec, &[0, 1, 3, 4], 2.0, 2.0).unwrap_err();
        assert!(matches!(err, InstanceError::FourPointViolation { .. }));
        // at beta = alpha/k exactly, the inequality is tight and the
        // doubled-copies pattern can genuinely occur; that is a boundary
        // precondition failure, not a four-point violation
        let err = decompose_lacunary(&rec, &[0, 1, 3, 4], 4.0, 2.0).unwrap_err();
        assert!(matches!(err, InstanceError::PreconditionViolated(_)));
    }
}
