//! Greedy equilateral-or-lacunary dichotomy for distortion alpha > 2.
//!
//! Each round works inside the current set F with diameter D: greedily build
//! a D/alpha-net starting from the first diametrical endpoint. If the net
//! reaches the threshold T it is an equilateral witness (pairwise distances
//! in [D/alpha, D], so Phi <= alpha). Otherwise the net's open balls of
//! radius D/alpha cover F; take the most populous cell (size >= |F|/T) as
//! the next F, and record as z the far point guaranteed by the construction:
//! the net center x when the cell avoids B(x, D/alpha), the other
//! diametrical endpoint when the cell is the first one. The recorded points
//! satisfy d(z_i, z_j) in [D_{i-1}/alpha, D_{i-1}] for i < j and the cell
//! diameters shrink by factor 2/alpha per round, so the z's are
//! alpha-equivalent to an (alpha/2)-lacunary space of size
//! m >= log n / log T. When the requested k exceeds alpha/2 the witness is
//! thinned by the lacunary-subsequence stride.

use crate::approx;
use crate::error::ExtractError;
use crate::extraction::{
    equilateral_target, witness_and_cert, DichotomyKind, DichotomyResult, DichotomyStructure,
    Guarantee,
};
use crate::lacunary::{lacunary_metric, LacunarySequence};
use crate::metric::{restrict, MetricSpace};

/// One recursion level of the greedy construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainStep {
    /// Diameter of F_{i-1}.
    pub diameter: f64,
    /// Size of F_{i-1}.
    pub set_size: usize,
    /// Net size found this round.
    pub net_size: usize,
    /// The recorded far point z_i (parent index).
    pub z: usize,
}

/// Dichotomy result plus the per-round chain data the guarantees quantify
/// over.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub result: DichotomyResult,
    /// Chain rounds (empty when the equilateral branch fired on round one).
    pub chain: Vec<ChainStep>,
    /// Threshold T used.
    pub threshold: usize,
}

/// Default net threshold: ceil(log2 n), at least 2.
pub fn default_threshold(n: usize) -> usize {
    ((n as f64).log2().ceil() as usize).max(2)
}

pub fn greedy_equilateral_or_lacunary(
    m: &MetricSpace,
    alpha: f64,
    k: f64,
    threshold: Option<usize>,
) -> Result<GreedyRun, ExtractError> {
    if !(alpha > 2.0) {
        return Err(ExtractError::AlphaTooSmall { alpha });
    }
    if !(k > 1.0) {
        return Err(ExtractError::InvalidParameter(format!("k = {k} must be > 1")));
    }
    if m.len() < 2 {
        return Err(ExtractError::TooSmall { need: 2, got: m.len() });
    }
    let t = threshold.unwrap_or_else(|| default_threshold(m.len())).max(2);

    let mut f: Vec<usize> = (0..m.len()).collect();
    let mut chain: Vec<ChainStep> = Vec::new();
    let mut zs: Vec<usize> = Vec::new();
    loop {
        if f.len() == 1 {
            zs.push(f[0]);
            break;
        }
        let sub = restrict(m, &f)?;
        let diam = sub.induced.diameter();
        let (x_local, xbar_local) = sub.induced.diametrical_pair().expect("|F| >= 2");
        let radius = diam / alpha;

        // Greedy net containing x, insertion in index order.
        let mut net: Vec<usize> = vec![x_local];
        for cand in 0..f.len() {
            if cand != x_local && net.iter().all(|&p| approx::ge(sub.induced.d(cand, p), radius)) {
                net.push(cand);
            }
        }
        if net.len() >= t {
            let parents: Vec<usize> = net.iter().map(|&local| f[local]).collect();
            let w = restrict(m, &parents)?;
            let target = equilateral_target(&w.induced);
            let (indices, cert) = witness_and_cert(m, &parents, &target)?;
            let guarantee = Guarantee::new(t as f64, alpha)
                .with("alpha", alpha)
                .with("threshold", t as f64)
                .with("net_size", net.len() as f64);
            return Ok(GreedyRun {
                result: DichotomyResult {
                    kind: DichotomyKind::Equilateral,
                    indices,
                    structure: None,
                    cert,
                    guarantee,
                },
                chain,
                threshold: t,
            });
        }

        // Cells: each point joins the first net ball that contains it.
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); net.len()];
        for p in 0..f.len() {
            let owner = net
                .iter()
                .position(|&c| sub.induced.d(p, c) < radius)
                .expect("net is maximal, balls cover F");
            cells[owner].push(p);
        }
        let (cell_idx, _) = cells
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
            .expect("at least one cell");
        // Far point: x for later cells, the diametrical partner for cell 0.
        let z_local = if cell_idx == 0 { xbar_local } else { x_local };
        debug_assert!(cells[cell_idx]
            .iter()
            .all(|&p| approx::ge(sub.induced.d(p, z_local), radius)));
        chain.push(ChainStep {
            diameter: diam,
            set_size: f.len(),
            net_size: net.len(),
            z: f[z_local],
        });
        zs.push(f[z_local]);
        f = cells[cell_idx].iter().map(|&local| f[local]).collect();
    }

    // Lacunary branch: the chain diameters label the z-sequence.
    let m_len = zs.len();
    let diam_seq: Vec<f64> = chain.iter().map(|s| s.diameter).collect();
    debug_assert_eq!(diam_seq.len(), m_len - 1);
    // Thin when k exceeds alpha/2: keep every stride-th point.
    let stride = if approx::le(k, alpha / 2.0) {
        1
    } else {
        approx::ceil_tol(1.0 + k.ln() / (alpha / 2.0).ln()) as usize
    };
    let kept_points: Vec<usize> = (0..m_len).step_by(stride).map(|i| zs[i]).collect();
    let kept_values: Vec<f64> = (0..m_len)
        .step_by(stride)
        .take(kept_points.len().saturating_sub(1))
        .map(|i| diam_seq[i])
        .collect();
    let n_f = m.len() as f64;
    let size_before = n_f.ln() / (t as f64).ln();
    let guarantee = Guarantee::new((size_before / stride as f64).max(1.0), alpha)
        .with("alpha", alpha)
        .with("k", k)
        .with("threshold", t as f64)
        .with("stride", stride as f64)
        .with("chain_length", m_len as f64)
        .with("size_before_thinning", size_before);

    if kept_points.len() == 1 {
        let w = restrict(m, &kept_points)?;
        let target = w.induced.clone();
        return Ok(GreedyRun {
            result: DichotomyResult {
                kind: DichotomyKind::Lacunary,
                indices: kept_points,
                structure: Some(DichotomyStructure::Lacunary(
                    LacunarySequence::new(vec![], k).map_err(ExtractError::Hst)?,
                )),
                cert: crate::embedding::EmbeddingCert::trivial(w.induced, target),
                guarantee,
            },
            chain,
            threshold: t,
        });
    }
    let seq = LacunarySequence::new(kept_values, k).map_err(ExtractError::Hst)?;
    let target = lacunary_metric(&seq).map_err(ExtractError::Hst)?;
    let (indices, cert) = witness_and_cert(m, &kept_points, &target)?;
    Ok(GreedyRun {
        result: DichotomyResult {
            kind: DichotomyKind::Lacunary,
            indices,
            structure: Some(DichotomyStructure::Lacunary(seq)),
            cert,
            guarantee,
        },
        chain,
        threshold: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::families::uniform_random_metric;
    use crate::metric::validate_metric;

    /// Chain postconditions: geometric diameter decay, cell-size bound, and
    /// the z-sequence distance band.
    pub(crate) fn check_chain(m: &MetricSpace, alpha: f64, run: &GreedyRun) {
        let chain = &run.chain;
        for w in chain.windows(2) {
            assert!(approx::le(w[1].diameter, (2.0 / alpha) * w[0].diameter));
            assert!(w[1].set_size * run.threshold >= w[0].set_size);
        }
        let zs: Vec<usize> = chain.iter().map(|s| s.z).collect();
        for (i, &zi) in zs.iter().enumerate() {
            for (j, &zj) in zs.iter().enumerate().skip(i + 1) {
                let _ = j;
                let d = m.d(zi, zj);
                assert!(approx::ge(d, chain[i].diameter / alpha));
                assert!(approx::le(d, chain[i].diameter));
            }
        }
    }

    #[test]
    fn equilateral_net_absorbs_equilateral_input() {
        let m = MetricSpace::equilateral(4, 1.0);
        let run = greedy_equilateral_or_lacunary(&m, 3.0, 2.0, Some(2)).unwrap();
        assert_eq!(run.result.kind, DichotomyKind::Equilateral);
        assert_eq!(run.result.size(), 4);
        assert_eq!(run.result.cert.distortion, 1.0);
        run.result.verify(&m).unwrap();
    }

    #[test]
    fn line_hand_trace() {
        // {0, 10, 11}: diam 11, radius 11/3; net grows {0} -> {0, 10} and
        // stops (11 is within radius of 10), reaching T = 2.
        let m = validate_metric(
            vec!["0".into(), "10".into(), "11".into()],
            vec![
                vec![0.0, 10.0, 11.0],
                vec![10.0, 0.0, 1.0],
                vec![11.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let run = greedy_equilateral_or_lacunary(&m, 3.0, 2.0, Some(2)).unwrap();
        assert_eq!(run.result.kind, DichotomyKind::Equilateral);
        assert_eq!(run.result.indices, vec![0, 1]);
        run.result.verify(&m).unwrap();
    }

    #[test]
    fn random_instances_meet_guarantees() {
        for seed in 0..60 {
            let n = 64;
            let m = uniform_random_metric(n, 7000 + seed);
            for (alpha, k) in [(2.5, 2.0), (3.0, 1.2), (4.0, 2.0)] {
                let run = greedy_equilateral_or_lacunary(&m, alpha, k, None).unwrap();
                run.result.verify(&m).unwrap();
                check_chain(&m, alpha, &run);
                match run.result.kind {
                    DichotomyKind::Equilateral => {
                        assert!(run.result.size() >= run.threshold);
                    }
                    DichotomyKind::Lacunary => {
                        let lhs = run.result.size() as f64;
                        let stride = run.result.guarantee.params["stride"];
                        let before = (n as f64).ln() / (run.threshold as f64).ln();
                        assert!(lhs >= (before / stride).floor().max(1.0) - 1e-9);
                    }
                    _ => panic!("unexpected branch"),
                }
            }
        }
    }

    #[test]
    fn alpha_must_exceed_two() {
        let m = MetricSpace::equilateral(4, 1.0);
        assert!(matches!(
            greedy_equilateral_or_lacunary(&m, 2.0, 2.0, None),
            Err(ExtractError::AlphaTooSmall { .. })
        ));
    }
}
