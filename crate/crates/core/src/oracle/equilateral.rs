//! Exact maximum alpha-equilateral subset via threshold-graph cliques.
//!
//! A subset S has Phi(S) <= alpha iff for d = min distance of S every pair
//! falls in [d, alpha*d]. Candidate minimum distances range over the pair
//! distances of the input, and for each candidate the subsets whose pairs
//! lie in the band are exactly the cliques of a threshold graph.

use std::time::Instant;

use num::rational::BigRational;

use crate::error::OracleError;
use crate::metric::MetricSpace;
use crate::oracle::clique::BitGraph;
use crate::oracle::scalar::{Scalar, ScalarMatrix};
use crate::oracle::{cap_check, Arith, Caps, OracleClass, OracleReport, SearchStats, WitnessStructure};

pub fn max_equilateral_subset(
    m: &MetricSpace,
    alpha: f64,
    caps: &Caps,
    arith: Arith,
) -> Result<OracleReport, OracleError> {
    if m.len() < 2 {
        return Err(OracleError::BadParameters("need at least 2 points".into()));
    }
    if !(alpha >= 1.0) {
        return Err(OracleError::BadParameters(format!("alpha = {alpha} must be >= 1")));
    }
    cap_check(m.len(), caps.equilateral_n, "equilateral_n")?;
    let start = Instant::now();
    let (witness, nodes) = match arith {
        Arith::Float => search::<f64>(m, alpha),
        Arith::Rational => search::<BigRational>(m, alpha),
    };
    let w = crate::metric::restrict(m, &witness).expect("witness indices valid");
    let distance = w.induced.diameter();
    Ok(OracleReport {
        class: OracleClass::Equilateral,
        alpha,
        k: None,
        optimum: witness.len(),
        witness,
        structure: WitnessStructure::Equilateral { distance },
        stats: SearchStats { nodes, ms: start.elapsed().as_millis() as u64 },
    })
}

fn search<T: Scalar>(m: &MetricSpace, alpha: f64) -> (Vec<usize>, u64) {
    let n = m.len();
    let d = ScalarMatrix::<T>::from_metric(m);
    let alpha = T::from_f64(alpha);
    let mut candidates: Vec<f64> = m.pairs().map(|(_, _, x)| x).collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup();

    // Any pair is a witness of size 2 (a two-point space has Phi = 1).
    let mut best: Vec<usize> = vec![0, 1];
    let mut nodes = 0u64;
    for lo_f in candidates {
        let lo = T::from_f64(lo_f);
        let hi = alpha.mul(&lo);
        let mut g = BitGraph::new(n);
        let mut edges = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                let dij = d.d(i, j);
                if lo.le_slack(dij) && dij.le_slack(&hi) {
                    g.add_edge(i, j);
                    edges += 1;
                }
            }
        }
        // A clique larger than the incumbent needs that many edges.
        let need = best.len() * (best.len() + 1) / 2;
        if edges < need {
            continue;
        }
        let (clique, visited) = g.max_clique();
        nodes += visited;
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    (best, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate_metric;
    use crate::oracle::reference::ref_max_equilateral;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn equilateral_space_is_its_own_optimum() {
        let m = MetricSpace::equilateral(6, 3.0);
        let r = max_equilateral_subset(&m, 1.0, &caps(), Arith::Float).unwrap();
        assert_eq!(r.optimum, 6);
        r.verify(&m).unwrap();
    }

    #[test]
    fn line_alpha_two() {
        // points {0,1,3}: any pair has Phi = 1, the triple has Phi = 3
        let m = validate_metric(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 2.0],
                vec![3.0, 2.0, 0.0],
            ],
        )
        .unwrap();
        let r = max_equilateral_subset(&m, 2.0, &caps(), Arith::Float).unwrap();
        assert_eq!(r.optimum, 2);
        r.verify(&m).unwrap();
    }

    #[test]
    fn matches_reference_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = rng.gen_range(2..=7);
            let m = crate::instances::families::uniform_random_metric(n, trial as u64);
            let alpha = rng.gen_range(1.0..2.5);
            for arith in [Arith::Float, Arith::Rational] {
                let fast = max_equilateral_subset(&m, alpha, &caps(), arith).unwrap();
                let (slow, _) = ref_max_equilateral(&m, alpha);
                assert_eq!(fast.optimum, slow, "n={n} alpha={alpha} arith={arith:?}");
                fast.verify(&m).unwrap();
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let m = MetricSpace::equilateral(6, 1.0);
        let mut caps = caps();
        caps.equilateral_n = 5;
        assert!(matches!(
            max_equilateral_subset(&m, 1.0, &caps, Arith::Float),
            Err(OracleError::CapExceeded { .. })
        ));
    }
}
