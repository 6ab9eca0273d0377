//! Exact alpha-embeddability into k-lacunary spaces.
//!
//! A space S embeds with distortion <= alpha into a k-lacunary space iff some
//! ordering pi of its points admits values a_1 >= ... >= a_{n-1} with
//! a_{i+1} <= a_i / k and M_i <= a_i <= alpha * m_i, where M_i and m_i are
//! the largest and smallest distances from pi_i to later points. The
//! normalization (non-contractive, expansion <= alpha) loses no generality
//! by scale invariance.
//!
//! Per ordering the decision is greedy: a_1 = alpha * m_1 and
//! a_{i+1} = min(alpha * m_{i+1}, a_i / k), feasible iff a_i >= M_i at every
//! step. Greedy-maximal labels are optimal because a larger a_i only relaxes
//! the one downstream constraint a_{i+1} <= a_i / k. The ordering search is
//! pruned at the first position: a_1 dominates every later value and every
//! pair distance, so the first point must see the global maximum distance
//! within factor alpha of its own minimum. Both shortcuts are validated
//! against the unpruned backward-propagation reference in [`super::reference`].

use std::time::Instant;

use num::rational::BigRational;

use crate::error::OracleError;
use crate::metric::MetricSpace;
use crate::oracle::scalar::{Scalar, ScalarMatrix};
use crate::oracle::{
    bound_lacunary_size, cap_check, Arith, Caps, OracleClass, OracleReport, SearchStats,
    WitnessStructure,
};

/// Outcome of a lacunary embeddability decision.
#[derive(Debug, Clone, PartialEq)]
pub struct LacunaryDecision {
    pub feasible: bool,
    /// Point order realizing the embedding (position i -> point index).
    pub ordering: Option<Vec<usize>>,
    /// Realized sequence a_1..a_{n-1}, aligned with `ordering`.
    pub sequence: Option<Vec<f64>>,
    pub nodes: u64,
}

pub fn is_lacunary_embeddable(
    s: &MetricSpace,
    alpha: f64,
    k: f64,
    caps: &Caps,
    arith: Arith,
) -> Result<LacunaryDecision, OracleError> {
    check_params(alpha, k)?;
    cap_check(s.len(), caps.lacunary_perm_n, "lacunary_perm_n")?;
    Ok(match arith {
        Arith::Float => decide::<f64>(s, alpha, k, true),
        Arith::Rational => decide::<BigRational>(s, alpha, k, true),
    })
}

fn check_params(alpha: f64, k: f64) -> Result<(), OracleError> {
    if !(alpha >= 1.0) || !(k >= 1.0) {
        return Err(OracleError::BadParameters(format!(
            "need alpha >= 1 and k >= 1, got alpha = {alpha}, k = {k}"
        )));
    }
    Ok(())
}

pub(crate) fn decide<T: Scalar>(s: &MetricSpace, alpha: f64, k: f64, prune: bool) -> LacunaryDecision {
    let n = s.len();
    if n <= 1 {
        return LacunaryDecision { feasible: true, ordering: Some((0..n).collect()), sequence: Some(vec![]), nodes: 0 };
    }
    let d = ScalarMatrix::<T>::from_metric(s);
    let alpha_s = T::from_f64(alpha);
    let k_s = T::from_f64(k);
    let dmax = T::from_f64(s.diameter());
    let mut nodes = 0u64;
    let mut order = Vec::with_capacity(n);
    let mut seq: Vec<T> = Vec::with_capacity(n - 1);
    let found = extend(
        &d, &alpha_s, &k_s, &dmax, prune, (1u32 << n) - 1, None, &mut order, &mut seq, &mut nodes,
    );
    if found {
        LacunaryDecision {
            feasible: true,
            sequence: Some(seq.iter().map(Scalar::to_f64).collect()),
            ordering: Some(order),
            nodes,
        }
    } else {
        LacunaryDecision { feasible: false, ordering: None, sequence: None, nodes }
    }
}

#[allow(clippy::too_many_arguments)]
fn extend<T: Scalar>(
    d: &ScalarMatrix<T>,
    alpha: &T,
    k: &T,
    dmax: &T,
    prune: bool,
    remaining: u32,
    cap: Option<&T>,
    order: &mut Vec<usize>,
    seq: &mut Vec<T>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if remaining.count_ones() == 1 {
        // The last point carries no value of its own.
        order.push(remaining.trailing_zeros() as usize);
        return true;
    }
    let candidates: Vec<usize> =
        (0..d.n).filter(|&p| remaining >> p & 1 == 1).collect();
    for &p in &candidates {
        let rest = remaining & !(1u32 << p);
        let mut min_d: Option<T> = None;
        let mut max_d: Option<T> = None;
        for q in 0..d.n {
            if rest >> q & 1 == 1 {
                let dq = d.d(p, q);
                min_d = Some(match min_d {
                    None => dq.clone(),
                    Some(m) => {
                        if dq < &m {
                            dq.clone()
                        } else {
                            m
                        }
                    }
                });
                max_d = Some(match max_d {
                    None => dq.clone(),
                    Some(m) => {
                        if dq > &m {
                            dq.clone()
                        } else {
                            m
                        }
                    }
                });
            }
        }
        let (min_d, max_d) = (min_d.unwrap(), max_d.unwrap());
        if prune && cap.is_none() && !dmax.le_slack(&alpha.mul(&min_d)) {
            // a_1 must dominate the global maximum distance.
            continue;
        }
        let reach = alpha.mul(&min_d);
        let a = match cap {
            None => reach,
            Some(c) => {
                let inherited = c.div(k);
                T::min_of(reach, inherited)
            }
        };
        if !max_d.le_slack(&a) {
            continue;
        }
        order.push(p);
        seq.push(a.clone());
        if extend(d, alpha, k, dmax, prune, rest, Some(&a), order, seq, nodes) {
            return true;
        }
        order.pop();
        seq.pop();
    }
    false
}

/// Exact maximum subset size admitting a k-lacunary alpha-embedding.
pub fn max_lacunary_subset(
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
    cap_check(m.len(), caps.lacunary_subset_n, "lacunary_subset_n")?;
    let start = Instant::now();
    let n = m.len();
    // Sizes above the Lemma ceiling 2 + log_k(alpha * Phi) are infeasible a
    // priori (Phi is monotone under restriction), so skip them.
    let mut s_hi = n;
    if k > 1.0 {
        let phi = m.diameter() / m.min_distance();
        let bound = bound_lacunary_size(alpha, k, phi.max(1.0))?;
        s_hi = s_hi.min(crate::approx::floor_tol(bound).max(2.0) as usize);
    }
    cap_check(s_hi, caps.lacunary_perm_n, "lacunary_perm_n")?;
    let mut nodes = 0u64;
    for size in (2..=s_hi).rev() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let w = crate::metric::restrict(m, &subset).expect("in range");
            let decision = match arith {
                Arith::Float => decide::<f64>(&w.induced, alpha, k, true),
                Arith::Rational => decide::<BigRational>(&w.induced, alpha, k, true),
            };
            nodes += decision.nodes;
            if decision.feasible {
                let ordering = decision.ordering.unwrap();
                let witness: Vec<usize> = ordering.iter().map(|&i| subset[i]).collect();
                let sequence = decision.sequence.unwrap();
                return Ok(OracleReport {
                    class: OracleClass::Lacunary,
                    alpha,
                    k: Some(k),
                    optimum: size,
                    witness,
                    structure: WitnessStructure::Lacunary { sequence, k },
                    stats: SearchStats { nodes, ms: start.elapsed().as_millis() as u64 },
                });
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    unreachable!("every pair is 1-embeddable in a 1-value lacunary space");
}

/// Advances `subset` to the next size-|subset| combination of 0..n.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lacunary::{lacunary_metric, LacunarySequence};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn equilateral_triple_boundary() {
        let m = MetricSpace::equilateral(3, 1.0);
        // alpha = 2, k = 2: feasible via a = (2, 1)
        let yes = is_lacunary_embeddable(&m, 2.0, 2.0, &caps(), Arith::Float).unwrap();
        assert!(yes.feasible);
        let seq = yes.sequence.unwrap();
        assert_eq!(seq, vec![2.0, 1.0]);
        // alpha = 1.9 needs a_1 >= 2 > 1.9 * 1: infeasible
        let no = is_lacunary_embeddable(&m, 1.9, 2.0, &caps(), Arith::Float).unwrap();
        assert!(!no.feasible);
        let no_exact = is_lacunary_embeddable(&m, 1.9, 2.0, &caps(), Arith::Rational).unwrap();
        assert!(!no_exact.feasible);
    }

    #[test]
    fn lacunary_space_embeds_itself() {
        let s = LacunarySequence::new(vec![4.0, 1.0], 4.0).unwrap();
        let m = lacunary_metric(&s).unwrap();
        let d = is_lacunary_embeddable(&m, 1.0, 4.0, &caps(), Arith::Float).unwrap();
        assert!(d.feasible);
    }

    #[test]
    fn equilateral_five_attains_the_lemma_bound() {
        let m = MetricSpace::equilateral(5, 1.0);
        let r = max_lacunary_subset(&m, 2.0, 2.0, &caps(), Arith::Float).unwrap();
        assert_eq!(r.optimum, 3); // 2 + log_2(2 * 1) = 3, attained
        r.verify(&m).unwrap();
    }

    #[test]
    fn two_points_always_embed() {
        let m = MetricSpace::equilateral(2, 5.0);
        let r = max_lacunary_subset(&m, 1.0, 10.0, &caps(), Arith::Float).unwrap();
        assert_eq!(r.optimum, 2);
    }

    #[test]
    fn combination_iterator_covers_all() {
        let mut c = vec![0, 1, 2];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
