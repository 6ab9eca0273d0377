//! Graph metrics: shortest-path distances, G(s, 1/2) sampling, and certified
//! diameter-2 Ramsey-style graphs.
//!
//! The paper's lower-bound compositions start from a diameter-2 graph with
//! small clique and independence numbers; such graphs exist almost surely,
//! and here they are sampled with rejection and certified exhaustively
//! (branch-and-bound clique on the graph and its complement) when within the
//! certification cap.

use serde::{Deserialize, Serialize};

use crate::error::InstanceError;
use crate::metric::MetricSpace;
use crate::oracle::clique::BitGraph;

use super::rng::{prng, split_seed};
use rand::Rng;

/// How the clique/independence numbers in a [`GraphCertificate`] were
/// obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificationMethod {
    /// Exhaustive branch-and-bound; the numbers are exact.
    Exact,
    /// Greedy bounds only (instance above the certification cap).
    Uncertified,
}

/// A sampled graph with its structural certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphCertificate {
    pub s: usize,
    pub edges: Vec<(usize, usize)>,
    pub diameter: usize,
    pub max_clique: usize,
    pub max_independent_set: usize,
    pub method: CertificationMethod,
}

/// Shortest-path metric of a connected graph on vertices 0..s.
pub fn graph_metric(edges: &[(usize, usize)], s: usize) -> Result<MetricSpace, InstanceError> {
    if s < 2 {
        return Err(InstanceError::PreconditionViolated("need at least 2 vertices".into()));
    }
    let mut adj = vec![Vec::new(); s];
    for &(a, b) in edges {
        if a >= s || b >= s {
            return Err(InstanceError::PreconditionViolated(format!(
                "edge ({a},{b}) out of range for {s} vertices"
            )));
        }
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut dist = vec![0.0; s * s];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..s {
        let mut seen = vec![usize::MAX; s];
        seen[start] = 0;
        queue.clear();
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen[w] == usize::MAX {
                    seen[w] = seen[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (v, &d) in seen.iter().enumerate() {
            if d == usize::MAX {
                return Err(InstanceError::DisconnectedGraph);
            }
            dist[start * s + v] = d as f64;
        }
    }
    let labels = (0..s).map(|i| format!("v{i}")).collect();
    Ok(MetricSpace::new_unchecked(labels, dist))
}

fn sample_edges(s: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = prng(seed);
    let mut edges = Vec::new();
    for i in 0..s {
        for j in (i + 1)..s {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Metric of one G(s, p) sample. Errors if the sample is disconnected.
pub fn random_graph_metric(s: usize, p: f64, seed: u64) -> Result<MetricSpace, InstanceError> {
    graph_metric(&sample_edges(s, p, seed), s)
}

fn graph_diameter(edges: &[(usize, usize)], s: usize) -> Option<usize> {
    let m = graph_metric(edges, s).ok()?;
    Some(m.diameter() as usize)
}

/// Samples G(s, 1/2) until the graph has diameter exactly 2, then certifies
/// its clique and independence numbers (exact up to `exact_cap` vertices,
/// greedy bounds above).
pub fn certified_ramsey_graph(
    s: usize,
    seed: u64,
    max_tries: usize,
    exact_cap: usize,
) -> Result<(MetricSpace, GraphCertificate), InstanceError> {
    if s < 3 {
        return Err(InstanceError::PreconditionViolated(
            "diameter-2 graphs need at least 3 vertices".into(),
        ));
    }
    for t in 0..max_tries {
        let edges = sample_edges(s, 0.5, split_seed(seed, t as u64));
        if graph_diameter(&edges, s) != Some(2) {
            continue;
        }
        let metric = graph_metric(&edges, s)?;
        let cert = certify(&edges, s, exact_cap);
        return Ok((metric, cert));
    }
    Err(InstanceError::TriesExhausted { tries: max_tries })
}

fn certify(edges: &[(usize, usize)], s: usize, exact_cap: usize) -> GraphCertificate {
    if s <= exact_cap && s <= 64 {
        let g = BitGraph::from_edges(s, edges);
        let (clique, _) = g.max_clique();
        let (indep, _) = g.complement().max_clique();
        GraphCertificate {
            s,
            edges: edges.to_vec(),
            diameter: 2,
            max_clique: clique.len(),
            max_independent_set: indep.len(),
            method: CertificationMethod::Exact,
        }
    } else {
        GraphCertificate {
            s,
            edges: edges.to_vec(),
            diameter: 2,
            max_clique: greedy_clique(edges, s),
            max_independent_set: greedy_independent(edges, s),
            method: CertificationMethod::Uncertified,
        }
    }
}

fn adjacency(edges: &[(usize, usize)], s: usize) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; s]; s];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

fn greedy_clique(edges: &[(usize, usize)], s: usize) -> usize {
    let adj = adjacency(edges, s);
    let mut best = 0;
    for start in 0..s {
        let mut clique = vec![start];
        for v in 0..s {
            if v != start && clique.iter().all(|&u| adj[u][v]) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn greedy_independent(edges: &[(usize, usize)], s: usize) -> usize {
    let adj = adjacency(edges, s);
    let mut best = 0;
    for start in 0..s {
        let mut set = vec![start];
        for v in 0..s {
            if v != start && set.iter().all(|&u| !adj[u][v]) {
                set.push(v);
            }
        }
        best = best.max(set.len());
    }
    best
}

// Graph JSON (graph-v1).
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub format: String,
    pub s: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn new(s: usize, edges: Vec<(usize, usize)>) -> Self {
        GraphJson { format: "graph-v1".into(), s, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_equilateral() {
        let edges: Vec<(usize, usize)> =
            (0..4).flat_map(|i| ((i + 1)..4).map(move |j| (i, j))).collect();
        let m = graph_metric(&edges, 4).unwrap();
        assert_eq!(m.diameter(), 1.0);
        assert_eq!(m.min_distance(), 1.0);
    }

    #[test]
    fn path_distances_and_disconnection() {
        let m = graph_metric(&[(0, 1), (1, 2), (2, 3)], 4).unwrap();
        assert_eq!(m.d(0, 3), 3.0);
        assert!(matches!(
            graph_metric(&[(0, 1)], 3),
            Err(InstanceError::DisconnectedGraph)
        ));
    }

    #[test]
    fn five_cycle_certificate() {
        // injected fixed input: C5 has diameter 2, clique 2, independence 2
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let cert = certify(&edges, 5, 24);
        assert_eq!(cert.max_clique, 2);
        assert_eq!(cert.max_independent_set, 2);
        assert_eq!(cert.method, CertificationMethod::Exact);
        assert_eq!(graph_diameter(&edges, 5), Some(2));
    }

    #[test]
    fn sampling_is_deterministic_and_certified() {
        let (m1, c1) = certified_ramsey_graph(12, 7, 100, 24).unwrap();
        let (m2, c2) = certified_ramsey_graph(12, 7, 100, 24).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(c1, c2);
        assert_eq!(m1.diameter(), 2.0);
        assert_eq!(c1.method, CertificationMethod::Exact);
        // diameter 2 forces a missing edge, so independence >= 2; clique >= 2
        assert!(c1.max_clique >= 2 && c1.max_independent_set >= 2);
    }

    #[test]
    fn above_cap_reports_uncertified() {
        let (_, cert) = certified_ramsey_graph(40, 3, 200, 24).unwrap();
        assert_eq!(cert.method, CertificationMethod::Uncertified);
        assert!(cert.max_clique >= 2);
    }
}
