//! Branch-and-bound maximum clique over bitset adjacency (n <= 64).
//!
//! Tomita-style search: candidates are greedily colored each expansion and
//! processed highest color first, pruning when the current clique plus the
//! color bound cannot beat the incumbent. Deterministic: vertices are always
//! scanned in index order.

/// Undirected graph on at most 64 vertices, adjacency as bitset rows.
pub struct BitGraph {
    pub n: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64);
        BitGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = BitGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn complement(&self) -> BitGraph {
        let mask = full_mask(self.n);
        let adj = (0..self.n)
            .map(|i| (!self.adj[i] & mask) & !(1u64 << i))
            .collect();
        BitGraph { n: self.n, adj }
    }

    /// Exact maximum clique; returns the vertex set (ascending) and the
    /// number of search nodes visited.
    pub fn max_clique(&self) -> (Vec<usize>, u64) {
        let mut best = Vec::new();
        let mut cur = Vec::new();
        let mut nodes = 0u64;
        self.expand(&mut cur, full_mask(self.n), &mut best, &mut nodes);
        best.sort_unstable();
        (best, nodes)
    }

    fn expand(&self, cur: &mut Vec<usize>, cand: u64, best: &mut Vec<usize>, nodes: &mut u64) {
        *nodes += 1;
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if cand == 0 {
            return;
        }
        let colored = self.greedy_color(cand);
        let mut cand = cand;
        for idx in (0..colored.len()).rev() {
            let (v, color) = colored[idx];
            if cur.len() + color <= best.len() {
                return;
            }
            cand &= !(1u64 << v);
            cur.push(v);
            self.expand(cur, cand & self.adj[v], best, nodes);
            cur.pop();
        }
    }

    /// Greedy coloring of the candidate set; returns (vertex, color) sorted
    /// by nondecreasing color, colors starting at 1. A vertex of color c can
    /// extend the clique by at most c more vertices together with earlier
    /// entries.
    fn greedy_color(&self, cand: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        let mut remaining = cand;
        let mut color = 0;
        while remaining != 0 {
            color += 1;
            let mut avail = remaining;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                out.push((v, color));
                remaining &= !(1u64 << v);
                avail &= !(1u64 << v);
                avail &= !self.adj[v];
            }
        }
        out
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive reference: largest subset that is pairwise adjacent.
    fn brute_max_clique(g: &BitGraph) -> usize {
        let n = g.n;
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if verts.len() <= best {
                continue;
            }
            let ok = verts
                .iter()
                .enumerate()
                .all(|(a, &u)| verts.iter().skip(a + 1).all(|&v| g.has_edge(u, v)));
            if ok {
                best = verts.len();
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(2..=10);
            let mut g = BitGraph::new(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j);
                    }
                }
            }
            let (clique, _) = g.max_clique();
            for (a, &u) in clique.iter().enumerate() {
                for &v in clique.iter().skip(a + 1) {
                    assert!(g.has_edge(u, v));
                }
            }
            assert_eq!(clique.len(), brute_max_clique(&g));
        }
    }

    #[test]
    fn five_cycle() {
        let g = BitGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(g.max_clique().0.len(), 2);
        assert_eq!(g.complement().max_clique().0.len(), 2); // independence number
    }
}
