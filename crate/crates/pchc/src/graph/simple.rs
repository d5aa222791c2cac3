//! Uncolored simple graphs, used for connectivity questions and for the
//! pairwise parallel-edge intersection graph.

use super::{bits, Vertex};

/// A simple graph on `0..n` stored as neighbor bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64);
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub(crate) fn from_masks(n: usize, adj: Vec<u64>) -> Self {
        SimpleGraph { n, adj }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        assert!(u < self.n && v < self.n);
        u != v && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        bits(self.adj[v])
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Reachable set from `start`, restricted to the vertices in `within`.
    pub(crate) fn reach(&self, start: Vertex, within: u64) -> u64 {
        let start_bit = 1u64 << start;
        if within & start_bit == 0 {
            return 0;
        }
        let mut seen = start_bit;
        let mut frontier = start_bit;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v] & within & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let full = (!0u64) >> (64 - self.n);
        self.reach(0, full) == full
    }

    /// Connected, at least 3 vertices, and no cut vertex.
    pub fn is_2connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        let full = (!0u64) >> (64 - self.n);
        for cut in 0..self.n {
            let rest = full & !(1u64 << cut);
            let start = bits(rest).next().unwrap();
            if self.reach(start, rest) != rest {
                return false;
            }
        }
        true
    }
}
