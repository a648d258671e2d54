//! Undirected simple graphs on vertices `0..N`, stored as bit-packed adjacency rows.
//!
//! Rows are `u64` words; graphs of order at most 64 use a single word per row,
//! larger orders (up to [`MAX_ORDER`]) use a word array per row. All values are
//! immutable after construction: operations return new graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::witness::CycleWitness;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 4096;

/// An undirected simple graph: symmetric, irreflexive adjacency on `0..order`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order,
                max: MAX_ORDER,
            });
        }
        let words = order.div_ceil(64).max(1);
        Ok(Graph {
            order,
            words,
            rows: vec![0u64; order * words],
        })
    }

    /// Complete graph K_order.
    pub fn complete(order: usize) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for v in 0..order {
            let (row, rest) = {
                let base = v * g.words;
                (base, ())
            };
            let _ = rest;
            for w in 0..g.words {
                let lo = w * 64;
                let n_bits = (order - lo).min(64);
                let mask = if n_bits == 64 {
                    u64::MAX
                } else {
                    (1u64 << n_bits) - 1
                };
                g.rows[row + w] = mask;
            }
            g.clear_bit(v, v);
        }
        Ok(g)
    }

    /// Graph from an explicit edge list; rejects loops and out-of-range endpoints.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::param(format!("loop at vertex {u}")));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
        }
        Ok(g)
    }

    /// Graph whose edge set is `{ {u,v} : pred(u,v) }` for `u < v`.
    pub fn from_fn(order: usize, mut pred: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::empty(order)?;
        for u in 0..order {
            for v in (u + 1)..order {
                if pred(u, v) {
                    g.set_bit(u, v);
                    g.set_bit(v, u);
                }
            }
        }
        Ok(g)
    }

    /// Cycle 0-1-...-(order-1)-0. Requires order >= 3.
    pub fn cycle(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::param(format!("cycle needs order >= 3, got {order}")));
        }
        Self::from_fn(order, |u, v| v == u + 1 || (u == 0 && v == order - 1))
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, matched spokes.
    ///
    /// Fixture for structure analysis: girth 5, circumference 9, and no 7-cycle,
    /// so it is the canonical graph that is not weakly pancyclic.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::from_edges(10, &edges).expect("fixed fixture")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Words per adjacency row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as a bitset slice.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order && v < self.order);
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Minimum degree over all vertices; 0 for the empty-order graph.
    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.rows.iter().map(|w| w.count_ones() as usize).sum();
        total / 2
    }

    /// Iterator over the open neighborhood of `v`, in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &word)| {
            BitIter { word, base: wi * 64 }
        })
    }

    /// Open neighborhood of `v` as a sorted vector. Errors when `v` is out of range.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v).collect())
    }

    /// Induced subgraph on a set of vertices, plus the mapping from new labels
    /// back to the original ones (ascending, so label order is preserved).
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        for &v in &map {
            self.check_vertex(v)?;
        }
        let mut sub = Graph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    sub.set_bit(i, j);
                    sub.set_bit(j, i);
                }
            }
        }
        Ok((sub, map))
    }

    /// Two-coloring of every connected component, or an odd-cycle witness.
    pub fn bipartition(&self) -> Bipartiteness {
        let n = self.order;
        let mut side = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        let cycle = odd_cycle_from_conflict(&parent, u, v);
                        debug_assert!(cycle.len() % 2 == 1);
                        return Bipartiteness::OddCycle(CycleWitness::new(cycle));
                    }
                }
            }
        }
        let mut parts = [Vec::new(), Vec::new()];
        for v in 0..n {
            parts[side[v] as usize].push(v);
        }
        Bipartiteness::Bipartite { parts }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartiteness::Bipartite { .. })
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertex sets of the connected components, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn set_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    fn clear_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1u64 << (v % 64));
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(order={}, edges={})", self.order, self.edge_count())
    }
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone)]
pub enum Bipartiteness {
    /// Valid two-sided partition; isolated vertices land on side 0.
    Bipartite { parts: [Vec<usize>; 2] },
    /// An explicit odd cycle certifying the graph is not bipartite.
    OddCycle(CycleWitness),
}

/// Reconstructs an odd cycle from a BFS same-side edge conflict `u ~ v`.
fn odd_cycle_from_conflict(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    // Walk both vertices up the BFS forest to their lowest common ancestor.
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    let mut iu = pu.len();
    let mut iv = pv.len();
    // Strip the common suffix, keeping the LCA itself.
    while iu > 1 && iv > 1 && pu[iu - 2] == pv[iv - 2] {
        iu -= 1;
        iv -= 1;
    }
    let mut cycle: Vec<usize> = pu[..iu].to_vec();
    cycle.extend(pv[..iv - 1].iter().rev());
    cycle
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_degrees() {
        let g = Graph::complete(5).unwrap();
        assert_eq!(g.edge_count(), 10);
        for v in 0..5 {
            assert_eq!(g.degree(v), 4);
            assert!(!g.has_edge(v, v));
        }
        assert_eq!(g.neighborhood(0).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn empty_graph_neighborhoods() {
        let g = Graph::empty(7).unwrap();
        for v in 0..7 {
            assert!(g.neighborhood(v).unwrap().is_empty());
        }
        assert!(g.neighborhood(7).is_err());
    }

    #[test]
    fn multiword_rows_above_64() {
        let g = Graph::complete(130).unwrap();
        assert_eq!(g.words_per_row(), 3);
        assert_eq!(g.degree(0), 129);
        assert!(g.has_edge(0, 129));
        assert!(g.has_edge(129, 64));
        assert_eq!(g.edge_count(), 130 * 129 / 2);
    }

    #[test]
    fn order_cap_enforced() {
        assert!(Graph::empty(MAX_ORDER).is_ok());
        assert!(matches!(
            Graph::empty(MAX_ORDER + 1),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn induced_k5_triangle() {
        let g = Graph::complete(5).unwrap();
        let (sub, map) = g.induced(&[0, 1, 2]).unwrap();
        assert_eq!(sub.order(), 3);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_c5_edge_plus_isolated() {
        let g = Graph::cycle(5).unwrap();
        let (sub, map) = g.induced(&[3, 0, 1]).unwrap();
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(sub.edge_count(), 1);
        assert!(sub.has_edge(0, 1));
        assert_eq!(sub.degree(2), 0);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let g = Graph::complete(4).unwrap();
        assert!(g.induced(&[0, 9]).is_err());
    }

    #[test]
    fn bipartition_of_k77() {
        let g = Graph::from_fn(14, |u, v| (u < 7) != (v < 7)).unwrap();
        match g.bipartition() {
            Bipartiteness::Bipartite { parts } => {
                assert_eq!(parts[0].len() + parts[1].len(), 14);
                let mut sizes = [parts[0].len(), parts[1].len()];
                sizes.sort_unstable();
                assert_eq!(sizes, [7, 7]);
            }
            Bipartiteness::OddCycle(_) => panic!("K7,7 is bipartite"),
        }
        // One side induces an empty graph.
        let (side, _) = g.induced(&(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(side.edge_count(), 0);
    }

    #[test]
    fn c5_odd_cycle_witness() {
        let g = Graph::cycle(5).unwrap();
        match g.bipartition() {
            Bipartiteness::OddCycle(w) => {
                assert_eq!(w.len() % 2, 1);
                w.validate(&g).unwrap();
            }
            Bipartiteness::Bipartite { .. } => panic!("C5 is not bipartite"),
        }
    }

    #[test]
    fn disjoint_k3_k2_not_bipartite() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        match g.bipartition() {
            Bipartiteness::OddCycle(w) => {
                assert_eq!(w.len(), 3);
                w.validate(&g).unwrap();
            }
            Bipartiteness::Bipartite { .. } => panic!("contains a triangle"),
        }
    }

    #[test]
    fn petersen_basics() {
        let g = Graph::petersen();
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        for v in 0..10 {
            assert_eq!(g.degree(v), 3);
        }
        assert!(!g.is_bipartite());
    }

    #[test]
    fn components_of_disjoint_cliques() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (4, 5)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], vec![0, 1, 2]);
        assert_eq!(comps[1], vec![3]);
        assert_eq!(comps[2], vec![4, 5]);
    }
}
