//! Simple undirected graphs of order at most 62 with one `u64` adjacency row
//! per vertex.
//!
//! Everything downstream (decomposition families, census, spectral checks)
//! works on [`Graph`]. Graphs are cheap to clone and are treated as values:
//! the mutating helpers exist for builders and drop the cached canonical
//! label.

mod canon;
mod graph6;
mod invariants;
mod iso;
mod ops;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, CanonicalLabel, Labeling};
pub use graph6::{read_graph6_stream, write_graph6_stream};
pub(crate) use invariants::{color_subset, subset_colorable, two_coloring};
pub(crate) use iso::AnchoredPattern;
pub use invariants::{
    chromatic_number, clique_number, covering_number, independence_number,
    independent_covering_number, is_bipartite, is_k_colorable, k_coloring, matching_number,
    maximum_matching, minimum_cover, Bipartition,
};
pub use iso::{contains_subgraph, contains_subgraph_through, find_subgraph, Embedding};
pub use ops::{delete_vertices, disjoint_union, induced_subgraph, join};

/// Largest supported order.
pub const MAX_ORDER: usize = 62;

/// Bit mask with the low `n` bits set.
#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[derive(Clone, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    canon: OnceLock<CanonicalLabel>,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            canon: OnceLock::new(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the zero
    /// diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::input(format!("row {v} has bits beyond order {n}")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::input(format!("loop at vertex {v}")));
            }
            for u in Bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::input(format!("adjacency not symmetric at ({v},{u})")));
                }
            }
        }
        Ok(Graph {
            n,
            adj: rows,
            canon: OnceLock::new(),
        })
    }

    /// Crate-internal constructor for rows already known to be valid.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(rows.len() <= MAX_ORDER);
        Graph {
            n: rows.len(),
            adj: rows,
            canon: OnceLock::new(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        Bits(self.adj[v]).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !low_bits(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let missing = !self.adj[u] & self.vertex_mask() & !low_bits(u + 1);
            for v in Bits(missing) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.canon = OnceLock::new();
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u},{v})");
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.canon = OnceLock::new();
    }

    /// Copy of `self` with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = Graph::from_rows_unchecked(self.adj.clone());
        g.add_edge(u, v);
        g
    }

    /// Copy of `self` with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = Graph::from_rows_unchecked(self.adj.clone());
        g.remove_edge(u, v);
        g
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let all = self.vertex_mask();
        (0..self.n)
            .filter(|&v| self.adj[v] | (1 << v) == all)
            .collect()
    }

    /// Vertices with degree zero.
    pub fn isolated_mask(&self) -> u64 {
        (0..self.n)
            .filter(|&v| self.adj[v] == 0)
            .fold(0, |m, v| m | 1 << v)
    }

    /// Drops isolated vertices, renumbering the rest in order.
    pub fn without_isolated(&self) -> Graph {
        induced_subgraph(self, self.vertex_mask() & !self.isolated_mask())
    }

    /// Relabels so that old vertex `perm[i]` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut pos = vec![0usize; self.n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let rows = perm
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |r, u| r | 1 << pos[u]))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for u in Bits(frontier) {
                    next |= self.adj[u];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Canonical label, computed once and cached.
    pub fn canonical_label(&self) -> &CanonicalLabel {
        self.canon.get_or_init(|| canonical_form(self))
    }

    /// The canonically relabelled copy of this graph.
    pub fn canonical(&self) -> Graph {
        let lab = canonical_labeling(self);
        let g = self.permuted(&lab.order);
        let _ = g.canon.set(lab.label);
        g
    }

    /// Canonical copy from a labeling already computed for `self`.
    pub(crate) fn relabelled(&self, lab: Labeling) -> Graph {
        let g = self.permuted(&lab.order);
        let _ = g.canon.set(lab.label);
        g
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.size() == other.size()
            && self.canonical_label() == other.canonical_label()
    }

    /// graph6 encoding of this labelling (not canonicalised).
    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        graph6::decode(s)
    }

    /// Length of the shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in Bits(self.adj[u]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::capacity(format!("order {n} exceeds the cap of {MAX_ORDER}")))
    } else {
        Ok(())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Graph::from_graph6(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, g6={}, edges={:?})", self.n, self.to_graph6(), self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_validated() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(matches!(Graph::empty(63), Err(Error::Capacity(_))));
    }

    #[test]
    fn components_and_universal_vertices() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0b00111, 0b11000]);
        let k = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(k.universal_vertices(), vec![0]);
    }

    #[test]
    fn girth_of_small_graphs() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(c5.girth(), Some(5));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }
}
