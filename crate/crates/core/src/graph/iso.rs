//! Not-necessarily-induced subgraph containment.
//!
//! Backtracking over pattern vertices in a connectivity-first order. The
//! candidate set for the next pattern vertex is the intersection of host
//! neighbourhoods of its already-mapped pattern neighbours, and every unmapped
//! neighbour is forward-checked for a nonempty candidate set. Host vertices
//! with identical (open or closed) neighbourhoods are interchangeable, so only
//! the least unused member of each twin class is tried.

use super::{low_bits, Bits, Graph};

/// Injective vertex map: pattern vertex `i` goes to host vertex `map[i]`.
pub type Embedding = Vec<usize>;

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_subgraph(host, pattern).is_some()
}

pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    if !plausible(host, pattern) {
        return None;
    }
    Matcher::new(host, pattern, None).run(None)
}

/// Whether `host` has a copy of `pattern` using the host vertex `anchor`.
///
/// Used by augmentation: if `host - anchor` is pattern-free, this decides
/// whether `host` is pattern-free.
pub fn contains_subgraph_through(host: &Graph, pattern: &Graph, anchor: usize) -> bool {
    AnchoredPattern::new(pattern).found_through(host, anchor)
}

/// A pattern with its automorphism orbit representatives precomputed, for
/// repeated anchored searches.
#[derive(Clone, Debug)]
pub(crate) struct AnchoredPattern {
    graph: Graph,
    reps: Vec<usize>,
}

impl AnchoredPattern {
    pub(crate) fn new(pattern: &Graph) -> Self {
        let orbits = super::canonical_labeling(pattern).orbits;
        let reps = (0..pattern.order()).filter(|&v| orbits[v] == v).collect();
        AnchoredPattern {
            graph: pattern.clone(),
            reps,
        }
    }

    pub(crate) fn found_through(&self, host: &Graph, anchor: usize) -> bool {
        let pattern = &self.graph;
        if anchor >= host.order() || !plausible(host, pattern) {
            return false;
        }
        let matcher = Matcher::new(host, pattern, Some(anchor));
        self.reps
            .iter()
            .filter(|&&v| pattern.degree(v) <= host.degree(anchor))
            .any(|&v| matcher.run(Some((v, anchor))).is_some())
    }
}

/// Cheap necessary conditions: order, size, sorted degree domination.
fn plausible(host: &Graph, pattern: &Graph) -> bool {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return false;
    }
    let mut hd = host.degrees();
    let mut pd = pattern.degrees();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    pd.iter().zip(&hd).all(|(p, h)| p <= h)
}

struct Matcher<'a> {
    host: &'a [u64],
    pat: &'a [u64],
    /// Pattern vertices in default search order; isolated ones last.
    order: Vec<usize>,
    /// Number of non-isolated pattern vertices.
    active: usize,
    /// Host vertices of sufficient degree, per pattern vertex.
    domain: Vec<u64>,
    /// Twin class of each host vertex (including itself).
    twins: Vec<u64>,
    host_n: usize,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, pattern: &'a Graph, anchor: Option<usize>) -> Self {
        let hn = host.order();
        let pn = pattern.order();
        let hadj = host.rows();
        let padj = pattern.rows();
        let hdeg = host.degrees();
        let domain = (0..pn)
            .map(|v| {
                let d = pattern.degree(v);
                (0..hn).filter(|&x| hdeg[x] >= d).fold(0u64, |m, x| m | 1 << x)
            })
            .collect();
        let mut twins = vec![0u64; hn];
        for x in 0..hn {
            twins[x] = 1 << x;
            if Some(x) == anchor {
                continue;
            }
            for y in 0..hn {
                if y == x || Some(y) == anchor {
                    continue;
                }
                let open = hadj[x] & !(1 << y) == hadj[y] & !(1 << x);
                if open {
                    twins[x] |= 1 << y;
                }
            }
        }
        Matcher {
            host: hadj,
            pat: padj,
            order: search_order(padj),
            active: (0..pn).filter(|&v| padj[v] != 0).count(),
            domain,
            twins,
            host_n: hn,
        }
    }

    fn run(&self, forced: Option<(usize, usize)>) -> Option<Embedding> {
        let mut map = vec![usize::MAX; self.pat.len()];
        let mut order = self.order.clone();
        let mut used = 0u64;
        let mut start = 0;
        if let Some((v, x)) = forced {
            if self.domain[v] >> x & 1 == 0 {
                return None;
            }
            map[v] = x;
            used = 1 << x;
            if self.pat[v] == 0 {
                // An isolated pattern vertex on the anchor; the rest may go
                // anywhere else.
                order.retain(|&u| u != v);
            } else {
                let pos = order.iter().position(|&u| u == v).unwrap();
                order.remove(pos);
                order.insert(0, v);
                reorder_connected(self.pat, &mut order[..self.active]);
                start = 1;
            }
        }
        if self.extend(&order, &mut map, used, start) {
            Some(map)
        } else {
            None
        }
    }

    fn candidates(&self, v: usize, map: &[usize], used: u64) -> u64 {
        let mut c = self.domain[v] & !used;
        for u in Bits(self.pat[v]) {
            if map[u] != usize::MAX {
                c &= self.host[map[u]];
            }
        }
        c
    }

    fn extend(&self, order: &[usize], map: &mut [usize], used: u64, depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        if self.pat[v] == 0 {
            // Only isolated pattern vertices remain.
            let remaining = &order[depth..];
            let mut free = low_bits(self.host_n) & !used;
            if (free.count_ones() as usize) < remaining.len() {
                return false;
            }
            for &u in remaining {
                let x = free.trailing_zeros() as usize;
                map[u] = x;
                free &= free - 1;
            }
            return true;
        }
        let cand = self.candidates(v, map, used);
        for x in Bits(cand) {
            if self.twins[x] & !used & low_bits(x) & cand != 0 {
                continue;
            }
            map[v] = x;
            let now = used | 1 << x;
            let viable = Bits(self.pat[v])
                .filter(|&w| map[w] == usize::MAX)
                .all(|w| self.candidates(w, map, now) != 0);
            if viable && self.extend(order, map, now, depth + 1) {
                return true;
            }
            map[v] = usize::MAX;
        }
        false
    }
}

fn search_order(padj: &[u64]) -> Vec<usize> {
    let n = padj.len();
    let mut order: Vec<usize> = (0..n).collect();
    let active = (0..n).filter(|&v| padj[v] != 0).count();
    order.sort_by_key(|&v| (padj[v] == 0, std::cmp::Reverse(padj[v].count_ones()), v));
    reorder_connected(padj, &mut order[..active]);
    order
}

/// Keeps `slice[0]` first, then repeatedly takes the vertex with the most
/// neighbours already placed (ties: higher degree, then lower index).
fn reorder_connected(padj: &[u64], slice: &mut [usize]) {
    if slice.len() <= 1 {
        return;
    }
    let mut placed = 1u64 << slice[0];
    for i in 1..slice.len() {
        let best = (i..slice.len())
            .max_by_key(|&j| {
                let v = slice[j];
                (
                    (padj[v] & placed).count_ones(),
                    padj[v].count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        slice.swap(i, best);
        placed |= 1 << slice[i];
    }
}
