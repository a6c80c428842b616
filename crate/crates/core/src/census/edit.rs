//! Edit distance from a graph to an apex joined with a balanced complete
//! p-partite graph.

use serde::{Deserialize, Serialize};

use crate::constructions::{turan_parts, turan_size};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Bits, Graph};

/// Largest remainder order solved exactly.
pub const EXACT_EDIT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditDistance {
    /// Best edit count found.
    pub distance: usize,
    /// Whether `distance` is proven minimal.
    pub exact: bool,
    /// Certified lower bound; equals `distance` when exact.
    pub lower_bound: usize,
    /// Universal vertices removed before the comparison.
    pub removed: Vec<usize>,
    /// Parts of the best balanced partition, in original vertex numbering.
    pub parts: Vec<Vec<usize>>,
}

/// Removes γ−1 universal vertices W and measures the least symmetric
/// difference between E(g − W) and a balanced complete p-partite graph on
/// the same vertices. `None` when g has fewer than γ−1 universal vertices.
///
/// All universal vertices are twins, so the choice of W does not matter.
pub fn edit_distance_to_join_turan(g: &Graph, p: usize, gamma: usize) -> Result<Option<EditDistance>> {
    if p == 0 || gamma == 0 {
        return Err(Error::input(format!("need p ≥ 1 and γ ≥ 1, got p={p}, γ={gamma}")));
    }
    let universal = g.universal_vertices();
    if universal.len() < gamma - 1 {
        return Ok(None);
    }
    let removed = universal[..gamma - 1].iter().fold(0u64, |m, &v| m | 1 << v);
    edit_distance_outside(g, p, removed).map(Some)
}

/// Edit distance from g − W to T_p(n − |W|), W given as a vertex mask.
///
/// For a partition with e_in edges of g − W inside parts the distance is
/// e(T) − e(g − W) + 2·e_in, so the search minimizes e_in: exactly by
/// branch and bound up to [`EXACT_EDIT_LIMIT`] vertices, by restarted
/// local search above, where the lower bound is |e(T) − e(g − W)|.
pub fn edit_distance_outside(g: &Graph, p: usize, removed: u64) -> Result<EditDistance> {
    if p == 0 {
        return Err(Error::input("need p ≥ 1"));
    }
    let keep = g.vertex_mask() & !removed;
    let rest: Vec<usize> = Bits(keep).collect();
    let h = induced_subgraph(g, keep);
    let m = h.order();
    let caps = turan_parts(m, p)?;
    let e_t = turan_size(m as u64, p as u64) as usize;
    let e_h = h.size();

    let (mut assign, mut inside) = local_search(&h, &caps);
    let exact = m <= EXACT_EDIT_LIMIT;
    if exact {
        let mut search = Exact::new(&h, &caps, inside, assign.clone());
        search.run();
        assign = search.best_assign;
        inside = search.best;
    }
    let distance = e_t + 2 * inside - e_h;
    let lower_bound = if exact { distance } else { e_t.abs_diff(e_h) };
    let mut parts = vec![Vec::new(); caps.len()];
    for (i, &j) in assign.iter().enumerate() {
        parts[j].push(rest[i]);
    }
    Ok(EditDistance {
        distance,
        exact,
        lower_bound,
        removed: Bits(removed & g.vertex_mask()).collect(),
        parts,
    })
}

fn inside_edges(h: &Graph, assign: &[usize]) -> usize {
    h.edges().iter().filter(|&&(u, v)| assign[u] == assign[v]).count()
}

/// Restarts of greedy placement plus swap descent; the first start uses
/// decreasing degree, the rest seeded shuffles.
fn local_search(h: &Graph, caps: &[usize]) -> (Vec<usize>, usize) {
    const RESTARTS: u64 = 64;
    let m = h.order();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut best: Option<(Vec<usize>, usize)> = None;
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for round in 0..RESTARTS {
        if round > 0 {
            for i in (1..m).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                order.swap(i, (state % (i as u64 + 1)) as usize);
            }
        }
        let mut assign = greedy(h, caps, &order);
        let mut inside = inside_edges(h, &assign);
        improve(h, caps, &mut assign, &mut inside);
        if best.as_ref().map_or(true, |b| inside < b.1) {
            best = Some((assign, inside));
        }
        if inside == 0 {
            break;
        }
    }
    best.expect("at least one round")
}

/// Each vertex in turn into the open part holding the fewest of its
/// neighbours, preferring parts that already hold more vertices.
fn greedy(h: &Graph, caps: &[usize], order: &[usize]) -> Vec<usize> {
    let mut assign = vec![usize::MAX; h.order()];
    let mut masks = vec![0u64; caps.len()];
    for &v in order {
        let j = (0..caps.len())
            .filter(|&j| (masks[j].count_ones() as usize) < caps[j])
            .min_by_key(|&j| ((h.neighbors(v) & masks[j]).count_ones(), std::cmp::Reverse(masks[j].count_ones())))
            .expect("capacities sum to m");
        assign[v] = j;
        masks[j] |= 1 << v;
    }
    assign
}

/// Pairwise swaps between parts while any swap lowers the inside count.
fn improve(h: &Graph, caps: &[usize], assign: &mut [usize], inside: &mut usize) {
    let m = h.order();
    let mut masks = vec![0u64; caps.len()];
    for (v, &j) in assign.iter().enumerate() {
        masks[j] |= 1 << v;
    }
    let cost = |v: usize, j: usize, masks: &[u64]| (h.neighbors(v) & masks[j] & !(1u64 << v)).count_ones() as i64;
    loop {
        let mut improved = false;
        for u in 0..m {
            for v in u + 1..m {
                let (a, b) = (assign[u], assign[v]);
                if a == b {
                    continue;
                }
                let adj = h.has_edge(u, v) as i64;
                // Moving u to b and v to a.
                let delta = cost(u, b, &masks) - adj - cost(u, a, &masks) + cost(v, a, &masks) - adj - cost(v, b, &masks);
                if delta < 0 {
                    masks[a] ^= 1 << u | 1 << v;
                    masks[b] ^= 1 << u | 1 << v;
                    assign[u] = b;
                    assign[v] = a;
                    *inside = (*inside as i64 + delta) as usize;
                    improved = true;
                }
            }
        }
        if !improved {
            return;
        }
    }
}

struct Exact<'a> {
    h: &'a Graph,
    caps: &'a [usize],
    order: Vec<usize>,
    masks: Vec<u64>,
    assign: Vec<usize>,
    best: usize,
    best_assign: Vec<usize>,
}

impl<'a> Exact<'a> {
    fn new(h: &'a Graph, caps: &'a [usize], best: usize, best_assign: Vec<usize>) -> Self {
        let mut order: Vec<usize> = (0..h.order()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
        Exact {
            h,
            caps,
            order,
            masks: vec![0; caps.len()],
            assign: vec![usize::MAX; h.order()],
            best,
            best_assign,
        }
    }

    fn run(&mut self) {
        self.extend(0, 0);
    }

    fn extend(&mut self, depth: usize, inside: usize) {
        if inside >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = inside;
            self.best_assign = self.assign.clone();
            return;
        }
        let v = self.order[depth];
        for j in 0..self.caps.len() {
            let fill = self.masks[j].count_ones() as usize;
            if fill == self.caps[j] {
                continue;
            }
            // Empty parts of equal capacity are interchangeable.
            if fill == 0 && (0..j).any(|i| self.masks[i] == 0 && self.caps[i] == self.caps[j]) {
                continue;
            }
            let added = (self.h.neighbors(v) & self.masks[j]).count_ones() as usize;
            self.masks[j] |= 1 << v;
            self.assign[v] = j;
            self.extend(depth + 1, inside + added);
            self.masks[j] &= !(1 << v);
        }
        self.assign[v] = usize::MAX;
    }
}
