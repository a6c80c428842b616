//! Exact classical invariants: χ, ω, α, ν, β, γ and bipartiteness.

use std::collections::VecDeque;

use super::{Bits, Graph};

const NONE: usize = usize::MAX;

/// The two colour classes of a bipartite graph. Within each component the
/// least vertex lies in `left`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Two-colours `g` by breadth-first search; `None` when an odd cycle exists.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let side = two_coloring(g.rows(), g.vertex_mask())?;
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for v in 0..g.order() {
        if side >> v & 1 == 0 {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    Some(Bipartition { left, right })
}

/// Mask of the vertices coloured 1 in a proper 2-colouring of `g[active]`.
pub(crate) fn two_coloring(adj: &[u64], active: u64) -> Option<u64> {
    let mut seen = 0u64;
    let mut ones = 0u64;
    for s in Bits(active) {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let u_one = ones >> u & 1;
            for w in Bits(adj[u] & active) {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    ones |= (u_one ^ 1) << w;
                    queue.push_back(w);
                } else if ones >> w & 1 == u_one {
                    return None;
                }
            }
        }
    }
    Some(ones)
}

/// Whether `g[active]` has no edges.
#[inline]
pub(crate) fn is_independent(adj: &[u64], active: u64) -> bool {
    Bits(active).all(|v| adj[v] & active == 0)
}

/// Proper `k`-colouring of `g` (colours `0..k`), if one exists.
pub fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    color_subset(g.rows(), g.vertex_mask(), k).map(|classes| {
        let mut colors = vec![0; g.order()];
        for (c, class) in classes.iter().enumerate() {
            for v in Bits(*class) {
                colors[v] = c;
            }
        }
        colors
    })
}

pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    subset_colorable(g.rows(), g.vertex_mask(), k)
}

/// Whether `g[active]` is `k`-colourable, with fast paths for k ≤ 2.
pub(crate) fn subset_colorable(adj: &[u64], active: u64, k: usize) -> bool {
    match k {
        _ if active == 0 => true,
        0 => false,
        1 => is_independent(adj, active),
        2 => two_coloring(adj, active).is_some(),
        _ => color_subset(adj, active, k).is_some(),
    }
}

/// DSATUR backtracking; returns the colour classes as masks.
pub(crate) fn color_subset(adj: &[u64], active: u64, k: usize) -> Option<Vec<u64>> {
    if active == 0 {
        return Some(vec![]);
    }
    if k == 0 {
        return None;
    }
    let mut classes = Vec::with_capacity(k);
    if dsatur(adj, active, k, &mut classes) {
        Some(classes)
    } else {
        None
    }
}

fn dsatur(adj: &[u64], uncolored: u64, k: usize, classes: &mut Vec<u64>) -> bool {
    if uncolored == 0 {
        return true;
    }
    // Most saturated vertex, ties broken by degree among uncoloured vertices.
    let mut pick = NONE;
    let mut key = (0usize, 0u32);
    for v in Bits(uncolored) {
        let sat = classes.iter().filter(|&&c| c & adj[v] != 0).count();
        let deg = (adj[v] & uncolored).count_ones();
        if pick == NONE || (sat, deg) > key {
            pick = v;
            key = (sat, deg);
        }
    }
    let v = pick;
    let rest = uncolored & !(1 << v);
    for c in 0..classes.len() {
        if classes[c] & adj[v] == 0 {
            classes[c] |= 1 << v;
            if dsatur(adj, rest, k, classes) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
    }
    if classes.len() < k {
        classes.push(1 << v);
        if dsatur(adj, rest, k, classes) {
            return true;
        }
        classes.pop();
    }
    false
}

/// Exact χ(g): greedy DSATUR upper bound, clique lower bound, then
/// decision searches for every k in between. χ of the empty-order graph is 0.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    if g.size() == 0 {
        return 1;
    }
    let adj = g.rows();
    let upper = greedy_colors(adj, g.vertex_mask());
    let lower = clique_number(g).max(2);
    for k in lower..upper {
        if subset_colorable(adj, g.vertex_mask(), k) {
            return k;
        }
    }
    upper
}

fn greedy_colors(adj: &[u64], active: u64) -> usize {
    let mut classes: Vec<u64> = Vec::new();
    let mut left = active;
    while left != 0 {
        let mut pick = NONE;
        let mut key = (0usize, 0u32);
        for v in Bits(left) {
            let sat = classes.iter().filter(|&&c| c & adj[v] != 0).count();
            let deg = (adj[v] & left).count_ones();
            if pick == NONE || (sat, deg) > key {
                pick = v;
                key = (sat, deg);
            }
        }
        match classes.iter_mut().find(|c| **c & adj[pick] == 0) {
            Some(c) => *c |= 1 << pick,
            None => classes.push(1 << pick),
        }
        left &= !(1 << pick);
    }
    classes.len()
}

/// Size of a largest clique.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    max_clique(g.rows(), 0, g.vertex_mask(), &mut best);
    best
}

/// Size of a largest independent set.
pub fn independence_number(g: &Graph) -> usize {
    let all = g.vertex_mask();
    let comp: Vec<u64> = (0..g.order())
        .map(|v| !g.neighbors(v) & all & !(1 << v))
        .collect();
    let mut best = 0;
    max_clique(&comp, 0, all, &mut best);
    best
}

fn max_clique(adj: &[u64], size: usize, candidates: u64, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    // Greedy colouring bound on the candidate set.
    if size + greedy_colors_bound(adj, candidates) <= *best {
        return;
    }
    let mut cand = candidates;
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        max_clique(adj, size + 1, cand & adj[v], best);
    }
}

fn greedy_colors_bound(adj: &[u64], set: u64) -> usize {
    let mut left = set;
    let mut colors = 0;
    while left != 0 {
        colors += 1;
        let mut avail = left;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            left &= !(1 << v);
        }
    }
    colors
}

/// A maximum matching by Edmonds' blossom algorithm, as edges `(u, v)` with
/// `u < v`, sorted.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let adj = g.rows();
    let mut mate = vec![NONE; n];
    // Greedy start.
    for (u, v) in g.edges() {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let mut bl = Blossom::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        let mut v = bl.find_path(adj, &mate, root);
        while v != NONE {
            let pv = bl.parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    let mut out: Vec<(usize, usize)> = (0..n)
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect();
    out.sort_unstable();
    out
}

/// ν(g), the size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).len()
}

struct Blossom {
    base: Vec<usize>,
    parent: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            base: vec![0; n],
            parent: vec![NONE; n],
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Endpoint of an augmenting path from `root`, or `NONE`.
    fn find_path(&mut self, adj: &[u64], mate: &[usize], root: usize) -> usize {
        let n = mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in Bits(adj[v]) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return to;
                    }
                    self.used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        NONE
    }
}

/// A minimum vertex cover, sorted.
pub fn minimum_cover(g: &Graph) -> Vec<usize> {
    let adj = g.rows();
    let mut best = g.vertex_mask() & !g.isolated_mask();
    // Any maximal matching's endpoints form a cover; a tighter start helps.
    let matched: u64 = maximum_matching(g)
        .iter()
        .fold(0, |m, &(u, v)| m | 1 << u | 1 << v);
    if is_cover(adj, matched) && matched.count_ones() < best.count_ones() {
        best = matched;
    }
    cover_search(adj, g.vertex_mask(), 0, &mut best);
    Bits(best).collect()
}

/// β(g), the size of a minimum vertex cover.
pub fn covering_number(g: &Graph) -> usize {
    minimum_cover(g).len()
}

fn is_cover(adj: &[u64], s: u64) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 1 || adj[v] & !s == 0)
}

/// Branch on a maximum-degree vertex `v`: either `v` is in the cover, or all
/// of its neighbours are.
fn cover_search(adj: &[u64], active: u64, taken: u64, best: &mut u64) {
    let mut active = active;
    let mut taken = taken;
    // Degree-one reduction: take the neighbour.
    loop {
        let mut reduced = false;
        for v in Bits(active) {
            let nb = adj[v] & active;
            if nb.count_ones() == 1 {
                taken |= nb;
                active &= !(nb | 1 << v);
                reduced = true;
                break;
            }
        }
        if !reduced {
            break;
        }
    }
    let mut v_max = NONE;
    let mut d_max = 0;
    let mut edges = 0u32;
    for v in Bits(active) {
        let d = (adj[v] & active).count_ones();
        edges += d;
        if d > d_max {
            d_max = d;
            v_max = v;
        }
    }
    edges /= 2;
    let have = taken.count_ones();
    if d_max == 0 {
        if have < best.count_ones() {
            *best = taken;
        }
        return;
    }
    let lower = edges.div_ceil(d_max);
    if have + lower >= best.count_ones() {
        return;
    }
    let v = v_max;
    cover_search(adj, active & !(1 << v), taken | 1 << v, best);
    let nb = adj[v] & active;
    cover_search(adj, active & !(nb | 1 << v), taken | nb, best);
}

/// γ(g): the least size of an independent set meeting every edge, or `None`
/// when no such set exists (exactly when `g` is not bipartite).
///
/// An independent cover meets every edge in exactly one endpoint, so inside
/// each component with an edge it is one of the two colour classes.
pub fn independent_covering_number(g: &Graph) -> Option<usize> {
    let ones = two_coloring(g.rows(), g.vertex_mask())?;
    let total = g
        .components()
        .into_iter()
        .filter(|&c| c.count_ones() > 1)
        .map(|c| {
            let a = (c & ones).count_ones() as usize;
            let b = (c & !ones).count_ones() as usize;
            a.min(b)
        })
        .sum();
    Some(total)
}
