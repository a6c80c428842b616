//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first smallest
//! non-singleton cell, recurse. Leaves are compared by their relabelled
//! adjacency rows and the greatest wins. Automorphisms found along the way
//! (two leaves with identical rows) prune sibling branches lying in the same
//! orbit of the pointwise stabiliser of the current path, and trigger a jump
//! back to the common ancestor of the two leaves.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{graph6, Bits, Graph};

/// Isomorphism-class key: the graph6 bytes of the canonically relabelled
/// graph. Equal labels iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalLabel(String);

impl CanonicalLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Decodes the canonical representative.
    pub fn to_graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical labels are valid graph6")
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", self.0)
    }
}

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub label: CanonicalLabel,
    /// Smallest vertex of each vertex's automorphism orbit.
    pub orbits: Vec<usize>,
    /// Automorphism generators found, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Vertex occupying the last canonical position.
    pub fn last_vertex(&self) -> Option<usize> {
        self.order.last().copied()
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.orbits[u] == self.orbits[v]
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalLabel {
    canonical_labeling(g).label
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n == 0 {
        return Labeling {
            order: vec![],
            label: CanonicalLabel(graph6::encode(g)),
            orbits: vec![],
            generators: vec![],
        };
    }
    let mut search = Search {
        adj: g.rows(),
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.visit(vec![g.vertex_mask()], &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    let orbits = orbit_representatives(n, &search.generators);
    let relabelled = Graph::from_rows_unchecked(best.rows);
    Labeling {
        order: best.order,
        label: CanonicalLabel(graph6::encode(&relabelled)),
        orbits,
        generators: search.generators,
    }
}

#[derive(Clone)]
struct Leaf {
    path: Vec<usize>,
    order: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn visit(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.adj, &mut cells);
        if cells.len() == self.adj.len() {
            return self.leaf(&cells, path);
        }
        let depth = path.len();
        let (ci, cell) = target_cell(&cells);
        let mut tried = 0u64;
        for v in Bits(cell) {
            if tried != 0 && self.equivalent_to_tried(v, tried, path) {
                continue;
            }
            tried |= 1 << v;
            let child = individualize(&cells, ci, v);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = relabel(self.adj, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: path.to_vec(),
                order,
                rows,
            };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if rows == first.rows {
            let gen = automorphism(&first.order, &order);
            let level = common_prefix(&first.path, path);
            self.generators.push(gen);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        if rows == best.rows {
            let gen = automorphism(&best.order, &order);
            let level = common_prefix(&best.path, path);
            self.generators.push(gen);
            return Some(level);
        }
        if rows > best.rows {
            self.best = Some(Leaf {
                path: path.to_vec(),
                order,
                rows,
            });
        }
        None
    }

    /// Whether `v` lies in the orbit of some already tried vertex under the
    /// generators fixing `path` pointwise.
    fn equivalent_to_tried(&self, v: usize, tried: u64, path: &[usize]) -> bool {
        let fixing: Vec<&Vec<usize>> = self
            .generators
            .iter()
            .filter(|gen| path.iter().all(|&x| gen[x] == x))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        // Closure of `tried` under the stabiliser generators.
        let mut orbit = tried;
        loop {
            let mut next = orbit;
            for gen in &fixing {
                for x in Bits(orbit) {
                    next |= 1 << gen[x];
                }
            }
            if next == orbit {
                break;
            }
            orbit = next;
        }
        orbit >> v & 1 == 1
    }
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Cells split by neighbour count into the splitter, smallest count first;
/// the procedure only looks at cell positions, so it commutes with
/// relabelling.
pub(crate) fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut counts_buf: Vec<(u32, usize)> = Vec::with_capacity(adj.len());
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut out = Vec::with_capacity(cells.len() + 1);
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    out.push(cell);
                    continue;
                }
                counts_buf.clear();
                counts_buf.extend(Bits(cell).map(|x| ((adj[x] & splitter).count_ones(), x)));
                let c0 = counts_buf[0].0;
                if counts_buf.iter().all(|&(c, _)| c == c0) {
                    out.push(cell);
                    continue;
                }
                counts_buf.sort_unstable();
                let mut cur = counts_buf[0].0;
                let mut mask = 0u64;
                for &(c, x) in &counts_buf {
                    if c != cur {
                        out.push(mask);
                        mask = 0;
                        cur = c;
                    }
                    mask |= 1 << x;
                }
                out.push(mask);
            }
            if out.len() != cells.len() {
                changed = true;
                *cells = out;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

fn target_cell(cells: &[u64]) -> (usize, u64) {
    cells
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| c.count_ones() > 1)
        .min_by_key(|&(i, c)| (c.count_ones(), i))
        .expect("non-discrete partition has a non-singleton cell")
}

fn individualize(cells: &[u64], ci: usize, v: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..ci]);
    out.push(1 << v);
    out.push(cells[ci] & !(1 << v));
    out.extend_from_slice(&cells[ci + 1..]);
    out
}

fn relabel(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = [0u8; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as u8;
    }
    order
        .iter()
        .map(|&v| Bits(adj[v]).fold(0u64, |r, u| r | 1 << pos[u]))
        .collect()
}

/// The map sending `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gen = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b;
    }
    gen
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn orbit_representatives(n: usize, generators: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in generators {
        for (x, &y) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                // Keep the smaller vertex as root.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}
