//! Isomorph-free generation of H-free graphs by canonical vertex
//! augmentation.
//!
//! Every graph is grown from its canonical parent, the graph left after
//! deleting the vertex in the last canonical position. A child is kept only
//! when the added vertex lies in that vertex's orbit, and children of one
//! parent are deduplicated by label. Freeness is hereditary, so parents of
//! H-free graphs are H-free and only copies through the new vertex need
//! checking.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{canonical_labeling, contains_subgraph, AnchoredPattern, CanonicalLabel, Graph};

/// Largest order for full enumeration.
pub const FULL_CAP: usize = 8;
/// Largest order for edge-maximal enumeration.
pub const MAXIMAL_CAP: usize = 10;

pub(crate) struct Forbidden {
    members: Vec<Graph>,
    anchored: Vec<AnchoredPattern>,
}

impl Forbidden {
    pub(crate) fn new(family: &[Graph]) -> Result<Self> {
        if let Some(h) = family.iter().find(|h| h.size() == 0) {
            return Err(Error::input(format!(
                "forbidden graph {} has no edges",
                h.canonical_label()
            )));
        }
        Ok(Forbidden {
            members: family.to_vec(),
            anchored: family.iter().map(AnchoredPattern::new).collect(),
        })
    }

    /// No member has a copy through `v`.
    pub(crate) fn free_through(&self, g: &Graph, v: usize) -> bool {
        !self.anchored.iter().any(|a| a.found_through(g, v))
    }

    pub(crate) fn is_free(&self, g: &Graph) -> bool {
        !self.members.iter().any(|h| contains_subgraph(g, h))
    }

    /// Every non-edge closes a copy of some member. Assumes `g` is free.
    #[cfg(test)]
    pub(crate) fn is_saturated(&self, g: &Graph) -> bool {
        g.non_edges()
            .into_iter()
            .all(|(a, b)| !self.free_through(&g.with_edge(a, b), a))
    }
}

/// Canonical H-free graphs of order `n` with the number of graphs found at
/// every order 0..=n.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub graphs: Vec<Graph>,
    pub per_level: Vec<usize>,
    /// Candidate children that reached the canonical-deletion test.
    pub tested: u64,
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))
}

/// All H-free graphs on `n` vertices up to isomorphism, sorted by label.
pub fn enumerate_hfree(n: usize, family: &[Graph], workers: usize) -> Result<Enumeration> {
    if n > FULL_CAP {
        return Err(Error::capacity(format!("full enumeration is capped at n = {FULL_CAP}, got {n}")));
    }
    run(n, family, workers, false)
}

/// Edge-maximal H-free graphs on `n` vertices up to isomorphism, sorted by
/// label.
pub fn enumerate_maximal_hfree(n: usize, family: &[Graph], workers: usize) -> Result<Enumeration> {
    if n > MAXIMAL_CAP {
        return Err(Error::capacity(format!(
            "maximal enumeration is capped at n = {MAXIMAL_CAP}, got {n}"
        )));
    }
    run(n, family, workers, true)
}

fn run(n: usize, family: &[Graph], workers: usize, maximal: bool) -> Result<Enumeration> {
    let forb = Forbidden::new(family)?;
    let pool = pool(workers)?;
    let mut level = vec![Graph::empty(0)?];
    let mut per_level = vec![1];
    let mut tested = 0;
    for k in 0..n {
        let last = maximal && k + 1 == n;
        let batches: Vec<(Vec<Graph>, u64)> =
            pool.install(|| level.par_iter().map(|p| children(p, &forb, last)).collect());
        level = Vec::with_capacity(batches.iter().map(|b| b.0.len()).sum());
        for (gs, t) in batches {
            level.extend(gs);
            tested += t;
        }
        level.sort_by(|a, b| a.canonical_label().cmp(b.canonical_label()));
        per_level.push(level.len());
    }
    Ok(Enumeration {
        graphs: level,
        per_level,
        tested,
    })
}

/// Canonical children of `parent` by one vertex; with `maximal`, only the
/// edge-maximal ones.
fn children(parent: &Graph, forb: &Forbidden, maximal: bool) -> (Vec<Graph>, u64) {
    let k = parent.order();
    let mut out: BTreeMap<CanonicalLabel, Graph> = BTreeMap::new();
    let mut tested = 0;
    let mut sets = Vec::new();
    good_sets(parent, forb, 0, 0, &mut sets);
    for &s in &sets {
        let child = attach(parent, s);
        if maximal {
            let blocked = (0..k)
                .filter(|&x| s >> x & 1 == 0)
                .all(|x| !forb.free_through(&attach(parent, s | 1 << x), k));
            if !blocked {
                continue;
            }
        }
        tested += 1;
        let lab = canonical_labeling(&child);
        let last = lab.last_vertex().expect("child is nonempty");
        if !lab.same_orbit(k, last) || out.contains_key(&lab.label) {
            continue;
        }
        if maximal && !parent.non_edges().into_iter().all(|(a, b)| !forb.free_through(&child.with_edge(a, b), a)) {
            continue;
        }
        let g = child.relabelled(lab);
        out.insert(g.canonical_label().clone(), g);
    }
    (out.into_values().collect(), tested)
}

/// Neighbourhoods S ⊆ V(parent) for which the new vertex creates no copy.
/// The family of such sets is closed under subsets, so a failing set prunes
/// all its supersets.
fn good_sets(parent: &Graph, forb: &Forbidden, i: usize, s: u64, out: &mut Vec<u64>) {
    let k = parent.order();
    if i == k {
        out.push(s);
        return;
    }
    let with = s | 1 << i;
    if forb.free_through(&attach(parent, with), k) {
        good_sets(parent, forb, i + 1, with, out);
    }
    good_sets(parent, forb, i + 1, s, out);
}

fn attach(parent: &Graph, s: u64) -> Graph {
    let k = parent.order();
    let mut rows: Vec<u64> = parent.rows().to_vec();
    for (v, row) in rows.iter_mut().enumerate() {
        if s >> v & 1 == 1 {
            *row |= 1 << k;
        }
    }
    rows.push(s);
    Graph::from_rows_unchecked(rows)
}
