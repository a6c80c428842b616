//! Colour-criticality of forbidden families and the fixed-n structural
//! check behind the matching-good property.
//!
//! A family with p = min χ − 1 ≥ 2 is q-colour-critical when (i) deleting
//! any q−1 vertices of any member leaves chromatic number ≥ p+1, and (ii)
//! some member has a proper (p+1)-colouring whose first two classes induce
//! exactly q independent edges plus isolated vertices. At q = 1 this is the
//! familiar edge-criticality.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{self, edit_distance_outside, CensusOptions, CensusRecord, EditDistance, Mode};
use crate::decomposition::{b_family, beta_gamma, decomposition_family, p_value, smallest_matching_member};
use crate::error::{Error, Result};
use crate::graph::{
    chromatic_number, color_subset, delete_vertices, is_k_colorable, subset_colorable, two_coloring,
    Bits, CanonicalLabel, Graph,
};

/// An edge whose deletion lowers χ, if any. Needs χ(h) ≥ 3.
pub fn is_one_color_critical(h: &Graph) -> Result<Option<(usize, usize)>> {
    let chi = chromatic_number(h);
    if chi < 3 {
        return Err(Error::input(format!("need χ ≥ 3, got {chi}")));
    }
    Ok(h.edges().into_iter().find(|&(u, v)| is_k_colorable(&h.without_edge(u, v), chi - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Index into the family.
    pub graph: usize,
    /// q−1 vertices whose removal leaves a p-colourable graph.
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionI {
    pub pass: bool,
    /// Subsets examined before stopping.
    pub checked: u64,
    pub violating: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringWitness {
    pub graph: usize,
    /// Colour per vertex in 0..=p; classes 0 and 1 induce the q edges.
    pub coloring: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionII {
    pub pass: bool,
    pub witness: Option<ColoringWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub q: usize,
    pub p: usize,
    pub condition_i: ConditionI,
    pub condition_ii: ConditionII,
    pub verdict: bool,
}

impl CriticalityReport {
    /// Re-checks both witnesses against the family with the plain colouring
    /// primitives.
    pub fn validate(&self, family: &[Graph]) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        if let Some(v) = &self.condition_i.violating {
            let h = family.get(v.graph).ok_or_else(|| Error::Invalid("violation index".into()))?;
            let mask = v.subset.iter().fold(0u64, |m, &x| m | 1 << x);
            if v.subset.len() + 1 != self.q || mask.count_ones() as usize != v.subset.len() || v.subset.iter().any(|&x| x >= h.order()) {
                return bad(format!("violating subset {:?} is not a ({})-subset", v.subset, self.q - 1));
            }
            if !is_k_colorable(&delete_vertices(h, &v.subset)?, self.p) {
                return bad("graph minus the violating subset is not p-colourable".into());
            }
        }
        if let Some(w) = &self.condition_ii.witness {
            let h = family.get(w.graph).ok_or_else(|| Error::Invalid("witness index".into()))?;
            if !valid_coloring(h, self.p, self.q, &w.coloring) {
                return bad(format!("coloring {:?} is not a valid witness", w.coloring));
            }
        }
        if self.condition_i.pass != self.condition_i.violating.is_none()
            || self.condition_ii.pass != self.condition_ii.witness.is_some()
            || self.verdict != (self.condition_i.pass && self.condition_ii.pass)
        {
            return bad("flags disagree with witnesses".into());
        }
        Ok(())
    }
}

/// Proper colouring with colours 0..=p whose classes 0 and 1 together
/// induce exactly q independent edges plus isolated vertices.
pub fn valid_coloring(h: &Graph, p: usize, q: usize, coloring: &[usize]) -> bool {
    if coloring.len() != h.order() || coloring.iter().any(|&c| c > p) {
        return false;
    }
    if h.edges().iter().any(|&(u, v)| coloring[u] == coloring[v]) {
        return false;
    }
    let two = (0..h.order()).filter(|&v| coloring[v] <= 1).fold(0u64, |m, v| m | 1 << v);
    let adj = h.rows();
    let mut edges = 0;
    for v in Bits(two) {
        match (adj[v] & two).count_ones() {
            0 => {}
            1 => edges += 1,
            _ => return false,
        }
    }
    edges == 2 * q
}

fn not_p_colorable(adj: &[u64], active: u64, p: usize) -> bool {
    if p == 2 {
        two_coloring(adj, active).is_none()
    } else {
        !subset_colorable(adj, active, p)
    }
}

/// k-subsets of 0..n in lexicographic order.
struct Combinations {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            next: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let k = cur.len();
        let mut succ = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| succ[i] < self.n - k + i) {
            succ[i] += 1;
            for j in i + 1..k {
                succ[j] = succ[j - 1] + 1;
            }
            self.next = Some(succ);
        }
        Some(cur)
    }
}

const CHUNK: usize = 4096;

fn condition_i(family: &[Graph], p: usize, q: usize) -> ConditionI {
    let mut checked = 0u64;
    for (gi, h) in family.iter().enumerate() {
        let adj = h.rows();
        let all = h.vertex_mask();
        let mut subsets = Combinations::new(h.order(), q - 1);
        loop {
            let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let hit = chunk.par_iter().position_first(|s| {
                let removed = s.iter().fold(0u64, |m, &x| m | 1 << x);
                !not_p_colorable(adj, all & !removed, p)
            });
            if let Some(i) = hit {
                return ConditionI {
                    pass: false,
                    checked: checked + i as u64 + 1,
                    violating: Some(Violation {
                        graph: gi,
                        subset: chunk[i].clone(),
                    }),
                };
            }
            checked += chunk.len() as u64;
        }
    }
    ConditionI {
        pass: true,
        checked,
        violating: None,
    }
}

/// Splits V into X, inducing exactly q independent edges plus isolated
/// vertices, and a (p−1)-colourable rest Y. Vertices are decided in order,
/// X before Y, so the first split found is deterministic.
struct Split<'a> {
    adj: &'a [u64],
    n: usize,
    p: usize,
    q: usize,
}

impl Split<'_> {
    fn search(&self, v: usize, x: u64, y: u64, edges: usize) -> Option<u64> {
        if v == self.n {
            return (edges == self.q).then_some(x);
        }
        let bit = 1u64 << v;
        let nx = self.adj[v] & x;
        // Into X: v and each X-neighbour keep at most one X-neighbour.
        if nx.count_ones() <= 1 {
            let fresh = nx.count_ones() as usize;
            let ok = Bits(nx).all(|u| self.adj[u] & x == 0) && edges + fresh <= self.q;
            if ok {
                if let Some(r) = self.search(v + 1, x | bit, y, edges + fresh) {
                    return Some(r);
                }
            }
        }
        let ny = y | bit;
        let y_ok = if self.p == 2 {
            self.adj[v] & y == 0
        } else {
            subset_colorable(self.adj, ny, self.p - 1)
        };
        if y_ok {
            return self.search(v + 1, x, ny, edges);
        }
        None
    }
}

fn condition_ii(family: &[Graph], p: usize, q: usize) -> ConditionII {
    for (gi, h) in family.iter().enumerate() {
        let adj = h.rows();
        let split = Split { adj, n: h.order(), p, q };
        if let Some(x) = split.search(0, 0, 0, 0) {
            let mut coloring = vec![0; h.order()];
            for v in Bits(x) {
                // The larger end of each X edge takes colour 1.
                if (adj[v] & x).trailing_zeros() < v as u32 && adj[v] & x != 0 {
                    coloring[v] = 1;
                }
            }
            let y = h.vertex_mask() & !x;
            let classes = color_subset(adj, y, p - 1).expect("Y is (p−1)-colourable");
            for (c, class) in classes.iter().enumerate() {
                for v in Bits(*class) {
                    coloring[v] = c + 2;
                }
            }
            return ConditionII {
                pass: true,
                witness: Some(ColoringWitness { graph: gi, coloring }),
            };
        }
    }
    ConditionII {
        pass: false,
        witness: None,
    }
}

/// Both conditions of q-colour-criticality, with witnesses.
pub fn q_color_critical(family: &[Graph], q: usize) -> Result<CriticalityReport> {
    let p = p_value(family)?;
    if p < 2 {
        return Err(Error::precondition(format!("p = {p}, need at least 2")));
    }
    if q == 0 {
        return Err(Error::input("q must be at least 1"));
    }
    let condition_i = condition_i(family, p, q);
    let condition_ii = condition_ii(family, p, q);
    let verdict = condition_i.pass && condition_ii.pass;
    Ok(CriticalityReport {
        q,
        p,
        condition_i,
        condition_ii,
        verdict,
    })
}

/// The passing report with the least q, if any. Condition (i) only gets
/// harder as q grows, so the search stops at its first failure.
pub fn criticality_order_report(family: &[Graph]) -> Result<Option<CriticalityReport>> {
    let max_order = family.iter().map(Graph::order).max().unwrap_or(0);
    for q in 1..=max_order {
        let r = q_color_critical(family, q)?;
        if r.verdict {
            return Ok(Some(r));
        }
        if !r.condition_i.pass {
            break;
        }
    }
    Ok(None)
}

pub fn criticality_order(family: &[Graph]) -> Result<Option<usize>> {
    Ok(criticality_order_report(family)?.map(|r| r.q))
}

/// Label attached to every matching-good report: a finite-n observation,
/// not a certificate of the asymptotic property.
pub const EVIDENCE_SCOPE: &str = "evidence at n";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitCandidate {
    pub graph: CanonicalLabel,
    /// Apex vertices W, joined to everything outside W.
    pub apex: Vec<usize>,
    pub edits: EditDistance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingGoodReport {
    pub forbidden: CanonicalLabel,
    pub n: usize,
    pub p: usize,
    pub beta: usize,
    pub gamma: usize,
    /// Smallest k with M_k in the decomposition family.
    pub smallest_matching: Option<usize>,
    pub contains_matching: bool,
    pub b_family: Vec<CanonicalLabel>,
    /// ex(γ−1, B); `None` when every (γ−1)-vertex graph contains a member.
    pub apex_ex: Option<usize>,
    pub ex: usize,
    pub ex_graph_count: usize,
    /// Best split over all extremal graphs, fewest edits first.
    pub best: Option<SplitCandidate>,
    pub edit_budget: usize,
    pub pass: bool,
    pub scope: String,
}

/// Fixed-n look at the matching-good conditions for `h`: does the
/// decomposition family contain a matching, and does some extremal graph
/// split as H_1 ∇ H_2 with H_1 ∈ EX(γ−1, B) and H_2 within `edit_budget`
/// edits of T_p(n−γ+1)?
pub fn matching_good_desk_check(h: &Graph, n: usize, edit_budget: usize, opts: &CensusOptions) -> Result<MatchingGoodReport> {
    if n > census::MAXIMAL_CAP {
        return Err(Error::capacity(format!("no census beyond n = {}", census::MAXIMAL_CAP)));
    }
    let record = census::census(n, std::slice::from_ref(h), Mode::Maximal, opts)?;
    matching_good_from_record(h, &record, edit_budget)
}

/// As [`matching_good_desk_check`] with the census already at hand.
pub fn matching_good_from_record(h: &Graph, record: &CensusRecord, edit_budget: usize) -> Result<MatchingGoodReport> {
    let family = std::slice::from_ref(h);
    record.validate(family)?;
    let df = decomposition_family(family, None)?;
    let p = df.p;
    let (beta, gamma) = beta_gamma(&df);
    let b = b_family(&df);
    let smallest_matching = smallest_matching_member(&df);
    let apex_ex = apex_extremal_size(&b, gamma - 1)?;
    let n = record.n;
    let mut best: Option<SplitCandidate> = None;
    if let Some(apex_ex) = apex_ex {
        let forb_b = nonempty_members(&b);
        for label in &record.ex_graphs {
            let g = label.to_graph();
            for w in apex_sets(&g, gamma - 1) {
                let gw = crate::graph::induced_subgraph(&g, w);
                if gw.size() != apex_ex || forb_b.iter().any(|m| crate::graph::contains_subgraph(&gw, m)) {
                    continue;
                }
                let edits = edit_distance_outside(&g, p, w)?;
                if best.as_ref().map_or(true, |c| edits.distance < c.edits.distance) {
                    best = Some(SplitCandidate {
                        graph: label.clone(),
                        apex: Bits(w).collect(),
                        edits,
                    });
                }
            }
        }
    }
    let contains_matching = smallest_matching.is_some();
    let pass = contains_matching && best.as_ref().is_some_and(|c| c.edits.distance <= edit_budget);
    Ok(MatchingGoodReport {
        forbidden: h.canonical_label().clone(),
        n,
        p,
        beta,
        gamma,
        smallest_matching,
        contains_matching,
        b_family: b.iter().map(|g| g.canonical_label().clone()).collect(),
        apex_ex,
        ex: record.ex,
        ex_graph_count: record.ex_graphs.len(),
        best,
        edit_budget,
        pass,
        scope: EVIDENCE_SCOPE.to_string(),
    })
}

fn nonempty_members(b: &[Graph]) -> Vec<Graph> {
    b.iter().filter(|m| m.size() > 0).cloned().collect()
}

/// ex(k, B). An edgeless member E_j lies in every graph on ≥ j vertices.
fn apex_extremal_size(b: &[Graph], k: usize) -> Result<Option<usize>> {
    if b.iter().any(|m| m.size() == 0 && m.order() <= k) {
        return Ok(None);
    }
    if k == 0 {
        return Ok(Some(0));
    }
    let (ex, _) = census::ex_census(k, &nonempty_members(b), Mode::Maximal)?;
    Ok(Some(ex))
}

/// Vertex sets W of size k with every vertex of W adjacent to all of V − W,
/// in increasing mask order.
fn apex_sets(g: &Graph, k: usize) -> Vec<u64> {
    let n = g.order();
    let all = g.vertex_mask();
    let cands: Vec<usize> = (0..n).filter(|&v| g.degree(v) + k >= n).collect();
    let mut out: Vec<u64> = Combinations::new(cands.len(), k)
        .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << cands[i]))
        .filter(|&w| Bits(w).all(|v| (g.neighbors(v) | w) & all == all))
        .collect();
    out.sort_unstable();
    out
}
