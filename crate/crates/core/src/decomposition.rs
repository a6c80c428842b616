//! Decomposition families and the covering parameters derived from them.
//!
//! For a family with p = min χ − 1, a graph M belongs to the decomposition
//! family when some member H embeds in (M ∪ E_t) ∇ T_{p−1}((p−1)t). An
//! embedding splits V(H) into the part X landing on the M side and a
//! (p−1)-colourable rest, so the minimal members are the subgraph-minimal
//! cores H[X] minus isolated vertices, where V(H) − X ranges over maximal
//! (p−1)-colourable vertex sets.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::constructions::{complete, turan};
use crate::error::{Error, Result};
use crate::graph::{
    Bits, chromatic_number, contains_subgraph, covering_number, disjoint_union, induced_subgraph,
    independent_covering_number, join, subset_colorable, CanonicalLabel, Graph, MAX_ORDER,
};

/// Largest member order accepted by [`decomposition_family`] at p = 2.
pub const MAX_MEMBER_ORDER_P2: usize = 20;
/// Largest member order accepted at p ≥ 3.
pub const MAX_MEMBER_ORDER: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFamily {
    /// Canonical representatives, sorted by canonical label.
    pub members: Vec<Graph>,
    pub p: usize,
    pub t_used: usize,
    pub source: Vec<CanonicalLabel>,
}

impl DecompositionFamily {
    pub fn labels(&self) -> Vec<CanonicalLabel> {
        self.members.iter().map(|m| m.canonical_label().clone()).collect()
    }
}

/// min χ(H) − 1 over the family.
pub fn p_value(family: &[Graph]) -> Result<usize> {
    family
        .iter()
        .map(|h| chromatic_number(h).saturating_sub(1))
        .min()
        .ok_or_else(|| Error::input("forbidden family is empty"))
}

/// The host (M ∪ E_t) ∇ T_{p−1}((p−1)t).
pub fn naive_host(m: &Graph, p: usize, t: usize) -> Result<Graph> {
    let left = disjoint_union(m, &Graph::empty(t)?)?;
    let order = left.order() + (p - 1) * t;
    if order > MAX_ORDER {
        return Err(Error::capacity(format!(
            "membership host needs {order} vertices; reduce t"
        )));
    }
    join(&left, &turan((p - 1) * t, p - 1)?)
}

/// Literal membership test: H ⊆ (M ∪ E_t) ∇ T_{p−1}((p−1)t) with p = χ(H) − 1.
pub fn naive_member_check(h: &Graph, m: &Graph, t: usize) -> Result<bool> {
    let p = p_value(std::slice::from_ref(h))?;
    if p < 2 {
        return Err(Error::precondition(format!("p(H) = {p}, need at least 2")));
    }
    if t < h.order() {
        return Err(Error::precondition(format!("t = {t} is below |H| = {}", h.order())));
    }
    Ok(contains_subgraph(&naive_host(m, p, t)?, h))
}

pub fn decomposition_family(family: &[Graph], t_override: Option<usize>) -> Result<DecompositionFamily> {
    let p = p_value(family)?;
    if p < 2 {
        return Err(Error::precondition(format!("p = {p}, need at least 2")));
    }
    let max_order = family.iter().map(Graph::order).max().unwrap_or(0);
    let cap = if p == 2 { MAX_MEMBER_ORDER_P2 } else { MAX_MEMBER_ORDER };
    if max_order > cap {
        return Err(Error::capacity(format!(
            "decomposition limited to |H| ≤ {cap} at p = {p}, got {max_order}"
        )));
    }
    let t_used = match t_override {
        Some(t) if t < max_order => {
            return Err(Error::input(format!("t = {t} is below max |H| = {max_order}")))
        }
        Some(t) => t,
        None => max_order,
    };

    // Candidate cores, deduplicated, remembering one source graph for each.
    let mut cores: BTreeMap<CanonicalLabel, (Graph, usize)> = BTreeMap::new();
    for (idx, h) in family.iter().enumerate() {
        let all = h.vertex_mask();
        for y in maximal_colorable_sets(h, p - 1) {
            let core = induced_subgraph(h, all & !y).without_isolated().canonical();
            cores
                .entry(core.canonical_label().clone())
                .or_insert((core, idx));
        }
    }

    let mut candidates: Vec<(Graph, usize)> = cores.into_values().collect();
    candidates.sort_by(|(a, _), (b, _)| {
        (a.size(), a.order(), a.canonical_label()).cmp(&(b.size(), b.order(), b.canonical_label()))
    });
    let mut kept: Vec<(Graph, usize)> = Vec::new();
    for (c, idx) in candidates {
        if !kept.iter().any(|(k, _)| contains_subgraph(&c, k)) {
            kept.push((c, idx));
        }
    }

    for (m, idx) in &kept {
        let h = &family[*idx];
        let hp = p_value(std::slice::from_ref(h))?;
        let host = naive_host(m, p, t_used)?;
        if !contains_subgraph(&host, h) {
            return Err(Error::Invalid(format!(
                "core {} of {} fails the membership check (p = {p}, own p = {hp})",
                m.to_graph6(),
                h.to_graph6()
            )));
        }
    }

    let mut members: Vec<Graph> = kept.into_iter().map(|(m, _)| m).collect();
    members.sort_by(|a, b| a.canonical_label().cmp(b.canonical_label()));
    let mut source: Vec<CanonicalLabel> = family.iter().map(|h| h.canonical_label().clone()).collect();
    source.sort();
    source.dedup();
    Ok(DecompositionFamily {
        members,
        p,
        t_used,
        source,
    })
}

/// All inclusion-maximal vertex sets inducing a `k`-colourable subgraph.
fn maximal_colorable_sets(h: &Graph, k: usize) -> Vec<u64> {
    let adj = h.rows();
    let all = h.vertex_mask();
    if k == 1 {
        // Maximal independent sets: maximal cliques of the complement.
        let comp: Vec<u64> = (0..h.order()).map(|v| all & !adj[v] & !(1 << v)).collect();
        let mut out = Vec::new();
        bron_kerbosch(&comp, 0, all, 0, &mut out);
        return out;
    }
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut colorable = |s: u64| *memo.entry(s).or_insert_with(|| subset_colorable(adj, s, k));
    let mut out = Vec::new();
    let n = h.order();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((v, set)) = stack.pop() {
        if v == n {
            let maximal = Bits(all & !set).all(|x| !colorable(set | 1 << x));
            if maximal {
                out.push(set);
            }
            continue;
        }
        stack.push((v + 1, set));
        if colorable(set | 1 << v) {
            stack.push((v + 1, set | 1 << v));
        }
    }
    out
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = Bits(p | x).max_by_key(|&u| (adj[u] & p).count_ones()).unwrap();
    for v in Bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// (β, γ): least covering number over members, least independent covering
/// number over bipartite members.
pub fn beta_gamma(df: &DecompositionFamily) -> (usize, usize) {
    let beta = df.members.iter().map(covering_number).min().unwrap_or(0);
    let gamma = df
        .members
        .iter()
        .filter_map(independent_covering_number)
        .min()
        .expect("every decomposition family has a bipartite member");
    (beta, gamma)
}

/// B(H): {K_γ} when β = γ, otherwise the induced graphs M[S] over members
/// M and vertex covers S of M with |S| < γ. Sorted by canonical label.
pub fn b_family(df: &DecompositionFamily) -> Vec<Graph> {
    let (beta, gamma) = beta_gamma(df);
    if beta == gamma {
        return vec![complete(gamma).expect("γ is small").canonical()];
    }
    let mut out: BTreeMap<CanonicalLabel, Graph> = BTreeMap::new();
    for m in &df.members {
        let adj = m.rows();
        let n = m.order();
        for s in 0u64..1 << n {
            if s.count_ones() as usize >= gamma {
                continue;
            }
            let covers = (0..n).all(|v| s >> v & 1 == 1 || adj[v] & !s == 0);
            if covers {
                let g = induced_subgraph(m, s).canonical();
                out.insert(g.canonical_label().clone(), g);
            }
        }
    }
    out.into_values().collect()
}

/// Least q with H ⊆ E_q ∇ T_p(p·|H|), where p = χ(H) − 1.
pub fn q_value(h: &Graph) -> Result<usize> {
    let p = p_value(std::slice::from_ref(h))?;
    if p < 2 {
        return Err(Error::precondition(format!("p(H) = {p}, need at least 2")));
    }
    let n = h.order();
    let part = n;
    if n + p * part > MAX_ORDER {
        return Err(Error::capacity(format!(
            "host E_q ∇ T_{p}({}) does not fit the order cap",
            p * part
        )));
    }
    let inner = turan(p * part, p)?;
    for q in 1..=n {
        let host = join(&Graph::empty(q)?, &inner)?;
        if contains_subgraph(&host, h) {
            return Ok(q);
        }
    }
    unreachable!("H always embeds with q = |H|")
}

/// Least k such that M_k is a member, if any.
pub fn smallest_matching_member(df: &DecompositionFamily) -> Option<usize> {
    df.members
        .iter()
        .filter(|m| m.order() > 0 && m.min_degree() == 1 && m.max_degree() == 1)
        .map(Graph::size)
        .min()
}
