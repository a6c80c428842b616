//! Named graphs and extremal constructions.
//!
//! Every builder numbers vertices deterministically so outputs are stable
//! byte-for-byte. Multipartite graphs list their parts consecutively, larger
//! parts first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{join, Graph, MAX_ORDER};

pub fn empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// C_n for n ≥ 3, vertices in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// S_k: the star on `k` vertices, centre 0.
pub fn star(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::input("star needs at least one vertex"));
    }
    let edges: Vec<_> = (1..k).map(|i| (0, i)).collect();
    Graph::from_edges(k, &edges)
}

/// M_k: `k` disjoint edges on `2k` vertices, pairs `(2i, 2i+1)`.
pub fn matching(k: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(2 * k, &edges)
}

pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    complete_multipartite(&[s, t])
}

/// Complete multipartite graph with the given part sizes, parts consecutive.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n: usize = parts.iter().sum();
    let mut g = Graph::empty(n)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(s));
    }
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Part sizes of T_p(n): the first `n mod p` parts have ⌈n/p⌉ vertices.
pub fn turan_parts(n: usize, p: usize) -> Result<Vec<usize>> {
    if p == 0 {
        return Err(Error::input("Turán graph needs p ≥ 1"));
    }
    let (base, extra) = (n / p, n % p);
    Ok((0..p)
        .map(|i| base + usize::from(i < extra))
        .filter(|&s| s > 0)
        .collect())
}

/// T_p(n); equals K_n when p ≥ n.
pub fn turan(n: usize, p: usize) -> Result<Graph> {
    if n > MAX_ORDER {
        return Err(Error::capacity(format!("order {n} exceeds {MAX_ORDER}")));
    }
    complete_multipartite(&turan_parts(n, p)?)
}

/// e(T_p(n)) without building the graph; valid for any n.
pub fn turan_size(n: u64, p: u64) -> u64 {
    assert!(p >= 1);
    let (base, extra) = (n / p, n % p);
    let inside = extra * (base + 1) * base / 2 + (p - extra) * base * base.saturating_sub(1) / 2;
    n * n.saturating_sub(1) / 2 - inside
}

/// H(n,p,q) = K_{q−1} ∇ T_p(n−q+1); the clique comes first.
pub fn hnpq(n: usize, p: usize, q: usize) -> Result<Graph> {
    if q == 0 {
        return Err(Error::input("hnpq needs q ≥ 1"));
    }
    if n + 1 < q {
        return Err(Error::input(format!("hnpq needs n ≥ q−1, got n={n}, q={q}")));
    }
    join(&complete(q - 1)?, &turan(n + 1 - q, p)?)
}

/// A base graph together with an odd cycle length for every edge.
#[derive(Clone, Debug)]
pub struct BalloonSpec {
    pub base: Graph,
    pub lengths: BTreeMap<(usize, usize), usize>,
}

impl BalloonSpec {
    /// Every edge gets the same length.
    pub fn uniform(base: &Graph, len: usize) -> Self {
        BalloonSpec {
            base: base.clone(),
            lengths: base.edges().into_iter().map(|e| (e, len)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (u, v) in self.base.edges() {
            match self.lengths.get(&(u, v)) {
                None => return Err(Error::input(format!("no length for edge {u}-{v}"))),
                Some(&l) if l < 5 || l % 2 == 0 => {
                    return Err(Error::input(format!(
                        "edge {u}-{v}: length {l} is not an odd integer ≥ 5"
                    )))
                }
                Some(_) => {}
            }
        }
        for &(u, v) in self.lengths.keys() {
            if !(u < v && v < self.base.order() && self.base.has_edge(u, v)) {
                return Err(Error::input(format!("length given for non-edge {u}-{v}")));
            }
        }
        Ok(())
    }
}

/// Replaces each base edge uv by an odd cycle u, v, f_1, …, f_{ℓ−2}, u.
/// Fresh vertices follow the base vertices, edge by edge in sorted order.
pub fn odd_ballooning(spec: &BalloonSpec) -> Result<Graph> {
    spec.validate()?;
    let base = &spec.base;
    let fresh: usize = spec.lengths.values().map(|l| l - 2).sum();
    let n = base.order() + fresh;
    if n > MAX_ORDER {
        return Err(Error::capacity(format!("ballooning has {n} vertices, cap {MAX_ORDER}")));
    }
    let mut g = Graph::empty(n)?;
    let mut next = base.order();
    for (&(u, v), &len) in &spec.lengths {
        g.add_edge(u, v);
        let mut prev = v;
        for _ in 0..len - 2 {
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.add_edge(prev, u);
    }
    Ok(g)
}

/// K_{s,t}^{odd} with every cycle of length `len`.
pub fn odd_kst(s: usize, t: usize, len: usize) -> Result<Graph> {
    odd_ballooning(&BalloonSpec::uniform(&complete_bipartite(s, t)?, len))
}

/// H_{t−1,t−1}: K_{t−1,t−1} on u_i = i and v_i = t−1+i, minus u_i v_i for
/// every i < t−2.
pub fn h_t1t1(t: usize) -> Result<Graph> {
    if t < 2 {
        return Err(Error::input(format!("h_t1t1 needs t ≥ 2, got {t}")));
    }
    let k = t - 1;
    let mut g = complete_bipartite(k, k)?;
    for i in 0..t - 2 {
        g.remove_edge(i, k + i);
    }
    Ok(g)
}

/// `base_outer ∇ T_p(inner_n)` with `patch` placed on the first vertices of
/// the first Turán part.
pub fn embed_in_part(base_outer: &Graph, p: usize, inner_n: usize, patch: &Graph) -> Result<Graph> {
    if p == 0 {
        return Err(Error::input("embed_in_part needs p ≥ 1"));
    }
    if patch.order() > inner_n / p {
        return Err(Error::input(format!(
            "patch of order {} does not fit a part of T_{p}({inner_n})",
            patch.order()
        )));
    }
    let mut g = join(base_outer, &turan(inner_n, p)?)?;
    let offset = base_outer.order();
    for (u, v) in patch.edges() {
        g.add_edge(offset + u, offset + v);
    }
    Ok(g)
}

/// G_{s,t}: H_{t−1,t−1} embedded in a class of K_{s−1} ∇ T_2(n−s+1).
pub fn gst(s: usize, t: usize, n: usize) -> Result<Graph> {
    if !(2 <= s && s <= t) {
        return Err(Error::input(format!("gst needs 2 ≤ s ≤ t, got s={s}, t={t}")));
    }
    if n + 1 < s {
        return Err(Error::input(format!("gst needs n ≥ s−1, got n={n}")));
    }
    embed_in_part(&complete(s - 1)?, 2, n + 1 - s, &h_t1t1(t)?)
}

/// The triangle-patched graph: K_3 embedded in a class of K_2 ∇ T_2(n−2).
pub fn g33_prime(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input("g33_prime needs n ≥ 2"));
    }
    embed_in_part(&complete(2)?, 2, n - 2, &complete(3)?)
}

/// H′(n,2,2): an edge embedded in a class of K_1 ∇ T_2(n−1).
pub fn hprime22(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::input("hprime22 needs n ≥ 1"));
    }
    embed_in_part(&complete(1)?, 2, n - 1, &complete(2)?)
}

/// F_k: `k` triangles sharing vertex 0; triangle i uses 2i+1 and 2i+2.
pub fn friendship(k: usize) -> Result<Graph> {
    let mut g = Graph::empty(2 * k + 1)?;
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        g.add_edge(0, a);
        g.add_edge(0, b);
        g.add_edge(a, b);
    }
    Ok(g)
}

/// Kneser graph K(t,2): 2-subsets of {0..t} in lexicographic order,
/// adjacent when disjoint.
pub fn kneser(t: usize) -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|a| (a + 1..t).map(move |b| (a, b))).collect();
    let mut g = Graph::empty(pairs.len())?;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Petersen graph: outer cycle 0..5, spokes i–i+5, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("fixed construction")
}

/// Dodecahedron: outer 5-cycle 0..5, spokes to 5..10, a middle 10-cycle
/// alternating 5..10 and 10..15, spokes to the inner 5-cycle 15..20.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + i));
        edges.push((5 + i, 10 + i));
        edges.push((10 + i, 5 + (i + 1) % 5));
        edges.push((10 + i, 15 + i));
        edges.push((15 + i, 15 + (i + 1) % 5));
    }
    Graph::from_edges(20, &edges).expect("fixed construction")
}

/// Builds a catalog graph by name and integer parameters.
pub fn catalog(name: &str, params: &BTreeMap<String, usize>) -> Result<Graph> {
    let get = |key: &str| {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::input(format!("`{name}` needs parameter `{key}`")))
    };
    let allowed: &[&str] = match name {
        "petersen" | "dodecahedron" => &[],
        "kneser" => &["t"],
        "friendship" | "complete" | "cycle" | "star" | "matching" | "empty" | "path" => &["k"],
        "complete_bipartite" => &["s", "t"],
        "turan" => &["n", "p"],
        "hnpq" => &["n", "p", "q"],
        "h_t1t1" => &["t"],
        "gst" => &["s", "t", "n"],
        "g33_prime" | "hprime22" => &["n"],
        "kst_odd" => &["s", "t", "len"],
        _ => return Err(Error::input(format!("unknown catalog graph `{name}`"))),
    };
    if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::input(format!("`{name}` takes no parameter `{extra}`")));
    }
    match name {
        "petersen" => Ok(petersen()),
        "dodecahedron" => Ok(dodecahedron()),
        "kneser" => kneser(get("t")?),
        "friendship" => friendship(get("k")?),
        "complete" => complete(get("k")?),
        "cycle" => cycle(get("k")?),
        "star" => star(get("k")?),
        "matching" => matching(get("k")?),
        "empty" => empty(get("k")?),
        "path" => path(get("k")?),
        "complete_bipartite" => complete_bipartite(get("s")?, get("t")?),
        "turan" => turan(get("n")?, get("p")?),
        "hnpq" => hnpq(get("n")?, get("p")?, get("q")?),
        "h_t1t1" => h_t1t1(get("t")?),
        "gst" => gst(get("s")?, get("t")?, get("n")?),
        "g33_prime" => g33_prime(get("n")?),
        "hprime22" => hprime22(get("n")?),
        "kst_odd" => odd_kst(get("s")?, get("t")?, get("len")?),
        _ => unreachable!(),
    }
}

/// Parses a graph term: a catalog expression (`petersen`, `K3`, `C5`, `K2,3`,
/// `friendship:k=2`, `balloon:base=<term>,len=5`, …) or else graph6.
///
/// Catalog terms contain a digit, `:`, `,` or `_`, or are bare lowercase
/// names; the first three never occur in graph6, so the two readings cannot
/// be confused except for a bare name, where the catalog wins.
pub fn parse_graph(term: &str) -> Result<Graph> {
    let term = term.trim();
    match parse_catalog_term(term) {
        Ok(Some(g)) => Ok(g),
        Ok(None) => Graph::from_graph6(term),
        Err(e) => Err(e),
    }
}

fn parse_catalog_term(term: &str) -> Result<Option<Graph>> {
    if let Some(g) = parse_shorthand(term)? {
        return Ok(Some(g));
    }
    let (name, rest) = match term.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (term, None),
    };
    if name == "balloon" {
        return parse_balloon(rest.unwrap_or("")).map(Some);
    }
    let known = matches!(
        name,
        "petersen"
            | "dodecahedron"
            | "kneser"
            | "friendship"
            | "complete"
            | "cycle"
            | "star"
            | "matching"
            | "empty"
            | "path"
            | "complete_bipartite"
            | "turan"
            | "hnpq"
            | "h_t1t1"
            | "gst"
            | "g33_prime"
            | "hprime22"
            | "kst_odd"
    );
    if !known {
        if rest.is_some() {
            return Err(Error::input(format!("unknown catalog graph `{name}`")));
        }
        return Ok(None);
    }
    let mut params = BTreeMap::new();
    for item in rest.unwrap_or("").split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::input(format!("expected key=value, got `{item}`")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::input(format!("parameter `{k}` is not a nonnegative integer")))?;
        params.insert(k.to_string(), v);
    }
    catalog(name, &params).map(Some)
}

/// `K5`, `C5`, `P4`, `S4`, `M2`, `E3`, `F2`, `K2,3`.
fn parse_shorthand(term: &str) -> Result<Option<Graph>> {
    let mut chars = term.chars();
    let Some(head) = chars.next() else {
        return Ok(None);
    };
    let body = chars.as_str();
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == ',') {
        return Ok(None);
    }
    let nums: Vec<usize> = body
        .split(',')
        .map(|s| s.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::input(format!("malformed graph term `{term}`")))?;
    let g = match (head, nums.as_slice()) {
        ('K', [k]) => complete(*k)?,
        ('K', [s, t]) => complete_bipartite(*s, *t)?,
        ('C', [k]) => cycle(*k)?,
        ('P', [k]) => path(*k)?,
        ('S', [k]) => star(*k)?,
        ('M', [k]) => matching(*k)?,
        ('E', [k]) => empty(*k)?,
        ('F', [k]) => friendship(*k)?,
        _ => return Err(Error::input(format!("malformed graph term `{term}`"))),
    };
    Ok(Some(g))
}

fn parse_balloon(rest: &str) -> Result<Graph> {
    // The base may itself be a shorthand containing a comma (`K2,3`), so the
    // length is split off from the right.
    let (base, len) = rest
        .strip_prefix("base=")
        .and_then(|r| r.rsplit_once(",len="))
        .ok_or_else(|| Error::input("balloon expects `balloon:base=<graph>,len=<odd ≥ 5>`"))?;
    let len: usize = len
        .parse()
        .map_err(|_| Error::input(format!("balloon length `{len}` is not an integer")))?;
    let base = parse_graph(base)?;
    odd_ballooning(&BalloonSpec::uniform(&base, len))
}
