//! Exhaustive ex/EX and spex/SPEX at desk scale, and the subset test
//! SPEX ⊆ EX.
//!
//! Full mode enumerates every H-free graph (n ≤ 8) and so certifies the
//! witness sets. Maximal mode enumerates only edge-maximal H-free graphs
//! (n ≤ 10). Adding an edge never lowers e or ρ, so both maxima are still
//! exact there, but a spectral maximizer that is not edge-maximal can be
//! missed when ρ ties, and the subset test is refused.

mod cache;
mod edit;
mod enumerate;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, CanonicalLabel, Graph};
use crate::spectral::{compare_profiles, numerically_separated, spectral_radius, SpectralProfile, DEFAULT_TOL};

pub use cache::{Cache, CACHE_ENV};
pub use edit::{edit_distance_outside, edit_distance_to_join_turan, EditDistance, EXACT_EDIT_LIMIT};
pub use enumerate::{enumerate_hfree, enumerate_maximal_hfree, Enumeration, FULL_CAP, MAXIMAL_CAP};
pub(crate) use enumerate::Forbidden;

/// Bumped whenever a change could alter a record; part of the cache key.
pub const ALGORITHM_VERSION: u32 = 1;
/// Environment variable for the default worker count.
pub const WORKERS_ENV: &str = "SPEXLAB_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Maximal,
}

impl Mode {
    pub fn cap(self) -> usize {
        match self {
            Mode::Full => FULL_CAP,
            Mode::Maximal => MAXIMAL_CAP,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Maximal => "maximal",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "maximal" | "maximal-only" => Ok(Mode::Maximal),
            _ => Err(Error::input(format!("unknown census mode {s:?}"))),
        }
    }
}

/// Outcome of the subset test, written as `true`, `false` or `"value-only"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent,
    ValueOnly,
}

impl Serialize for Consistency {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Consistency::Consistent => s.serialize_bool(true),
            Consistency::Inconsistent => s.serialize_bool(false),
            Consistency::ValueOnly => s.serialize_str("value-only"),
        }
    }
}

impl<'de> Deserialize<'de> for Consistency {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Flag(bool),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Flag(true) => Ok(Consistency::Consistent),
            Raw::Flag(false) => Ok(Consistency::Inconsistent),
            Raw::Text(t) if t == "value-only" => Ok(Consistency::ValueOnly),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad consistency flag {t:?}"))),
        }
    }
}

/// How the spex witnesses were separated from the other candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Some candidate fell within the numeric threshold and was decided by
    /// characteristic polynomials.
    Exact,
    /// Every other graph was numerically well below the maximum.
    Separated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Isomorphism classes found at each order 0..=n.
    pub per_level: Vec<usize>,
    /// Children that reached the canonical-deletion test.
    pub tested: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub enumerate_ms: f64,
    pub spectral_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub forbidden: Vec<CanonicalLabel>,
    pub n: usize,
    pub mode: Mode,
    pub ex: usize,
    pub ex_graphs: Vec<CanonicalLabel>,
    #[serde(with = "crate::float17")]
    pub spex: f64,
    pub spex_tie_break: TieBreak,
    pub spex_graphs: Vec<CanonicalLabel>,
    /// False in maximal mode: non-maximal graphs tying the maximum are not
    /// listed.
    pub spex_witnesses_complete: bool,
    pub consistent: Consistency,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub algorithm_version: u32,
}

impl CensusRecord {
    /// Pretty JSON; byte-identical for equal records.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// Re-checks the record against the forbidden family: labels canonical
    /// and sorted, every listed graph H-free of order n, EX graphs with ex
    /// edges, and the consistency flag.
    pub fn validate(&self, family: &[Graph]) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.forbidden != family_labels(family) {
            return bad("forbidden family does not match".into());
        }
        let forb = Forbidden::new(family)?;
        for (name, list) in [("ex", &self.ex_graphs), ("spex", &self.spex_graphs)] {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("{name}_graphs not strictly sorted"));
            }
            for label in list {
                let g = Graph::from_graph6(label.as_str())?;
                if canonical_form(&g) != *label {
                    return bad(format!("{label} is not canonical"));
                }
                if g.order() != self.n {
                    return bad(format!("{label} has order {} ≠ {}", g.order(), self.n));
                }
                if !forb.is_free(&g) {
                    return bad(format!("{label} contains a forbidden graph"));
                }
                if name == "ex" && g.size() != self.ex {
                    return bad(format!("{label} has {} edges, ex = {}", g.size(), self.ex));
                }
            }
        }
        if self.ex_graphs.is_empty() || self.spex_graphs.is_empty() {
            return bad("empty witness list".into());
        }
        let expected = consistency(self.mode, &self.ex_graphs, &self.spex_graphs);
        if self.consistent != expected {
            return bad(format!("consistency flag {:?}, expected {expected:?}", self.consistent));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub workers: usize,
    pub tol: f64,
    /// Include wall-clock timings; off by default so records are
    /// reproducible byte for byte.
    pub timings: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: default_workers(),
            tol: DEFAULT_TOL,
            timings: false,
        }
    }
}

/// `SPEXLAB_WORKERS` if set and valid, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub(crate) fn family_labels(family: &[Graph]) -> Vec<CanonicalLabel> {
    let mut labels: Vec<CanonicalLabel> = family.iter().map(|h| h.canonical_label().clone()).collect();
    labels.sort();
    labels.dedup();
    labels
}

pub fn enumerate(n: usize, family: &[Graph], mode: Mode, workers: usize) -> Result<Enumeration> {
    match mode {
        Mode::Full => enumerate_hfree(n, family, workers),
        Mode::Maximal => enumerate_maximal_hfree(n, family, workers),
    }
}

/// ex(n, family) and the canonical graphs attaining it.
pub fn ex_census(n: usize, family: &[Graph], mode: Mode) -> Result<(usize, Vec<Graph>)> {
    let e = enumerate(n, family, mode, default_workers())?;
    Ok(edge_extremal(&e.graphs))
}

fn edge_extremal(graphs: &[Graph]) -> (usize, Vec<Graph>) {
    let ex = graphs.iter().map(Graph::size).max().unwrap_or(0);
    (ex, graphs.iter().filter(|g| g.size() == ex).cloned().collect())
}

#[derive(Clone, Debug)]
pub struct SpexResult {
    pub spex: f64,
    pub graphs: Vec<Graph>,
    pub tie_break: TieBreak,
    /// Whether the witness list is certified complete (full mode).
    pub complete: bool,
}

/// spex(n, family) and its maximizers; ties decided exactly.
pub fn spex_census(n: usize, family: &[Graph], mode: Mode, tol: f64) -> Result<SpexResult> {
    let workers = default_workers();
    let e = enumerate(n, family, mode, workers)?;
    let r = spectral_extremal(&e.graphs, tol, &enumerate::pool(workers)?)?;
    Ok(SpexResult {
        complete: mode == Mode::Full,
        ..r
    })
}

fn spectral_extremal(graphs: &[Graph], tol: f64, pool: &rayon::ThreadPool) -> Result<SpexResult> {
    if graphs.is_empty() || graphs[0].order() == 0 {
        return Err(Error::input("spectral census needs n ≥ 1"));
    }
    let profiles: Vec<SpectralProfile> =
        pool.install(|| graphs.par_iter().map(|g| spectral_radius(g, tol)).collect::<Result<_>>())?;
    // Running maximum over label order; near ties go to the exact path.
    let mut best = 0;
    let mut ties = vec![0];
    for i in 1..graphs.len() {
        match compare_profiles(&graphs[i], &profiles[i], &graphs[best], &profiles[best]) {
            std::cmp::Ordering::Greater => {
                best = i;
                ties = vec![i];
            }
            std::cmp::Ordering::Equal => ties.push(i),
            std::cmp::Ordering::Less => {}
        }
    }
    let exact = ties.len() > 1
        || (0..graphs.len())
            .filter(|i| !ties.contains(i))
            .any(|i| !numerically_separated(&graphs[i], &profiles[i], &graphs[best], &profiles[best]));
    Ok(SpexResult {
        spex: profiles[best].rho,
        graphs: ties.into_iter().map(|i| graphs[i].clone()).collect(),
        tie_break: if exact { TieBreak::Exact } else { TieBreak::Separated },
        complete: true,
    })
}

fn consistency(mode: Mode, ex: &[CanonicalLabel], spex: &[CanonicalLabel]) -> Consistency {
    match mode {
        Mode::Maximal => Consistency::ValueOnly,
        Mode::Full if spex.iter().all(|l| ex.binary_search(l).is_ok()) => Consistency::Consistent,
        Mode::Full => Consistency::Inconsistent,
    }
}

/// Full census record for (family, n).
pub fn census(n: usize, family: &[Graph], mode: Mode, opts: &CensusOptions) -> Result<CensusRecord> {
    if n == 0 {
        return Err(Error::input("census needs n ≥ 1"));
    }
    let pool = enumerate::pool(opts.workers)?;
    let t0 = Instant::now();
    let e = enumerate(n, family, mode, opts.workers)?;
    let t1 = Instant::now();
    let (ex, ex_graphs) = edge_extremal(&e.graphs);
    let spex = spectral_extremal(&e.graphs, opts.tol, &pool)?;
    let t2 = Instant::now();
    let labels = |gs: &[Graph]| gs.iter().map(|g| g.canonical_label().clone()).collect::<Vec<_>>();
    let ex_graphs = labels(&ex_graphs);
    let spex_graphs = labels(&spex.graphs);
    Ok(CensusRecord {
        forbidden: family_labels(family),
        n,
        mode,
        ex,
        consistent: consistency(mode, &ex_graphs, &spex_graphs),
        ex_graphs,
        spex: spex.spex,
        spex_tie_break: spex.tie_break,
        spex_graphs,
        spex_witnesses_complete: mode == Mode::Full,
        counts: Counts {
            per_level: e.per_level,
            tested: e.tested,
        },
        timings: opts.timings.then(|| Timings {
            enumerate_ms: (t1 - t0).as_secs_f64() * 1e3,
            spectral_ms: (t2 - t1).as_secs_f64() * 1e3,
        }),
        algorithm_version: ALGORITHM_VERSION,
    })
}

/// SPEX ⊆ EX for a full-mode record; maximal-mode records are value-only.
pub fn consistency_check(record: &CensusRecord) -> Result<bool> {
    match consistency(record.mode, &record.ex_graphs, &record.spex_graphs) {
        Consistency::ValueOnly => Err(Error::ValueOnly),
        c => Ok(c == Consistency::Consistent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, path, star, turan};

    fn opts(workers: usize) -> CensusOptions {
        CensusOptions {
            workers,
            ..CensusOptions::default()
        }
    }

    fn label(g: &Graph) -> CanonicalLabel {
        g.canonical_label().clone()
    }

    #[test]
    fn triangle_examples() {
        let k3 = [complete(3).unwrap()];
        let r = census(5, &k3, Mode::Full, &opts(2)).unwrap();
        assert_eq!(r.ex, 6);
        assert_eq!(r.ex_graphs, vec![label(&turan(5, 2).unwrap())]);
        assert!((r.spex - 6f64.sqrt()).abs() < 1e-9);
        assert_eq!(r.spex_graphs, r.ex_graphs);
        assert_eq!(r.consistent, Consistency::Consistent);
        assert_eq!(r.spex_tie_break, TieBreak::Separated);
        assert!(consistency_check(&r).unwrap());
        r.validate(&k3).unwrap();

        // n = 4: ρ(C_4) = 2 > √3 = ρ(K_{1,3}).
        let r = census(4, &k3, Mode::Full, &opts(1)).unwrap();
        assert_eq!(r.ex, 4);
        assert_eq!(r.spex_graphs, vec![label(&cycle(4).unwrap())]);
        assert!((r.spex - 2.0).abs() < 1e-9);

        let r = census(3, &k3, Mode::Full, &opts(1)).unwrap();
        assert_eq!(r.ex_graphs, vec![label(&path(3).unwrap())]);
        assert_eq!(r.spex_graphs, r.ex_graphs);
        assert!(consistency_check(&r).unwrap());
    }

    #[test]
    fn k4_at_six() {
        let k4 = [complete(4).unwrap()];
        let r = census(6, &k4, Mode::Full, &opts(3)).unwrap();
        assert_eq!(r.ex, 12);
        assert_eq!(r.ex_graphs, vec![label(&turan(6, 3).unwrap())]);
        assert!((r.spex - 4.0).abs() < 1e-9);
        assert_eq!(r.spex_graphs, r.ex_graphs);
        assert!(consistency_check(&r).unwrap());
    }

    #[test]
    fn edgeless_when_an_edge_is_forbidden() {
        let (ex, gs) = ex_census(5, &[complete(2).unwrap()], Mode::Maximal).unwrap();
        assert_eq!(ex, 0);
        assert_eq!(gs.len(), 1);
    }

    #[test]
    fn exact_ties_are_all_reported() {
        // {K_3, C_4}-free on 5 vertices: K_{1,4} (ρ = 2) ties with C_5 (ρ = 2).
        let fam = [complete(3).unwrap(), cycle(4).unwrap()];
        let r = census(5, &fam, Mode::Full, &opts(2)).unwrap();
        let want = {
            let mut v = vec![label(&cycle(5).unwrap()), label(&star(5).unwrap())];
            v.sort();
            v
        };
        assert_eq!(r.spex_graphs, want);
        assert_eq!(r.spex_tie_break, TieBreak::Exact);
        // C_5 is the only graph with 5 edges, so K_{1,4} ∉ EX.
        assert_eq!(r.ex, 5);
        assert_eq!(r.consistent, Consistency::Inconsistent);
        r.validate(&fam).unwrap();
    }

    #[test]
    fn maximal_mode_is_value_only() {
        let k3 = [complete(3).unwrap()];
        let full = census(6, &k3, Mode::Full, &opts(2)).unwrap();
        let max = census(6, &k3, Mode::Maximal, &opts(2)).unwrap();
        assert_eq!(full.ex, max.ex);
        assert_eq!(full.spex.to_bits(), max.spex.to_bits());
        assert_eq!(max.consistent, Consistency::ValueOnly);
        assert!(!max.spex_witnesses_complete);
        assert_eq!(consistency_check(&max), Err(Error::ValueOnly));
        max.validate(&k3).unwrap();
    }

    #[test]
    fn records_round_trip_and_detect_tampering() {
        let k3 = [complete(3).unwrap()];
        let r = census(5, &k3, Mode::Full, &opts(1)).unwrap();
        let json = r.to_json();
        assert!(json.contains("\"consistent\": true"));
        assert!(!json.contains("timings"));
        let back: CensusRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let mut bad = r.clone();
        bad.ex = 7;
        assert!(matches!(bad.validate(&k3), Err(Error::Invalid(_))));
        let mut bad = r.clone();
        bad.ex_graphs = vec![label(&complete(5).unwrap())];
        assert!(bad.validate(&k3).is_err());
        let mut bad = r;
        bad.consistent = Consistency::Inconsistent;
        assert!(bad.validate(&k3).is_err());
    }

    #[test]
    fn byte_identical_across_workers() {
        let k4 = [complete(4).unwrap()];
        let a = census(7, &k4, Mode::Full, &opts(1)).unwrap().to_json();
        let b = census(7, &k4, Mode::Full, &opts(8)).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn modes_parse() {
        assert_eq!("full".parse::<Mode>().unwrap(), Mode::Full);
        assert_eq!("maximal".parse::<Mode>().unwrap(), Mode::Maximal);
        assert!("partial".parse::<Mode>().is_err());
    }
}
