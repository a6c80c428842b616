//! Command-line front end. [`run`] takes the argument list and two sinks and
//! returns the exit status, so the binary and the tests share one path.
//!
//! Exit statuses: 0 success, 1 failed verification, 2 usage or input
//! error, 3 capacity exceeded.

mod manifest;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spexlab::census::{self, Cache, CensusOptions, CensusRecord, Consistency, Mode};
use spexlab::constructions::parse_graph;
use spexlab::criticality::{self, CriticalityReport, MatchingGoodReport};
use spexlab::decomposition::{self, beta_gamma, b_family, smallest_matching_member};
use spexlab::spectral::{self, DEFAULT_TOL};
use spexlab::{CanonicalLabel, Error, Graph};

pub use manifest::{digest, RunManifest};

/// Version of every JSON document written by the tool.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "spexlab", version, about = "Extremal and spectral-extremal census of small H-free graphs")]
struct Cli {
    /// Worker threads for census and criticality searches.
    #[arg(long, global = true, env = "SPEXLAB_WORKERS")]
    workers: Option<usize>,
    /// Directory for cached census records and the run manifest log.
    #[arg(long, global = true, env = "SPEXLAB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build graphs from catalog terms or graph6 and print canonical graph6.
    Construct {
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Decomposition family and covering parameters.
    Decomp {
        #[command(flatten)]
        family: Family,
        /// Size of the empty block (defaults to the largest member order).
        #[arg(long)]
        t: Option<usize>,
    },
    /// q-colour-criticality of a family.
    Critical {
        #[command(flatten)]
        family: Family,
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        q: Option<usize>,
        /// Search for the least q that passes.
        #[arg(long)]
        order: bool,
    },
    /// Spectral radius, exact comparison and quotient diagnostics.
    Spectral {
        #[command(subcommand)]
        action: SpectralAction,
    },
    /// ex/EX and spex/SPEX for one family and order.
    Census {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Record wall-clock timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        /// Neither read nor write the cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Subset test SPEX ⊆ EX and the fixed-n matching-good check.
    Verify {
        #[arg(long = "forbid", required = true)]
        forbid: String,
        #[arg(long)]
        n: usize,
        /// Edge edits allowed between the near-Turán part and T_p.
        #[arg(long, default_value_t = 0)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
        /// Also fail when the matching-good check does not pass.
        #[arg(long)]
        strict: bool,
    },
    /// Summary table over census record files (default: the cache).
    Report {
        records: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Exit 1 when some row is inconsistent.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SpectralAction {
    /// ρ and the Perron vector.
    Radius {
        graph: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Exact order of ρ(G1) and ρ(G2).
    Compare {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// ρ(T_p(n)) ≥ 2e/n ≥ (p−1)n/p − p/(4n) and the edge bound.
    Chain {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Perron ratio between the clique block and a Turán part of H(n,p,q).
    Ratio {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args, Debug)]
struct Family {
    /// Forbidden graph (catalog term or graph6); repeat for a family.
    #[arg(long = "forbid", required = true)]
    forbid: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Maximal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Maximal => Mode::Maximal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Both,
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Capacity(_) => EXIT_CAPACITY,
            Error::Input(_) | Error::Graph6(_) | Error::Precondition(_) => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

/// What a subcommand produced: the text for stdout, the exit status, and
/// the canonical labels it read.
struct Output {
    text: String,
    status: i32,
    inputs: Vec<CanonicalLabel>,
}

type Outcome = Result<Output, Failure>;

/// Runs the tool on `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let started = Instant::now();
    let cache = match cli.cache_dir.as_ref().map(Cache::new).transpose() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAILED;
        }
    };
    let workers = cli.workers.filter(|&w| w > 0).unwrap_or_else(census::default_workers);
    let (name, result) = dispatch(&cli.command, workers, cache.as_ref());
    match result {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if let Some(cache) = &cache {
                let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
                let m = RunManifest::new(name, args, o.inputs, started.elapsed(), &o.text);
                if let Err(e) = cache.append_manifest(&m.to_line()) {
                    let _ = writeln!(err, "warning: manifest not written: {e}");
                }
            }
            o.status
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

fn dispatch(cmd: &Command, workers: usize, cache: Option<&Cache>) -> (&'static str, Outcome) {
    match cmd {
        Command::Construct { terms } => ("construct", construct(terms)),
        Command::Decomp { family, t } => ("decomp", decomp(&family.forbid, *t)),
        Command::Critical { family, q, order } => ("critical", critical(&family.forbid, *q, *order)),
        Command::Spectral { action } => ("spectral", spectral_cmd(action)),
        Command::Census {
            family,
            n,
            mode,
            tol,
            timings,
            no_cache,
        } => {
            let opts = CensusOptions {
                workers,
                tol: *tol,
                timings: *timings,
            };
            let cache = if *no_cache { None } else { cache };
            ("census", census_cmd(&family.forbid, *n, (*mode).into(), &opts, cache))
        }
        Command::Verify {
            forbid,
            n,
            budget,
            format,
            strict,
        } => ("verify", verify(forbid, *n, *budget, *format, *strict, workers, cache)),
        Command::Report { records, format, strict } => ("report", report_cmd(records, *format, *strict, cache)),
    }
}

fn parse_family(terms: &[String]) -> Result<Vec<Graph>, Failure> {
    terms
        .iter()
        .map(|t| {
            parse_graph(t).map_err(|e| Failure {
                status: EXIT_USAGE,
                message: format!("cannot read graph {t:?}: {e}"),
            })
        })
        .collect()
}

fn labels(gs: &[Graph]) -> Vec<CanonicalLabel> {
    gs.iter().map(|g| g.canonical_label().clone()).collect()
}

/// Wraps a result in the versioned envelope, pretty-printed with a final
/// newline.
fn envelope<T: Serialize>(command: &str, result: &T) -> String {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        schema_version: u32,
        command: &'a str,
        result: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        result,
    })
    .expect("outputs serialize");
    s.push('\n');
    s
}

fn ok(text: String, inputs: Vec<CanonicalLabel>) -> Outcome {
    Ok(Output {
        text,
        status: EXIT_OK,
        inputs,
    })
}

fn construct(terms: &[String]) -> Outcome {
    let graphs = parse_family(terms)?;
    let rows: Vec<Value> = terms
        .iter()
        .zip(&graphs)
        .map(|(t, g)| {
            json!({
                "term": t,
                "graph6": g.canonical_label(),
                "order": g.order(),
                "size": g.size(),
            })
        })
        .collect();
    ok(envelope("construct", &rows), labels(&graphs))
}

fn decomp(terms: &[String], t: Option<usize>) -> Outcome {
    let family = parse_family(terms)?;
    let df = decomposition::decomposition_family(&family, t)?;
    let (beta, gamma) = beta_gamma(&df);
    let result = json!({
        "p": df.p,
        "t": df.t_used,
        "members": df.labels(),
        "beta": beta,
        "gamma": gamma,
        "b_family": labels(&b_family(&df)),
        "smallest_matching": smallest_matching_member(&df),
    });
    ok(envelope("decomp", &result), labels(&family))
}

fn critical(terms: &[String], q: Option<usize>, order: bool) -> Outcome {
    let family = parse_family(terms)?;
    let report: Option<CriticalityReport> = if order {
        criticality::criticality_order_report(&family)?
    } else {
        Some(criticality::q_color_critical(&family, q.expect("clap requires q or --order"))?)
    };
    if let Some(r) = &report {
        r.validate(&family)?;
    }
    let result = match (&report, order) {
        (r, true) => json!({ "order": r.as_ref().map(|r| r.q), "report": r }),
        (Some(r), false) => serde_json::to_value(r).expect("reports serialize"),
        (None, false) => unreachable!(),
    };
    ok(envelope("critical", &result), labels(&family))
}

#[derive(Serialize)]
struct RadiusResult<'a> {
    graph6: &'a CanonicalLabel,
    profile: &'a spectral::SpectralProfile,
}

#[derive(Serialize)]
struct RatioResult {
    n: u64,
    p: u64,
    q: u64,
    #[serde(with = "spexlab::float17")]
    ratio: f64,
    #[serde(with = "spexlab::float17")]
    limit: f64,
    #[serde(with = "spexlab::float17")]
    deviation: f64,
}

fn spectral_cmd(action: &SpectralAction) -> Outcome {
    match action {
        SpectralAction::Radius { graph, tol } => {
            let c = parse_family(std::slice::from_ref(graph))?.remove(0).canonical();
            let profile = spectral::spectral_radius(&c, *tol)?;
            let text = envelope(
                "spectral",
                &RadiusResult {
                    graph6: c.canonical_label(),
                    profile: &profile,
                },
            );
            ok(text, vec![c.canonical_label().clone()])
        }
        SpectralAction::Compare { first, second, tol } => {
            let gs = parse_family(&[first.clone(), second.clone()])?;
            let ord = spectral::compare_radius_exact(&gs[0], &gs[1], *tol)?;
            let word = match ord {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            let result = json!({ "first": gs[0].canonical_label(), "second": gs[1].canonical_label(), "order": word });
            ok(envelope("spectral", &result), labels(&gs))
        }
        SpectralAction::Chain { n, p } => {
            let chain = spectral::rayleigh_chain_check(*n, *p)?;
            let status = if chain.holds() { EXIT_OK } else { EXIT_FAILED };
            Ok(Output {
                text: envelope("spectral", &chain),
                status,
                inputs: vec![],
            })
        }
        SpectralAction::Ratio { n, p, q } => {
            let ratio = spectral::perron_ratio_diagnostic(*n, *p, *q)?;
            let limit = *p as f64 / (*p as f64 - 1.0);
            let result = RatioResult {
                n: *n,
                p: *p,
                q: *q,
                ratio,
                limit,
                deviation: (ratio - limit).abs(),
            };
            ok(envelope("spectral", &result), vec![])
        }
    }
}

fn census_record(
    family: &[Graph],
    n: usize,
    mode: Mode,
    opts: &CensusOptions,
    cache: Option<&Cache>,
) -> Result<CensusRecord, Failure> {
    Ok(match cache {
        Some(c) if !opts.timings => c.census(n, family, mode, opts)?.0,
        _ => census::census(n, family, mode, opts)?,
    })
}

fn census_cmd(terms: &[String], n: usize, mode: Mode, opts: &CensusOptions, cache: Option<&Cache>) -> Outcome {
    let family = parse_family(terms)?;
    let record = census_record(&family, n, mode, opts, cache)?;
    let text = envelope("census", &record);
    ok(text, record.forbidden.clone())
}

#[derive(Serialize)]
struct VerifyResult<'a> {
    census: &'a CensusRecord,
    /// `null` when the census is value-only.
    consistent: Option<bool>,
    matching_good: &'a MatchingGoodReport,
}

fn verify(
    term: &str,
    n: usize,
    budget: usize,
    format: Format,
    strict: bool,
    workers: usize,
    cache: Option<&Cache>,
) -> Outcome {
    let h = parse_family(&[term.to_string()])?.remove(0);
    let family = std::slice::from_ref(&h);
    let mode = if n <= census::FULL_CAP { Mode::Full } else { Mode::Maximal };
    let opts = CensusOptions {
        workers,
        ..CensusOptions::default()
    };
    let record = census_record(family, n, mode, &opts, cache)?;
    let consistent = match census::consistency_check(&record) {
        Ok(b) => Some(b),
        Err(Error::ValueOnly) => None,
        Err(e) => return Err(e.into()),
    };
    let mg = criticality::matching_good_from_record(&h, &record, budget)?;
    let failed = consistent == Some(false) || (strict && !mg.pass);
    let mut text = String::new();
    if format != Format::Json {
        text.push_str(&report::verify_table(&record, consistent, &mg));
    }
    if format == Format::Both {
        text.push('\n');
    }
    if format != Format::Table {
        text.push_str(&envelope(
            "verify",
            &VerifyResult {
                census: &record,
                consistent,
                matching_good: &mg,
            },
        ));
    }
    Ok(Output {
        text,
        status: if failed { EXIT_FAILED } else { EXIT_OK },
        inputs: vec![h.canonical_label().clone()],
    })
}

fn report_cmd(paths: &[PathBuf], format: Format, strict: bool, cache: Option<&Cache>) -> Outcome {
    let mut files: Vec<PathBuf> = paths.to_vec();
    if files.is_empty() {
        if let Some(c) = cache {
            let entries = std::fs::read_dir(c.dir()).map_err(Error::from)?;
            for e in entries {
                let p = e.map_err(Error::from)?.path();
                let name = p.file_name().and_then(|s| s.to_str()).unwrap_or("");
                if name.starts_with("census-") && name.ends_with(".json") {
                    files.push(p);
                }
            }
        }
    }
    let mut records = Vec::new();
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(Error::from)?;
        records.push(report::parse_record(&text).map_err(|e| Failure {
            status: EXIT_USAGE,
            message: format!("{}: {e}", f.display()),
        })?);
    }
    let rows = report::rows(&records)?;
    let inconsistent = rows.iter().any(|r| r.consistent == Consistency::Inconsistent);
    let mut text = String::new();
    if format != Format::Json {
        text.push_str(&report::render(&rows));
    }
    if format == Format::Both {
        text.push('\n');
    }
    if format != Format::Table {
        text.push_str(&envelope("report", &rows));
    }
    let inputs = rows.iter().flat_map(|r| r.forbidden.clone()).collect();
    Ok(Output {
        text,
        status: if strict && inconsistent { EXIT_FAILED } else { EXIT_OK },
        inputs,
    })
}
