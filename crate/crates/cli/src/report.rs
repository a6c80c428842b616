//! Summary tables over census records.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use spexlab::census::{CensusRecord, Consistency, Mode};
use spexlab::constructions::hnpq;
use spexlab::criticality::{criticality_order, MatchingGoodReport};
use spexlab::decomposition::p_value;
use spexlab::{CanonicalLabel, Error, Graph};

/// Accepts a bare record or a `census` command envelope.
pub fn parse_record(text: &str) -> Result<CensusRecord, String> {
    #[derive(Deserialize)]
    struct Envelope {
        schema_version: u32,
        result: CensusRecord,
    }
    if let Ok(r) = serde_json::from_str::<CensusRecord>(text) {
        return Ok(r);
    }
    let env: Envelope = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if env.schema_version != crate::SCHEMA_VERSION {
        return Err(format!("unsupported schema version {}", env.schema_version));
    }
    Ok(env.result)
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub forbidden: Vec<CanonicalLabel>,
    pub n: usize,
    pub mode: Mode,
    pub ex: usize,
    pub ex_count: usize,
    #[serde(with = "spexlab::float17")]
    pub spex: f64,
    pub spex_count: usize,
    pub consistent: Consistency,
    /// Extremal graph predicted by the colour-critical construction, when
    /// the family is q-colour-critical.
    pub prediction: Option<String>,
    pub prediction_match: Option<bool>,
}

/// One row per record, ordered by (family, n, mode).
pub fn rows(records: &[CensusRecord]) -> Result<Vec<Row>, Error> {
    let mut orders: BTreeMap<Vec<CanonicalLabel>, Option<(usize, usize)>> = BTreeMap::new();
    let mut out = Vec::new();
    for r in records {
        let family: Vec<Graph> = r.forbidden.iter().map(|l| Graph::from_graph6(l.as_str())).collect::<Result<_, _>>()?;
        r.validate(&family)?;
        let pq = match orders.get(&r.forbidden) {
            Some(v) => *v,
            None => {
                let v = predicted_parameters(&family)?;
                orders.insert(r.forbidden.clone(), v);
                v
            }
        };
        let (prediction, prediction_match) = match pq {
            Some((p, q)) if r.n + 1 >= q + p => {
                let g = hnpq(r.n, p, q)?;
                let name = if q == 1 { format!("T_{p}({})", r.n) } else { format!("H({},{p},{q})", r.n) };
                (Some(name), Some(r.ex_graphs.contains(g.canonical_label())))
            }
            _ => (None, None),
        };
        out.push(Row {
            forbidden: r.forbidden.clone(),
            n: r.n,
            mode: r.mode,
            ex: r.ex,
            ex_count: r.ex_graphs.len(),
            spex: r.spex,
            spex_count: r.spex_graphs.len(),
            consistent: r.consistent,
            prediction,
            prediction_match,
        });
    }
    out.sort_by(|a, b| (&a.forbidden, a.n, a.mode).cmp(&(&b.forbidden, b.n, b.mode)));
    Ok(out)
}

/// (p, q) when the family is q-colour-critical with p ≥ 2.
fn predicted_parameters(family: &[Graph]) -> Result<Option<(usize, usize)>, Error> {
    let p = p_value(family)?;
    if p < 2 {
        return Ok(None);
    }
    Ok(criticality_order(family)?.map(|q| (p, q)))
}

fn consistency_word(c: Consistency) -> &'static str {
    match c {
        Consistency::Consistent => "true",
        Consistency::Inconsistent => "false",
        Consistency::ValueOnly => "value-only",
    }
}

pub fn render(rows: &[Row]) -> String {
    let header = [
        "forbidden", "n", "mode", "ex", "|EX|", "spex", "|SPEX|", "consistent", "prediction", "match",
    ];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let forbidden: Vec<&str> = r.forbidden.iter().map(|l| l.as_str()).collect();
        cells.push(vec![
            forbidden.join(" "),
            r.n.to_string(),
            r.mode.to_string(),
            r.ex.to_string(),
            r.ex_count.to_string(),
            format!("{:.9}", r.spex),
            r.spex_count.to_string(),
            consistency_word(r.consistent).to_string(),
            r.prediction.clone().unwrap_or_else(|| "-".into()),
            match r.prediction_match {
                Some(true) => "yes".into(),
                Some(false) => "no".into(),
                None => "-".into(),
            },
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", line.join("  ").trim_end());
    }
    s
}

pub fn verify_table(record: &CensusRecord, consistent: Option<bool>, mg: &MatchingGoodReport) -> String {
    let mut s = String::new();
    let forbidden: Vec<&str> = record.forbidden.iter().map(|l| l.as_str()).collect();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<22}{v}");
    };
    line("forbidden", forbidden.join(" "));
    line("n", record.n.to_string());
    line("mode", record.mode.to_string());
    line("ex", format!("{} ({} graphs)", record.ex, record.ex_graphs.len()));
    line("spex", format!("{:.12} ({} graphs)", record.spex, record.spex_graphs.len()));
    line(
        "SPEX in EX",
        match consistent {
            Some(true) => "yes".into(),
            Some(false) => "NO".into(),
            None => "value-only".into(),
        },
    );
    line("p, beta, gamma", format!("{}, {}, {}", mg.p, mg.beta, mg.gamma));
    line(
        "matching member",
        mg.smallest_matching.map_or("none".into(), |k| format!("M_{k}")),
    );
    line(
        "best split edits",
        mg.best
            .as_ref()
            .map_or("no split".into(), |b| format!("{} (apex {:?})", b.edits.distance, b.apex)),
    );
    line(
        "matching-good",
        format!("{} (budget {}, {})", if mg.pass { "pass" } else { "fail" }, mg.edit_budget, mg.scope),
    );
    s
}
