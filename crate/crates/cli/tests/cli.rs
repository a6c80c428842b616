use serde_json::Value;
use spexlab_cli::{run, EXIT_CAPACITY, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spexlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn census_triangle_five() {
    let (code, out, _) = invoke(&["census", "--forbid", "K3", "--n", "5", "--mode", "full"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["result"]["ex"], 6);
    assert_eq!(v["result"]["consistent"], true);
    // 17 significant digits in the float field.
    assert!(out.contains("\"spex\": 2.44948974278317"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = invoke(&["census", "--badflag"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Usage"));
    let (code, _, err) = invoke(&["construct", "not a graph!"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read graph"));
    assert_eq!(invoke(&[]).0, EXIT_USAGE);
}

#[test]
fn capacity_errors_exit_three() {
    let (code, _, err) = invoke(&["census", "--forbid", "K3", "--n", "9", "--no-cache"]);
    assert_eq!(code, EXIT_CAPACITY);
    assert!(err.contains("capacity"));
}

#[test]
fn decomp_bowtie() {
    // The bowtie F_2 in graph6.
    let (code, out, _) = invoke(&["decomp", "--forbid", "DK{"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v = json(&out);
    let r = &v["result"];
    let (_, m2, _) = invoke(&["construct", "M2", "S3"]);
    let m2 = json(&m2);
    let mut want: Vec<String> = m2["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["graph6"].as_str().unwrap().to_string())
        .collect();
    want.sort();
    let got: Vec<String> = r["members"].as_array().unwrap().iter().map(|m| m.as_str().unwrap().to_string()).collect();
    assert_eq!(got, want);
    assert_eq!(r["beta"], 1);
    assert_eq!(r["gamma"], 1);
}

#[test]
fn construct_prints_canonical_graph6() {
    let (code, out, _) = invoke(&["construct", "petersen", "kneser:t=5", "C5", "hnpq:n=12,p=2,q=3"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows[0]["graph6"], rows[1]["graph6"]);
    assert_eq!(rows[0]["size"], 15);
    assert_eq!(rows[3]["order"], 12);
}

#[test]
fn critical_order_and_q() {
    let (code, out, _) = invoke(&["critical", "--forbid", "petersen", "--order"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["order"], 3);
    let (code, out, _) = invoke(&["critical", "--forbid", "K3", "--q", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["verdict"], true);
    let (code, out, _) = invoke(&["critical", "--forbid", "friendship:k=2", "--order"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["order"], Value::Null);
    assert_eq!(invoke(&["critical", "--forbid", "K3"]).0, EXIT_USAGE);
}

#[test]
fn spectral_subcommands() {
    let (code, out, _) = invoke(&["spectral", "compare", "C4", "S5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["order"], "equal");
    let (_, out, _) = invoke(&["spectral", "compare", "C4", "S4"]);
    assert_eq!(json(&out)["result"]["order"], "greater");
    let (code, out, _) = invoke(&["spectral", "radius", "K2,3"]);
    assert_eq!(code, EXIT_OK);
    let rho = json(&out)["result"]["profile"]["rho"].as_f64().unwrap();
    assert!((rho - 6f64.sqrt()).abs() < 1e-9);
    let (code, out, _) = invoke(&["spectral", "chain", "--n", "100", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["rho_holds"], true);
    let (code, out, _) = invoke(&["spectral", "ratio", "--n", "10000", "--p", "2", "--q", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(json(&out)["result"]["deviation"].as_f64().unwrap() <= 0.01);
}

#[test]
fn verify_and_report_through_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for n in ["4", "5", "6"] {
        let (code, _, err) = invoke(&["--cache-dir", cache, "census", "--forbid", "K3", "--n", n]);
        assert_eq!(code, EXIT_OK, "{err}");
    }
    let (code, out, _) = invoke(&["--cache-dir", cache, "verify", "--forbid", "K3", "--n", "6", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["result"]["consistent"], true);
    assert_eq!(v["result"]["matching_good"]["pass"], true);
    assert_eq!(v["result"]["matching_good"]["scope"], "evidence at n");

    let (code, out, _) = invoke(&["--cache-dir", cache, "report"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    for (line, n) in lines[1..].iter().zip(4..) {
        assert!(line.contains(&format!("T_2({n})")), "{line}");
        assert!(line.trim_end().ends_with("yes"), "{line}");
    }
    // Every successful run left one manifest line with the output digest.
    let manifests = std::fs::read_to_string(dir.path().join("manifests.jsonl")).unwrap();
    let entries: Vec<Value> = manifests.lines().map(json).collect();
    assert_eq!(entries.len(), 5);
    assert_eq!(entries[4]["subcommand"], "report");
    assert_eq!(entries[4]["output_sha256"].as_str().unwrap(), spexlab_cli::digest(&out));
}

#[test]
fn report_on_nothing_is_an_empty_table() {
    let (code, out, _) = invoke(&["report"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn strict_report_fails_on_inconsistent_rows() {
    // {K_3, C_4}-free at n = 5: K_{1,4} ties C_5 spectrally but has fewer edges.
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = invoke(&["census", "--forbid", "K3", "--forbid", "C4", "--n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["consistent"], false);
    let file = dir.path().join("r.json");
    std::fs::write(&file, &out).unwrap();
    let path = file.to_str().unwrap();
    let (code, table, _) = invoke(&["report", path]);
    assert_eq!(code, EXIT_OK);
    assert!(table.contains("false"));
    assert_eq!(invoke(&["report", "--strict", path]).0, EXIT_FAILED);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let a = invoke(&["--workers", "1", "census", "--forbid", "K4", "--n", "6", "--no-cache"]).1;
    let b = invoke(&["--workers", "4", "census", "--forbid", "K4", "--n", "6", "--no-cache"]).1;
    assert_eq!(a, b);
}
