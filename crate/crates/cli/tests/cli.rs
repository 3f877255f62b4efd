use std::process::Command as Process;

use blob_cli::{run, Cli, Outcome};
use blobalg::bgg::SignConvention;
use blobalg::cellmod::ModuleStore;
use blobalg::combinatorics::{AlgebraConfig, Bipartition};
use clap::Parser;
use exactla::BigRational;
use serde_json::{json, Value};

fn blob(args: &[&str]) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("blob").chain(args.iter().copied())).expect("valid flags");
    run(cli).expect("command runs")
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_blob"))
}

#[test]
fn simple_report_lists_every_basis_path() {
    let out = blob(&["simple", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8", "--json"]);
    assert!(out.ok);
    let r = &out.report;
    assert_eq!(r["schema"], 1);
    assert_eq!(r["dim"], 9);
    // Brute force: a path ending at (1,8) takes its single step 1 at one of
    // nine positions; none of them is excluded at this shape.
    let basis: Vec<&str> = r["basis"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let expected: Vec<String> = (0..9).map(|i| (0..9).map(|j| if i == j { '1' } else { '2' }).collect()).collect();
    assert_eq!(basis, expected);
    assert_eq!(r["dim_t"], json!({"-1": 2, "0": 5, "1": 2}));
}

#[test]
fn decomposition_row_over_the_dominating_class() {
    let out = blob(&["decomp", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8", "--json"]);
    assert!(out.ok);
    let column = out.report["column"].as_array().unwrap();
    let mut got: Vec<(String, Value)> =
        column.iter().map(|c| (c["shape"].as_str().unwrap().to_string(), c["value"].clone())).collect();
    got.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(
        got,
        vec![
            ("1,8".to_string(), json!({"0": 1})),
            ("2,7".to_string(), json!({"1": 1})),
            ("5,4".to_string(), json!({"2": 1})),
            ("6,3".to_string(), json!({"1": 1})),
        ]
    );
}

#[test]
fn complex_of_a_simple_cell_module_is_a_single_term() {
    // Δ(1,8) has dimension 9 = dim L(1,8), so nothing lies below it.
    let out = blob(&["bgg", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8", "--json"]);
    assert!(out.ok, "{}", out.text);
    assert_eq!(out.report["complex"]["homology"], json!([9]));
}

#[test]
fn alternating_complex_is_exact_for_a_long_resolution() {
    let out =
        blob(&["bgg", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "5,4", "--signs", "alternating", "--json"]);
    assert!(out.ok, "{}", out.text);
    let h = out.report["complex"]["homology"].as_array().unwrap();
    assert!(h.len() >= 3);
    assert!(h[1..].iter().all(|x| x == 0));
}

#[test]
fn wall_shape_gets_the_two_term_complex() {
    let out = blob(&["bgg", "--d", "6", "--e", "4", "--kappa", "0,2", "--lambda", "2,4", "--json"]);
    assert!(out.ok, "{}", out.text);
    assert!(out.report["complex"]["mu"].is_object());
}

#[test]
fn json_report_round_trips() {
    let out = blob(&["simple", "--d", "8", "--e", "3", "--kappa", "0,2", "--lambda", "3,5", "--json"]);
    let parsed: Value = serde_json::from_str(&out.rendered()).unwrap();
    assert_eq!(parsed, out.report);
    let lambda = parsed["lambda"].as_str().unwrap();
    let d = parsed["d"].to_string();
    let e = parsed["e"].to_string();
    let kappa = format!("{},{}", parsed["kappa"][0], parsed["kappa"][1]);
    let again = blob(&["simple", "--d", &d, "--e", &e, "--kappa", &kappa, "--lambda", lambda, "--json"]);
    assert_eq!(again.report, parsed);
}

#[test]
fn ascii_render_of_the_smallest_triangle() {
    let out = blob(&["render", "--d", "2", "--e", "4", "--kappa", "0,2", "--path", "12", "--format", "ascii"]);
    assert_eq!(out.rendered(), include_str!("golden/d2_path_12.txt"));
    assert_eq!(out.rendered().lines().count(), 3);
}

#[test]
fn svg_render_is_byte_stable() {
    let args = ["render", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8"];
    let first = blob(&args).rendered();
    assert_eq!(first, blob(&args).rendered());
    assert_eq!(first, include_str!("golden/initial_1_8.svg"));
    assert!(first.contains("stroke-dasharray"));
    assert!(first.contains("<polyline"));
}

#[test]
fn render_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let status = binary()
        .args(["render", "--d", "9", "--e", "4", "--kappa", "0,2", "--lambda", "1,8", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), include_str!("golden/initial_1_8.svg"));
}

#[test]
fn cache_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let cache = cache.to_str().unwrap();
    let base = ["gram", "--d", "8", "--e", "4", "--kappa", "0,2", "--lambda", "3,5", "--json"];
    let plain = blob(&base).report;
    let mut with_cache = base.to_vec();
    with_cache.extend(["--cache", cache]);
    let cold = blob(&with_cache).report;
    assert!(std::fs::metadata(cache).unwrap().len() > 0);
    let warm = blob(&with_cache).report;
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);

    let verify = ["verify", "--d-max", "5", "--e", "3,4", "--json"];
    let plain = blob(&verify).report;
    let mut cached = verify.to_vec();
    cached.extend(["--cache", cache]);
    assert_eq!(plain, blob(&cached).report);
    assert_eq!(plain, blob(&cached).report);
}

#[test]
fn damaged_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    std::fs::write(&cache, "not json").unwrap();
    let args = [
        "gram",
        "--d",
        "6",
        "--e",
        "3",
        "--kappa",
        "0,2",
        "--lambda",
        "2,4",
        "--json",
        "--cache",
        cache.to_str().unwrap(),
    ];
    let plain = blob(&args[..10]).report;
    assert_eq!(blob(&args).report, plain);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--d-max", "6", "--e", "2,3,4", "--json"];
    assert_eq!(blob(&args).rendered(), blob(&args).rendered());
}

#[test]
fn empty_bounds_pass_vacuously() {
    let out = blob(&["verify", "--d-max", "0", "--json"]);
    assert!(out.ok);
    assert_eq!(out.report["shapes"], 0);
}

#[test]
fn exit_codes() {
    let ok = binary().args(["simple", "--d", "4", "--e", "4", "--kappa", "0,2", "--lambda", "2,2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let usage = binary().args(["simple", "--d", "4"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let usage = binary().args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));

    // Branching over every removable node fails at (2,3): dim L = 4, sum 8.
    let fail = binary()
        .args(["branch", "--d", "5", "--e", "4", "--kappa", "0,2", "--lambda", "2,3", "--json"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["branching"]["dim"], 4);
    assert_eq!(report["branching"]["restricted_sum"], 8);

    let bad_shape =
        binary().args(["simple", "--d", "4", "--e", "4", "--kappa", "0,2", "--lambda", "2,3"]).output().unwrap();
    assert_eq!(bad_shape.status.code(), Some(1));
}

#[test]
fn corrupted_differential_sign_is_detected() {
    let cfg = AlgebraConfig::new(9, 4, (0, 2)).unwrap();
    let mut store = ModuleStore::new(cfg);
    let lambda = Bipartition::new(5, 4);
    let mut c = store.build_complex_with(&lambda, SignConvention::Alternating).unwrap();
    assert!(c.differentials.len() >= 2);
    assert!(c.square_failures().unwrap().is_empty());

    // Negate the rows of δ_1 landing in the first shape of C_1.
    let rows = c.terms[1].dims[0];
    let m = &mut c.differentials[1];
    let entries: Vec<(usize, usize, BigRational)> =
        m.iter().filter(|(r, _, _)| *r < rows).map(|(r, col, v)| (r, col, -v.clone())).collect();
    assert!(!entries.is_empty());
    for (r, col, v) in entries {
        m.set(r, col, v);
    }
    assert_eq!(c.square_failures().unwrap(), vec![0]);
}
