use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cymax::exactnum::field::rat;
use cymax::exactnum::QMatrix;
use cymax::intlin::to_q;
use cymax::isometry::catalog::catalog_order3;
use cymax::isometry::companion_cyclotomic;
use cymax::report::{Report, Verdict};
use cymax::sampling::{case_rng, BlockContainer};
use serde_json::{json, Value};

fn cymax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cymax")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn q_json(m: &QMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn hodge_table_text_and_json() {
    let o = cymax(&["hodge-table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k=6  r=0  h21=0  h11=84"));

    let a = cymax(&["hodge-table", "--format", "json"]);
    let b = cymax(&["hodge-table", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r.schema, "1");
    assert_eq!(r.command, "hodge-table");
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout(&a));
}

#[test]
fn classify_ends_with_allowed_orders() {
    let o = cymax(&["classify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.trim_end().lines().last().unwrap(), "allowed maximal orders: 1, 2, 3, 4, 6");
}

#[test]
fn classify_matrix_reports_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "phi9.json", &q_json(&to_q(&companion_cyclotomic(9))));
    let o = cymax(&["classify", "--matrix", path(&m), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let data = r.data.unwrap();
    assert_eq!(data["reason"], "TOO_MANY_ORBITS");
    assert_eq!(data["order"], 9);
    assert_eq!(data["distinct_eigenvalues"], 6);
}

#[test]
fn corrupted_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "[[1, 0],\n [0, ").unwrap();
    let o = cymax(&["classify", "--matrix", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");

    let o = cymax(&["classify", "--matrix", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(cymax(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(cymax(&["pipeline", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn verify_isometry_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let iso = catalog_order3(3).unwrap();
    let m = write(dir.path(), "m.json", &q_json(&to_q(iso.matrix())));
    let o = cymax(&["verify-isometry", "--lattice", "K3", "--matrix", path(&m), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.data.unwrap()["eigenspace_signatures"]["3,2"], "(1,3,0)");

    let both = write(dir.path(), "iso.json", &json!({"lattice": "U", "matrix": [[0, 1], [1, 0]]}));
    assert_eq!(cymax(&["verify-isometry", "--matrix", path(&both)]).status.code(), Some(0));
    let bad = write(dir.path(), "bad.json", &json!([[1, 1], [0, 1]]));
    assert_eq!(cymax(&["verify-isometry", "--lattice", "U", "--matrix", path(&bad)]).status.code(), Some(1));
}

#[test]
fn check_monodromy_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = case_rng(11, 0);
    let c = BlockContainer::new(&mut rng, 2);
    let cols: Vec<Value> = c.f2.columns().iter().map(|col| serde_json::to_value(col).unwrap()).collect();
    let f2 = write(dir.path(), "f2.json", &json!({ "columns": cols }));
    let g = write(dir.path(), "g.json", &q_json(&c.random_unipotent(&mut rng)));
    let form = write(dir.path(), "q.json", &q_json(&c.q));
    let o = cymax(&[
        "check-monodromy", "--f2", path(&f2), "--gens", path(&g), path(&g), "--form", path(&form), "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let d = r.data.unwrap();
    assert_eq!(d["blocks"], json!([true, true]));
    assert_eq!(d["even_dims"], true);
    assert_eq!(d["mum_impossible"], true);

    let swap = write(dir.path(), "swap.json", &q_json(&c.swap_element()));
    let o = cymax(&["check-monodromy", "--f2", path(&f2), "--gens", path(&swap), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let d = r.data.unwrap();
    assert_eq!(d["blocks"], json!([false]));
    assert_eq!(d["mum_impossible"], false);
    assert!(r.results.iter().any(|x| x.verdict == Verdict::NotApplicable));
}

#[test]
fn pipeline_with_explicit_period_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = cymax(&["pipeline", "--r", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    let d = r.data.unwrap();
    assert_eq!(d["piece_dims"], json!([1, 1, 1, 1]));

    // The same point scaled by 2 lies in the ball too.
    let iso = catalog_order3(1).unwrap();
    let pp = cymax::hodge::default_period_point(&iso).unwrap();
    let scaled: Vec<Value> = pp.omega().iter().map(|x| serde_json::to_value(x.scale(&rat(2))).unwrap()).collect();
    let w = write(dir.path(), "omega.json", &json!(scaled));
    assert_eq!(cymax(&["pipeline", "--r", "1", "--omega", path(&w)]).status.code(), Some(0));

    // The zero vector is not a period point: a failed check, not a parse error.
    let zero = write(dir.path(), "zero.json", &json!([0, 0]));
    assert_eq!(cymax(&["pipeline", "--r", "1", "--omega", path(&zero)]).status.code(), Some(1));
}

#[test]
fn paper_suite_is_deterministic() {
    let run = |seed: &str| cymax(&["paper-suite", "--samples", "4", "--seed", seed, "--format", "json"]);
    let (a, b, c) = (run("5"), run("5"), run("6"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let ra: Report = serde_json::from_slice(&a.stdout).unwrap();
    let rc: Report = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(ra.seed, Some(5));
    let pattern = |r: &Report| r.results.iter().map(|x| (x.name.clone(), x.verdict)).collect::<Vec<_>>();
    assert_eq!(pattern(&ra), pattern(&rc));
    assert!(ra.results.iter().all(|x| x.verdict == Verdict::Pass));
    assert!(ra.timing_ms.is_none());
    let timed = cymax(&["hodge-table", "--timing", "--format", "json"]);
    let rt: Report = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(rt.timing_ms.is_some());
}
