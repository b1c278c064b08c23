use std::fs;

use incmat::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["incmat"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{:?}: {}", args, err);
    out
}

#[test]
fn closed_formulas() {
    assert_eq!(ok(&["wilson", "--n", "6", "--r", "2", "--s", "1", "--char", "2"]), "5\n");
    assert_eq!(ok(&["wilson", "--n", "6", "--r", "2", "--s", "1", "--char", "0"]), "6\n");
    assert_eq!(ok(&["fy", "--n", "4", "--r", "2", "--s", "1", "--q", "2", "--char", "3"]), "14\n");
    assert_eq!(ok(&["good-count", "--n", "4", "--r", "2", "--q", "2"]), "20\n");
    assert_eq!(ok(&["specht-dim", "--n", "4", "--r", "2", "--q", "2"]), "20\n");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["fy", "--n", "4", "--r", "2", "--s", "1", "--q", "2", "--char", "2"]).0, 2);
    assert_eq!(call(&["wilson", "--n", "6"]).0, 2);
    assert_eq!(call(&["nonsense"]).0, 2);
    assert_eq!(call(&["good-count", "--n", "4", "--r", "2", "--q", "6"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn paths_listing() {
    let out = ok(&["paths", "--n", "4", "--r", "2"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("EESS {3,4} boxes=4 PLUS"));
    assert!(out.contains("ESES {2,4} boxes=3 MINUS"));
    assert!(out.contains("SSEE {1,2} boxes=0 OUTSIDE"));
}

#[test]
fn rank_with_removal_and_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let p = path.to_str().unwrap();
    ok(&["build", "--n", "6", "--r", "3", "--s", "2", "--field", "gf3", "--out", p]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("incmat 20 15 gf3\n"));
    assert_eq!(text.lines().count(), 1 + 20 * 3);
    assert_eq!(ok(&["rank", "--matrix", p]), ok(&["rank", "--n", "6", "--r", "3", "--s", "2", "--field", "gf3"]));

    let fam = dir.path().join("fam.txt");
    fs::write(&fam, "1,2,3\n# comment\n4,5,6\n").unwrap();
    let by_file = ok(&["rank", "--n", "6", "--r", "3", "--s", "1", "--remove", fam.to_str().unwrap()]);
    assert_eq!(by_file, "6\n");
    let q = ok(&["rank", "--mode", "q", "--n", "4", "--r", "2", "--s", "1", "--q", "2", "--field", "gf3", "--remove", "0,1,2"]);
    assert_eq!(q, "14\n");
}

#[test]
fn certificates() {
    let out = ok(&["sigma", "--n", "7", "--r", "3", "--remove", "0,5"]);
    assert_eq!(out.split_whitespace().count(), 7);
    let out = ok(&["gfind", "--n", "4", "--r", "2", "--q", "2", "--remove", "3"]);
    assert_eq!(out.lines().count(), 4);
    // three planes whose pivots cover all of [4]
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sub.txt");
    fs::write(&f, "1,2|\n3,4|0 0 0 0\n").unwrap();
    assert_eq!(ok(&["gfind", "--n", "4", "--r", "2", "--q", "2", "--remove", f.to_str().unwrap()]), "none\n");
}

#[test]
fn bier_full_rank() {
    assert_eq!(ok(&["bier", "--n", "6", "--r", "3", "--field", "gf2"]), "20 vectors in dimension 20, rank 20\n");
}

#[test]
fn json_reports_are_reproducible() {
    let args = [
        "resilience", "--mode", "q", "--n", "4", "--r", "2", "--s", "1", "--q", "2", "--field", "gf3,q0", "--sample",
        "20", "--max-size", "2", "--seed", "7", "--json", "-",
    ];
    let a = ok(&args);
    let b = ok(&args);
    assert_eq!(a, b);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    assert_eq!(ok(&threaded), a);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["summary"]["total"], 40);
    assert_eq!(v["summary"]["counterexamples"], 0);
    assert_eq!(v["cells"][0]["formula_rank"], 14);
    assert!(v["cells"][0]["ms"].is_null());
}

#[test]
fn csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = ok(&[
        "resilience", "--n", "6", "--r", "3", "--s", "1", "--field", "gf2", "--exhaustive", "1", "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.contains("21 families, 21 equal, 0 counterexamples"), "{}", out);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn outside_the_hypothesis_is_reported_not_failed() {
    // all three 1-subspaces of a 2-dimensional space removed from the lines of F_2^3
    let (code, out, _) = call(&[
        "resilience", "--mode", "q", "--n", "3", "--r", "1", "--s", "0", "--q", "2", "--remove", "0,1,2",
    ]);
    assert_eq!(code, 0, "{}", out);
}

#[test]
fn oversized_points_are_skipped() {
    let out = ok(&["resilience", "--n", "20", "--r", "10", "--s", "9", "--budget", "1000", "--exhaustive", "0"]);
    assert!(out.contains("skipped"), "{}", out);
}

#[test]
fn verify_quick() {
    let out = ok(&["verify", "--quick"]);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 6);
    assert_eq!(call(&["verify", "--only", "nope"]).0, 2);
}
