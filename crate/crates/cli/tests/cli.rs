use cashift_cli::{run_with, RunConfig};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cashift").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(err.is_empty(), "stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn normalize_ledrappier() {
    let (code, v) = json(&["normalize", "--p", "2", "--poly", "1+x1^-1+x2^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["phi"], "1+x1^-1");
    assert_eq!(v["result"]["transform"], "invert axis 2");
    assert_eq!(v["command"], "normalize");
    assert_eq!(v["config"]["d"], 2);
    assert!(v["version"].is_string());
}

#[test]
fn nonmixing_certificate_verdict() {
    let (code, v) = json(&[
        "nonmix-cert",
        "--p",
        "2",
        "--phi",
        "1+x1",
        "--r",
        "1",
        "--jmax",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "non-mixing-witnessed");
    for e in v["result"]["scan"]["entries"].as_array().unwrap() {
        assert_eq!(e["joint"], serde_json::json!({"zero": true}));
    }
    assert_eq!(v["result"]["scan"]["product"], serde_json::json!({"p_exp": 3}));
}

#[test]
fn hom_search_between_distinct_shifts() {
    let (code, v) = json(&[
        "hom-search",
        "--p",
        "2",
        "--phi",
        "1+x1",
        "--psi",
        "x1+x1^-1",
        "--shape",
        "(0,0);(0,1);(-1,1)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["summary"], serde_json::json!(["zero"]));
    assert_eq!(v["result"]["zero_only_expected"], true);
}

#[test]
fn hom_search_endomorphisms_are_linear() {
    let (code, v) = json(&[
        "hom-search",
        "--phi",
        "1+x1",
        "--shape",
        "(0,0);(1,0)",
        "--enumerator",
        "kernel",
    ]);
    assert_eq!(code, 0);
    let rules = v["result"]["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 4);
    assert!(rules
        .iter()
        .all(|r| r["additive"] == true && r["functional_equation"]["holds"] == true));
}

#[test]
fn measures_are_symbolic() {
    let (_, v) = json(&[
        "measure",
        "--phi",
        "1+x1",
        "--shape",
        "(0,0);(1,0)",
        "--values",
        "1,0",
    ]);
    assert_eq!(v["result"]["measure"], serde_json::json!({"p_exp": 2}));
    let (_, v) = json(&[
        "measure",
        "--phi",
        "1+x1^-1",
        "--shape",
        "(0,0);(1,1);(0,1)",
        "--values",
        "1,0,0",
    ]);
    assert_eq!(v["result"]["measure"], serde_json::json!({"zero": true}));
}

#[test]
fn check_verdicts_and_hint_errors() {
    let (code, _) = json(&[
        "horizontal-check",
        "--phi",
        "1+x1",
        "--shape",
        "(0,0);(1,0)",
        "--mmax",
        "8",
    ]);
    assert_eq!(code, 0);
    // three cells tied by the update rule: never independent, for any m
    let (code, v) = json(&[
        "horizontal-check",
        "--phi",
        "1+x1^-1",
        "--shape",
        "(0,0);(1,0)",
        "--values",
        "1,1",
        "--mmax",
        "4",
    ]);
    assert_eq!((code, &v["result"]["m0"]), (0, &serde_json::json!(1)));
    let (code, v) = json(&["nonmix-cert", "--phi", "1+x1", "--jmax", "2"]);
    assert_eq!(
        (code, &v["result"]["verdict"]),
        (0, &serde_json::json!("non-mixing-witnessed"))
    );
    let (code, _, err) = run(&[
        "aut",
        "--p",
        "2",
        "--d",
        "3",
        "--phi",
        "1+x1+x2",
        "--factors",
        "1+x1",
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["normalize"]).0, 2);
    assert_eq!(run(&["normalize", "--poly", "1+"]).0, 2);
    assert_eq!(run(&["normalize", "--p", "4", "--poly", "1+x1"]).0, 2);
    assert_eq!(
        run(&["language", "--phi", "1+x1", "--shape", "(0,0)", "--method", "nope"]).0,
        2
    );
    assert_eq!(run(&["factor", "--poly", "1+x1*x2"]).0, 2);
    assert_eq!(run(&["constants", "--phi", "1+x1", "--format", "pgm"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn evolve_text_and_pgm() {
    let (code, out, _) = run(&["evolve", "--phi", "1+x1", "--steps", "3", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1...\n11..\n1.1.\n1111\n");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.pgm");
    let path_s = path.to_str().unwrap();
    let (code, out, _) = run(&[
        "evolve", "--phi", "1+x1", "--steps", "1", "--format", "pgm", "--out", path_s,
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(
        std::fs::read(&path).unwrap(),
        b"P5 2 2 255\n\x00\xff\x00\x00".to_vec()
    );
}

#[test]
fn other_commands() {
    let (_, v) = json(&["factor", "--poly", "1+x1^2", "--p", "2"]);
    assert_eq!(v["result"]["factors"][0]["factor"], "1+x1");
    assert_eq!(v["result"]["factors"][0]["multiplicity"], 2);
    let (_, v) = json(&["collinear", "--poly", "1+x1^2*x2^2+x1^4*x2^4"]);
    assert_eq!(v["result"]["collinear"], true);
    assert_eq!(v["result"]["step"], 2);
    let (_, v) = json(&["constants", "--phi", "1+x1+x1^2", "--p", "2"]);
    assert_eq!(v["result"]["constants"], serde_json::json!([0, 1]));
    let (_, v) = json(&["dual-homs", "--phi", "1+x1", "--shape", "(0,0);(1,0)"]);
    assert_eq!(
        v["result"]["classes"],
        serde_json::json!(["0", "1", "x1", "1+x1"])
    );
    let (_, v) = json(&["language", "--phi", "1+x1", "--shape", "(0,0);(0,1);(-1,1)"]);
    assert_eq!(v["result"]["cardinality"], 4);
    let (code, v) = json(&["aut", "--phi", "1+x1+x1^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rank"], 2);
    let (code, v) = json(&["mixing-scan", "--phi", "1+x1^-1", "--dilations", "2,3,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["entries"][1]["equal"], true);
}

#[test]
fn reports_replay_byte_identically() {
    let cases: &[&[&str]] = &[
        &["nonmix-cert", "--phi", "1+x1", "--jmax", "3"],
        &["hom-search", "--phi", "1+x1+x1^2", "--shape", "(0,0);(1,0)"],
        &["mixing-scan", "--p", "3", "--phi", "1+x1+x1^-1", "--mmax", "9"],
        &[
            "evolve", "--p", "5", "--phi", "1+2*x1", "--values", "1,0,3", "--steps", "4",
        ],
        &["aut", "--p", "7", "--phi", "1+x1^3"],
    ];
    for args in cases {
        let (code, first, _) = run(args);
        let report: Value = serde_json::from_str(&first).unwrap();
        let cfg: RunConfig = serde_json::from_value(report["config"].clone()).unwrap();
        let argv = cfg.to_argv();
        let mut again = Vec::new();
        let code2 = run_with(argv.iter(), &mut again, &mut Vec::new());
        assert_eq!(code, code2);
        assert_eq!(first.as_bytes(), again.as_slice(), "replay of {args:?}");
    }
}
