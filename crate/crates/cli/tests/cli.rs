use std::process::Command as Process;

use clap::CommandFactory;
use realtype_cli::{run, Cli};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> realtype_cli::Outcome {
    run(std::iter::once("realtype").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = call(&a);
    assert!(out.stderr.is_empty(), "{args:?}: {}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

/// One invocation per subcommand with its expected exit code.
fn examples() -> Vec<(Vec<String>, i32)> {
    let f = fixture;
    vec![
        (vec!["verify-maps".into(), "--family".into(), "horn-retraction".into(), "--n".into(), "2".into(), "--k".into(), "0".into()], 0),
        (vec!["homology".into(), "--input".into(), f("torus1.json"), "--subdivide".into(), "1".into()], 0),
        (vec!["pi1".into(), "--model".into(), "curve:1,2".into(), "--surface".into(), "1,2".into()], 0),
        (vec!["covers".into(), "--input".into(), f("wedge2.json"), "--degree".into(), "2".into(), "--check-riemann".into()], 0),
        (vec!["homcount".into(), "--input".into(), f("torus1.json"), "--target".into(), "Z/3".into(), "--cohomology".into()], 0),
        (vec!["low-index".into(), "--group".into(), "free:2".into(), "--index".into(), "3".into()], 0),
        (vec!["fibration-check".into(), "--kan".into(), "circle".into()], 1),
        (vec!["nerve".into(), "--model".into(), "circle".into(), "--cover".into(), f("circle_arcs.json")], 0),
        (vec!["adjunction".into(), "--map".into(), f("rotate_circle.json"), "--then".into(), f("circle_into_triangle.json")], 0),
        (vec!["universal-cover".into(), "--model".into(), "sphere:2".into()], 0),
        (vec!["probe-profinite".into(), "--left".into(), "surface:1,0".into(), "--right".into(), "abelian:2".into(), "--targets".into(), "S3,D4".into()], 0),
        (vec!["probe-exact-seq".into(), "--total".into(), "abelian:2".into(), "--fiber".into(), "x1".into(), "--base".into(), "free:1".into(), "--projection".into(), "1,x1".into(), "--targets".into(), "Z/2,S3".into()], 0),
    ]
}

#[test]
fn every_subcommand_has_a_working_example() {
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    assert_eq!(names.len(), 12);
    let ex = examples();
    for name in &names {
        let (args, code) = ex.iter().find(|(a, _)| &a[0] == name).unwrap_or_else(|| panic!("no example for {name}"));
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, v) = json_of(&a);
        assert_eq!(got, *code, "{name}");
        assert_eq!(v["schema"], 1);
        assert_eq!(v["command"], name.as_str());
        assert_eq!(v["status"], if *code == 0 { "pass" } else { "fail" });
    }
}

#[test]
fn reports_are_deterministic() {
    for (args, _) in examples() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = call(&a).stdout;
        assert_eq!(first, call(&a).stdout, "{a:?}");
    }
    let seeded = ["verify-maps", "--family", "horn-retraction", "--n", "3", "--seed", "9", "--json"];
    assert_eq!(call(&seeded).stdout, call(&seeded).stdout);
    let other = ["verify-maps", "--family", "horn-retraction", "--n", "3", "--seed", "10", "--json"];
    assert_eq!(call(&other).code, 0);
}

#[test]
fn documented_examples() {
    let out = call(&["verify-maps", "--family", "horn-retraction", "--n", "2", "--k", "0", "--grid", "6"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("status: pass\n"));
    let out = call(&["homology", "--input", &fixture("torus1.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("H1 = Z^2"));
    let out = call(&["covers", "--input", &fixture("wedge2.json"), "--degree", "2", "--check-riemann"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("3 covers = 3 subgroup classes"));
}

#[test]
fn failures_carry_witnesses() {
    let (code, v) = json_of(&["fibration-check", "--kan", "delta:1"]);
    assert_eq!(code, 1);
    assert!(!v["report"]["failures"].as_array().unwrap().is_empty());
    let (code, v) = json_of(&["probe-profinite", "--left", "surface:1,0", "--right", "free:2", "--targets", "S3"]);
    assert_eq!(code, 1);
    assert_eq!(v["per_target"][0]["left"], 18);
    assert_eq!(v["per_target"][0]["right"], 36);
    // the projection of Z^2 onto its first factor does not kill x1
    let (code, v) = json_of(&[
        "probe-exact-seq", "--total", "abelian:2", "--fiber", "x2", "--base", "free:1", "--projection", "1,x1",
        "--targets", "Z/2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["per_target"][0]["exact"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    let bad: [&[&str]; 9] = [
        &[],
        &["bogus"],
        &["homology"],
        &["homology", "--model", "klein"],
        &["homology", "--model", "circle", "--input", "x.json"],
        &["homology", "--model", "circle", "--coeffs", "Q"],
        &["verify-maps", "--family", "horn-retraction", "--n", "2", "--k", "3"],
        &["covers", "--model", "circle", "--degree", "0"],
        &["homcount", "--group", "free:1", "--target", "Z/0"],
    ];
    for args in bad {
        let out = call(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty() && !out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_realtype");
    let ok = Process::new(bin).args(["homology", "--model", "torus:1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("H1 = Z^2"));
    let fail = Process::new(bin).args(["fibration-check", "--kan", "circle"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let usage = Process::new(bin).args(["homology"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
