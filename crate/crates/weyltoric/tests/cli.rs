//! End-to-end tests for the command-line binary: golden text and JSON
//! fixtures, exit codes, and round-tripping the JSON output back through the
//! library types.

use std::process::{Command, Output};

use weyltoric::fan::weyl_chamber_fan;
use weyltoric::homology::IntPolynomial;
use weyltoric::moduli::CombinatorialType;
use weyltoric::rootsys::{Family, LatticePoint};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyltoric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("fixture {name}"))
}

fn assert_golden(args: &[&str], name: &str, code: i32) {
    let out = run(args);
    assert_eq!(stdout(&out), fixture(name), "stdout mismatch for {args:?}");
    assert_eq!(out.status.code(), Some(code), "exit code for {args:?}");
}

#[test]
fn golden_text_fixtures() {
    assert_golden(&["fan-stats", "B", "2"], "fan_stats_b2.txt", 0);
    assert_golden(&["fan-stats", "D", "3"], "fan_stats_d3.txt", 0);
    assert_golden(&["poincare", "B", "4"], "poincare_b4.txt", 0);
    assert_golden(
        &["poincare", "B", "6", "--check-all"],
        "poincare_b6_check.txt",
        0,
    );
    assert_golden(
        &["classify", "B", "1", "--data", "u1=0:1"],
        "classify_b1_data.txt",
        0,
    );
    assert_golden(
        &["classify", "C", "2", "--orbit", "ray:1/2(v1+v2)"],
        "classify_c2_orbit.txt",
        0,
    );
    assert_golden(
        &["oracle", "B", "1", "5", "--data", "u1=0:1"],
        "oracle_b1.txt",
        0,
    );
    assert_golden(
        &["oracle", "B", "1", "5", "--data", "u1=1:1"],
        "oracle_b1_generic.txt",
        0,
    );
    assert_golden(
        &["oracle", "D", "2", "3", "--orbit", "cone:1/2(v1+v2);1/2(v1-v2)"],
        "oracle_d2_z.txt",
        0,
    );
}

#[test]
fn invalid_data_reports_and_fails() {
    let out = run(&["classify", "B", "2", "--data", "b12=2:1"]);
    assert_eq!(stdout(&out), fixture("classify_b2_invalid.txt"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fan-stats", "B", "0"][..],
        &["fan-stats", "E", "3"],
        &["poincare", "D", "1"],
        &["oracle", "B", "3", "5"],
        &["oracle", "B", "1", "4"],
        &["classify", "B", "2", "--data", "u1=x"],
        &["classify", "D", "2"],
        &["nonsense"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "expected usage error for {args:?}");
    }
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn golden_json_fixtures() {
    for (args, name) in [
        (&["fan-stats", "B", "2", "--json"][..], "fan_stats_b2.json"),
        (&["poincare", "B", "3", "--json"], "poincare_b3.json"),
        (
            &["classify", "B", "1", "--data", "u1=0:1", "--json"],
            "classify_b1_data.json",
        ),
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0));
        let got: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json output");
        let want: serde_json::Value = serde_json::from_str(&fixture(name)).expect("json fixture");
        assert_eq!(got, want, "json mismatch for {args:?}");
    }
}

#[test]
fn fan_json_round_trips() {
    let out = run(&["fan-stats", "C", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();

    let fan = weyl_chamber_fan(Family::C, 2).unwrap();
    assert_eq!(v["lattice"].as_str().unwrap(), fan.lattice.to_string());

    // the emitted half-unit coordinate arrays rebuild exactly the fan's rays
    let mut rebuilt: Vec<LatticePoint> = v["ray_coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|coords| {
            let half: Vec<i64> = coords
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_i64().unwrap())
                .collect();
            LatticePoint::new(half)
        })
        .collect();
    rebuilt.sort();
    let mut rays = fan.rays.clone();
    rays.sort();
    assert_eq!(rebuilt, rays);
}

#[test]
fn polynomial_json_round_trips() {
    let out = run(&["poincare", "C", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coeffs: Vec<i64> = v["polynomial"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect();
    let poly = IntPolynomial::new(coeffs);
    assert_eq!(poly.to_string(), v["polynomial"]["display"].as_str().unwrap());
    assert_eq!(poly.eval(1), v["chi"].as_i64().unwrap());
    assert!(poly.is_palindromic(4));
}

#[test]
fn type_json_round_trips() {
    let out = run(&["classify", "C", "2", "--orbit", "ray:1/2(v1+v2)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let parts: Vec<Vec<i32>> = v["fiber"]["parts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            p.as_array()
                .unwrap()
                .iter()
                .map(|l| l.as_i64().unwrap() as i32)
                .collect()
        })
        .collect();
    let rebuilt = CombinatorialType::from_parts(parts).unwrap();
    let flags: Vec<String> = v["fiber"]["flags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap().to_string())
        .collect();
    assert_eq!(flags, vec!["nonreduced".to_string()]);
    let display = v["fiber"]["display"].as_str().unwrap();
    assert_eq!(format!("{rebuilt} [nonreduced]"), display);
}
