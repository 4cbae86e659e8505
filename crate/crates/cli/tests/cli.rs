use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpstokes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, String, Value) {
    let o = run(args);
    let s = stdout(&o);
    let v = serde_json::from_str(&s).unwrap_or_else(|e| panic!("{e}: {s}"));
    (o.status.code().unwrap(), s, v)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn stokes_k3_json() {
    let (code, text, v) = json(&["stokes", "--k", "3", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["matrix"],
        serde_json::json!([["1", "0", "0"], ["-3", "1", "0"], ["3", "-3", "1"]])
    );
    assert_eq!(v["k"], 3);
    assert_eq!(v["section"], "stokes");
    assert_eq!(text, golden("stokes_k3.json"));
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["generators", "--k", "4", "--format", "json"][..],
        &["invariant", "--k", "5", "--twisted", "--format", "json"],
        &["stokes", "--k", "6", "--format", "json"],
        &["chi", "--k", "4", "--format", "json"],
        &[
            "series", "--k", "3", "--terms", "12", "--s", "1/100", "--format", "json",
        ],
        &["mellin", "--k", "3", "--format", "json"],
        &["monodromy", "--k", "2", "--format", "json"],
        &["verify", "--k-min", "2", "--k-max", "3", "--format", "json"],
    ] {
        let (_, text, v) = json(args);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn schema_of_every_section() {
    for sub in [
        "generators",
        "invariant",
        "stokes",
        "chi",
        "series",
        "mellin",
        "monodromy",
    ] {
        let (code, _, v) = json(&[sub, "--k", "3", "--format", "json"]);
        assert_eq!(code, 0, "{sub}");
        assert_eq!(v["k"], 3);
        assert_eq!(v["section"], sub);
        let rows = v["matrix"].as_array().unwrap();
        assert!(
            rows.iter()
                .flat_map(|r| r.as_array().unwrap())
                .all(Value::is_string),
            "{sub}"
        );
        for id in v["identities"].as_array().unwrap() {
            assert!(
                id["name"].is_string() && id["paper_ref"].is_string() && id["pass"].is_boolean()
            );
        }
    }
}

#[test]
fn chi_golden_pins_convention() {
    let (_, text, v) = json(&["chi", "--k", "3", "--format", "json"]);
    assert_eq!(text, golden("chi_k3.json"));
    let conv = v["data"]["conventions"].as_array().unwrap();
    let holding: Vec<(&str, &str)> = conv
        .iter()
        .filter(|c| c["holds"] == true)
        .map(|c| {
            (
                c["rule"].as_str().unwrap(),
                c["direction"].as_str().unwrap(),
            )
        })
        .collect();
    assert_eq!(holding, [("standard", "left"), ("standard", "right")]);
    assert_eq!(
        v["data"]["frozen_convention"],
        serde_json::json!({"rule": "standard", "direction": "left"})
    );
}

#[test]
fn latex_and_text_goldens() {
    assert_eq!(
        stdout(&run(&["stokes", "--k", "2", "--format", "latex"])),
        golden("stokes_k2.tex")
    );
    assert_eq!(
        stdout(&run(&["mellin", "--k", "2", "--format", "text"])),
        golden("mellin_k2.txt")
    );
}

#[test]
fn transpose_flag() {
    let (_, _, v) = json(&["stokes", "--k", "3", "--transpose", "--format", "json"]);
    assert_eq!(
        v["matrix"],
        serde_json::json!([["1", "-3", "3"], ["0", "1", "-3"], ["0", "0", "1"]])
    );
    assert_eq!(v["data"]["transposed"], true);
}

#[test]
fn verify_range_passes_and_is_sorted() {
    let (code, _, v) = json(&["verify", "--k-min", "2", "--k-max", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let ks: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["k"].as_u64().unwrap())
        .collect();
    assert_eq!(ks, (2..=8).collect::<Vec<_>>());
    for d in v.as_array().unwrap() {
        for id in d["identities"].as_array().unwrap() {
            assert_eq!(id["pass"], true, "k={} {}", d["k"], id["name"]);
            assert_ne!(id["paper_ref"], "");
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["stokes", "--k", "1"][..],
        &["stokes", "--k", "x"],
        &["stokes"],
        &["verify", "--k-min", "5", "--k-max", "3"],
        &["monodromy", "--k", "3", "--tol", "0"],
        &["series", "--k", "3", "--s", "abc"],
        &["stokes", "--k", "3", "--format", "yaml"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["stokes", "--k", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 2"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("cpstokes-out-{}.json", std::process::id()));
    let o = run(&[
        "stokes",
        "--k",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, golden("stokes_k3.json"));
}

#[test]
fn series_evaluation_point() {
    let (_, _, v) = json(&[
        "series", "--k", "2", "--terms", "40", "--s", "1/8", "--format", "json",
    ]);
    let i0 = &v["data"]["i0"];
    let value = i0["value"].as_f64().unwrap();
    let bound = i0["tail_bound"].as_f64().unwrap();
    assert!((value - std::f64::consts::SQRT_2).abs() <= bound);
    let (_, _, v) = json(&["series", "--k", "3", "--s", "0.5", "--format", "json"]);
    assert_eq!(v["data"]["i0"]["radius_warning"], true);
    assert_eq!(v["data"]["i0"]["tail_bound"], Value::Null);
}

#[test]
fn monodromy_reports_errors() {
    let (code, _, v) = json(&[
        "monodromy",
        "--k",
        "3",
        "--tol",
        "1e-10",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert!(v["identities"]
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i["pass"] == true));
    for l in v["data"]["loops"].as_array().unwrap() {
        assert!(l["estimated_error"].as_f64().unwrap() > 0.0);
    }
}
