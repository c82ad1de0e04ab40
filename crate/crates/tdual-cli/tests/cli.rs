// Drives the built `tdc` binary through pipes and checks outputs and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tdc(args: &[&str], stdin: &[u8]) -> Output {
    tdc_env(args, stdin, None)
}

fn tdc_env(args: &[&str], stdin: &[u8], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tdc"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    match seed {
        Some(s) => cmd.env("TDC_SEED", s),
        None => cmd.env_remove("TDC_SEED"),
    };
    let mut child = cmd.spawn().expect("tdc runs");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&o.stdout)))
}

fn gen(args: &[&str]) -> Vec<u8> {
    let mut a = vec!["gen-example"];
    a.extend_from_slice(args);
    let o = tdc(&a, b"");
    assert_eq!(o.status.code(), Some(0));
    o.stdout
}

#[test]
fn c_b_validates_from_stdin() {
    let o = tdc(&["validate", "-"], &gen(&["C_B", "--n", "2"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["status"], "pass");
}

#[test]
fn c_b_left_leg_has_only_b() {
    let o = tdc(&["leftleg", "-"], &gen(&["C_B", "--n", "2"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["type"], "TB1");
    assert_eq!(v["data"]["B"]["0,2"], serde_json::json!([[0, -1], [1, 0]]));
    for field in ["a", "m"] {
        for (_, val) in v["data"][field].as_object().unwrap() {
            assert!(val.as_array().unwrap().iter().all(|x| x == "0" || x == 0), "{} not zero", field);
        }
    }
    for (_, t) in v["data"]["tau"].as_object().unwrap() {
        assert_eq!(t["const"], "0");
    }
}

#[test]
fn sphere_example_is_obstructed() {
    let o = tdc(&["dualize", "-"], &gen(&["sphere-obstruction", "--n", "1"]));
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["status"], "obstruction");
    assert_eq!(v["locus"], "a_hat");
    assert_eq!(v["rank"], 1);
}

#[test]
fn zero_dualizes_to_zero() {
    let o = tdc(&["dualize", "-"], &gen(&["zero", "--n", "2"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["type"], "TDhalf");
    for (_, t) in v["data"]["t"].as_object().unwrap() {
        assert_eq!(t, "0");
    }
}

#[test]
fn dualize_then_leftleg_pipeline() {
    let dual = tdc(&["dualize", "-"], &gen(&["random-cone", "--n", "2", "--seed", "4"]));
    assert_eq!(dual.status.code(), Some(0));
    let ll = tdc(&["leftleg", "-"], &dual.stdout);
    assert_eq!(ll.status.code(), Some(0));
    assert_eq!(json(&ll)["type"], "TB1");
    assert_eq!(tdc(&["validate", "-"], &ll.stdout).status.code(), Some(0));
}

#[test]
fn c_b_is_not_polarizable() {
    let o = tdc(&["polarize", "-"], &gen(&["C_B", "--n", "2"]));
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["locus"], "polarization");
}

#[test]
fn broken_cocycle_names_the_failing_condition() {
    let mut v: Value = serde_json::from_slice(&gen(&["zero", "--n", "1", "--type", "TD"])).unwrap();
    v["data"]["t"]["0,1,2"] = Value::String("1/3".into());
    let o = tdc(&["validate", "-"], v.to_string().as_bytes());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["condition"], "t-cocycle");
    assert!(String::from_utf8_lossy(&o.stderr).contains("t-cocycle at ("));
}

#[test]
fn malformed_input_exits_3() {
    assert_eq!(tdc(&["validate", "-"], b"{not json").status.code(), Some(3));
    assert_eq!(tdc(&["validate", "-"], br#"{"type":"TD","n":1,"nerve":{"vertices":[0]},"data":{"x":{}}}"#).status.code(), Some(3));
    assert_eq!(tdc(&["validate", "/nonexistent/file.json"], b"").status.code(), Some(3));
    assert_eq!(tdc(&["frobnicate"], b"").status.code(), Some(3));
    assert_eq!(tdc(&["flip", "-"], &gen(&["C_B", "--n", "2"])).status.code(), Some(3));
}

#[test]
fn seed_comes_from_environment() {
    let run = |seed: Option<&str>| tdc_env(&["gen-example", "random-cone", "--n", "2"], b"", seed).stdout;
    assert_eq!(run(Some("11")), run(Some("11")));
    assert_ne!(run(Some("11")), run(Some("12")));
    let explicit = tdc_env(&["gen-example", "random-cone", "--n", "2", "--seed", "11"], b"", Some("99")).stdout;
    assert_eq!(explicit, run(Some("11")));
}

#[test]
fn output_file_and_trace() {
    let dir = std::env::temp_dir().join(format!("tdc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("dual.json");
    let input = gen(&["random-cone", "--n", "1", "--seed", "2"]);
    let o = tdc(&["dualize", "-", "-o", out.to_str().unwrap()], &input);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&out).unwrap();
    assert_eq!(written, tdc(&["dualize", "-"], &input).stdout);
    let traced = json(&tdc(&["dualize", "-", "--trace"], &input));
    assert_eq!(traced["trace"]["witness"]["type"], "GaugeTB1");
    assert!(traced["trace"]["eps_int"].is_object());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rank_and_info() {
    let o = json(&tdc(&["rank", "circle3", "--deg", "1", "--ring", "Z"], b""));
    assert_eq!(o["rank"], 1);
    let o = json(&tdc(&["rank", "cone", "--deg", "2"], b""));
    assert_eq!(o["rank"], 0);
    let o = json(&tdc(&["info", "TD", "--n", "3"], b""));
    assert_eq!(o["pi0"], "T^6");
    assert_eq!(o["fields"].as_array().unwrap().len(), 5);
}

#[test]
fn push_maps_compose_to_zero() {
    let td = gen(&["random-cone", "--n", "2", "--type", "TD", "--seed", "3"]);
    let half = tdc(&["push", "-", "--map", "i"], &td);
    assert_eq!(half.status.code(), Some(0));
    let so = json(&tdc(&["push", "-", "--map", "p"], &half.stdout));
    assert_eq!(so["type"], "SO");
    for (_, b) in so["data"]["B"].as_object().unwrap() {
        assert_eq!(b, &serde_json::json!([[0, 0], [0, 0]]));
    }
    let back = tdc(&["push", "-", "--map", "strip"], &half.stdout);
    assert_eq!(back.stdout, td);
}
