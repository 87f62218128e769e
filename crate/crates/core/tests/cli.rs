use std::process::Command;

use phenylene::cli::{run, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("phenylene").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("phenylene-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn kf_of_linear_chain() {
    assert_eq!(call(&["kf", "--code", "111"]), (EXIT_OK, "123496015/93122\n".into(), String::new()));
    let (code, v) = json(&["kf", "--code", "n=5 w=1,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["kf"], "123496015/93122");
    assert_eq!(v["canonical"], "111");
    let (_, out, _) = call(&["kf", "--code", "w=111", "--approx"]);
    assert_eq!(out, "123496015/93122\t~1326.174427096\n");
}

#[test]
fn usage_errors() {
    for args in [
        &["kf", "--code", "3"][..],
        &["kf", "--code", "n=4 w=0,1,2"],
        &["kf"],
        &["frobnicate"],
        &["verify", "hexagon", "--r", "0"],
        &["verify", "hexagon", "--r", "1/0"],
        &["extrema", "--n", "10"],
        &["reduce", "--code", "13"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn conjecture_lists_helicene_class() {
    let (code, out, _) = call(&["verify", "conjecture", "--n", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS") && out.contains("min class {(0,0,0), (2,2,2)}"), "{out}");
    let (_, v) = json(&["verify", "conjecture", "--n", "5"]);
    assert_eq!(v["min_class"], serde_json::json!(["000", "222"]));
    assert_eq!(v["max_class"], serde_json::json!(["111"]));
    assert_eq!(v["pass"], true);
}

#[test]
fn extrema_csv() {
    let (code, out, _) = call(&["extrema", "--n", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,code,canonical,kf_num,kf_den,is_all_kink,is_min,is_max");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"4,11,11,1869410,2651,false,false,true"));
    let (_, with_approx, _) = call(&["extrema", "--n", "4", "--format", "csv", "--approx"]);
    assert!(with_approx.lines().next().unwrap().ends_with(",kf_approx"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "lemma4", "--samples", "10"][..],
        &["verify", "lemma5", "--n", "3", "--samples", "3"],
        &["verify", "lemma6", "--n", "4", "--samples", "3"],
        &["verify", "theorem1", "--n", "5"],
        &["verify", "hexagon", "--r", "1/2"],
        &["verify", "kink-flip", "--n", "5"],
    ] {
        let (code, v) = json(args);
        assert_eq!((code, &v["pass"]), (EXIT_OK, &serde_json::json!(true)), "{args:?}");
    }
}

#[test]
fn hexagon_json_is_checkable() {
    let (_, v) = json(&["verify", "hexagon", "--r", "1/10"]);
    assert_eq!(v["difference"], "-6/17");
    assert_eq!(v["closed_form"], v["difference"]);
}

#[test]
fn reduce_trace() {
    let (code, out, _) = call(&["reduce", "--n", "1", "--trace"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("delta-y") && out.contains("R1 = 1/4") && out.contains("R2 = 1/2"), "{out}");
    let (_, v) = json(&["reduce", "--n", "3", "--trace"]);
    assert_eq!(v["delta_y_steps"], 5);
    assert_eq!(v["replay_matches"], true);
    assert!(v["steps"].as_array().unwrap().len() > 5);
}

#[test]
fn edge_list_commands() {
    let path = temp_file("c4.txt", "0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
    let p = path.to_str().unwrap();
    assert_eq!(call(&["kf", "--edges", p]).1, "5\n");
    let (_, v) = json(&["matrix", "--edges", p]);
    assert_eq!(v["order"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(v["r"][0][1], "3/4");
    assert_eq!(v["r"][0][2], "1");
    assert!(call(&["export-dot", "--edges", p]).1.contains("0 -- 1 [label=\"1\"]"));
    let bad = temp_file("bad.txt", "0 1 x\n");
    assert_eq!(call(&["kf", "--edges", bad.to_str().unwrap()]).0, EXIT_USAGE);
    let split = temp_file("split.txt", "0 1 1\n2 3 1\n");
    assert_eq!(call(&["kf", "--edges", split.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn export_dot_for_chain() {
    let (code, out, _) = call(&["export-dot", "--code", "02"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph \"G02\""));
    assert!(out.contains("role=\"a1\""));
}

#[test]
fn enumerate_codes() {
    let (_, out, _) = call(&["enumerate", "--n", "4"]);
    assert_eq!(out.lines().count(), 9);
    let (_, v) = json(&["enumerate", "--n", "5", "--canonical"]);
    assert_eq!(v["count"], 10);
}

#[test]
fn binary_exit_codes_and_cap_env() {
    let bin = env!("CARGO_BIN_EXE_phenylene");
    let status = |args: &[&str], cap: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.args(args);
        match cap {
            Some(c) => cmd.env("PHENYLENE_CAP", c),
            None => cmd.env_remove("PHENYLENE_CAP"),
        };
        cmd.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(&["kf", "--code", "111"], None), EXIT_OK);
    assert_eq!(status(&["kf", "--code", "3"], None), EXIT_USAGE);
    assert_eq!(status(&["extrema", "--n", "5"], Some("10")), EXIT_USAGE);
    assert_eq!(status(&["extrema", "--n", "5"], Some("27")), EXIT_OK);
}
