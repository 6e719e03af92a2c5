use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_automorphic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_psl2z_weight_12() {
    let o = run(&["dim", "--group", "psl2z", "--weight", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["dim", "--group", "psl2z", "--weight", "13"][..],
        &["dim", "--group", "sl3z", "--weight", "4"],
        &[
            "eval", "--group", "psl2z", "--weight", "4", "--tau", "0.1-1i",
        ],
        &[
            "eval", "--group", "psl2z", "--weight", "4", "--tau", "garbage",
        ],
        &["basis", "--group", "psl2z", "--weight", "2"],
        &["verify", "--group", "nope"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_ledger_passes() {
    let o = run(&["verify", "--suite", "ledger"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("k=40 n in [2,64]"));
    assert!(out.contains("0 failed"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_json_rows_carry_pass_flags() {
    let o = run(&["verify", "--suite", "oracle", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|r| r["pass"] == true && r["suite"] == "oracle"));
}

#[test]
fn basis_json_matches_e4() {
    let o = run(&[
        "basis", "--group", "psl2z", "--weight", "4", "--terms", "10", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["d"], 1);
    let forms = v["forms"].as_array().unwrap();
    assert_eq!(forms.len(), 1);
    let terms = forms[0]["terms"].as_array().unwrap();
    assert_eq!(terms[0], serde_json::json!(["1", "1", 0]));
    assert_eq!(terms[1], serde_json::json!(["240", "1", 1]));
    assert!(stdout(&o).contains(r#""terms":[["1","1",0],["240","1",1],"#));
}

#[test]
fn series_json_reemits_identically() {
    let o = run(&[
        "basis", "--group", "gamma_2", "--weight", "6", "--terms", "12", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for form in v["forms"].as_array().unwrap() {
        let text = serde_json::to_string(form).unwrap();
        let series = automorphic::QSeries::from_json_str(&text).unwrap();
        assert_eq!(series.to_json_string(), text);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "all", "--k-max", "12"][..],
        &[
            "basis", "--group", "gamma0_2", "--weight", "8", "--format", "json",
        ],
        &["groups", "show", "gamma_2"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn eval_at_i_for_weight_4() {
    // E4(i) = 3 Gamma(1/4)^8 / (2 pi)^6
    let o = run(&[
        "eval", "--group", "psl2z", "--weight", "4", "--tau", "0+1i", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let re = v["value"][0].as_f64().unwrap();
    let im = v["value"][1].as_f64().unwrap();
    assert!((re - 1.4557628922687093).abs() < 1e-12, "{re}");
    assert!(im.abs() < 1e-12);
}

#[test]
fn eval_index_out_of_range() {
    let o = run(&[
        "eval", "--group", "psl2z", "--weight", "12", "--index", "2", "--tau", "0+1i",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn groups_list_and_show() {
    let o = run(&["groups", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["psl2z", "gamma0_2", "gamma_2"] {
        assert!(out.contains(name));
    }
    let o = run(&["groups", "show", "gamma0_2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "gamma0_2");
    assert_eq!(v["genus"], 0);
}

#[test]
fn large_terms_extend_the_hauptmodul() {
    let o = run(&[
        "basis", "--group", "psl2z", "--weight", "4", "--terms", "170", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["forms"][0]["prec"], 170);
}
