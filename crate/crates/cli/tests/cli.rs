use std::process::{Command, Output};

fn smdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smdiff")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_check_is_a_usage_error() {
    let o = smdiff(&["verify", "--check", "nosuch"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(smdiff(&["verify"]).status.code(), Some(64));
    assert_eq!(smdiff(&["bogus"]).status.code(), Some(64));
    assert_eq!(smdiff(&["verify", "--check", "star_discriminant", "--jobs", "0"]).status.code(), Some(64));
    assert_eq!(
        smdiff(&["verify", "--check", "star_discriminant", "--precision-bits", "1024", "--precision-cap", "512"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(smdiff(&["inspect", "scan", "--max-abs", "10", "--filter", "h <"]).status.code(), Some(64));
    assert_eq!(smdiff(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_discriminant_exits_65() {
    for args in [["inspect", "forms", "-5"], ["inspect", "classpoly", "7"], ["inspect", "eval", "-6"]] {
        let o = smdiff(&args);
        assert_eq!(o.status.code(), Some(65), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("invalid discriminant"));
    }
}

#[test]
fn classpoly_of_minus_15() {
    let o = smdiff(&["inspect", "classpoly", "-15"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "X^2 + 191025*X - 121287375");
}

#[test]
fn forms_of_minus_23() {
    let o = smdiff(&["inspect", "forms", "-23"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["(1, 1, 6)", "(2, -1, 3)", "(2, 1, 3)"]);
}

#[test]
fn dominant_value_at_minus_4() {
    let o = smdiff(&["inspect", "eval", "-4", "--dominant", "--precision-bits", "128"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    let mut fields = out.split_whitespace().skip(3);
    let mid: f64 = fields.next().unwrap().parse().unwrap();
    assert_eq!(fields.next(), Some("+/-"));
    let rad: f64 = fields.next().unwrap().parse().unwrap();
    assert!((mid - 1728.0).abs() <= rad + 1e-30, "{out}");
}

#[test]
fn eval_lists_every_modulus() {
    let o = smdiff(&["inspect", "eval", "-15", "--all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn scan_applies_filter() {
    let o = smdiff(&["inspect", "scan", "--max-abs", "1000", "--filter", "two_elementary && h >= 8"]);
    assert!(o.status.success());
    let deltas: Vec<i64> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().parse().unwrap()).collect();
    assert_eq!(deltas, [-420, -480, -660, -672, -840, -960]);
}

#[test]
fn scan_output_does_not_depend_on_jobs() {
    let run =
        |jobs: &str| stdout(&smdiff(&["inspect", "scan", "--max-abs", "3000", "--filter", "almost", "--jobs", jobs]));
    assert_eq!(run("1"), run("4"));
}

#[test]
fn report_schema_and_key_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = smdiff(&[
        "verify",
        "--check",
        "conductor_bound",
        "--check",
        "star_discriminant",
        "--report",
        path.to_str().unwrap(),
        "--cache-dir",
        dir.path().join("cache").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["version"], 1);
    assert!(json["config"].is_object());
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert_eq!(checks[0]["check_id"], "conductor_bound");
    assert_eq!(checks[1]["check_id"], "star_discriminant");
    for c in checks {
        assert_eq!(c["status"], "pass");
        for w in c["witnesses"].as_array().unwrap() {
            assert!(w.as_array().unwrap().iter().all(|x| x.is_i64()));
        }
    }

    let order = ["\"version\"", "\"checks\"", "\"config\""];
    let pos: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let check_keys =
        ["\"check_id\"", "\"status\"", "\"candidate_count\"", "\"witnesses\"", "\"precision_bits\"", "\"elapsed_ms\""];
    let first = &text[text.find("\"check_id\"").unwrap()..];
    let pos: Vec<usize> = check_keys.iter().map(|k| first.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn starved_precision_is_indeterminate() {
    let o = smdiff(&["verify", "--check", "threshold_catalog", "--precision-bits", "16", "--precision-cap", "16"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}
