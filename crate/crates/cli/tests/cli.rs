use std::process::{Command, Output};

fn teslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = teslab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn tes_examples() {
    assert_eq!(stdout(&["tes", "--hooks", "1,1"]), "1 + q + t");
    assert_eq!(
        stdout(&["tes", "--hooks", "1,1,0", "--spec", "t=0"]),
        "1 + 2*q + q^2"
    );
    assert_eq!(
        stdout(&["tes", "--hooks", "2,0,3,1", "--spec", "q=t=1"]),
        "308"
    );
    assert_eq!(
        stdout(&["tes", "--hooks", "2,0,3,1", "--spec", "q=t=1", "--route", "closed"]),
        "308"
    );
    assert_eq!(
        stdout(&["tes", "--hooks", "1,1,0", "--spec", "t=0", "--route", "closed"]),
        "1 + 2*q + q^2"
    );
    assert_eq!(
        stdout(&["tes", "--hooks", "1,1", "--spec", "t=1", "--route", "closed"]),
        "2 + q"
    );
    assert_eq!(
        stdout(&["tes", "--hooks", "1,-1", "--route", "macdonald"]),
        stdout(&["tes", "--hooks", "1,-1"])
    );
}

#[test]
fn enumerate_examples() {
    assert_eq!(
        stdout(&["enumerate", "--hooks", "1,1", "--format", "count"]),
        "2"
    );
    assert_eq!(
        stdout(&["enumerate", "--hooks", "0,1", "--format", "count"]),
        "0"
    );
    assert_eq!(
        stdout(&[
            "enumerate",
            "--hooks",
            "1,1,1",
            "--permutational",
            "--format",
            "count"
        ]),
        "6"
    );
}

#[test]
fn hilb_examples() {
    assert_eq!(
        stdout(&["hilb", "--f", "e:1", "--n", "3"]),
        "3 + 3*q + 3*t + q^2 + q*t + t^2"
    );
    assert_eq!(
        stdout(&["hilb", "--f", "m:-1", "--n", "4"]),
        "-q^-3*t^-3 + 3*q^-2*t^-2 - 3*q^-1*t^-1 + 1"
    );
    assert_eq!(stdout(&["hilb", "--f", "e:0", "--n", "5", "--prime"]), "1");
    assert_eq!(
        stdout(&["hilb", "--f", "e:2", "--n", "3", "--target", "pn"]),
        "2 + q + t"
    );
}

#[test]
fn json_output_round_trips() {
    let line = stdout(&["tes", "--hooks", "2,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    let triples: Vec<(i32, i32, String)> = serde_json::from_value(v["poly"].clone()).unwrap();
    let p = teslab::LaurentPoly::from_triples(&triples).unwrap();
    assert_eq!(p, "q^2 + q*t + t^2 + q + t - 1".parse().unwrap());

    let lines = stdout(&["enumerate", "--hooks", "2,0"]);
    let mats: Vec<teslab::TeslerMatrix> = lines
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(mats.len(), 2);
    assert!(mats.iter().all(|u| u.hooks() == vec![2, 0]));
}

#[test]
fn verify_examples() {
    let out = teslab(&[
        "verify",
        "--suite",
        "thm-3-1",
        "--n-max",
        "4",
        "--entry-range",
        "-2..2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = teslab(&["verify", "--suite", "cor-5-1", "--n-max", "7"]);
    assert_eq!(out.status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("teslab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("all.json");
    let out = teslab(&[
        "verify",
        "--suite",
        "all",
        "--n-max",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: teslab::verify::Report =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.suites.len() >= 12);
    assert!(report.failures.is_empty());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(teslab(&["tes", "--hooks", "1,x"]).status.code(), Some(2));
    assert_eq!(
        teslab(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        teslab(&["verify", "--suite", "golden", "--entry-range", "2..1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        teslab(&["hilb", "--f", "p:2", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        teslab(&["tes", "--hooks", "1,1", "--route", "closed"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(teslab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn size_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_teslab"))
        .args(["tes", "--hooks", "1,1,1", "--route", "macdonald"])
        .env("TESLAB_NMAX", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 3"));
}
