use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaintab"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chaintab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn profile_command() {
    let half = r#"{"length":[1,1],"arc":[1,2]}"#;
    let chain = temp(&format!(r#"{{"cycles":[{half},{half},{half}]}}"#));
    let o = run(&["profile", path(&chain)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"genus\":3,\"torsion\":[2,2]}\n");

    let chain = temp(
        r#"{"cycles":[{"length":[1,1],"arc":[1,2]},{"length":[1,1],"arc":[1,3]},
           {"length":[1,1],"arc":"irrational"},{"length":[1,1],"arc":[2,5]}]}"#,
    );
    let o = run(&["profile", path(&chain)]);
    assert_eq!(stdout(&o), "{\"genus\":4,\"torsion\":[3,0,5]}\n");

    let chain = temp(r#"{"cycles":[{"length":[1,1],"arc":[0,1]}]}"#);
    let o = run(&["profile", path(&chain)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycles[0].arc"));
}

#[test]
fn validate_command() {
    let tab = temp(r#"{"genus":3,"rows":[[1,2],[2,3]]}"#);
    let ok = temp(r#"{"genus":3,"torsion":[2,0]}"#);
    let o = run(&["validate", path(&ok), path(&tab)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o), serde_json::json!({"valid": true}));

    let bad = temp(r#"{"genus":3,"torsion":[0,0]}"#);
    let o = run(&["validate", path(&bad), path(&tab)]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["rule"], "congruence");
    assert_eq!(v["violations"][0]["value"], 2);

    let unordered = temp(r#"{"genus":3,"rows":[[1,2],[2,2]]}"#);
    let o = run(&["validate", path(&ok), path(&unordered)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["violations"][0]["rule"], "row-increase");

    let ragged = temp(r#"{"genus":3,"rows":[[1,2],[3]]}"#);
    assert_eq!(run(&["validate", path(&ok), path(&ragged)]).status.code(), Some(2));
    let not_json = temp("[[1,2]");
    assert_eq!(run(&["validate", path(&ok), path(&not_json)]).status.code(), Some(2));
}

#[test]
fn search_command() {
    let chain = temp(r#"{"genus":3,"torsion":[2,0]}"#);
    let o = run(&["search", path(&chain), "--rows", "2", "--cols", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"genus\":3,\"rows\":[[1,2],[2,3]]}\n");

    let chain = temp(r#"{"genus":3,"torsion":[0,0]}"#);
    let o = run(&["search", path(&chain), "--rows", "2", "--cols", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "null\n");

    let chain = temp(r#"{"genus":4,"torsion":[0,0,0]}"#);
    let o = run(&["search", path(&chain), "--rows", "2", "--cols", "2", "--count"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "{\"count\":2}\n".to_string()));

    let big = temp(r#"{"genus":12,"torsion":[0,0,0,0,0,0,0,0,0,0,0]}"#);
    let o = run(&[
        "search",
        path(&big),
        "--rows",
        "3",
        "--cols",
        "3",
        "--count",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        run(&["search", path(&big), "--rows", "0", "--cols", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", path(&big), "--rows", "x", "--cols", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn witness_output_feeds_validate_and_reduce() {
    let chain = data("generic9.json");
    let o = run(&["search", chain.to_str().unwrap(), "--rows", "3", "--cols", "3"]);
    let witness = temp(&stdout(&o));
    assert_eq!(
        run(&["validate", chain.to_str().unwrap(), path(&witness)])
            .status
            .code(),
        Some(0)
    );
    let o = run(&["reduce", chain.to_str().unwrap(), path(&witness)]);
    assert_eq!(stdout(&o), "{\"genus\":9,\"rows\":[[1,2],[4,5],[6,7],[8,9]]}\n");
}

#[test]
fn gonality_and_clifford_commands() {
    let chain = temp(r#"{"genus":7,"torsion":[2,2,2,2,2,2]}"#);
    let o = run(&["gonality", path(&chain)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["gonality"], 2);
    assert_eq!(v["witness"]["rows"].as_array().unwrap().len(), 6);

    let o = run(&["clifford", data("generic9.json").to_str().unwrap()]);
    let v = json(&o);
    assert_eq!(v["clifford"], 4);
    assert_eq!(v["convention_applied"], false);
    assert_eq!(
        (v["witness"]["degree"].clone(), v["witness"]["rank"].clone()),
        (6.into(), 1.into())
    );

    let g3 = temp(r#"{"genus":3,"torsion":[0,0]}"#);
    let v = json(&run(&["clifford", path(&g3)]));
    assert_eq!(v["clifford"], "empty");
    assert_eq!(v["convention_value"], 1);
    assert_eq!(v["convention_applied"], true);
    assert!(v["witness"].is_null());

    let g2 = temp(r#"{"genus":2,"torsion":[0]}"#);
    assert_eq!(run(&["clifford", path(&g2)]).status.code(), Some(2));
    let g1 = temp(r#"{"genus":1,"torsion":[]}"#);
    assert_eq!(run(&["gonality", path(&g1)]).status.code(), Some(2));
}

#[test]
fn bn_table_command() {
    let chain = temp(r#"{"genus":4,"torsion":[0,0,0]}"#);
    let v = json(&run(&["bn-table", path(&chain), "--d-max", "3"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let find = |d: i64, r: i64| entries.iter().find(|e| e["degree"] == d && e["rank"] == r).unwrap()["exists"].clone();
    assert_eq!(find(3, 1), true);
    assert_eq!(find(2, 1), false);
}

#[test]
fn reduce_goldens_are_byte_exact() {
    for (chain, tableau, golden) in [
        ("generic9.json", "generic9_3x3.json", "reduce_b0_l2a.golden.json"),
        ("hyper5.json", "hyper5_3x3.json", "reduce_l1.golden.json"),
        ("hyper5.json", "hyper5_2x4.json", "reduce_transpose.golden.json"),
        ("mixed7.json", "mixed7_3x3.json", "reduce_advance_t2.golden.json"),
    ] {
        let o = run(&[
            "reduce",
            data(chain).to_str().unwrap(),
            data(tableau).to_str().unwrap(),
            "--trace",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let expected = std::fs::read_to_string(data(golden)).unwrap();
        assert_eq!(stdout(&o), expected, "{golden}");
    }
}

#[test]
fn reduce_rejects_bad_input() {
    let chain = temp(r#"{"genus":3,"torsion":[0,0]}"#);
    let tab = temp(r#"{"genus":3,"rows":[[1,2],[2,3]]}"#);
    assert_eq!(run(&["reduce", path(&chain), path(&tab)]).status.code(), Some(1));
    let row = temp(r#"{"genus":3,"rows":[[1,2,3]]}"#);
    assert_eq!(run(&["reduce", path(&chain), path(&row)]).status.code(), Some(1));
    let other_genus = temp(r#"{"genus":4,"rows":[[1,2],[3,4]]}"#);
    assert_eq!(
        run(&["reduce", path(&chain), path(&other_genus)]).status.code(),
        Some(2)
    );
}

#[test]
fn stdin_inputs() {
    let o = run_stdin(&["profile", "-"], r#"{"genus":4,"torsion":[3,0,5]}"#);
    assert_eq!(stdout(&o), "{\"genus\":4,\"torsion\":[3,0,5]}\n");
    let chain = temp(r#"{"genus":3,"torsion":[2,0]}"#);
    let o = run_stdin(&["validate", path(&chain), "-"], r#"{"genus":3,"rows":[[1,2],[2,3]]}"#);
    assert_eq!(o.status.code(), Some(0));
}

fn summary(o: &Output) -> serde_json::Value {
    let text = stdout(o);
    let last = text.lines().last().unwrap();
    serde_json::from_str::<serde_json::Value>(last).unwrap()["summary"].clone()
}

#[test]
fn verify_command() {
    let o = run(&[
        "verify",
        "--genus-min",
        "4",
        "--genus-max",
        "6",
        "--torsion-values",
        "0,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = summary(&o);
    assert_eq!(s["profiles"], 56);
    assert_eq!(s["failures"], 0);
    assert_eq!(stdout(&o).lines().count(), 57);

    let o = run(&[
        "verify",
        "--genus-min",
        "3",
        "--genus-max",
        "3",
        "--torsion-values",
        "0,2",
    ]);
    let s = summary(&o);
    assert_eq!(
        (s["empty_set_cases"].clone(), s["passes"].clone()),
        (2.into(), 2.into())
    );

    assert_eq!(
        run(&[
            "verify",
            "--genus-min",
            "2",
            "--genus-max",
            "4",
            "--torsion-values",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--genus-min", "4", "--genus-max", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "verify",
            "--genus-min",
            "4",
            "--genus-max",
            "4",
            "--torsion-values",
            "0",
            "--samples",
            "3"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn sampled_verify_is_byte_identical() {
    let args = [
        "verify",
        "--genus-min",
        "4",
        "--genus-max",
        "7",
        "--torsion-values",
        "0,2,3,5",
        "--samples",
        "5",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let mut wide = args.to_vec();
    wide.extend(["--jobs", "3"]);
    let b = run(&wide);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(summary(&a)["profiles"], 20);
}
