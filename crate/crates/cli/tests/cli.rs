use std::process::{Command, Output};

fn norm_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_norm-lab"))
        .args(args)
        .env_remove("NORMLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn group_info_s4() {
    let o = norm_lab(&["group", "info", "--builtin", "S4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("order: 24"), "{out}");
    assert!(out.contains("chief factor orders: [4, 3, 2]"), "{out}");
    assert!(out.contains("fitting length: 3"), "{out}");
}

#[test]
fn group_info_trivial_and_a5() {
    let out = stdout(&norm_lab(&["group", "info", "--builtin", "C1"]));
    assert!(out.contains("order: 1\n"), "{out}");
    assert!(out.contains("subgroups: 1\n"), "{out}");
    assert!(out.contains("chief factor orders: []"), "{out}");
    let out = stdout(&norm_lab(&["group", "info", "--builtin", "A5"]));
    assert!(out.contains("subgroups: 59\n"), "{out}");
}

#[test]
fn compute_examples() {
    let o = norm_lab(&["compute", "norm", "--builtin", "Q8", "--H", "1", "--F", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("norm: order 8\n"), "{}", stdout(&o));

    let o = norm_lab(&["compute", "hypercentre", "--builtin", "S3", "--pi", "{2}", "--F", "N"]);
    assert!(stdout(&o).starts_with("hypercentre: order 6\n"), "{}", stdout(&o));

    let o = norm_lab(&["compute", "residual", "--builtin", "S3", "--F", "A", "--emit-elements"]);
    let out = stdout(&o);
    assert!(out.starts_with("residual: order 3\n"), "{out}");
    assert!(out.contains("elements: [(), "), "{out}");
}

#[test]
fn unknown_group_exits_2() {
    let o = norm_lab(&["group", "info", "--builtin", "X9"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown built-in group \"X9\""), "{}", stderr(&o));
}

#[test]
fn bad_class_exits_2_with_position() {
    let o = norm_lab(&["compute", "residual", "--builtin", "S4", "--F", "N * Foo"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1:5"), "{}", stderr(&o));
}

#[test]
fn bad_prime_set_and_flags_exit_2() {
    assert_eq!(code(&norm_lab(&["compute", "hypercentre", "--builtin", "S4", "--F", "N", "--pi", "{4}"])), 2);
    assert_eq!(code(&norm_lab(&["compute", "frobnicate", "--builtin", "S4"])), 2);
    assert_eq!(code(&norm_lab(&["verify", "--props", "ThmZ"])), 2);
    assert_eq!(code(&norm_lab(&["verify", "--props", "ThmD", "--format", "xml"])), 2);
}

#[test]
fn budget_errors_exit_3() {
    let o = norm_lab(&["compute", "norm", "--builtin", "S4", "--F", "N", "--budget", "5"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert_eq!(code(&norm_lab(&["group", "info", "--builtin", "A5", "--cap", "10"])), 3);
}

#[test]
fn budget_inside_verify_is_a_skip() {
    let o = norm_lab(&["verify", "--builtin", "S4", "--props", "Lem2.3", "--budget", "5"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["skip"].as_u64().unwrap() > 0);
    for r in v["reports"].as_array().unwrap() {
        assert!(r["outcome"]["reason"].as_str().unwrap().starts_with("budget:"));
    }
}

#[test]
fn empty_selection_is_a_no_op() {
    let o = norm_lab(&["verify", "--props", ""]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
}

#[test]
fn remark_1_4_reproduces() {
    let o = norm_lab(&["verify", "--props", "Rem1.4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["summary"]["pass"], 1);
    assert_eq!(v["reports"][0]["group"], "A5");
    assert!(stderr(&o).contains("1 checks: 1 pass, 0 skip, 0 fail"));
}

#[test]
fn theorem_d_over_builtin_corpus_has_no_fail() {
    let o = norm_lab(&["verify", "--props", "ThmD", "--F", "U", "--pi", "P", "--builtin-corpus"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 40);
    for r in v["reports"].as_array().unwrap() {
        let status = r["outcome"]["status"].as_str().unwrap();
        if status == "skip" {
            let reason = r["outcome"]["reason"].as_str().unwrap();
            assert!(reason.starts_with("hypothesis:"), "{r}");
        }
    }
    let skipped: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["outcome"]["status"] == "skip")
        .map(|r| r["group"].as_str().unwrap())
        .collect();
    assert!(skipped.contains(&"A5"));
    assert!(!skipped.contains(&"S4"));
}

#[test]
fn formats_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let o = norm_lab(&["verify", "--props", "Rem1.5", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("proposition,group,group_id,params,outcome,detail\n"), "{csv}");
    assert!(csv.contains("Rem1.5,S3,"));

    let o = norm_lab(&["verify", "--props", "Lem2.1", "--group", "S3", "--format", "md"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("| S3 |"), "{}", stdout(&o));
}

#[test]
fn manifest_corpus_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("corpus.jsonl");
    std::fs::write(
        &manifest,
        concat!(
            "{\"schema_version\": 1, \"notes\": [\"small\"]}\n",
            "{\"name\": \"S3\", \"construction\": {\"perms\": {\"degree\": 3, \"gens\": [\"(1 2)\", \"(1 2 3)\"]}}}\n",
            "{\"name\": \"C6\", \"construction\": {\"named\": {\"family\": \"cyclic\", \"params\": [6]}}}\n",
        ),
    )
    .unwrap();
    let cache = dir.path().join("c");
    let args = ["verify", "--props", "Lem2.3", "--corpus", manifest.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap()];
    let cold = norm_lab(&args);
    assert_eq!(code(&cold), 0, "{}", stderr(&cold));
    assert!(cache.join("cache").read_dir().unwrap().count() == 2);
    let warm = norm_lab(&args);
    let (mut a, mut b) = (json(&cold), json(&warm));
    a["header"] = serde_json::Value::Null;
    b["header"] = serde_json::Value::Null;
    assert_eq!(a, b);
    let groups: Vec<&str> = a["reports"].as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    assert!(groups.contains(&"S3") && groups.contains(&"C6"));

    std::fs::write(&manifest, "{\"name\": \"S3\", \"construction\": {\"perms\": {\"degree\": 3, \"gens\": [\"(1 4)\"]}}}\n").unwrap();
    assert_eq!(code(&norm_lab(&["group", "info", "--corpus", manifest.to_str().unwrap(), "--group", "S3"])), 2);
}

#[test]
fn props_lists_registry() {
    let o = norm_lab(&["props"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for id in ["Rem1.4", "ThmA", "ThmE", "Lem2.12", "Cor4.5", "Prop3.8"] {
        assert!(out.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}
