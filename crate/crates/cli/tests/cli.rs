use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["cocycles"];
    argv.extend_from_slice(args);
    let code = cocycles_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct(dir: &Path, file: &str, args: &[&str]) -> String {
    let path = dir.join(file);
    let mut argv = vec!["construct"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["-o", path_str(&path)]);
    let (code, _, err) = run(&argv);
    assert_eq!(code, 0, "{err}");
    path_str(&path).to_string()
}

#[test]
fn sl2_has_five_cocycles_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = construct(dir.path(), "sl2.json", &["sl"]);
    let (code, out, _) = run(&["space", "z2comm", &sl2]);
    assert_eq!((code, out.as_str()), (0, "dim 5\n"));
    let (code, out, _) = run(&["space", "cyclic", &sl2]);
    assert_eq!((code, out.as_str()), (0, "dim 0\n"));
    let (code, out, _) = run(&["space", "ader-coadjoint", &sl2]);
    assert_eq!((code, out.as_str()), (0, "dim 5\n"));
    let (code, out, _) = run(&["space", "invariant", &sl2, "--basis"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("dim 1\nbasis 0:\n"), "{out}");
}

#[test]
fn space_json_carries_dimension_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = construct(dir.path(), "sl2.json", &["sl"]);
    let (code, out, _) = run(&["space", "z2comm", &sl2, "--json", "--basis"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 5);
    assert_eq!(v["kind"], "z2comm");
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert!(v["provenance"].is_string());
    assert_eq!(v["input_digests"].as_object().unwrap().len(), 1);
}

#[test]
fn verify_lemma_ad_single_case() {
    let (code, out, _) = run(&["verify", "lemma-ad", "--p", "5", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("lemma-ad [field=Fp:5, n=2]: pass"), "{out}");
    assert!(out.contains("measured dim_z2comm = 25"));
}

#[test]
fn lemma_ad_report_json() {
    let (code, out, _) = run(&["verify", "lemma-ad", "--p", "5", "--n", "1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["measured"]["dim_z2comm"], 5);
    assert_eq!(r["verdict"], "pass");
    assert!(r["expectations"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["provenance"].is_string() && e["met"] == true));
    assert!(v["tool_version"].is_string());
    assert!(!v["input_digests"].as_object().unwrap().is_empty());
}

#[test]
fn small_characteristic_needs_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["construct", "w1", "--p", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("--allow-small-char"), "{err}");
    let w = construct(
        dir.path(),
        "w11.json",
        &["w1", "--p", "3", "--allow-small-char"],
    );
    let (code, _, err) = run(&["space", "z2comm", "--field", "Fp:3", &w]);
    assert_eq!(code, 2);
    assert!(err.contains("--allow-small-char"), "{err}");
    let (code, out, _) = run(&[
        "space",
        "invariant",
        "--field",
        "Fp:3",
        "--allow-small-char",
        &w,
    ]);
    assert_eq!((code, out.as_str()), (0, "dim 1\n"));
    let (code, _, _) = run(&["construct", "sl", "--p", "2", "--allow-small-char"]);
    assert_eq!(code, 2);
}

#[test]
fn field_override_reduces_rational_constants() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = construct(dir.path(), "sl2.json", &["sl"]);
    let (code, out, _) = run(&["space", "z2comm", "--field", "Fp:7", &sl2]);
    assert_eq!((code, out.as_str()), (0, "dim 5\n"));
}

#[test]
fn check_reports_validation_failures() {
    let dir = tempfile::tempdir().unwrap();
    let good = construct(dir.path(), "h3.json", &["heisenberg3"]);
    let (code, out, _) = run(&["check", &good]);
    assert_eq!(code, 0);
    assert_eq!(out, "ok: dim 3 over Q, lie\n");

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"schema_version":1,"field":{"kind":"Q"},"dim":3,"basis_names":["a","b","c"],
        "brackets":[{"i":0,"j":1,"terms":[[2,"1"]]},{"i":1,"j":2,"terms":[[0,"1"]]},
        {"i":0,"j":2,"terms":[[0,"1"]]}],"flags":{"lie":true,"assoc_comm":false,"unit":null}}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["check", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("Jacobi"), "{err}");

    std::fs::write(&bad, "{ not json").unwrap();
    let (code, _, err) = run(&["check", path_str(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
    let (code, _, _) = run(&["space", "z2comm", path_str(&bad)]);
    assert_eq!(code, 2);
}

#[test]
fn tensor_and_extensions() {
    let dir = tempfile::tempdir().unwrap();
    let sl2 = construct(dir.path(), "sl2.json", &["sl", "--p", "5"]);
    let o1 = construct(dir.path(), "o1.json", &["divided-power", "--p", "5"]);
    let cur = dir.path().join("cur.json");
    let (code, _, err) = run(&["tensor", &sl2, &o1, "-o", path_str(&cur)]);
    assert_eq!(code, 0, "{err}");
    let (_, out, _) = run(&["space", "z2comm", path_str(&cur)]);
    assert_eq!(out, "dim 25\n");

    // D = K∂ given as a file; column j is the image of x^j
    let der = dir.path().join("d.json");
    let rows: Vec<Vec<String>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| if j == i + 1 { "1" } else { "0" }.to_string())
                .collect()
        })
        .collect();
    std::fs::write(
        &der,
        serde_json::json!({ "derivations": [rows] }).to_string(),
    )
    .unwrap();
    let ext = dir.path().join("ext.json");
    let (code, _, err) = run(&[
        "tensor",
        &sl2,
        &o1,
        "--extend-d",
        path_str(&der),
        "--central",
        "0",
        "-o",
        path_str(&ext),
    ]);
    assert_eq!(code, 0, "{err}");
    let (_, out, _) = run(&["check", path_str(&ext)]);
    assert!(out.starts_with("ok: dim 17 over Fp:5, lie"), "{out}");
    let (_, out, _) = run(&["space", "z2comm", path_str(&ext)]);
    assert_eq!(out, "dim 1\n");

    let (code, _, err) = run(&["tensor", &sl2, &o1, "--central", "7"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn construct_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["chevalley", "--type", "G2", "--p", "5"],
        vec!["w1-group", "--p", "7"],
        vec![
            "reduced-polynomial",
            "--p",
            "3",
            "--n",
            "2",
            "--allow-small-char",
        ],
        vec!["gl", "--n", "2"],
        vec!["abelian", "--n", "4"],
    ] {
        let (c1, a, _) = run(&[&["construct"][..], &args].concat());
        let (c2, b, _) = run(&[&["construct"][..], &args].concat());
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
        let f = dir.path().join("x.json");
        std::fs::write(&f, &a).unwrap();
        let mut check = vec!["check", path_str(&f)];
        if args.contains(&"--allow-small-char") {
            check.push("--allow-small-char");
        }
        let (code, _, err) = run(&check);
        assert_eq!(code, 0, "{args:?}: {err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "nope"]).0, 2);
    assert_eq!(run(&["construct", "nope"]).0, 2);
    assert_eq!(run(&["construct", "chevalley"]).0, 2);
    assert_eq!(
        run(&["construct", "sl", "--field", "Fp:5", "--p", "7"]).0,
        2
    );
    assert_eq!(run(&["space", "z2comm", "/nonexistent/x.json"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("COCYCLES_MAX_ENTRIES"));
}

#[test]
fn resource_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let sl3 = construct(dir.path(), "sl3.json", &["sl", "--n", "3"]);
    let out = Command::new(env!("CARGO_BIN_EXE_cocycles"))
        .args(["space", "z2comm", &sl3])
        .env("COCYCLES_MAX_ENTRIES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("COCYCLES_MAX_ENTRIES"));
}

#[test]
fn verify_checks_individually() {
    for check in [
        "exact-seq",
        "dichotomy",
        "deg5",
        "codim1",
        "yaya-yoyo",
        "char3-rank2",
    ] {
        let (code, out, err) = run(&["verify", check]);
        assert_eq!(code, 0, "{check}: {out}{err}");
        assert!(out.contains(" 0 fail"), "{out}");
    }
    let (code, out, _) = run(&["verify", "char3-rank2", "--type", "B2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("char3-rank2 [type=B2]"), "{out}");
}
