//! Exit-code and contract tests against the real binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_star-ks"))
}

#[test]
fn visibility_prints_the_exact_rational() {
    let out_dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["game", "visibility", "--d", "8", "--variant", "colored"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "285/301");
}

#[test]
fn tampered_kset_fails_with_exit_one() {
    let out_dir = tempfile::tempdir().unwrap();
    // export the golden set, tamper with one exponent, verify
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["kset", "export", "--n", "7", "-o", "kset.json"])
        .status()
        .unwrap();
    assert!(status.success());
    let path = out_dir.path().join("kset.json");
    let mut file: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let old = file["vectors"][2]["exponents"][0].as_u64().unwrap();
    file["vectors"][2]["exponents"][0] = serde_json::json!((old + 1) % 3);
    std::fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();

    let output = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["kset", "verify", "--file"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("FAIL"), "violations must be listed: {text}");
}

#[test]
fn usage_errors_exit_two() {
    let output = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    // malformed input file is also a usage-class error
    let out_dir = tempfile::tempdir().unwrap();
    let path = out_dir.path().join("broken.json");
    std::fs::write(&path, b"{ not json").unwrap();
    let output = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["kset", "verify", "--file"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn incomplete_certificate_exits_three() {
    let out_dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["bell", "certify", "--n", "7", "--max-saturating", "5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn pipeline_artifacts_chain_on_disk() {
    let out_dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["pipeline", "paper-n9"])
        .status()
        .unwrap();
    assert!(status.success());
    for name in [
        "k9-factorization.json",
        "kset-n9.json",
        "pipeline-paper-n9.cert.json",
    ] {
        assert!(out_dir.path().join(name).exists(), "missing artifact {name}");
    }
}

#[test]
fn kset_build_verify_roundtrip_n11() {
    let out_dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["kset", "build", "--n", "11"])
        .status()
        .unwrap();
    assert!(status.success());
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["kset", "verify", "--file"])
        .arg(out_dir.path().join("kset-n11.json"))
        .args(["--search", "--full-orthogonality"])
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn hadamard_build_convert_chain() {
    let out_dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let status = bin()
            .args(["--out-dir"])
            .arg(out_dir.path())
            .args(args)
            .status()
            .unwrap();
        assert!(status.success(), "failed: {args:?}");
    };
    run(&["hadamard", "build", "--kind", "jungnickel", "--q", "3", "-o", "d3.json"]);
    run(&["hadamard", "build", "--kind", "mult-table", "--q", "3", "-o", "t3.json"]);
    let d3 = out_dir.path().join("d3.json");
    let t3 = out_dir.path().join("t3.json");
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["hadamard", "build", "--kind", "kronecker", "--left"])
        .arg(&d3)
        .arg("--right")
        .arg(&t3)
        .args(["-o", "k18.json"])
        .status()
        .unwrap();
    assert!(status.success());
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["hadamard", "convert", "--file"])
        .arg(out_dir.path().join("k18.json"))
        .args(["-o", "s18.json"])
        .status()
        .unwrap();
    assert!(status.success());
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["hadamard", "verify", "--file"])
        .arg(out_dir.path().join("s18.json"))
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn design_chain_builds_j49() {
    let out_dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let status = bin()
            .args(["--out-dir"])
            .arg(out_dir.path())
            .args(args)
            .status()
            .unwrap();
        assert!(status.success(), "failed: {args:?}");
    };
    run(&["kset", "export", "--n", "7", "-o", "base7.json"]);
    run(&["design", "ag2", "--k", "7", "-o", "ag2-7.json"]);
    let base = out_dir.path().join("base7.json");
    let rbibd = out_dir.path().join("ag2-7.json");
    let status = bin()
        .args(["--out-dir"])
        .arg(out_dir.path())
        .args(["design", "recurse", "--base"])
        .arg(&base)
        .arg("--rbibd")
        .arg(&rbibd)
        .args(["-o", "kset-n49.json"])
        .status()
        .unwrap();
    assert!(status.success());
}
