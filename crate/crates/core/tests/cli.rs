use std::process::Command;

fn smithpml(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_smithpml")).args(args).output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_smith_check_passes() {
    let (ok, csv) = smithpml(&["verify-smith", "--draws", "4", "--samples", "5", "--check"]);
    assert!(ok);
    assert!(csv.starts_with("# smith v1:"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn modes_and_reflect_emit_csv() {
    let (ok, csv) = smithpml(&["modes", "--omega", "100,-50", "--k", "1"]);
    assert!(ok && csv.starts_with("# modes v1: mach_x=0.6667"));
    let (ok, csv) = smithpml(&["reflect", "--draws", "10", "--check"]);
    assert!(ok && csv.lines().count() == 12);
}

#[test]
fn config_round_trips_through_run() {
    let dir = tempfile::tempdir().unwrap();
    let (ok, toml) = smithpml(&["config"]);
    assert!(ok);
    let toml = toml.replace("horizon = 1000", "horizon = 20");
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, toml).unwrap();
    let snaps = dir.path().join("snaps");
    let (ok, csv) = smithpml(&[
        "run", "-c", cfg.to_str().unwrap(), "--n-delta", "8", "--snapshots", snaps.to_str().unwrap(), "--check",
    ]);
    assert!(ok);
    assert!(csv.starts_with("# probes v1"));
    assert_eq!(csv.lines().count(), 2 + 2 * 20);
    assert!(snaps.join("p_000020.snap").exists());
}

#[test]
fn bad_config_exits_with_error() {
    let (ok, _) = smithpml(&["run", "-c", "/nonexistent.toml"]);
    assert!(!ok);
}
