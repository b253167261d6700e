use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use simpsep::{format, load_sset, FIXTURE_NAMES};

fn simpsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simpsep")).args(args).env_remove("SIMPSEP_SEED").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

#[test]
fn enumeration_counts() {
    let o = simpsep(&["enum", "gamma", "1", "2", "--onto"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("count 2\n"));
    let o = simpsep(&["enum", "delta", "2", "1", "--epi"]);
    assert!(stdout(&o).ends_with("count 2\n"));
    let o = simpsep(&["enum", "delta", "1", "2"]);
    assert!(stdout(&o).ends_with("count 6\n"));
    let o = simpsep(&["enum", "gamma", "0", "4", "--poset"]);
    assert!(stdout(&o).contains("subset-not-leq: {0,4} ⊂ {0,2,4}"));
    assert_eq!(code(&simpsep(&["enum", "delta", "1", "2", "--onto"])), 2);
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&simpsep(&["check", "duality"])), 0);
    assert_eq!(code(&simpsep(&["check", "admitted3"])), 0);
    let o = simpsep(&["check", "admitted1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("some block with a gap"));
    assert_eq!(code(&simpsep(&["check", "degenlemma", "--sset", "boundary2"])), 0);
    assert_eq!(code(&simpsep(&["check", "compat", "--sset", "delta1", "--kmax", "2", "--samples", "20"])), 0);
    assert_eq!(code(&simpsep(&["check", "ratlp", "--systems", "10", "--probes", "100"])), 0);
    assert_eq!(code(&simpsep(&["check", "nonsense"])), 2);
    assert_eq!(code(&simpsep(&["check", "compat", "--eps", "0.5"])), 2);
}

#[test]
fn separate_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert_s = cert.to_str().unwrap();
    let o = simpsep(&["separate", "--sset", "delta1", "e01:1/2,1/2", "e01:1/4,3/4", "-o", cert_s, "--probes", "300"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("branch same-cell, N = 4, kmax = 18, η = 1/16"), "{out}");
    assert!(out.contains("probe k=18: 300 probes"));
    let o = simpsep(&["verify", cert_s]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("certificate verified: 19 degrees"));

    let text = std::fs::read_to_string(&cert).unwrap();
    let good = format::certificate_from_str(&text).unwrap();
    let bad = dir.path().join("bad.json");
    let mut c = good.clone();
    c.eta *= simpsep_core::rational::int(2);
    std::fs::write(&bad, format::certificate_to_string(&c)).unwrap();
    assert_eq!(code(&simpsep(&["verify", bad.to_str().unwrap()])), 1);
    let mut c = good.clone();
    c.evidence.iter_mut().find(|d| !d.types.is_empty()).unwrap().types.remove(0);
    std::fs::write(&bad, format::certificate_to_string(&c)).unwrap();
    assert_eq!(code(&simpsep(&["verify", bad.to_str().unwrap()])), 1);
    std::fs::write(&bad, "{\"version\": 1}").unwrap();
    assert_eq!(code(&simpsep(&["verify", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&simpsep(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn bad_points_are_usage_errors() {
    assert_eq!(code(&simpsep(&["separate", "--sset", "delta1", "e01:1/3,2/3", "e01:1/3,2/3"])), 2);
    // the same point in two presentations
    assert_eq!(code(&simpsep(&["separate", "--sset", "boundary2", "v0:1", "e01:1,0"])), 2);
    assert_eq!(code(&simpsep(&["separate", "--sset", "delta1", "e01:0.5,0.5", "e01:1/4,3/4"])), 2);
    assert_eq!(code(&simpsep(&["separate", "--sset", "delta1", "e01:1/2,1/3", "e01:1/4,3/4"])), 2);
    assert_eq!(code(&simpsep(&["separate", "--sset", "delta1", "x:1", "e01:1/4,3/4"])), 2);
}

#[test]
fn seed_controls_probes() {
    let run = |seed: Option<&str>, flag: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_simpsep"));
        cmd.args(["--seed", flag, "separate", "--sset", "delta1", "e01:1/2,1/2", "e01:1/4,3/4", "--probes", "200", "--jobs", "3"]);
        match seed {
            Some(s) => cmd.env("SIMPSEP_SEED", s),
            None => cmd.env_remove("SIMPSEP_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let a = run(Some("42"), "1");
    assert_eq!(a, run(Some("42"), "7"));
    assert_eq!(run(None, "42"), a);
    assert_ne!(run(None, "43"), a);
    let o = Command::new(env!("CARGO_BIN_EXE_simpsep")).args(["check", "duality"]).env("SIMPSEP_SEED", "x").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn fixtures_match_the_builders() {
    for name in FIXTURE_NAMES {
        let path = fixture(name);
        let from_file = load_sset(path.to_str().unwrap()).unwrap();
        assert_eq!(from_file, load_sset(name).unwrap(), "{name}");
        let o = simpsep(&["validate-sset", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    let text = std::fs::read_to_string(fixture("boundary2")).unwrap().replacen("\"v1\"", "\"v9\"", 1);
    std::fs::write(&broken, text).unwrap();
    assert_ne!(code(&simpsep(&["validate-sset", broken.to_str().unwrap()])), 0);
}
