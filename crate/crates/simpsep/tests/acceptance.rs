// Acceptance suite: one line per criterion, then a single verdict.
// Run with `cargo test -p simpsep --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use simpsep::{format, load_sset, parallel};
use simpsep_core::checks::{self, Report};
use simpsep_core::rational::Q;
use simpsep_core::separation::{self, Options, Setup};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn seed() -> u64 {
    std::env::var("SIMPSEP_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed)
}

fn q(s: &str) -> Q {
    s.parse().unwrap()
}

fn summary(r: &Report) -> String {
    let mut out = format!("{} {}/{}", r.name, r.violation_count, r.cases);
    for (class, cases, bad) in &r.breakdown {
        out += &format!(" [{class}: {bad}/{cases}]");
    }
    if let Some(v) = r.violations.first() {
        out += &format!(" first: {v}");
    }
    out
}

fn reports(rs: &[Report], limit: Duration, start: Instant) -> Outcome {
    let elapsed = start.elapsed();
    let ok = rs.iter().all(Report::is_ok) && elapsed < limit;
    let parts: Vec<String> = rs.iter().map(summary).collect();
    Outcome { passed: ok, detail: format!("{} ({:.1?})", parts.join("; "), elapsed) }
}

fn duality() -> Outcome {
    let t = Instant::now();
    let r = checks::duality(2, 5);
    let enough = r.cases > 0;
    let mut o = reports(&[r], Duration::from_secs(5), t);
    o.passed &= enough;
    o
}

fn admitted() -> Outcome {
    let t = Instant::now();
    let rs = [checks::admitted1(2, 5).unwrap(), checks::admitted2(2, 5).unwrap(), checks::admitted3(2, 5).unwrap()];
    let total: usize = rs.iter().map(|r| r.cases).sum();
    let mut o = reports(&rs, Duration::from_secs(60), t);
    o.passed &= total >= 10_000;
    o.detail = format!("{total} cases; {}", o.detail);
    o
}

fn order() -> Outcome {
    let t = Instant::now();
    let r = checks::order_strictness(2, 5, 0, 4).unwrap();
    let strict: Vec<&String> = r.findings.iter().filter(|f| f.contains("but not ≤")).collect();
    let witness = strict.iter().find(|f| f.starts_with("[[0, 4]] ⊂ [[0, 2, 4]]")).or(strict.first()).map(|f| format!("{f} (of {})", strict.len()));
    let mut o = reports(&[r], Duration::from_secs(60), t);
    o.passed &= witness.is_some();
    o.detail = format!("witness {}; {}", witness.unwrap_or_else(|| "none".into()), o.detail);
    o
}

fn lemmas() -> Outcome {
    let t = Instant::now();
    let mut rs = Vec::new();
    for name in ["delta1", "delta2", "boundary2"] {
        let s = load_sset(name).unwrap();
        rs.push(checks::degen_lemma(&s, 3).unwrap());
        rs.push(checks::simpset(&s, 3).unwrap());
        rs.push(checks::separation_sets(&s).unwrap());
    }
    reports(&rs, Duration::from_secs(120), t)
}

fn u_properties() -> Outcome {
    let t = Instant::now();
    let rs: Vec<Report> = ["delta1", "boundary2"].iter().map(|n| checks::u_properties(&load_sset(n).unwrap(), 3).unwrap()).collect();
    reports(&rs, Duration::from_secs(120), t)
}

fn compat() -> Outcome {
    let t = Instant::now();
    let mut rs = Vec::new();
    for name in ["delta1", "boundary2", "delta2"] {
        let s = load_sset(name).unwrap();
        for eps in ["1/2", "1/4"] {
            let mut r = checks::compat(&s, &q(eps), 4, 200, seed()).unwrap();
            r.name = format!("compat {name} ε={eps}");
            rs.push(r);
        }
    }
    reports(&rs, Duration::from_secs(600), t)
}

fn separate(sset: &str, p1: &str, p2: &str, branch: &str) -> Result<String, String> {
    let s = load_sset(sset).map_err(|e| e.to_string())?;
    let a = format::parse_point(&s, p1).map_err(|e| e.to_string())?;
    let b = format::parse_point(&s, p2).map_err(|e| e.to_string())?;
    let jobs = parallel::default_jobs();
    let setup = Setup::new(&s, a, b, Options::default()).map_err(|e| e.to_string())?;
    let evidence = parallel::analyze(&setup, jobs).map_err(|e| e.to_string())?;
    let cert = setup.assemble(evidence).map_err(|e| e.to_string())?;
    if cert.branch.as_str() != branch || cert.kmax != 18 {
        return Err(format!("{sset}: branch {} with kmax {}", cert.branch.as_str(), cert.kmax));
    }
    let cert = format::certificate_from_str(&format::certificate_to_string(&cert)).map_err(|e| e.to_string())?;
    let v = separation::verify_with(&cert, |s| parallel::analyze(s, jobs))?;
    if v.degrees != 19 {
        return Err(format!("{sset}: {} degrees verified", v.degrees));
    }
    for side in 0..2 {
        if !setup.contains_own_point(side, &cert.eta).map_err(|e| e.to_string())? {
            return Err(format!("{sset}: input {} outside its neighborhood", side + 1));
        }
    }
    let probes = parallel::probe_all(&setup, 10_000, &cert.eta, seed(), jobs).map_err(|e| e.to_string())?;
    let common: usize = probes.iter().map(|p| p.common).sum();
    let (in_u, in_v): (usize, usize) = probes.iter().fold((0, 0), |(u, v), p| (u + p.in_u, v + p.in_v));
    if common > 0 || probes.iter().any(|p| p.probes != 10_000) {
        return Err(format!("{sset}: {common} probes in both neighborhoods"));
    }
    Ok(format!("{sset} {branch} η={} {} LPs, probes in U′ {in_u}, in V′ {in_v}, in both 0", cert.eta, v.lps))
}

fn end_to_end() -> Outcome {
    let t = Instant::now();
    let runs = [
        separate("boundary2", "e01:1/2,1/2", "e12:1/3,2/3", "distinct-cells"),
        separate("delta1", "e01:1/2,1/2", "e01:1/4,3/4", "same-cell"),
    ];
    let elapsed = t.elapsed();
    let passed = runs.iter().all(Result::is_ok) && elapsed < Duration::from_secs(600);
    let parts: Vec<String> = runs.into_iter().map(|r| r.unwrap_or_else(|e| format!("error: {e}"))).collect();
    Outcome { passed, detail: format!("{} ({elapsed:.1?})", parts.join("; ")) }
}

fn ratlp() -> Outcome {
    let t = Instant::now();
    let r = checks::ratlp_oracle(100, 10_000, seed()).unwrap();
    let found = r.findings.join(", ");
    let mut o = reports(&[r], Duration::from_secs(30), t);
    o.detail = format!("{found}; {}", o.detail);
    o
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("Δ/Γ′ duality", duality),
        ("±i lemmas", admitted),
        ("⊂ is weaker than ≤", order),
        ("degeneracy and simplex lemmas", lemmas),
        ("properties of U(σ) and U_σ", u_properties),
        ("compatibility of neighborhoods", compat),
        ("end-to-end separation", end_to_end),
        ("ratlp oracle", ratlp),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} {}: {} {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, name, o.detail);
        if !o.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
