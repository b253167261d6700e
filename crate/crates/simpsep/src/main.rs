use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simpsep::{format, load_sset, parallel};
use simpsep_core::checks::{self, Report};
use simpsep_core::rational::parse_q;
use simpsep_core::separation::{self, Options, Setup};
use simpsep_core::{DeltaMor, GammaMor, MorphismKind, PosetCache, Q};

/// Exact separation certificates for points of thin geometric realizations.
#[derive(Parser)]
#[command(name = "simpsep", version)]
struct Cli {
    /// Random seed (SIMPSEP_SEED overrides it).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List morphisms [K] → [KP] of Δ, or [K] ⇒ [KP] of Γ′.
    Enum(EnumArgs),
    /// Run an exhaustive or sampled lemma check.
    Check(CheckArgs),
    /// Separate two points and write a certificate.
    Separate(SeparateArgs),
    /// Recompute and check a certificate.
    Verify(VerifyArgs),
    /// Load and validate a simplicial set.
    ValidateSset { sset: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Category {
    Delta,
    Gamma,
}

#[derive(Args)]
struct EnumArgs {
    kind: Category,
    k: usize,
    kp: usize,
    #[arg(long)]
    epi: bool,
    #[arg(long)]
    mono: bool,
    #[arg(long)]
    onto: bool,
    /// Also print the +i edges, the ≤ relation and ⊂-without-≤ pairs.
    #[arg(long)]
    poset: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Duality,
    Admitted1,
    Admitted2,
    Admitted3,
    Order,
    Degenlemma,
    Simpset,
    Uproperties,
    SeparationSets,
    Compat,
    Ratlp,
}

#[derive(Args)]
struct CheckArgs {
    lemma: Lemma,
    /// Largest domain degree (Γ′ checks).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Largest codomain degree (Γ′ checks).
    #[arg(long, default_value_t = 5)]
    kp: usize,
    #[arg(long, default_value = "delta1")]
    sset: String,
    /// N for uproperties; for degenlemma/simpset the largest N − n.
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long, default_value = "1/2")]
    eps: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Largest degree for compat.
    #[arg(long, default_value_t = 4)]
    kmax: usize,
    /// Random systems for ratlp.
    #[arg(long, default_value_t = 100)]
    systems: usize,
    /// Probes per infeasible system for ratlp.
    #[arg(long, default_value_t = 10_000)]
    probes: usize,
}

#[derive(Args)]
struct SeparateArgs {
    #[arg(long)]
    sset: String,
    /// First point, `cell:t0,t1,...` with rational coordinates.
    p1: String,
    p2: String,
    #[arg(long, short)]
    out: Option<String>,
    #[arg(long, default_value_t = separation::DEFAULT_DEPTH)]
    depth: u32,
    #[arg(long, default_value = "2")]
    spread: String,
    /// Random probes of U′∩V′ per degree after the search.
    #[arg(long, default_value_t = 0)]
    probes: usize,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    cert: String,
    #[arg(long, default_value_t = 0)]
    probes: usize,
    #[arg(long)]
    jobs: Option<usize>,
}

enum Fail {
    Usage(String),
    Failed(String),
}

impl From<simpsep::Error> for Fail {
    fn from(e: simpsep::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Fail {
    Fail::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match std::env::var("SIMPSEP_SEED") {
        Ok(v) => match v.trim().parse() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("error: SIMPSEP_SEED must be an unsigned integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => cli.seed,
    };
    let result = match cli.cmd {
        Cmd::Enum(a) => run_enum(a),
        Cmd::Check(a) => run_check(a, seed),
        Cmd::Separate(a) => run_separate(a, seed),
        Cmd::Verify(a) => run_verify(a, seed),
        Cmd::ValidateSset { sset } => run_validate(&sset),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Failed(m)) => {
            eprintln!("failed: {m}");
            ExitCode::from(1)
        }
    }
}

fn blocks(g: &GammaMor) -> String {
    let parts: Vec<String> = g.block_sets().iter().map(|b| format!("{{{}}}", b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect();
    parts.join(" ")
}

fn run_enum(a: EnumArgs) -> Result<(), Fail> {
    let mut out = std::io::stdout().lock();
    let w = |out: &mut std::io::StdoutLock, s: String| writeln!(out, "{s}").map_err(usage);
    match a.kind {
        Category::Delta => {
            if a.onto || a.poset || (a.epi && a.mono) {
                return Err(usage("delta takes at most one of --epi, --mono"));
            }
            let kind = if a.epi { MorphismKind::Epi } else if a.mono { MorphismKind::Mono } else { MorphismKind::All };
            let all = DeltaMor::enumerate(a.k, a.kp, kind);
            for d in &all {
                w(&mut out, format!("{:?}", d.images()))?;
            }
            w(&mut out, format!("count {}", all.len()))?;
        }
        Category::Gamma => {
            if a.epi || a.mono {
                return Err(usage("gamma takes --onto and --poset"));
            }
            if a.kp > 62 {
                return Err(usage("codomain degree must be at most 62"));
            }
            let all = GammaMor::enumerate(a.k, a.kp, a.onto);
            for g in &all {
                w(&mut out, blocks(g))?;
            }
            w(&mut out, format!("count {}", all.len()))?;
            if a.poset {
                let c = PosetCache::build(a.k, a.kp);
                let el = c.elements();
                for (x, y, i) in c.edges() {
                    w(&mut out, format!("edge +{i}: {} -> {}", blocks(&el[x]), blocks(&el[y])))?;
                }
                for x in 0..el.len() {
                    for y in 0..el.len() {
                        let le = c.leq_idx(x, y);
                        if x != y && le {
                            w(&mut out, format!("leq: {} <= {}", blocks(&el[x]), blocks(&el[y])))?;
                        }
                        if !le && el[x].subset_leq(&el[y]).map_err(usage)? {
                            w(&mut out, format!("subset-not-leq: {} ⊂ {}", blocks(&el[x]), blocks(&el[y])))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn print_report(r: &Report) {
    println!("check {}: {} cases, {} violations", r.name, r.cases, r.violation_count);
    for (class, cases, bad) in &r.breakdown {
        println!("  {class}: {cases} cases, {bad} violations");
    }
    for f in &r.findings {
        println!("  finding: {f}");
    }
    for v in &r.violations {
        println!("  violation: {v}");
    }
}

fn run_check(a: CheckArgs, seed: u64) -> Result<(), Fail> {
    let core = |e: simpsep_core::Error| Fail::Usage(e.to_string());
    let report = match a.lemma {
        Lemma::Duality => checks::duality(a.k, a.kp),
        Lemma::Admitted1 => checks::admitted1(a.k, a.kp).map_err(core)?,
        Lemma::Admitted2 => checks::admitted2(a.k, a.kp).map_err(core)?,
        Lemma::Admitted3 => checks::admitted3(a.k, a.kp).map_err(core)?,
        Lemma::Order => checks::order_strictness(a.k, a.kp, 0, 4).map_err(core)?,
        Lemma::Ratlp => checks::ratlp_oracle(a.systems, a.probes, seed).map_err(core)?,
        Lemma::Degenlemma | Lemma::Simpset | Lemma::Uproperties | Lemma::SeparationSets | Lemma::Compat => {
            let s = load_sset(&a.sset)?;
            match a.lemma {
                Lemma::Degenlemma => checks::degen_lemma(&s, a.big_n.unwrap_or(3)).map_err(core)?,
                Lemma::Simpset => checks::simpset(&s, a.big_n.unwrap_or(2)).map_err(core)?,
                Lemma::Uproperties => checks::u_properties(&s, a.big_n.unwrap_or(3)).map_err(core)?,
                Lemma::SeparationSets => checks::separation_sets(&s).map_err(core)?,
                _ => {
                    let eps = parse_q(&a.eps).map_err(core)?;
                    checks::compat(&s, &eps, a.kmax, a.samples, seed).map_err(core)?
                }
            }
        }
    };
    print_report(&report);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Fail::Failed(format!("{} has {} violations", report.name, report.violation_count)))
    }
}

fn jobs(j: Option<usize>) -> usize {
    j.unwrap_or_else(parallel::default_jobs).max(1)
}

fn probe_summary(setup: &Setup, count: usize, eta: &Q, seed: u64, jobs: usize) -> Result<(), Fail> {
    let reports = parallel::probe_all(setup, count, eta, seed, jobs).map_err(|e| Fail::Failed(e.to_string()))?;
    let mut common = 0;
    for r in &reports {
        println!("probe k={}: {} probes, {} in U′, {} in V′, {} in both", r.k, r.probes, r.in_u, r.in_v, r.common);
        common += r.common;
    }
    if common > 0 {
        return Err(Fail::Failed(format!("{common} probes lie in both neighborhoods")));
    }
    Ok(())
}

fn run_separate(a: SeparateArgs, seed: u64) -> Result<(), Fail> {
    let s = load_sset(&a.sset)?;
    let p1 = format::parse_point(&s, &a.p1)?;
    let p2 = format::parse_point(&s, &a.p2)?;
    let spread = parse_q(&a.spread).map_err(usage)?;
    let setup = Setup::new(&s, p1, p2, Options { depth: a.depth, spread }).map_err(usage)?;
    let j = jobs(a.jobs);
    let evidence = parallel::analyze(&setup, j).map_err(|e| Fail::Failed(e.to_string()))?;
    let cert = setup.assemble(evidence).map_err(|e| Fail::Failed(e.to_string()))?;
    let text = format::certificate_to_string(&cert);
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage(format!("{path}: {e}")))?;
            println!("branch {}, N = {}, kmax = {}, η = {}, certificate written to {path}", cert.branch.as_str(), cert.big_n, cert.kmax, cert.eta);
        }
        None => print!("{text}"),
    }
    if a.probes > 0 {
        probe_summary(&setup, a.probes, &cert.eta, seed, j)?;
    }
    Ok(())
}

fn run_verify(a: VerifyArgs, seed: u64) -> Result<(), Fail> {
    let text = std::fs::read_to_string(&a.cert).map_err(|e| usage(format!("{}: {e}", a.cert)))?;
    let cert = format::certificate_from_str(&text).map_err(|e| Fail::Failed(format!("unreadable certificate: {e}")))?;
    let j = jobs(a.jobs);
    let report = separation::verify_with(&cert, |setup| parallel::analyze(setup, j)).map_err(Fail::Failed)?;
    println!("certificate verified: {} degrees, {} LPs, {} shared simplices, η = {}", report.degrees, report.lps, report.shared, cert.eta);
    if a.probes > 0 {
        let opts = Options { depth: cert.depth, spread: cert.spread.clone() };
        let setup = Setup::new(&cert.sset, cert.inputs[0].clone(), cert.inputs[1].clone(), opts).map_err(|e| Fail::Failed(e.to_string()))?;
        probe_summary(&setup, a.probes, &cert.eta, seed, j)?;
    }
    Ok(())
}

fn run_validate(spec: &str) -> Result<(), Fail> {
    let s = load_sset(spec).map_err(|e| Fail::Failed(e.to_string()))?;
    println!("valid: dimension {}, cells per degree {:?}", s.dim(), s.cell_counts());
    Ok(())
}
