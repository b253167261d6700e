//! Exhaustive and sampled verification of the combinatorial lemmas and the
//! properties of the neighborhoods, each producing a [`Report`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::admissible::{AdmissibleFamily, FamilyKind, UTables};
use crate::delta::{compose, DeltaMor, MorphismKind};
use crate::gamma::{hom_count, GammaMor, PosetCache};
use crate::geom::{make_admissible, BaryPoint};
use crate::rational::{int, Q};
use crate::ratlp::{feasible, feasible_with_order, LinSystem, Relation, Row};
use crate::realization::{check_compat_degen, check_compat_face, CompatReport, NbhdSystem};
use crate::sampling;
use crate::sset::{FiniteSSet, Simplex};
use crate::Result;

const KEPT: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub cases: usize,
    pub violation_count: usize,
    /// The first few violations.
    pub violations: Vec<String>,
    /// Findings that are not violations (e.g. witnesses found by a search).
    pub findings: Vec<String>,
    /// `(class, cases, violations)` for checks that split their range.
    pub breakdown: Vec<(String, usize, usize)>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn is_ok(&self) -> bool {
        self.violation_count == 0
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT {
                self.violations.push(what());
            }
        }
    }

    pub fn record_in(&mut self, class: &str, ok: bool, what: impl FnOnce() -> String) {
        let slot = match self.breakdown.iter().position(|(c, _, _)| c == class) {
            Some(p) => p,
            None => {
                self.breakdown.push((class.into(), 0, 0));
                self.breakdown.len() - 1
            }
        };
        self.breakdown[slot].1 += 1;
        self.breakdown[slot].2 += !ok as usize;
        self.record(ok, what);
    }

    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < KEPT {
                self.violations.push(v);
            }
        }
        self.findings.extend(other.findings);
    }

    fn absorb_compat(&mut self, tag: &str, other: CompatReport) {
        self.cases += other.cases;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < KEPT {
                self.violations.push(format!("{tag}: {v}"));
            }
        }
    }
}

fn has_gap(f: &GammaMor) -> bool {
    f.blocks().iter().any(|&b| b != 0 && (b >> b.trailing_zeros()) & ((b >> b.trailing_zeros()) + 1) != 0)
}

// Where the −i lemmas can fail: `#_f(i) ≥ 2` with a block that is not an interval.
fn minus_class(f: &GammaMor, g: &GammaMor, i: usize) -> &'static str {
    if f.count(i as isize) >= 2 && (has_gap(f) || has_gap(g)) {
        "#_f(i) ≥ 2, some block with a gap"
    } else {
        "#_f(i) = 0 or all blocks intervals"
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Epis `[k′] ↠ [k]` against onto morphisms `[k] ⇒ [k′]`: counts, brute-force
/// counts, and round trips of both conversions.
pub fn duality(kmax: usize, kpmax: usize) -> Report {
    let mut r = Report::new("duality");
    for k in 0..=kmax {
        for kp in k..=kpmax {
            let epis = DeltaMor::enumerate(kp, k, MorphismKind::Epi);
            let ontos = GammaMor::enumerate(k, kp, true);
            // labels in [k] ∪ {⊥} for every position of [k′]
            let mut brute_epi = 0u128;
            let mut brute_onto = 0u128;
            let total = (k + 2).pow(kp as u32 + 1);
            for code in 0..total {
                let mut c = code;
                let labels: Vec<usize> = (0..=kp).map(|_| { let d = c % (k + 2); c /= k + 2; d }).collect();
                if labels.iter().all(|&l| l <= k) && DeltaMor::new(k, labels.clone()).map(|m| m.is_epi()).unwrap_or(false) {
                    brute_epi += 1;
                }
                let mut blocks = alloc::vec![0u64; k + 1];
                for (p, &l) in labels.iter().enumerate() {
                    if l <= k {
                        blocks[l] |= 1 << p;
                    }
                }
                if labels.iter().all(|&l| l <= k) && GammaMor::new(kp, blocks).is_ok() {
                    brute_onto += 1;
                }
            }
            let b = binomial(kp, k);
            let counts = [epis.len() as u128, ontos.len() as u128, brute_epi, brute_onto, hom_count(k, kp, true)];
            r.record(counts.iter().all(|&c| c == b), || format!("k={k} k′={kp}: counts {counts:?}, binomial {b}"));
            for e in &epis {
                let ok = GammaMor::epi_to_onto(e).and_then(|g| g.onto_to_epi()).map(|back| back == *e).unwrap_or(false);
                r.record(ok, || format!("epi {e:?} does not round-trip"));
            }
            for g in &ontos {
                let ok = g.onto_to_epi().and_then(|e| GammaMor::epi_to_onto(&e)).map(|back| back == *g).unwrap_or(false);
                r.record(ok, || format!("onto {g:?} does not round-trip"));
            }
        }
    }
    r
}

/// `f ≤ g ⇒ f_{−i} ≤ g_{−i}` whenever `#_f(i) ≠ 1`.
pub fn admitted1(kmax: usize, kpmax: usize) -> Result<Report> {
    let mut r = Report::new("admitted1");
    for k in 0..=kmax {
        for kp in (k + 1).max(1)..=kpmax {
            let big = PosetCache::build(k, kp);
            let small = PosetCache::build(k, kp - 1);
            let el = big.elements();
            for (a, f) in el.iter().enumerate() {
                for i in 0..=kp {
                    let Some(fm) = f.minus(i)? else { continue };
                    for b in big.upper_indices(a) {
                        let g = &el[b];
                        let ok = match g.minus(i)? {
                            Some(gm) => small.leq(&fm, &gm)?,
                            None => false,
                        };
                        r.record_in(minus_class(f, g, i), ok, || format!("f={f:?} g={g:?} i={i}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// The four cases relating `f_{−i} ≤ g` to `f ≤ (δ_i)_*(g)^{±}`.
pub fn admitted2(kmax: usize, kpmax: usize) -> Result<Report> {
    let mut r = Report::new("admitted2");
    for k in 0..=kmax {
        for kp in (k + 1).max(1)..=kpmax {
            let big = PosetCache::build(k, kp);
            let small = PosetCache::build(k, kp - 1);
            for f in big.elements() {
                for i in 0..=kp {
                    let Some(fm) = f.minus(i)? else { continue };
                    let a = small.index_of(&fm).expect("f_{-i} lies in the smaller hom-set");
                    let d = DeltaMor::face(kp - 1, i)?;
                    for b in small.upper_indices(a) {
                        let g = &small.elements()[b];
                        let h = GammaMor::push_mono(&d, g)?;
                        let at_i = g.count(i as isize) > 0;
                        let before = g.count(i as isize - 1) > 0;
                        let le = |x: Option<GammaMor>| -> Result<bool> {
                            match x {
                                Some(x) => big.leq(f, &x),
                                None => Ok(false),
                            }
                        };
                        let plus_i = || if i < kp { h.plus_unchecked(i) } else { None };
                        let plus_prev = || if i >= 1 { h.plus_unchecked(i - 1) } else { None };
                        let ok = match (at_i, before) {
                            (false, false) => big.leq(f, &h)?,
                            (true, false) => le(plus_i())?,
                            (false, true) => le(plus_prev())?,
                            (true, true) => le(plus_prev())? || le(plus_i())?,
                        };
                        r.record_in(minus_class(f, g, i), ok, || format!("f={f:?} g={g:?} i={i}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `#_f(i) > 0` and `g ≥ (δ_i)_*(f)^{+i}` imply `g_{−i} ≥ f`.
pub fn admitted3(kmax: usize, kpmax: usize) -> Result<Report> {
    let mut r = Report::new("admitted3");
    for k in 0..=kmax {
        for kp in (k + 1).max(1)..=kpmax {
            let big = PosetCache::build(k, kp);
            let small = PosetCache::build(k, kp - 1);
            for f in small.elements() {
                for i in 0..kp {
                    if f.count(i as isize) == 0 {
                        continue;
                    }
                    let h = GammaMor::push_mono(&DeltaMor::face(kp - 1, i)?, f)?;
                    let Some(hp) = h.plus_unchecked(i) else {
                        r.record(false, || format!("(δ_{i})_*({f:?})^{{+{i}}} undefined"));
                        continue;
                    };
                    let a = big.index_of(&hp).expect("same hom-set");
                    for b in big.upper_indices(a) {
                        let g = &big.elements()[b];
                        let ok = match g.minus(i)? {
                            Some(gm) => small.leq(f, &gm)?,
                            None => false,
                        };
                        r.record(ok, || format!("f={f:?} g={g:?} i={i}"));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `≤` is antisymmetric and implies blockwise containment on every hom-set
/// in range; pairs with containment but not `≤` are listed as findings.
pub fn order_strictness(kmax: usize, kpmax: usize, witness_k: usize, witness_kp: usize) -> Result<Report> {
    let mut r = Report::new("order");
    for k in 0..=kmax {
        for kp in k..=kpmax {
            let c = PosetCache::build(k, kp);
            r.record(c.antisymmetry_violation().is_none(), || format!("≤ is not antisymmetric on [{k}] ⇒ [{kp}]"));
            let el = c.elements();
            for (a, f) in el.iter().enumerate() {
                for (b, g) in el.iter().enumerate() {
                    if c.leq_idx(a, b) {
                        r.record(f.subset_leq(g)?, || format!("{f:?} ≤ {g:?} without containment"));
                    }
                }
            }
        }
    }
    let c = PosetCache::build(witness_k, witness_kp);
    let el = c.elements();
    for (a, f) in el.iter().enumerate() {
        for (b, g) in el.iter().enumerate() {
            if f.subset_leq(g)? && !c.leq_idx(a, b) {
                r.findings.push(format!("{:?} ⊂ {:?} but not ≤", f.block_sets(), g.block_sets()));
            }
        }
    }
    Ok(r)
}

/// The three conditions of the degeneracy lemma agree for every
/// non-degenerate `x`, `N ≤ n + extra`, and epis `σ`, `τ` from `[N]`.
pub fn degen_lemma(sset: &FiniteSSet, extra: usize) -> Result<Report> {
    let mut r = Report::new("degenlemma");
    for x in sset.all_cells() {
        let xs = Simplex::nondegenerate(x);
        let n = x.dim;
        for big_n in n..=n + extra {
            for sigma in DeltaMor::enumerate(big_n, n, MorphismKind::Epi) {
                for m in 0..=big_n {
                    for tau in DeltaMor::enumerate(big_n, m, MorphismKind::Epi) {
                        let (a, b, c) = sset.degen_lemma_check(&xs, &sigma, &tau)?;
                        r.record(a == b && b == c, || format!("x={} σ={sigma:?} τ={tau:?}: ({a},{b},{c})", sset.cell_name(x)));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `σ^*(x) = τ^*(y)` only when `x = y` and `σ = τ`, for epis from `[N]`,
/// `max(n,m) ≤ N ≤ max(n,m) + extra`.
pub fn simpset(sset: &FiniteSSet, extra: usize) -> Result<Report> {
    let mut r = Report::new("simpset");
    let cells: Vec<_> = sset.all_cells().collect();
    for &x in &cells {
        for &y in &cells {
            let top = x.dim.max(y.dim);
            for big_n in top..=top + extra {
                let ss = DeltaMor::enumerate(big_n, x.dim, MorphismKind::Epi);
                let ts = DeltaMor::enumerate(big_n, y.dim, MorphismKind::Epi);
                for s in &ss {
                    let a = sset.apply(s, &Simplex::nondegenerate(x))?;
                    for t in &ts {
                        let b = sset.apply(t, &Simplex::nondegenerate(y))?;
                        let expect = x == y && s == t;
                        r.record((a == b) == expect, || format!("x={} y={} σ={s:?} τ={t:?}", sset.cell_name(x), sset.cell_name(y)));
                    }
                }
            }
        }
    }
    Ok(r)
}

fn refines(tau: &DeltaMor, sigma: &DeltaMor) -> bool {
    (0..tau.dom()).all(|i| tau.at(i) != tau.at(i + 1) || sigma.at(i) == sigma.at(i + 1))
}

/// Properties (a)–(e) of `U(σ)` for degrees `≤ N + 2` and properties
/// (i)–(iii) of the extended `U_σ` for degrees `≤ N`, for every
/// non-degenerate cell of degree `< N` and both family kinds.
pub fn u_properties(sset: &FiniteSSet, big_n: usize) -> Result<Report> {
    let mut r = Report::new("uproperties");
    for x in sset.all_cells() {
        if x.dim >= big_n {
            continue;
        }
        for kind in [FamilyKind::Singleton, FamilyKind::Complement] {
            let fam = AdmissibleFamily::build(sset, x, big_n, kind)?;
            let t = UTables::build(&fam, big_n + 2)?;
            u_properties_for(&t, &mut r)?;
        }
    }
    Ok(r)
}

fn u_properties_for(t: &UTables, r: &mut Report) -> Result<()> {
    let fam = t.family();
    let sset = fam.sset();
    let x = Simplex::nondegenerate(fam.x());
    let n = fam.n();
    let big_n = fam.big_n();
    let top = big_n + 2;
    let tag = |p: &str| format!("x={} N={big_n} {:?}: {p}", sset.cell_name(fam.x()), fam.kind());
    for k in n..=top {
        let level = t.level(k);
        for sigma in t.epis(k) {
            let u = t.u_of_epi(sigma)?;
            let sx = sset.apply(sigma, &x)?;
            r.record(u.contains(level.index_of(&sx).unwrap()), || tag(&format!("(a) σ={sigma:?}")));
            if k <= big_n {
                let ext = t.extended(sigma)?;
                r.record(u.is_subset(ext), || tag(&format!("(b) σ={sigma:?}")));
                r.record(ext.contains(level.index_of(&sx).unwrap()), || tag(&format!("(i) σ={sigma:?}")));
                // (ii) σ′ : [k′] ↠ [k] with k ≤ k′ ≤ N
                for kp in k..=big_n {
                    for sp in DeltaMor::enumerate(kp, k, MorphismKind::Epi) {
                        let target = t.extended(&compose(sigma, &sp)?)?;
                        let ok = ext.iter().all(|zi| {
                            let w = sset.apply(&sp, &level.simplices[zi]).unwrap();
                            target.contains(t.level(kp).index_of(&w).unwrap())
                        });
                        r.record(ok, || tag(&format!("(ii) σ={sigma:?} σ′={sp:?}")));
                    }
                }
                // (iii) τ : [k] ↠ [k′]
                for kp in 0..=k {
                    for tau in DeltaMor::enumerate(k, kp, MorphismKind::Epi) {
                        let hit = t.level(kp).simplices.iter().any(|z| ext.contains(level.index_of(&sset.apply(&tau, z).unwrap()).unwrap()));
                        r.record(hit == refines(&tau, sigma), || tag(&format!("(iii) σ={sigma:?} τ={tau:?}")));
                    }
                }
            }
            // (c) monos δ with σ∘δ onto
            for i in 0..=k {
                for d in DeltaMor::enumerate(i, k, MorphismKind::Mono) {
                    let sd = compose(sigma, &d)?;
                    if !sd.is_epi() {
                        continue;
                    }
                    let target = t.u_of_epi(&sd)?;
                    let ok = u.iter().all(|zi| {
                        let w = sset.apply(&d, &level.simplices[zi]).unwrap();
                        target.contains(t.level(i).index_of(&w).unwrap())
                    });
                    r.record(ok, || tag(&format!("(c) σ={sigma:?} δ={d:?}")));
                }
            }
            // (d) τ : [k′] ↠ [k], k′ ≤ N+2
            for kp in k..=top {
                for tau in DeltaMor::enumerate(kp, k, MorphismKind::Epi) {
                    let target = t.u_of_epi(&compose(sigma, &tau)?)?;
                    let ok = u.iter().all(|zi| {
                        let w = sset.apply(&tau, &level.simplices[zi]).unwrap();
                        target.contains(t.level(kp).index_of(&w).unwrap())
                    });
                    r.record(ok, || tag(&format!("(d) σ={sigma:?} τ={tau:?}")));
                }
            }
            // (e) τ : [k] ↠ [k′]
            for kp in 0..=k {
                for tau in DeltaMor::enumerate(k, kp, MorphismKind::Epi) {
                    let hit = t.level(kp).simplices.iter().any(|z| u.contains(level.index_of(&sset.apply(&tau, z).unwrap()).unwrap()));
                    r.record(hit == refines(&tau, sigma), || tag(&format!("(e) σ={sigma:?} τ={tau:?}")));
                }
            }
        }
    }
    Ok(())
}

/// Disjointness used by the separation: for distinct cells `x ≠ y`,
/// `U(σ) ∩ V(τ) = ∅` in degrees `≤ n+m+2` (with `N = max(n,m)+1`); for a
/// single cell and `N = (n+1)²`, `U(f) ∩ U(g) = ∅` for distinct onto `f, g`
/// into degrees `≤ N`.
pub fn separation_sets(sset: &FiniteSSet) -> Result<Report> {
    let mut r = Report::new("separation-sets");
    let cells: Vec<_> = sset.all_cells().collect();
    for (ai, &x) in cells.iter().enumerate() {
        for &y in &cells[ai + 1..] {
            let big_n = x.dim.max(y.dim) + 1;
            let top = x.dim + y.dim + 2;
            let tu = UTables::build(&AdmissibleFamily::build(sset, x, big_n, FamilyKind::Singleton)?, top)?;
            let tv = UTables::build(&AdmissibleFamily::build(sset, y, big_n, FamilyKind::Singleton)?, top)?;
            for k in 0..=top {
                for s in tu.epis(k) {
                    for t in tv.epis(k) {
                        r.record(tu.u_of_epi(s)?.is_disjoint(tv.u_of_epi(t)?), || format!("{} {} σ={s:?} τ={t:?}", sset.cell_name(x), sset.cell_name(y)));
                    }
                }
            }
        }
        let big_n = (x.dim + 1) * (x.dim + 1);
        if big_n > 9 {
            continue;
        }
        let tu = UTables::build(&AdmissibleFamily::build(sset, x, big_n, FamilyKind::Singleton)?, big_n)?;
        for k in 0..=big_n {
            let es = tu.epis(k);
            for (i, s) in es.iter().enumerate() {
                for t in &es[i + 1..] {
                    r.record(tu.u_of_epi(s)?.is_disjoint(tu.u_of_epi(t)?), || format!("{} σ={s:?} τ={t:?}", sset.cell_name(x)));
                }
            }
        }
    }
    Ok(r)
}

/// Compatibility of `U_{k,ε}` with faces and degeneracies and of `U′_{k,ε}`
/// with faces, for every non-degenerate `x` of top degree with a fixed
/// interior point, `N = n+1`, sampled `β`, all `y ∈ A_k`, `k ≤ kmax`.
pub fn compat(sset: &FiniteSSet, eps: &Q, kmax: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("compat");
    let mut rng = sampling::rng(seed);
    let dim = sset.dim();
    for x in sset.cells(dim).collect::<Vec<_>>() {
        let n = x.dim;
        // α_i ∝ i+1
        let alpha = BaryPoint::normalized((1..=n as i64 + 1).map(crate::rational::int).collect())?;
        let intervals = make_admissible(&alpha, &crate::rational::int(2))?;
        let fam = AdmissibleFamily::build(sset, x, n + 1, FamilyKind::Singleton)?;
        let tables = UTables::build(&fam, kmax + 1)?;
        let sys = NbhdSystem::build(&tables, &intervals, eps, kmax + 1)?;
        for closed in [false, true] {
            let member = |k: usize, y: &Simplex, b: &BaryPoint| sys.member(k, y, b, closed);
            let variant = if closed { "closed" } else { "open" };
            for k in 1..=kmax {
                let pts = sampling::probe_set(&mut rng, k - 1, samples, Some(&alpha));
                for i in 0..=k {
                    r.absorb_compat(&format!("{variant} ε={eps}"), check_compat_face(&member, sset, k, i, &pts)?);
                }
            }
            if closed {
                continue;
            }
            for k in 0..kmax {
                let pts = sampling::probe_set(&mut rng, k + 1, samples, Some(&alpha));
                for i in 0..=k {
                    r.absorb_compat(&format!("{variant} ε={eps}"), check_compat_degen(&member, sset, k, i, &pts)?);
                }
            }
        }
    }
    Ok(r)
}

fn random_row<R: Rng>(rng: &mut R, nvars: usize) -> Row {
    let coeffs = (0..nvars).map(|_| int(rng.gen_range(-3..=3))).collect();
    let rel = match rng.gen_range(0..6) {
        0 | 1 => Relation::Lt,
        2..=4 => Relation::Le,
        _ => Relation::Eq,
    };
    Row::new(coeffs, rel, int(rng.gen_range(-6..=6)))
}

fn random_probe<R: Rng>(rng: &mut R, nvars: usize) -> Vec<Q> {
    let den = rng.gen_range(1..=12i64);
    (0..nvars).map(|_| Q::new(rng.gen_range(-8 * den..=8 * den).into(), den.into())).collect()
}

fn near<R: Rng>(rng: &mut R, x: &[Q]) -> Vec<Q> {
    let scale = Q::new(1.into(), (1i64 << rng.gen_range(0..20)).into());
    x.iter().map(|v| v + &scale * Q::new(rng.gen_range(-4..=4i64).into(), 4.into())).collect()
}

/// Fourier–Motzkin verdicts on seeded random systems (1–5 variables, 1–12
/// rows, small integer data): feasible verdicts must come with a witness that
/// satisfies every row exactly and must agree under a shuffled elimination
/// order; infeasible verdicts are attacked with `probes` rational points,
/// half uniform and half near witnesses of the systems with one row dropped.
pub fn ratlp_oracle(systems: usize, probes: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("ratlp-oracle");
    let mut rng = sampling::rng(seed);
    let mut prng = sampling::rng(!seed);
    let mut infeasible = 0;
    for s in 0..systems {
        let nvars = rng.gen_range(1..=5);
        let nrows = rng.gen_range(1..=12);
        let mut sys = LinSystem::new(nvars);
        for _ in 0..nrows {
            sys.push(random_row(&mut rng, nvars))?;
        }
        let res = feasible(&sys)?;
        let mut order: Vec<usize> = (0..nvars).collect();
        order.shuffle(&mut rng);
        let again = feasible_with_order(&sys, &order)?;
        r.record(res.status == again.status, || format!("system {s}: verdict depends on the elimination order {order:?}"));
        if res.is_feasible() {
            let ok = res.witness.as_ref().is_some_and(|w| sys.satisfied_by(w));
            r.record(ok, || format!("system {s}: witness does not satisfy {sys:?}"));
            continue;
        }
        infeasible += 1;
        let mut anchors: Vec<Vec<Q>> = Vec::new();
        for drop in 0..nrows {
            let mut sub = LinSystem::new(nvars);
            for (i, row) in sys.rows().iter().enumerate() {
                if i != drop {
                    sub.push(row.clone())?;
                }
            }
            if let Some(w) = feasible(&sub)?.witness {
                anchors.push(w);
            }
        }
        let mut hit = None;
        for p in 0..probes {
            let x = if p % 2 == 0 || anchors.is_empty() {
                random_probe(&mut prng, nvars)
            } else {
                let a = &anchors[prng.gen_range(0..anchors.len())];
                near(&mut prng, a)
            };
            if hit.is_none() && sys.satisfied_by(&x) {
                hit = Some(x);
            }
        }
        r.record(hit.is_none(), || format!("system {s}: declared infeasible but {hit:?} satisfies {sys:?}"));
    }
    r.findings.push(format!("{} feasible, {} infeasible", systems - infeasible, infeasible));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn ratlp_oracle_runs() {
        let r = ratlp_oracle(12, 200, 3).unwrap();
        assert!(r.is_ok(), "{r:?}");
        assert!(r.cases >= 24);
    }

    #[test]
    fn small_ranges() {
        assert!(duality(2, 4).is_ok());
        let a3 = admitted3(1, 3).unwrap();
        assert!(a3.is_ok() && a3.cases > 0);
        for rep in [admitted1(1, 3).unwrap(), admitted2(1, 3).unwrap()] {
            for (class, cases, bad) in &rep.breakdown {
                assert!(*cases > 0);
                assert_eq!(*bad > 0, class.contains("gap"), "{rep:?}");
            }
        }
        let o = order_strictness(1, 3, 0, 4).unwrap();
        assert!(o.is_ok());
        assert!(o.findings.iter().any(|f| f == "[[0, 4]] ⊂ [[0, 2, 4]] but not ≤"), "{:?}", o.findings);
    }

    #[test]
    fn minus_does_not_preserve_order_across_gaps() {
        let f = GammaMor::from_sets(3, &[&[0, 2]]).unwrap();
        let g = GammaMor::from_sets(3, &[&[0, 2, 3]]).unwrap();
        assert_eq!(f.plus(2).unwrap(), Some(g.clone()));
        let fm = f.minus(2).unwrap().unwrap();
        let gm = g.minus(2).unwrap().unwrap();
        assert_eq!(fm.block_sets(), [[0]]);
        assert_eq!(gm.block_sets(), [[0, 2]]);
        assert!(fm.subset_leq(&gm).unwrap());
        assert!(!fm.leq(&gm).unwrap());
        // the first case of the second lemma fails on f = {0,2}, i = 0, g = f_{−0}
        let f = GammaMor::from_sets(2, &[&[0, 2]]).unwrap();
        let g = f.minus(0).unwrap().unwrap();
        assert_eq!(g.block_sets(), [[1]]);
        let h = GammaMor::push_mono(&DeltaMor::face(1, 0).unwrap(), &g).unwrap();
        assert!(!f.leq(&h).unwrap());
    }

    #[test]
    fn lemma_checks_on_delta1() {
        let s = FiniteSSet::standard_simplex(1);
        assert!(degen_lemma(&s, 2).unwrap().is_ok());
        assert!(simpset(&s, 2).unwrap().is_ok());
        assert!(u_properties(&s, 2).unwrap().is_ok());
        assert!(separation_sets(&s).unwrap().is_ok());
        assert!(compat(&s, &q(1, 2), 2, 20, 1).unwrap().is_ok());
    }

    #[test]
    fn broken_u_sets_are_reported() {
        // a property check must notice a table that lost σ^*(x)
        let s = FiniteSSet::standard_simplex(1);
        let x = s.cell_by_name("e01").unwrap();
        let good = AdmissibleFamily::build(&s, x, 2, FamilyKind::Singleton).unwrap();
        let mut table = good.table().to_vec();
        table[0] = crate::bitset::BitSet::new(table[0].len());
        let bad = AdmissibleFamily::from_table(&s, x, 2, table).unwrap();
        let t = UTables::build(&bad, 4).unwrap();
        let mut r = Report::new("t");
        u_properties_for(&t, &mut r).unwrap();
        assert!(!r.is_ok());
    }
}
