//! Separation of two distinct points of a thin realization by the
//! neighborhoods `U_η`, `V_η`, with a certificate that can be re-checked.
//!
//! For each degree `k ≤ 2(n+2)(m+2)`, the pairs `(f, g)` with
//! `U(f) ∩ V(g) ≠ ∅` are never listed. Instead, for every simplex `z` a
//! dynamic program over the coordinates of `[k]` enumerates which classes
//! `(f-label or ⊥, g-label or ⊥)` can occur together. Emptiness of
//! `W̄(f,η) ∩ T̄(g,η)` only depends on that set of classes, and only
//! grows easier for smaller sets, so one exact LP per maximal class set
//! settles every pair of the degree.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;

use crate::admissible::{AdmissibleFamily, FamilyKind, UTables};
use crate::delta::{DeltaMor, MorphismKind};
use crate::gamma::{hom_count, GammaMor};
use crate::geom::{lambda_ratios, make_admissible, make_disjoint_pair, w_constraints, BaryPoint, IntervalFamily};
use crate::ratlp;
use crate::rational::{int, Q};
use crate::realization::{point_normal_form, NbhdSystem};
use crate::sampling;
use crate::sset::{CellId, FiniteSSet, Simplex};
use crate::{Error, Result};

pub const DEFAULT_DEPTH: u32 = 20;

pub const NOTE_ABOVE_KMAX: &str = "degrees above kmax are covered by the inductive step of the separation argument, not by computed evidence";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    DistinctCells,
    SameCell,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::DistinctCells => "distinct-cells",
            Branch::SameCell => "same-cell",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub depth: u32,
    pub spread: Q,
}

impl Default for Options {
    fn default() -> Self {
        Options { depth: DEFAULT_DEPTH, spread: int(2) }
    }
}

/// Viable label paths for one cell: chains `(e-value, label)` in `[p]×[n]`,
/// stored as a trie of prefixes that extend to a good complete path.
#[derive(Clone, Debug)]
struct PathTrie {
    nodes: Vec<PathNode>,
}

#[derive(Clone, Debug)]
struct PathNode {
    last: Option<(usize, usize)>,
    good: bool,
    children: Vec<((usize, usize), usize)>,
}

impl PathTrie {
    fn build(tables: &UTables, c: CellId) -> Result<Self> {
        let n = tables.family().n();
        let p = c.dim;
        let sset = tables.family().sset();
        // raw enumeration, then keep viable nodes
        struct Raw {
            path: Vec<(usize, usize)>,
            good: bool,
            children: Vec<((usize, usize), usize)>,
        }
        let mut raw = vec![Raw { path: Vec::new(), good: false, children: Vec::new() }];
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let path = raw[id].path.clone();
            let (a0, l_opts): (usize, Vec<usize>) = match path.last() {
                None => (0, vec![0]),
                Some(&(a, l)) => (a, if l < n { vec![l, l + 1] } else { vec![l] }),
            };
            for a in a0..=p {
                for &l in &l_opts {
                    if path.last() == Some(&(a, l)) {
                        continue;
                    }
                    let mut np = path.clone();
                    np.push((a, l));
                    let good = if l == n {
                        let degree = np.len() - 1;
                        if degree > tables.top() {
                            return Err(Error::InvalidParameter(format!("label paths of degree {degree} exceed the tabulated range")));
                        }
                        let phi = DeltaMor::new(p, np.iter().map(|x| x.0).collect())?;
                        let rho = DeltaMor::new(n, np.iter().map(|x| x.1).collect())?;
                        let w = sset.apply(&phi, &Simplex::nondegenerate(c))?;
                        tables.contains_epi(&rho, &w)?
                    } else {
                        false
                    };
                    let nid = raw.len();
                    raw.push(Raw { path: np, good, children: Vec::new() });
                    raw[id].children.push(((a, l), nid));
                    stack.push(nid);
                }
            }
        }
        // viability, children always have larger ids
        let mut viable = vec![false; raw.len()];
        for id in (0..raw.len()).rev() {
            viable[id] = raw[id].good || raw[id].children.iter().any(|&(_, c)| viable[c]);
        }
        let mut remap = vec![usize::MAX; raw.len()];
        let mut nodes = Vec::new();
        for id in 0..raw.len() {
            if viable[id] || id == 0 {
                remap[id] = nodes.len();
                nodes.push(PathNode { last: raw[id].path.last().copied(), good: raw[id].good, children: Vec::new() });
            }
        }
        for id in 0..raw.len() {
            if remap[id] == usize::MAX {
                continue;
            }
            let kids = raw[id].children.iter().filter(|&&(_, c)| viable[c]).map(|&(key, c)| (key, remap[c])).collect();
            nodes[remap[id]].children = kids;
        }
        Ok(PathTrie { nodes })
    }

    // Next node after covering a coordinate with e-value `a` by label `l`.
    fn step(&self, node: usize, a: usize, l: usize) -> Option<usize> {
        let nd = &self.nodes[node];
        match nd.last {
            None if l != 0 => return None,
            Some((_, ll)) if l != ll && l != ll + 1 => return None,
            Some(last) if last == (a, l) => return Some(node),
            _ => {}
        }
        nd.children.iter().find(|(key, _)| *key == (a, l)).map(|&(_, c)| c)
    }

    fn last_label(&self, node: usize) -> Option<usize> {
        self.nodes[node].last.map(|x| x.1)
    }

    fn is_good(&self, node: usize) -> bool {
        self.nodes[node].good
    }
}

/// One side of the separation: a point, its admissible family, its
/// interval family and the derived tables.
#[derive(Clone, Debug)]
pub struct Side {
    pub x: CellId,
    pub alpha: BaryPoint,
    pub family: AdmissibleFamily,
    pub tables: UTables,
    pub intervals: IntervalFamily,
    tries: BTreeMap<CellId, PathTrie>,
}

impl Side {
    fn build(sset: &FiniteSSet, x: CellId, alpha: &BaryPoint, big_n: usize, kmax: usize, intervals: IntervalFamily) -> Result<Self> {
        let family = AdmissibleFamily::build(sset, x, big_n, FamilyKind::Singleton)?;
        let tables = UTables::build(&family, kmax)?;
        let mut tries = BTreeMap::new();
        for c in sset.all_cells() {
            tries.insert(c, PathTrie::build(&tables, c)?);
        }
        Ok(Side { x, alpha: alpha.clone(), family, tables, intervals, tries })
    }

    pub fn n(&self) -> usize {
        self.x.dim
    }

    /// `z ∈ U(f)` through the path tries (used to cross-check the tables).
    pub fn path_contains(&self, f: &GammaMor, z: &Simplex) -> bool {
        let trie = &self.tries[&z.cell];
        let mut node = 0;
        for q in 0..=f.cod() {
            if let Some(l) = f.block_of(q) {
                match trie.step(node, z.epi.at(q), l) {
                    Some(nx) => node = nx,
                    None => return false,
                }
            }
        }
        trie.is_good(node)
    }

    /// Exact `(z, β) ∈ U′_{k,η}` for a point given by integer weights
    /// (`β = w / Σw`), by branch and bound over the labelings of `[k]`.
    pub fn closed_member_weights(&self, z: &Simplex, w: &[u64], eta: &Q) -> Result<bool> {
        let k = z.degree();
        if w.len() != k + 1 {
            return Err(Error::DegreeMismatch { expected: k, found: w.len().saturating_sub(1) });
        }
        let total: i128 = w.iter().map(|&v| v as i128).sum();
        if total <= 0 {
            return Err(Error::InvalidPoint("weights sum to zero".into()));
        }
        let (en, ed) = small_ratio(eta)?;
        let n = self.n();
        let mut bounds = vec![vec![(0i128, 1i128, 0i128, 1i128); n + 1]; n + 1];
        for ((i, j), (a, b)) in self.intervals.bounds() {
            let (an, ad) = small_ratio(a)?;
            let (bn, bd) = small_ratio(b)?;
            bounds[*i][*j] = (an, ad, bn, bd);
        }
        let mut suffix = vec![0i128; k + 2];
        for q in (0..=k).rev() {
            suffix[q] = suffix[q + 1] + w[q] as i128;
        }
        let ctx = Bnb { trie: &self.tries[&z.cell], z, w, n, total, en, ed, bounds, suffix };
        let mut sums = vec![0i128; n + 1];
        Ok(ctx.search(0, 0, &mut sums, 0))
    }
}

fn small_ratio(v: &Q) -> Result<(i128, i128)> {
    match (v.numer().to_i128(), v.denom().to_i128()) {
        (Some(a), Some(b)) if a.abs() < 1 << 40 && b < 1 << 40 => Ok((a, b)),
        _ => Err(Error::InvalidParameter(format!("{v} is too large for the probe arithmetic"))),
    }
}

struct Bnb<'a> {
    trie: &'a PathTrie,
    z: &'a Simplex,
    w: &'a [u64],
    n: usize,
    total: i128,
    en: i128,
    ed: i128,
    // (a numer, a denom, b numer, b denom)
    bounds: Vec<Vec<(i128, i128, i128, i128)>>,
    suffix: Vec<i128>,
}

impl Bnb<'_> {
    fn search(&self, q: usize, node: usize, sums: &mut Vec<i128>, uncovered: i128) -> bool {
        if uncovered * self.ed > self.en * self.total {
            return false;
        }
        let cur = self.trie.last_label(node);
        if !self.consistent(cur, sums, self.suffix[q]) {
            return false;
        }
        if q == self.w.len() {
            return self.trie.is_good(node) && cur == Some(self.n);
        }
        let a = self.z.epi.at(q);
        let wq = self.w[q] as i128;
        let opts: &[usize] = match cur {
            None => &[0],
            Some(l) if l < self.n => &[l, l + 1],
            Some(l) => &[l, l],
        };
        for (oi, &l) in opts.iter().enumerate() {
            if oi == 1 && opts[0] == opts[1] {
                break;
            }
            if let Some(nx) = self.trie.step(node, a, l) {
                sums[l] += wq;
                let hit = self.search(q + 1, nx, sums, uncovered);
                sums[l] -= wq;
                if hit {
                    return true;
                }
            }
        }
        self.search(q + 1, node, sums, uncovered + wq)
    }

    // Necessary conditions given that label `cur` is open and `rem` mass is left.
    fn consistent(&self, cur: Option<usize>, sums: &[i128], rem: i128) -> bool {
        let Some(c) = cur else { return true };
        for i in 0..=self.n {
            for j in i + 1..=self.n {
                let (an, ad, bn, bd) = self.bounds[i][j];
                let si = sums[i];
                if i > c {
                    continue;
                }
                let (sj_lo, sj_hi) = if j < c {
                    (sums[j], sums[j])
                } else if j == c {
                    (sums[j], sums[j] + rem)
                } else {
                    (0, rem)
                };
                if i < c {
                    // S_i is final: a·S_i ≤ S_j ≤ b·S_i
                    if sj_hi * ad < an * si || sj_lo * bd > bn * si {
                        return false;
                    }
                } else {
                    // S_i still grows (i = c), S_j only in the future
                    let si_hi = si + rem;
                    if sj_hi * ad < an * si {
                        return false;
                    }
                    if sj_lo * bd > bn * si_hi {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeEvidence {
    /// A simplex of `A_k` realizing the class set.
    pub z: Simplex,
    /// Bit `a·(m+2) + b` for class `(a, b)`; `a = n+1` (`b = m+1`) means uncovered.
    pub pattern: u64,
    /// Representatives with one coordinate per class.
    pub f: GammaMor,
    pub g: GammaMor,
    pub rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEvidence {
    pub k: usize,
    pub homs_f: u128,
    pub homs_g: u128,
    /// Simplices lying in some `U(f)` and in some `V(g)`.
    pub shared: usize,
    /// Maximal class sets, each certified by an infeasible LP.
    pub types: Vec<TypeEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputPoint {
    pub simplex: Simplex,
    pub coords: BaryPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub sset: FiniteSSet,
    pub inputs: [InputPoint; 2],
    /// Normal forms, after the optional swap.
    pub points: [(CellId, BaryPoint); 2],
    pub swapped: bool,
    pub branch: Branch,
    pub n: usize,
    pub m: usize,
    pub big_n: usize,
    pub separating_pair: Option<(usize, usize)>,
    pub spread: Q,
    pub eta: Q,
    pub depth: u32,
    pub kmax: usize,
    pub families: [Vec<(DeltaMor, Vec<Simplex>)>; 2],
    pub intervals: [IntervalFamily; 2],
    pub evidence: Vec<DegreeEvidence>,
    pub containment: [bool; 2],
    pub invariance_cases: [usize; 2],
    pub note: String,
}

/// Everything that does not depend on `η`.
#[derive(Clone, Debug)]
pub struct Setup {
    pub sset: FiniteSSet,
    pub inputs: [InputPoint; 2],
    pub swapped: bool,
    pub branch: Branch,
    pub separating_pair: Option<(usize, usize)>,
    pub big_n: usize,
    pub kmax: usize,
    pub options: Options,
    pub sides: [Side; 2],
}

pub fn kmax_for(n: usize, m: usize) -> usize {
    2 * (n + 2) * (m + 2)
}

impl Setup {
    pub fn new(sset: &FiniteSSet, p1: InputPoint, p2: InputPoint, options: Options) -> Result<Self> {
        let (x1, a1) = point_normal_form(sset, &p1.simplex, &p1.coords)?;
        let (x2, a2) = point_normal_form(sset, &p2.simplex, &p2.coords)?;
        if x1 == x2 && a1 == a2 {
            return Err(Error::SamePoint);
        }
        let (n, m) = (x1.degree(), x2.degree());
        let kmax = kmax_for(n, m);
        if (n + 2) * (m + 2) > 64 {
            return Err(Error::InvalidParameter(format!("cells of degrees {n} and {m} are too large")));
        }
        let (branch, big_n, swapped, pair, pts, ints) = if x1 != x2 {
            let big_n = n.max(m) + 1;
            let i1 = make_admissible(&a1, &options.spread)?;
            let i2 = make_admissible(&a2, &options.spread)?;
            (Branch::DistinctCells, big_n, false, None, [(x1.cell, a1), (x2.cell, a2)], [i1, i2])
        } else {
            let big_n = (n + 1) * (n + 1);
            let d: Vec<Q> = a1.coords().iter().zip(a2.coords()).map(|(a, b)| a - b).collect();
            let kk = (0..=n).find(|&i| d[i].is_negative()).ok_or(Error::NoSeparatingPair)?;
            let ll = (0..=n).find(|&i| d[i].is_positive()).ok_or(Error::NoSeparatingPair)?;
            let (swapped, lo, hi, first, second) = if kk < ll { (false, kk, ll, a1, a2) } else { (true, ll, kk, a2, a1) };
            let (i1, i2) = make_disjoint_pair(&first, &second, lo, hi)?;
            (Branch::SameCell, big_n, swapped, Some((lo, hi)), [(x1.cell, first), (x2.cell, second)], [i1, i2])
        };
        let [(c1, b1), (c2, b2)] = pts;
        let [i1, i2] = ints;
        let s1 = Side::build(sset, c1, &b1, big_n, kmax, i1)?;
        let s2 = Side::build(sset, c2, &b2, big_n, kmax, i2)?;
        Ok(Setup { sset: sset.clone(), inputs: [p1, p2], swapped, branch, separating_pair: pair, big_n, kmax, options, sides: [s1, s2] })
    }

    pub fn n(&self) -> usize {
        self.sides[0].n()
    }

    pub fn m(&self) -> usize {
        self.sides[1].n()
    }

    fn class(&self, a: Option<usize>, b: Option<usize>) -> u64 {
        let (n, m) = (self.n(), self.m());
        let a = a.unwrap_or(n + 1);
        let b = b.unwrap_or(m + 1);
        1u64 << (a * (m + 2) + b)
    }

    /// Maximal class sets realized on `z` by pairs `(f, g)` with
    /// `z ∈ U(f) ∩ V(g)`.
    pub fn realized_types(&self, z: &Simplex) -> Vec<u64> {
        let tu = &self.sides[0].tries[&z.cell];
        let tv = &self.sides[1].tries[&z.cell];
        let mut states: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
        states.insert((0, 0), vec![0]);
        for q in 0..=z.degree() {
            let a = z.epi.at(q);
            let mut next: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
            for (&(fu, fv), masks) in &states {
                for (lu, nu) in options(tu, fu, a, self.n()) {
                    for (lv, nv) in options(tv, fv, a, self.m()) {
                        let bit = self.class(lu, lv);
                        let slot = next.entry((nu, nv)).or_default();
                        for &mk in masks {
                            insert_maximal(slot, mk | bit);
                        }
                    }
                }
            }
            states = next;
        }
        let mut out = Vec::new();
        for ((fu, fv), masks) in states {
            if tu.is_good(fu) && tv.is_good(fv) {
                for mk in masks {
                    insert_maximal(&mut out, mk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Representatives `f′, g′` with one coordinate per class of `pattern`.
    pub fn representatives(&self, pattern: u64) -> Result<(GammaMor, GammaMor)> {
        let (n, m) = (self.n(), self.m());
        let classes: Vec<(usize, usize)> = (0..64).filter(|b| pattern >> b & 1 == 1).map(|b| (b / (m + 2), b % (m + 2))).collect();
        // order classes so that f-labels and g-labels are non-decreasing
        let mut placed = vec![false; classes.len()];
        let mut order = Vec::with_capacity(classes.len());
        while order.len() < classes.len() {
            let next = (0..classes.len()).find(|&i| {
                !placed[i]
                    && (0..classes.len()).all(|j| {
                        placed[j] || j == i || {
                            let (a1, b1) = classes[i];
                            let (a2, b2) = classes[j];
                            let f_before = a2 <= n && a1 <= n && a2 < a1;
                            let g_before = b2 <= m && b1 <= m && b2 < b1;
                            !(f_before || g_before)
                        }
                    })
            });
            let Some(i) = next else {
                return Err(Error::InvalidParameter(format!("class set {pattern:#x} is not realizable")));
            };
            placed[i] = true;
            order.push(classes[i]);
        }
        let k = order.len() - 1;
        let mut fb = vec![0u64; n + 1];
        let mut gb = vec![0u64; m + 1];
        for (pos, &(a, b)) in order.iter().enumerate() {
            if a <= n {
                fb[a] |= 1 << pos;
            }
            if b <= m {
                gb[b] |= 1 << pos;
            }
        }
        Ok((GammaMor::new(k, fb)?, GammaMor::new(k, gb)?))
    }

    /// `W̄(f′,η) ∩ T̄(g′,η)` for the representatives of `pattern`: returns
    /// `(disjoint, row count)`.
    pub fn pattern_disjoint(&self, pattern: u64, eta: &Q) -> Result<(bool, usize)> {
        let (f, g) = self.representatives(pattern)?;
        let a = w_constraints(&f, eta, &self.sides[0].intervals, true)?;
        let b = w_constraints(&g, eta, &self.sides[1].intervals, true)?;
        let rows = a.rows().len() + b.rows().len();
        Ok((ratlp::disjoint(&a, &b)?, rows))
    }

    /// The `η`-independent part of the evidence at degree `k`.
    pub fn analyze_degree(&self, k: usize) -> Result<DegreeEvidence> {
        let mut best: Vec<(u64, Simplex)> = Vec::new();
        let mut shared = 0;
        for z in self.sides[0].tables.level(k).simplices.iter() {
            let types = self.realized_types(z);
            if types.is_empty() {
                continue;
            }
            shared += 1;
            for t in types {
                if best.iter().any(|(b, _)| t & !b == 0) {
                    continue;
                }
                best.retain(|(b, _)| b & !t != 0);
                best.push((t, z.clone()));
            }
        }
        best.sort_by_key(|(t, _)| *t);
        let mut types = Vec::with_capacity(best.len());
        for (pattern, z) in best {
            let (f, g) = self.representatives(pattern)?;
            types.push(TypeEvidence { z, pattern, f, g, rows: 0 });
        }
        Ok(DegreeEvidence { k, homs_f: hom_count(self.n(), k, false), homs_g: hom_count(self.m(), k, false), shared, types })
    }

    /// Dyadic search `η = 2^{-1}, …, 2^{-depth}` over precomputed degree
    /// evidence; fills in row counts and builds the certificate.
    pub fn assemble(&self, mut evidence: Vec<DegreeEvidence>) -> Result<Certificate> {
        evidence.sort_by_key(|d| d.k);
        if evidence.iter().map(|d| d.k).ne(0..=self.kmax) {
            return Err(Error::InvalidParameter("evidence must cover every degree up to kmax".into()));
        }
        let patterns: BTreeSet<u64> = evidence.iter().flat_map(|d| d.types.iter().map(|t| t.pattern)).collect();
        let mut eta = Q::one();
        let two = int(2);
        for _ in 0..self.options.depth {
            eta /= &two;
            let mut rows = BTreeMap::new();
            let mut ok = true;
            for &p in &patterns {
                let (disjoint, r) = self.pattern_disjoint(p, &eta)?;
                if !disjoint {
                    ok = false;
                    break;
                }
                rows.insert(p, r);
            }
            if !ok {
                continue;
            }
            for d in evidence.iter_mut() {
                for t in d.types.iter_mut() {
                    t.rows = rows[&t.pattern];
                }
            }
            return self.certificate(eta, evidence);
        }
        Err(Error::SearchExhausted(self.options.depth))
    }

    fn certificate(&self, eta: Q, evidence: Vec<DegreeEvidence>) -> Result<Certificate> {
        let containment = [self.contains_own_point(0, &eta)?, self.contains_own_point(1, &eta)?];
        if containment != [true, true] {
            return Err(Error::InvalidParameter("an input point is not in its own neighborhood".into()));
        }
        let mut inv = [0usize; 2];
        for (s, slot) in self.sides.iter().zip(inv.iter_mut()) {
            *slot = s.tables.degeneracy_invariance_check().map_err(|e| Error::InvalidParameter(format!("degeneracy invariance fails: {e}")))?;
        }
        let families = [family_listing(&self.sides[0].family)?, family_listing(&self.sides[1].family)?];
        Ok(Certificate {
            version: 1,
            sset: self.sset.clone(),
            inputs: self.inputs.clone(),
            points: [(self.sides[0].x, self.sides[0].alpha.clone()), (self.sides[1].x, self.sides[1].alpha.clone())],
            swapped: self.swapped,
            branch: self.branch,
            n: self.n(),
            m: self.m(),
            big_n: self.big_n,
            separating_pair: self.separating_pair,
            spread: self.options.spread.clone(),
            eta,
            depth: self.options.depth,
            kmax: self.kmax,
            families,
            intervals: [self.sides[0].intervals.clone(), self.sides[1].intervals.clone()],
            evidence,
            containment,
            invariance_cases: inv,
            note: NOTE_ABOVE_KMAX.into(),
        })
    }

    /// `(x, α) ∈ U_{n,η}` (open) for side 0, `(y, β) ∈ V_{m,η}` for side 1.
    pub fn contains_own_point(&self, side: usize, eta: &Q) -> Result<bool> {
        let s = &self.sides[side];
        let sys = NbhdSystem::build(&s.tables, &s.intervals, eta, s.n())?;
        sys.member(s.n(), &Simplex::nondegenerate(s.x), &s.alpha, false)
    }

    /// Random probes of `A_k × Δ^k` against `U′_{k,η}` and `V′_{k,η}`: a third
    /// uniform, a third near `(τ^*(x), τ_*α)`, a third near `(τ^*(y), τ_*β)`.
    pub fn probe(&self, k: usize, count: usize, eta: &Q, seed: u64) -> Result<ProbeReport> {
        let mut rng = sampling::rng(seed ^ ((k as u64) << 32));
        let level = &self.sides[0].tables.level(k).simplices;
        let total: u64 = 1 << 24;
        let mut rep = ProbeReport { k, probes: count, ..Default::default() };
        for i in 0..count {
            let (z, w) = match i % 3 {
                0 => (level[rng.gen_range(0..level.len())].clone(), sampling::integer_point(&mut rng, k, total)),
                s => match targeted(&self.sides[s - 1], k, total, &mut rng) {
                    Some(p) => p,
                    None => (level[rng.gen_range(0..level.len())].clone(), sampling::integer_point(&mut rng, k, total)),
                },
            };
            let in_u = self.sides[0].closed_member_weights(&z, &w, eta)?;
            let in_v = self.sides[1].closed_member_weights(&z, &w, eta)?;
            rep.in_u += in_u as usize;
            rep.in_v += in_v as usize;
            if in_u && in_v {
                rep.common += 1;
                if rep.first_common.is_none() {
                    rep.first_common = Some((z, w));
                }
            }
        }
        Ok(rep)
    }
}

fn options(trie: &PathTrie, node: usize, a: usize, n: usize) -> Vec<(Option<usize>, usize)> {
    let mut out = vec![(None, node)];
    let labels: Vec<usize> = match trie.last_label(node) {
        None => vec![0],
        Some(l) if l < n => vec![l, l + 1],
        Some(l) => vec![l],
    };
    for l in labels {
        if let Some(nx) = trie.step(node, a, l) {
            out.push((Some(l), nx));
        }
    }
    out
}

fn insert_maximal(set: &mut Vec<u64>, m: u64) {
    if set.iter().any(|&s| m & !s == 0) {
        return;
    }
    set.retain(|&s| s & !m != 0);
    set.push(m);
}

// (τ^*(x), weights spreading (1−θ)·α_i over the fibre τ^{-1}(i) plus noise)
fn targeted<R: Rng>(side: &Side, k: usize, total: u64, rng: &mut R) -> Option<(Simplex, Vec<u64>)> {
    let n = side.n();
    if k < n {
        return None;
    }
    let tau = {
        let epis = DeltaMor::enumerate(k, n, MorphismKind::Epi);
        epis[rng.gen_range(0..epis.len())].clone()
    };
    let noise_total = total * rng.gen_range(0..=8u64) / 64;
    let main = total - noise_total;
    let mut w = vec![0u64; k + 1];
    let mut used = 0u64;
    for i in 0..=n {
        let share = if i == n {
            main - used
        } else {
            let a = side.alpha.coord(i) * Q::from_integer(BigInt::from(main));
            let v = a.floor().to_integer().to_u64().unwrap_or(0);
            used += v;
            v
        };
        let fibre: Vec<usize> = tau.preimage(i).collect();
        let cuts = sampling::integer_point(rng, fibre.len() - 1, share);
        for (p, c) in fibre.iter().zip(cuts) {
            w[*p] += c;
        }
    }
    let noise = sampling::integer_point(rng, k, noise_total);
    for (a, b) in w.iter_mut().zip(noise) {
        *a += b;
    }
    Some((Simplex { epi: tau, cell: side.x }, w))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub k: usize,
    pub probes: usize,
    pub in_u: usize,
    pub in_v: usize,
    pub common: usize,
    pub first_common: Option<(Simplex, Vec<u64>)>,
}

fn family_listing(f: &AdmissibleFamily) -> Result<Vec<(DeltaMor, Vec<Simplex>)>> {
    f.epis().iter().map(|s| Ok((s.clone(), f.u_sigma_simplices(s)?))).collect()
}

/// Sequential end-to-end search.
pub fn find_eta(sset: &FiniteSSet, p1: InputPoint, p2: InputPoint, options: Options) -> Result<Certificate> {
    let setup = Setup::new(sset, p1, p2, options)?;
    let evidence = (0..=setup.kmax).map(|k| setup.analyze_degree(k)).collect::<Result<Vec<_>>>()?;
    setup.assemble(evidence)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub degrees: usize,
    pub lps: usize,
    pub shared: usize,
}

/// Recomputes the certificate from its inputs. `Err` carries the first
/// discrepancy.
pub fn verify_certificate(cert: &Certificate) -> core::result::Result<VerifyReport, String> {
    verify_with(cert, |setup| (0..=setup.kmax).map(|k| setup.analyze_degree(k)).collect::<Result<Vec<_>>>())
}

/// As [`verify_certificate`], with a caller-supplied way to compute the
/// per-degree evidence (e.g. in parallel).
pub fn verify_with<F>(cert: &Certificate, analyze: F) -> core::result::Result<VerifyReport, String>
where
    F: FnOnce(&Setup) -> Result<Vec<DegreeEvidence>>,
{
    if cert.version != 1 {
        return Err(format!("unsupported version {}", cert.version));
    }
    if !cert.eta.is_positive() || cert.eta >= Q::one() {
        return Err(format!("η = {} is not in (0,1)", cert.eta));
    }
    let opts = Options { depth: cert.depth, spread: cert.spread.clone() };
    let setup = Setup::new(&cert.sset, cert.inputs[0].clone(), cert.inputs[1].clone(), opts).map_err(|e| format!("inputs: {e}"))?;
    let same = |what: &str, ok: bool| if ok { Ok(()) } else { Err(format!("{what} does not match the recomputation")) };
    same("normal forms", cert.points[0] == (setup.sides[0].x, setup.sides[0].alpha.clone()) && cert.points[1] == (setup.sides[1].x, setup.sides[1].alpha.clone()))?;
    same("swap flag", cert.swapped == setup.swapped)?;
    same("branch", cert.branch == setup.branch)?;
    same("degrees", cert.n == setup.n() && cert.m == setup.m())?;
    same("N", cert.big_n == setup.big_n)?;
    same("kmax", cert.kmax == setup.kmax && cert.kmax == kmax_for(cert.n, cert.m))?;
    same("separating pair", cert.separating_pair == setup.separating_pair)?;
    same("interval families", cert.intervals[0] == setup.sides[0].intervals && cert.intervals[1] == setup.sides[1].intervals)?;
    for i in 0..2 {
        let fam = family_listing(&setup.sides[i].family).map_err(|e| format!("family: {e}"))?;
        same("admissible families", cert.families[i] == fam)?;
        setup.sides[i].family.validate().map_err(|e| format!("family {i} is not admissible: {e}"))?;
        let cases = setup.sides[i].tables.degeneracy_invariance_check().map_err(|e| format!("degeneracy invariance: {e}"))?;
        same("invariance check", cert.invariance_cases[i] == cases)?;
    }
    for (i, &claimed) in cert.containment.iter().enumerate() {
        let got = setup.contains_own_point(i, &cert.eta).map_err(|e| format!("containment: {e}"))?;
        if !(claimed && got) {
            return Err(format!("input point {} is not in its own neighborhood at η = {}", i + 1, cert.eta));
        }
    }
    let mut fresh = analyze(&setup).map_err(|e| format!("analysis: {e}"))?;
    fresh.sort_by_key(|d| d.k);
    if cert.evidence.len() != fresh.len() {
        return Err(format!("evidence covers {} degrees, expected {}", cert.evidence.len(), fresh.len()));
    }
    let mut lps = 0;
    let mut shared = 0;
    let mut cache: BTreeMap<u64, (bool, usize)> = BTreeMap::new();
    for (c, f) in cert.evidence.iter().zip(&fresh) {
        if c.k != f.k || c.homs_f != f.homs_f || c.homs_g != f.homs_g || c.shared != f.shared {
            return Err(format!("degree {}: summary does not match the recomputation", f.k));
        }
        if c.types.len() != f.types.len() {
            return Err(format!("degree {}: {} class sets listed, {} realized", f.k, c.types.len(), f.types.len()));
        }
        shared += f.shared;
        for (ct, ft) in c.types.iter().zip(&f.types) {
            if ct.pattern != ft.pattern || ct.z != ft.z || ct.f != ft.f || ct.g != ft.g {
                return Err(format!("degree {}: class set {:#x} does not match", f.k, ft.pattern));
            }
            let (disjoint, rows) = match cache.get(&ft.pattern) {
                Some(v) => *v,
                None => {
                    let v = setup.pattern_disjoint(ft.pattern, &cert.eta).map_err(|e| format!("lp: {e}"))?;
                    cache.insert(ft.pattern, v);
                    lps += 1;
                    v
                }
            };
            if !disjoint {
                return Err(format!("degree {}: W̄(f′,η) ∩ T̄(g′,η) is non-empty for {:?}, {:?}", f.k, ft.f, ft.g));
            }
            if rows != ct.rows {
                return Err(format!("degree {}: row count mismatch", f.k));
            }
        }
    }
    if cert.note != NOTE_ABOVE_KMAX {
        return Err("note about degrees above kmax is missing".into());
    }
    Ok(VerifyReport { degrees: fresh.len(), lps, shared })
}

/// λ-ratio disagreement used by the same-cell branch, for reporting.
pub fn ratio_gap(cert: &Certificate) -> Option<(Q, Q)> {
    let (k, l) = cert.separating_pair?;
    let a = lambda_ratios(&cert.points[0].1).ok()?.remove(&(k, l))?;
    let b = lambda_ratios(&cert.points[1].1).ok()?.remove(&(k, l))?;
    Some((a, b))
}
