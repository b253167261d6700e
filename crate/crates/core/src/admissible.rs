//! `x`-admissible families `(U_σ)_{σ:[N]↠[n]}` on a finite simplicial set,
//! their extension to degrees `k ≤ N`, and the sets `U(σ)`, `U(f)`.
//! Everything is tabulated eagerly as bitsets over the levels `A_k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::delta::{compose, DeltaMor, MorphismKind};
use crate::gamma::GammaMor;
use crate::sset::{CellId, FiniteSSet, Level, Simplex};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `U_σ = {σ^*(x)}`.
    Singleton,
    /// `U_σ = A_N ∖ ⋃ τ^*(A_m)` over the `τ` through which `σ` does not factor.
    Complement,
    /// Table supplied by the caller.
    Custom,
}

#[derive(Clone, Debug)]
pub struct AdmissibleFamily {
    sset: FiniteSSet,
    x: CellId,
    big_n: usize,
    kind: FamilyKind,
    level_n: Level,
    epis: Vec<DeltaMor>,
    table: Vec<BitSet>,
}

/// `σ = ρ∘τ` for some `ρ`, i.e. `τ(i) = τ(j) ⇒ σ(i) = σ(j)`.
pub fn factors_through(sigma: &DeltaMor, tau: &DeltaMor) -> bool {
    sigma.dom() == tau.dom() && (1..=sigma.dom()).all(|j| tau.at(j) != tau.at(j - 1) || sigma.at(j) == sigma.at(j - 1))
}

impl AdmissibleFamily {
    pub fn build(sset: &FiniteSSet, x: CellId, big_n: usize, kind: FamilyKind) -> Result<Self> {
        let n = x.dim;
        if x.dim > sset.dim() || x.index >= sset.cell_count(x.dim) {
            return Err(Error::InvalidParameter(format!("no cell {x:?}")));
        }
        if big_n < n {
            return Err(Error::InvalidParameter(format!("N = {big_n} must be at least n = {n}")));
        }
        let level_n = sset.level(big_n);
        let epis = DeltaMor::enumerate(big_n, n, MorphismKind::Epi);
        let xs = Simplex::nondegenerate(x);
        let mut table = Vec::with_capacity(epis.len());
        for sigma in &epis {
            let mut set = BitSet::new(level_n.len());
            match kind {
                FamilyKind::Singleton | FamilyKind::Custom => {
                    set.insert(level_n.index_of(&sset.apply(sigma, &xs)?).unwrap());
                }
                FamilyKind::Complement => {
                    set = BitSet::full(level_n.len());
                    for m in 0..=big_n {
                        for tau in DeltaMor::enumerate(big_n, m, MorphismKind::Epi) {
                            if factors_through(sigma, &tau) {
                                continue;
                            }
                            for z in sset.simplices_of_degree(m) {
                                set.remove(level_n.index_of(&sset.apply(&tau, &z)?).unwrap());
                            }
                        }
                    }
                }
            }
            table.push(set);
        }
        Ok(AdmissibleFamily { sset: sset.clone(), x, big_n, kind, level_n, epis, table })
    }

    /// A family with an explicit table, indexed like [`AdmissibleFamily::epis`].
    /// Not validated; see [`AdmissibleFamily::validate`].
    pub fn from_table(sset: &FiniteSSet, x: CellId, big_n: usize, table: Vec<BitSet>) -> Result<Self> {
        let mut f = Self::build(sset, x, big_n, FamilyKind::Singleton)?;
        if table.len() != f.epis.len() || table.iter().any(|s| s.len() != f.level_n.len()) {
            return Err(Error::InvalidParameter("table shape does not match the family".into()));
        }
        f.table = table;
        f.kind = FamilyKind::Custom;
        Ok(f)
    }

    pub fn sset(&self) -> &FiniteSSet {
        &self.sset
    }

    pub fn x(&self) -> CellId {
        self.x
    }

    pub fn n(&self) -> usize {
        self.x.dim
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn epis(&self) -> &[DeltaMor] {
        &self.epis
    }

    pub fn level_n(&self) -> &Level {
        &self.level_n
    }

    pub fn table(&self) -> &[BitSet] {
        &self.table
    }

    fn epi_index(&self, sigma: &DeltaMor) -> Result<usize> {
        self.epis.binary_search_by(|e| e.images().cmp(sigma.images())).map_err(|_| Error::InvalidMorphism(format!("{sigma:?} is not an epi [N]↠[n]")))
    }

    pub fn u_sigma(&self, sigma: &DeltaMor) -> Result<&BitSet> {
        Ok(&self.table[self.epi_index(sigma)?])
    }

    pub fn u_sigma_simplices(&self, sigma: &DeltaMor) -> Result<Vec<Simplex>> {
        Ok(self.u_sigma(sigma)?.iter().map(|i| self.level_n.simplices[i].clone()).collect())
    }

    /// The two axioms: `σ^*(x) ∈ U_σ`, and `U_σ` meets `τ^*(A_m)` iff `σ`
    /// factors through `τ`. Returns a description of the first failure.
    pub fn validate(&self) -> core::result::Result<usize, String> {
        let xs = Simplex::nondegenerate(self.x);
        let mut cases = 0;
        for (sigma, set) in self.epis.iter().zip(&self.table) {
            let sx = self.sset.apply(sigma, &xs).unwrap();
            cases += 1;
            if !set.contains(self.level_n.index_of(&sx).unwrap()) {
                return Err(format!("σ = {sigma:?}: σ^*(x) ∉ U_σ"));
            }
            for m in 0..=self.big_n {
                let am = self.sset.simplices_of_degree(m);
                for tau in DeltaMor::enumerate(self.big_n, m, MorphismKind::Epi) {
                    cases += 1;
                    let meets = am.iter().any(|z| set.contains(self.level_n.index_of(&self.sset.apply(&tau, z).unwrap()).unwrap()));
                    if meets != factors_through(sigma, &tau) {
                        return Err(format!("σ = {sigma:?}, τ = {tau:?}: U_σ meets τ^*(A_m) is {meets}"));
                    }
                }
            }
        }
        Ok(cases)
    }

    /// `⋂_{τ:[N]↠[k]} (τ^*)^{-1}(U_{σ∘τ})` as a subset of `A_k`, for `k ≤ N`.
    pub fn extend(&self, sigma: &DeltaMor, level_k: &Level) -> Result<BitSet> {
        let k = sigma.dom();
        if k > self.big_n {
            return Err(Error::InvalidParameter(format!("extension only defined for k ≤ N = {}", self.big_n)));
        }
        if !sigma.is_epi() || sigma.cod() != self.n() || level_k.degree != k {
            return Err(Error::InvalidMorphism(format!("{sigma:?} is not an epi [{k}]↠[{}]", self.n())));
        }
        let taus = DeltaMor::enumerate(self.big_n, k, MorphismKind::Epi);
        let mut out = BitSet::new(level_k.len());
        for (zi, z) in level_k.simplices.iter().enumerate() {
            let ok = taus.iter().all(|tau| {
                let st = compose(sigma, tau).unwrap();
                let w = self.sset.apply(tau, z).unwrap();
                self.table[self.epi_index(&st).unwrap()].contains(self.level_n.index_of(&w).unwrap())
            });
            if ok {
                out.insert(zi);
            }
        }
        Ok(out)
    }
}

// Runs of equal (e_z(j), σ(j)) along [k].
fn runs(e: &DeltaMor, sigma: &DeltaMor) -> Vec<(usize, usize, usize, usize)> {
    // (start, len, e value, σ value)
    let mut out: Vec<(usize, usize, usize, usize)> = Vec::new();
    for j in 0..=e.dom() {
        let key = (e.at(j), sigma.at(j));
        match out.last_mut() {
            Some(r) if (r.2, r.3) == key => r.1 += 1,
            _ => out.push((j, 1, key.0, key.1)),
        }
    }
    out
}

/// Monos `δ` into `[k]` with source degree `≤ cap` and `σ∘δ` epi, up to the
/// equivalence "same composite with `e` and with `σ`". One representative each.
fn compressed_monos(e: &DeltaMor, sigma: &DeltaMor, cap: usize) -> Vec<DeltaMor> {
    let rs = runs(e, sigma);
    let k = sigma.dom();
    let n = sigma.cod();
    let mut out = Vec::new();
    let mut mult = alloc::vec![0usize; rs.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(r: usize, total: usize, cap: usize, rs: &[(usize, usize, usize, usize)], mult: &mut Vec<usize>, k: usize, n: usize, out: &mut Vec<DeltaMor>) {
        if r == rs.len() {
            if total == 0 {
                return;
            }
            let mut hit = alloc::vec![false; n + 1];
            for (i, &m) in mult.iter().enumerate() {
                if m > 0 {
                    hit[rs[i].3] = true;
                }
            }
            if hit.iter().all(|&h| h) {
                let images = rs.iter().zip(mult.iter()).flat_map(|(run, &m)| run.0..run.0 + m).collect();
                out.push(DeltaMor::from_raw(k, images));
            }
            return;
        }
        for m in 0..=rs[r].1.min(cap + 1 - total) {
            mult[r] = m;
            rec(r + 1, total + m, cap, rs, mult, k, n, out);
        }
        mult[r] = 0;
    }
    rec(0, 0, cap, &rs, &mut mult, k, n, &mut out);
    out
}

/// Eager tables of `U(σ)` for every epi `σ:[k]↠[n]`, `k ≤ kmax`.
#[derive(Clone, Debug)]
pub struct UTables {
    family: AdmissibleFamily,
    kmax: usize,
    levels: Vec<Level>,
    epis: Vec<Vec<DeltaMor>>,
    epi_index: Vec<BTreeMap<Vec<usize>, usize>>,
    ext: Vec<Vec<BitSet>>,
    u: Vec<Vec<BitSet>>,
}

impl UTables {
    pub fn build(family: &AdmissibleFamily, kmax: usize) -> Result<Self> {
        let n = family.n();
        let big_n = family.big_n();
        if kmax > big_n && big_n < n + 1 {
            return Err(Error::InvalidParameter(format!("U(σ) above degree N needs N ≥ n+1 (N = {big_n}, n = {n})")));
        }
        let top = kmax.max(big_n);
        let sset = &family.sset;
        let levels: Vec<Level> = (0..=top).map(|k| sset.level(k)).collect();
        let epis: Vec<Vec<DeltaMor>> = (0..=top).map(|k| DeltaMor::enumerate(k, n, MorphismKind::Epi)).collect();
        let epi_index = epis.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e.images().to_vec(), i)).collect()).collect();
        let mut ext = Vec::with_capacity(big_n + 1);
        for k in 0..=big_n {
            let row: Result<Vec<BitSet>> = epis[k].iter().map(|s| family.extend(s, &levels[k])).collect();
            ext.push(row?);
        }
        let mut t = UTables { family: family.clone(), kmax, levels, epis, epi_index, ext, u: Vec::new() };
        let mut u = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut row = Vec::with_capacity(t.epis[k].len());
            for sigma in &t.epis[k] {
                let mut set = BitSet::new(t.levels[k].len());
                for (zi, z) in t.levels[k].simplices.iter().enumerate() {
                    if t.in_u_via_ext(sigma, z) {
                        set.insert(zi);
                    }
                }
                row.push(set);
            }
            u.push(row);
        }
        t.u = u;
        Ok(t)
    }

    fn in_u_via_ext(&self, sigma: &DeltaMor, z: &Simplex) -> bool {
        let sset = &self.family.sset;
        compressed_monos(&z.epi, sigma, self.family.big_n).iter().all(|d| {
            let sd = compose(sigma, d).unwrap();
            let w = sset.apply(d, z).unwrap();
            let kk = d.dom();
            self.ext[kk][self.epi_index[kk][sd.images()]].contains(self.levels[kk].index_of(&w).unwrap())
        })
    }

    pub fn family(&self) -> &AdmissibleFamily {
        &self.family
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Highest tabulated degree, `max(kmax, N)`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    pub fn epis(&self, k: usize) -> &[DeltaMor] {
        &self.epis[k]
    }

    fn index_for(&self, sigma: &DeltaMor) -> Result<(usize, usize)> {
        let k = sigma.dom();
        if k > self.top() {
            return Err(Error::DegreeTooLarge(k));
        }
        let i = self.epi_index[k].get(sigma.images()).copied();
        i.filter(|_| sigma.cod() == self.family.n()).map(|i| (k, i)).ok_or(Error::NotEpi)
    }

    /// The extended `U_σ ⊆ A_k` for `k ≤ N`.
    pub fn extended(&self, sigma: &DeltaMor) -> Result<&BitSet> {
        let (k, i) = self.index_for(sigma)?;
        self.ext.get(k).map(|r| &r[i]).ok_or(Error::InvalidParameter(format!("extension only defined for k ≤ N = {}", self.family.big_n)))
    }

    pub fn u_of_epi(&self, sigma: &DeltaMor) -> Result<&BitSet> {
        let (k, i) = self.index_for(sigma)?;
        Ok(&self.u[k][i])
    }

    pub fn contains_epi(&self, sigma: &DeltaMor, z: &Simplex) -> Result<bool> {
        let (k, i) = self.index_for(sigma)?;
        let zi = self.levels[k].index_of(z).ok_or(Error::DegreeMismatch { expected: k, found: z.degree() })?;
        Ok(self.u[k][i].contains(zi))
    }

    /// `z ∈ U(f)` iff `sup(f)^*(z) ∈ U(red f)`.
    pub fn contains_gamma(&self, f: &GammaMor, z: &Simplex) -> Result<bool> {
        if f.dom() != self.family.n() {
            return Err(Error::DegreeMismatch { expected: self.family.n(), found: f.dom() });
        }
        if z.degree() != f.cod() {
            return Err(Error::DegreeMismatch { expected: f.cod(), found: z.degree() });
        }
        let (red, sup) = f.red_sup();
        let w = self.family.sset.apply(&sup, z)?;
        self.contains_epi(&red.onto_to_epi()?, &w)
    }

    pub fn u_of_gamma(&self, f: &GammaMor) -> Result<BitSet> {
        let k = f.cod();
        if k > self.top() {
            return Err(Error::DegreeTooLarge(k));
        }
        let mut out = BitSet::new(self.levels[k].len());
        for (zi, z) in self.levels[k].simplices.iter().enumerate() {
            if self.contains_gamma(f, z)? {
                out.insert(zi);
            }
        }
        Ok(out)
    }

    /// `w ∈ U(ρ) ⟺ s_j(w) ∈ U(ρ∘σ_j)` for every tabulated degree. Returns the
    /// number of cases, or the first failure.
    pub fn degeneracy_invariance_check(&self) -> core::result::Result<usize, String> {
        let sset = &self.family.sset;
        let mut cases = 0;
        for k in 0..self.top() {
            for (ri, rho) in self.epis[k].iter().enumerate() {
                for j in 0..=k {
                    let s = DeltaMor::degeneracy(k + 1, j).unwrap();
                    let rs = compose(rho, &s).unwrap();
                    let (_, rsi) = self.index_for(&rs).unwrap();
                    for (wi, w) in self.levels[k].simplices.iter().enumerate() {
                        cases += 1;
                        let sw = sset.apply(&s, w).unwrap();
                        let lhs = self.u[k][ri].contains(wi);
                        let rhs = self.u[k + 1][rsi].contains(self.levels[k + 1].index_of(&sw).unwrap());
                        if lhs != rhs {
                            return Err(format!("ρ = {rho:?}, j = {j}, w = {w:?}"));
                        }
                    }
                }
            }
        }
        Ok(cases)
    }
}

/// `z ∈ U(σ)` straight from the definitions, with no tables: every
/// `δ ∈ I_σ` is enumerated and every extension evaluated on demand.
pub fn direct_u_contains(family: &AdmissibleFamily, sigma: &DeltaMor, z: &Simplex) -> bool {
    let sset = family.sset();
    let big_n = family.big_n();
    let k = sigma.dom();
    for kp in 0..=big_n.min(k) {
        for d in DeltaMor::enumerate(kp, k, MorphismKind::Mono) {
            let sd = compose(sigma, &d).unwrap();
            if !sd.is_epi() {
                continue;
            }
            let w = sset.apply(&d, z).unwrap();
            // w ∈ extend(σ∘δ)
            for tau in DeltaMor::enumerate(big_n, kp, MorphismKind::Epi) {
                let st = compose(&sd, &tau).unwrap();
                let v = sset.apply(&tau, &w).unwrap();
                let set = family.u_sigma(&st).unwrap();
                if !set.contains(family.level_n().index_of(&v).unwrap()) {
                    return false;
                }
            }
        }
    }
    true
}

/// `z ∈ U(f)` from the definitions.
pub fn direct_u_gamma_contains(family: &AdmissibleFamily, f: &GammaMor, z: &Simplex) -> bool {
    let (red, sup) = f.red_sup();
    let w = family.sset().apply(&sup, z).unwrap();
    direct_u_contains(family, &red.onto_to_epi().unwrap(), &w)
}
