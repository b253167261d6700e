//! Finite simplicial sets in Eilenberg–Zilber normal form. Every simplex is
//! stored as a pair `(epi, cell)` with `cell` non-degenerate; only the faces
//! of non-degenerate cells are tabulated.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::delta::{compose, DeltaMor, MorphismKind};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

/// `epi^*(cell)`, of degree `dom(epi)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub epi: DeltaMor,
    pub cell: CellId,
}

impl Simplex {
    pub fn nondegenerate(cell: CellId) -> Self {
        Simplex { epi: DeltaMor::identity(cell.dim), cell }
    }

    pub fn degree(&self) -> usize {
        self.epi.dom()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.epi.is_identity()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^*(c{}.{})", self.epi.images(), self.cell.dim, self.cell.index)
    }
}

pub fn is_degenerate(s: &Simplex) -> bool {
    s.is_degenerate()
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSSet {
    names: Vec<Vec<String>>,
    by_name: BTreeMap<String, CellId>,
    // faces[p][c][i] = d_i of cell c of degree p (empty for p = 0)
    faces: Vec<Vec<Vec<Simplex>>>,
}

/// All simplices of one degree, in a fixed order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct Level {
    pub degree: usize,
    pub simplices: Vec<Simplex>,
    index: BTreeMap<Simplex, usize>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }
}

fn subset_name(s: &[usize]) -> String {
    let prefix = match s.len() {
        1 => "v",
        2 => "e",
        3 => "t",
        _ => "s",
    };
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    if s.iter().all(|&v| v < 10) {
        format!("{prefix}{}", parts.concat())
    } else {
        format!("{prefix}{}", parts.join("_"))
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    DeltaMor::enumerate(size - 1, n, MorphismKind::Mono).into_iter().map(|m| m.images().to_vec()).collect()
}

impl FiniteSSet {
    /// Builds and validates a simplicial set from cell names per degree and
    /// the faces `d_0 … d_p` of each cell of positive degree.
    pub fn from_named(cells: Vec<Vec<String>>, faces: &BTreeMap<String, Vec<(DeltaMor, String)>>) -> Result<Self> {
        if cells.is_empty() || cells.last().unwrap().is_empty() {
            return Err(Error::InvalidSSet("top degree has no cells".into()));
        }
        let mut by_name = BTreeMap::new();
        for (p, names) in cells.iter().enumerate() {
            for (index, name) in names.iter().enumerate() {
                if by_name.insert(name.clone(), CellId { dim: p, index }).is_some() {
                    return Err(Error::InvalidSSet(format!("duplicate cell `{name}`")));
                }
            }
        }
        if let Some(extra) = faces.keys().find(|k| !by_name.contains_key(*k)) {
            return Err(Error::UnknownCell(extra.clone()));
        }
        let mut table = Vec::with_capacity(cells.len());
        for (p, names) in cells.iter().enumerate() {
            let mut level = Vec::with_capacity(names.len());
            for name in names {
                let given = faces.get(name).map(|v| v.as_slice()).unwrap_or(&[]);
                if p == 0 {
                    if !given.is_empty() {
                        return Err(Error::InvalidSSet(format!("vertex `{name}` has faces")));
                    }
                    level.push(Vec::new());
                    continue;
                }
                if given.len() != p + 1 {
                    return Err(Error::InvalidSSet(format!("cell `{name}` needs {} faces, has {}", p + 1, given.len())));
                }
                let mut fs = Vec::with_capacity(p + 1);
                for (i, (epi, target)) in given.iter().enumerate() {
                    let cell = *by_name.get(target).ok_or_else(|| Error::UnknownCell(target.clone()))?;
                    if !epi.is_epi() || epi.dom() != p - 1 || epi.cod() != cell.dim {
                        return Err(Error::InvalidSSet(format!("face d_{i} of `{name}` has an invalid epi {epi:?} onto `{target}`")));
                    }
                    fs.push(Simplex { epi: epi.clone(), cell });
                }
                level.push(fs);
            }
            table.push(level);
        }
        let s = FiniteSSet { names: cells, by_name, faces: table };
        s.validate()?;
        Ok(s)
    }

    /// `Δ[n]`: one cell per non-empty subset of `[n]`.
    pub fn standard_simplex(n: usize) -> Self {
        Self::subset_complex(n, n)
    }

    /// `∂Δ[n]` for `n ≥ 1`: `Δ[n]` without its top cell.
    pub fn boundary(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("∂Δ[0] is empty".into()));
        }
        Ok(Self::subset_complex(n, n - 1))
    }

    fn subset_complex(n: usize, top: usize) -> Self {
        let mut cells = Vec::new();
        let mut faces = BTreeMap::new();
        for p in 0..=top {
            let subs = subsets_of_size(n, p + 1);
            for s in &subs {
                if p > 0 {
                    let fs = (0..=p)
                        .map(|i| {
                            let mut t = s.clone();
                            t.remove(i);
                            (DeltaMor::identity(p - 1), subset_name(&t))
                        })
                        .collect();
                    faces.insert(subset_name(s), fs);
                }
            }
            cells.push(subs.iter().map(|s| subset_name(s)).collect());
        }
        Self::from_named(cells, &faces).expect("subset complexes are valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len() - 1
    }

    pub fn cell_count(&self, p: usize) -> usize {
        self.names.get(p).map_or(0, |v| v.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.names.iter().map(|v| v.len()).collect()
    }

    pub fn cells(&self, p: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cell_count(p)).map(move |index| CellId { dim: p, index })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..=self.dim()).flat_map(move |p| self.cells(p))
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.names[c.dim][c.index]
    }

    pub fn cell_by_name(&self, name: &str) -> Result<CellId> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownCell(name.into()))
    }

    pub fn names(&self) -> &[Vec<String>] {
        &self.names
    }

    /// The stored normal form of `d_i(c)`.
    pub fn stored_face(&self, c: CellId, i: usize) -> &Simplex {
        &self.faces[c.dim][c.index][i]
    }

    /// `δ^*(s)` in normal form.
    pub fn apply(&self, delta: &DeltaMor, s: &Simplex) -> Result<Simplex> {
        if delta.cod() != s.degree() {
            return Err(Error::DegreeMismatch { expected: s.degree(), found: delta.cod() });
        }
        Ok(self.apply_unchecked(delta, s))
    }

    fn apply_unchecked(&self, delta: &DeltaMor, s: &Simplex) -> Simplex {
        let (e1, m) = compose(&s.epi, delta).unwrap().epi_mono_factor();
        let inner = self.pull_mono(&m, s.cell);
        Simplex { epi: compose(&inner.epi, &e1).unwrap(), cell: inner.cell }
    }

    // m^*(c) for a mono m into [dim c]
    fn pull_mono(&self, m: &DeltaMor, c: CellId) -> Simplex {
        if m.is_identity() {
            return Simplex::nondegenerate(c);
        }
        let imgs = m.images();
        let i = (0..=m.cod()).find(|v| imgs.binary_search(v).is_err()).unwrap();
        // m = δ_i ∘ m′
        let rest = DeltaMor::from_raw(m.cod() - 1, imgs.iter().map(|&v| if v > i { v - 1 } else { v }).collect());
        self.apply_unchecked(&rest, self.stored_face(c, i))
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let k = s.degree();
        if k == 0 {
            return Err(Error::InvalidParameter("vertices have no faces".into()));
        }
        self.apply(&DeltaMor::face(k - 1, i)?, s)
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        self.apply(&DeltaMor::degeneracy(s.degree() + 1, i)?, s)
    }

    pub fn is_degenerate(&self, s: &Simplex) -> bool {
        s.is_degenerate()
    }

    /// `A_k`: pairs `(epi [k]↠[p], cell of degree p)` for `p ≤ min(k, dim)`,
    /// ordered by `p`, then epi, then cell.
    pub fn simplices_of_degree(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for p in 0..=k.min(self.dim()) {
            for epi in DeltaMor::enumerate(k, p, MorphismKind::Epi) {
                for cell in self.cells(p) {
                    out.push(Simplex { epi: epi.clone(), cell });
                }
            }
        }
        out
    }

    pub fn level(&self, k: usize) -> Level {
        let simplices = self.simplices_of_degree(k);
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Level { degree: k, simplices, index }
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` on every cell.
    pub fn validate(&self) -> Result<()> {
        for p in 2..=self.dim() {
            for c in self.cells(p) {
                for j in 0..=p {
                    for i in 0..j {
                        let lhs = self.apply_unchecked(&DeltaMor::face(p - 2, i).unwrap(), self.stored_face(c, j));
                        let rhs = self.apply_unchecked(&DeltaMor::face(p - 2, j - 1).unwrap(), self.stored_face(c, i));
                        if lhs != rhs {
                            return Err(Error::IdentityViolation { cell: self.cell_name(c).into(), i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Conditions of the degeneracy lemma for `σ^*(x)` against `τ`:
    /// (i) `σ^*(x) ∈ τ^*(A_m)`, (ii) `σ = ρ∘τ` for some epi `ρ`,
    /// (iii) `τ(i) = τ(j) ⇒ σ(i) = σ(j)`.
    pub fn degen_lemma_check(&self, x: &Simplex, sigma: &DeltaMor, tau: &DeltaMor) -> Result<(bool, bool, bool)> {
        if x.is_degenerate() {
            return Err(Error::InvalidParameter("x must be non-degenerate".into()));
        }
        if !sigma.is_epi() || !tau.is_epi() {
            return Err(Error::NotEpi);
        }
        if sigma.cod() != x.degree() || sigma.dom() != tau.dom() {
            return Err(Error::DegreeMismatch { expected: x.degree(), found: sigma.cod() });
        }
        let target = self.apply_unchecked(sigma, x);
        let m = tau.cod();
        let c1 = self.simplices_of_degree(m).iter().any(|z| self.apply_unchecked(tau, z) == target);
        let c2 = DeltaMor::enumerate(m, x.degree(), MorphismKind::Epi).iter().any(|rho| compose(rho, tau).unwrap() == *sigma);
        let n = sigma.dom();
        let c3 = (0..=n).all(|i| (0..=n).all(|j| tau.at(i) != tau.at(j) || sigma.at(i) == sigma.at(j)));
        Ok((c1, c2, c3))
    }
}

impl fmt::Debug for FiniteSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSSet").field("cells", &self.names).finish()
    }
}
