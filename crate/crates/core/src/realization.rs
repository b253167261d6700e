//! The neighborhoods `U_{k,ε}` and `U′_{k,ε}` of a point of a thin
//! realization, their compatibility with faces and degeneracies, and the
//! reduction of a point `(y, β)` to its normal form.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::admissible::UTables;
use crate::bitset::BitSet;
use crate::delta::DeltaMor;
use crate::gamma::{hom_count, GammaMor, PosetCache};
use crate::geom::{pushforward, w_constraints, w_contains, BaryPoint, IntervalFamily};
use crate::ratlp::LinSystem;
use crate::rational::Q;
use crate::sset::{FiniteSSet, Simplex};
use crate::{Error, Result};

/// Largest hom-set `[n] ⇒ [k]` that [`NbhdSystem`] will tabulate.
pub const MAX_TABULATED_HOMS: u128 = 1 << 18;

#[derive(Clone, Debug)]
struct HomData {
    cache: PosetCache,
    // u_sets[f] ⊆ A_k
    u_sets: Vec<BitSet>,
}

/// `U_{k,ε}` and `U′_{k,ε}` for `k ≤ kmax`, with every hom-set `[n] ⇒ [k]`
/// and every `U(f)` tabulated.
#[derive(Clone, Debug)]
pub struct NbhdSystem {
    tables: UTables,
    intervals: IntervalFamily,
    eps: Q,
    kmax: usize,
    homs: Vec<HomData>,
}

impl NbhdSystem {
    pub fn build(tables: &UTables, intervals: &IntervalFamily, eps: &Q, kmax: usize) -> Result<Self> {
        let n = tables.family().n();
        if intervals.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: intervals.degree() });
        }
        if kmax > tables.top() {
            return Err(Error::DegreeTooLarge(kmax));
        }
        if hom_count(n, kmax, false) > MAX_TABULATED_HOMS {
            return Err(Error::InvalidParameter(format!("too many Γ′-morphisms [{n}] ⇒ [{kmax}] to tabulate")));
        }
        // validates ε
        w_constraints(&GammaMor::identity(n), eps, intervals, false)?;
        let mut homs = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            let cache = PosetCache::build(n, k);
            let u_sets = cache.elements().iter().map(|f| tables.u_of_gamma(f)).collect::<Result<Vec<_>>>()?;
            homs.push(HomData { cache, u_sets });
        }
        Ok(NbhdSystem { tables: tables.clone(), intervals: intervals.clone(), eps: eps.clone(), kmax, homs })
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn eps(&self) -> &Q {
        &self.eps
    }

    pub fn tables(&self) -> &UTables {
        &self.tables
    }

    pub fn intervals(&self) -> &IntervalFamily {
        &self.intervals
    }

    fn locate(&self, k: usize, y: &Simplex, beta: &BaryPoint) -> Result<usize> {
        if k > self.kmax {
            return Err(Error::DegreeTooLarge(k));
        }
        if y.degree() != k || beta.degree() != k {
            return Err(Error::DegreeMismatch { expected: k, found: if y.degree() != k { y.degree() } else { beta.degree() } });
        }
        self.tables.level(k).index_of(y).ok_or_else(|| Error::InvalidParameter(format!("{y:?} is not a simplex of this set")))
    }

    /// `(y, β) ∈ U_{k,ε}` (open) or `U′_{k,ε}` (closed).
    pub fn member(&self, k: usize, y: &Simplex, beta: &BaryPoint, closed: bool) -> Result<bool> {
        let yi = self.locate(k, y, beta)?;
        let h = &self.homs[k];
        let homs = h.cache.elements();
        let mut in_w: Vec<Option<bool>> = vec![None; homs.len()];
        for (fi, f) in homs.iter().enumerate() {
            if !h.u_sets[fi].contains(yi) {
                continue;
            }
            if closed {
                if w_contains(f, &self.eps, &self.intervals, true, beta)? {
                    return Ok(true);
                }
                continue;
            }
            let mut all = true;
            for gi in h.cache.upper_indices(fi) {
                let v = match in_w[gi] {
                    Some(v) => v,
                    None => {
                        let v = w_contains(&homs[gi], &self.eps, &self.intervals, false, beta)?;
                        in_w[gi] = Some(v);
                        v
                    }
                };
                if !v {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The morphisms `f` with `y ∈ U(f)`, in hom-set order.
    pub fn supporting_morphisms(&self, k: usize, y: &Simplex) -> Result<Vec<GammaMor>> {
        let yi = self.tables.level(k).index_of(y).ok_or(Error::DegreeMismatch { expected: k, found: y.degree() })?;
        let h = &self.homs[k];
        Ok(h.cache.elements().iter().enumerate().filter(|(fi, _)| h.u_sets[*fi].contains(yi)).map(|(_, f)| f.clone()).collect())
    }

    /// Explicit polyhedral pieces: for each `k`, each `y ∈ A_k` and each `f`
    /// with `y ∈ U(f)`, the system `⋂_{g ≥ f} W(g,ε)` and the system `W̄(f,ε)`.
    pub fn regions(&self) -> Result<Regions> {
        let mut pieces = Vec::with_capacity(self.kmax + 1);
        for k in 0..=self.kmax {
            let h = &self.homs[k];
            let homs = h.cache.elements();
            let mut per_y = vec![Vec::new(); self.tables.level(k).len()];
            for (fi, f) in homs.iter().enumerate() {
                let ys: Vec<usize> = h.u_sets[fi].iter().collect();
                if ys.is_empty() {
                    continue;
                }
                let mut open = LinSystem::new(k + 1);
                for gi in h.cache.upper_indices(fi) {
                    open.extend(&w_constraints(&homs[gi], &self.eps, &self.intervals, false)?)?;
                }
                let closed = w_constraints(f, &self.eps, &self.intervals, true)?;
                for yi in ys {
                    per_y[yi].push(Piece { f: f.clone(), open: open.clone(), closed: closed.clone() });
                }
            }
            pieces.push(per_y);
        }
        Ok(Regions { pieces })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub f: GammaMor,
    pub open: LinSystem,
    pub closed: LinSystem,
}

/// Region table `k ↦ y ↦ pieces`, indexed like the levels `A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pieces: Vec<Vec<Vec<Piece>>>,
}

impl Regions {
    pub fn pieces(&self, k: usize, y_index: usize) -> &[Piece] {
        &self.pieces[k][y_index]
    }

    pub fn member(&self, k: usize, y_index: usize, beta: &BaryPoint, closed: bool) -> bool {
        self.pieces[k][y_index].iter().any(|p| if closed { &p.closed } else { &p.open }.satisfied_by(beta.coords()))
    }

    /// Copy with one piece removed; `None` if there is no such piece.
    pub fn without_piece(&self, k: usize, y_index: usize, piece: usize) -> Option<Regions> {
        let mut r = self.clone();
        let ps = r.pieces.get_mut(k)?.get_mut(y_index)?;
        if piece >= ps.len() {
            return None;
        }
        ps.remove(piece);
        Some(r)
    }

    /// Copy with one piece replaced by the whole simplex.
    pub fn with_trivial_piece(&self, k: usize, y_index: usize, piece: usize) -> Option<Regions> {
        let mut r = self.clone();
        let p = r.pieces.get_mut(k)?.get_mut(y_index)?.get_mut(piece)?;
        p.open = LinSystem::new(k + 1);
        p.closed = LinSystem::new(k + 1);
        Some(r)
    }

    /// First `(k, y index, piece index)` with a non-empty piece list.
    pub fn first_piece(&self) -> Option<(usize, usize, usize)> {
        self.pieces.iter().enumerate().find_map(|(k, ys)| ys.iter().position(|ps| !ps.is_empty()).map(|y| (k, y, 0)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompatReport {
    pub cases: usize,
    pub violations: Vec<String>,
    pub violation_count: usize,
}

impl CompatReport {
    pub fn is_ok(&self) -> bool {
        self.violation_count == 0
    }

    pub fn merge(&mut self, other: CompatReport) {
        self.cases += other.cases;
        self.violation_count += other.violation_count;
        for v in other.violations {
            if self.violations.len() < 10 {
                self.violations.push(v);
            }
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < 10 {
                self.violations.push(what());
            }
        }
    }
}

/// Membership oracle `(k, y, β) ↦ bool`.
pub type Membership<'a> = dyn Fn(usize, &Simplex, &BaryPoint) -> Result<bool> + 'a;

/// `(y, (δ_i)_*β) ∈ V_k ⟺ (d_i y, β) ∈ V_{k−1}` for every `y ∈ A_k` and every
/// `β` in `points` (of degree `k−1`).
pub fn check_compat_face(member: &Membership<'_>, sset: &FiniteSSet, k: usize, i: usize, points: &[BaryPoint]) -> Result<CompatReport> {
    if k == 0 || i > k {
        return Err(Error::IndexOutOfRange { index: i, limit: k });
    }
    let d = DeltaMor::face(k - 1, i)?;
    let mut rep = CompatReport::default();
    for y in sset.simplices_of_degree(k) {
        let dy = sset.apply(&d, &y)?;
        for b in points {
            let lhs = member(k, &y, &pushforward(&d, b)?)?;
            let rhs = member(k - 1, &dy, b)?;
            rep.record(lhs == rhs, || format!("face k={k} i={i} y={y:?} β={b}: {lhs} vs {rhs}"));
        }
    }
    Ok(rep)
}

/// `(y, (σ_i)_*β) ∈ V_k ⟺ (s_i y, β) ∈ V_{k+1}` for every `y ∈ A_k` and every
/// `β` in `points` (of degree `k+1`).
pub fn check_compat_degen(member: &Membership<'_>, sset: &FiniteSSet, k: usize, i: usize, points: &[BaryPoint]) -> Result<CompatReport> {
    if i > k {
        return Err(Error::IndexOutOfRange { index: i, limit: k });
    }
    let s = DeltaMor::degeneracy(k + 1, i)?;
    let mut rep = CompatReport::default();
    for y in sset.simplices_of_degree(k) {
        let sy = sset.apply(&s, &y)?;
        for b in points {
            let lhs = member(k, &y, &pushforward(&s, b)?)?;
            let rhs = member(k + 1, &sy, b)?;
            rep.record(lhs == rhs, || format!("degeneracy k={k} i={i} y={y:?} β={b}: {lhs} vs {rhs}"));
        }
    }
    Ok(rep)
}

/// Reduces `(y, β)` to `(x, α)` with `x` non-degenerate and `α` interior,
/// representing the same point of the realization: zero coordinates are
/// removed through faces, then the degeneracy part of `y` is pushed onto `β`.
pub fn point_normal_form(sset: &FiniteSSet, y: &Simplex, beta: &BaryPoint) -> Result<(Simplex, BaryPoint)> {
    if y.degree() != beta.degree() {
        return Err(Error::DegreeMismatch { expected: y.degree(), found: beta.degree() });
    }
    let mut y = y.clone();
    let mut coords = beta.coords().to_vec();
    while let Some(j) = coords.iter().position(|c| c.is_zero()) {
        y = sset.face(&y, j)?;
        coords.remove(j);
    }
    let b = BaryPoint::new(coords)?;
    let alpha = pushforward(&y.epi, &b)?;
    Ok((Simplex::nondegenerate(y.cell), alpha))
}
