//! Barycentric points of standard simplices, the Δ* pushforward,
//! α-admissible interval families and the polytopes `W(f,ε)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::delta::DeltaMor;
use crate::gamma::GammaMor;
use crate::ratlp::{LinSystem, Relation, Row};
use crate::rational::{format_q, int, Q};
use crate::{Error, Result};

/// A point `(t_0, …, t_k)` of `Δ^k`: non-negative, summing to 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaryPoint {
    coords: Vec<Q>,
}

impl BaryPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("no coordinates".into()));
        }
        if let Some(c) = coords.iter().find(|c| c.is_negative()) {
            return Err(Error::InvalidPoint(format!("negative coordinate {}", format_q(c))));
        }
        let s: Q = coords.iter().sum();
        if !s.is_one() {
            return Err(Error::InvalidPoint(format!("coordinates sum to {}", format_q(&s))));
        }
        Ok(BaryPoint { coords })
    }

    /// Rescale non-negative weights (not all zero) onto the simplex.
    pub fn normalized(weights: Vec<Q>) -> Result<Self> {
        let s: Q = weights.iter().sum();
        if weights.iter().any(|c| c.is_negative()) || !s.is_positive() {
            return Err(Error::InvalidPoint("weights must be non-negative with positive sum".into()));
        }
        Ok(BaryPoint { coords: weights.into_iter().map(|c| c / &s).collect() })
    }

    pub fn vertex(k: usize, p: usize) -> Result<Self> {
        if p > k {
            return Err(Error::IndexOutOfRange { index: p, limit: k });
        }
        let mut coords = vec![Q::zero(); k + 1];
        coords[p] = Q::one();
        Ok(BaryPoint { coords })
    }

    pub fn barycenter(k: usize) -> Self {
        BaryPoint { coords: vec![Q::new(1.into(), (k as i64 + 1).into()); k + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    /// `θ·u + (1−θ)·v` for `θ ∈ [0,1]`.
    pub fn mix(u: &BaryPoint, v: &BaryPoint, theta: &Q) -> Result<BaryPoint> {
        if u.degree() != v.degree() {
            return Err(Error::DegreeMismatch { expected: u.degree(), found: v.degree() });
        }
        if theta.is_negative() || *theta > Q::one() {
            return Err(Error::InvalidParameter(format!("θ = {} not in [0,1]", format_q(theta))));
        }
        let rest = Q::one() - theta;
        Ok(BaryPoint { coords: u.coords.iter().zip(&v.coords).map(|(a, b)| theta * a + &rest * b).collect() })
    }

    pub fn without(&self, j: usize) -> Vec<Q> {
        self.coords.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, c)| c.clone()).collect()
    }
}

impl fmt::Debug for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `d_*(t)_j = Σ_{i ∈ d⁻¹(j)} t_i`.
pub fn pushforward(d: &DeltaMor, t: &BaryPoint) -> Result<BaryPoint> {
    if t.degree() != d.dom() {
        return Err(Error::DegreeMismatch { expected: d.dom(), found: t.degree() });
    }
    let mut coords = vec![Q::zero(); d.cod() + 1];
    for (i, c) in t.coords.iter().enumerate() {
        coords[d.at(i)] += c;
    }
    Ok(BaryPoint { coords })
}

pub fn is_interior(t: &BaryPoint) -> bool {
    t.is_interior()
}

/// `λ_{i,j} = t_j/t_i` for `i < j`.
pub fn lambda_ratios(alpha: &BaryPoint) -> Result<BTreeMap<(usize, usize), Q>> {
    if !alpha.is_interior() {
        return Err(Error::NotInterior);
    }
    let n = alpha.degree();
    let mut out = BTreeMap::new();
    for i in 0..=n {
        for j in i + 1..=n {
            out.insert((i, j), &alpha.coords[j] / &alpha.coords[i]);
        }
    }
    Ok(out)
}

/// Open intervals `I_{i,j} = (a_{i,j}, b_{i,j})`, `0 < a < b`, for `i < j` in `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalFamily {
    n: usize,
    bounds: BTreeMap<(usize, usize), (Q, Q)>,
}

impl IntervalFamily {
    pub fn new(n: usize, bounds: BTreeMap<(usize, usize), (Q, Q)>) -> Result<Self> {
        for i in 0..=n {
            for j in i + 1..=n {
                let Some((a, b)) = bounds.get(&(i, j)) else {
                    return Err(Error::InvalidParameter(format!("missing interval for ({i},{j})")));
                };
                if !a.is_positive() || a >= b {
                    return Err(Error::InvalidParameter(format!("bad interval ({},{}) at ({i},{j})", format_q(a), format_q(b))));
                }
            }
        }
        if let Some(&(i, j)) = bounds.keys().find(|&&(i, j)| i >= j || j > n) {
            return Err(Error::InvalidParameter(format!("unexpected pair ({i},{j})")));
        }
        Ok(IntervalFamily { n, bounds })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&(Q, Q)> {
        self.bounds.get(&(i, j))
    }

    pub fn bounds(&self) -> &BTreeMap<(usize, usize), (Q, Q)> {
        &self.bounds
    }

    /// `λ_{i,j}(α) ∈ I_{i,j}` for every pair.
    pub fn admits(&self, alpha: &BaryPoint) -> bool {
        if alpha.degree() != self.n {
            return false;
        }
        match lambda_ratios(alpha) {
            Ok(l) => l.iter().all(|(p, v)| {
                let (a, b) = &self.bounds[p];
                a < v && v < b
            }),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((i, j), (a, b)) in &self.bounds {
            m.entry(&format_args!("{i},{j}"), &format_args!("({}, {})", format_q(a), format_q(b)));
        }
        m.finish()
    }
}

/// `I_{i,j} = (λ_{i,j}/s, λ_{i,j}·s)`.
pub fn make_admissible(alpha: &BaryPoint, spread: &Q) -> Result<IntervalFamily> {
    if *spread <= Q::one() {
        return Err(Error::InvalidParameter(format!("spread {} must exceed 1", format_q(spread))));
    }
    let bounds = lambda_ratios(alpha)?.into_iter().map(|(p, l)| (p, (&l / spread, &l * spread))).collect();
    IntervalFamily::new(alpha.degree(), bounds)
}

/// Admissible families for `α` and `β` whose closed intervals at `(k,l)` are
/// disjoint. Both start at spread 2 and shrink by `s ↦ 1 + (s−1)/3`.
pub fn make_disjoint_pair(alpha: &BaryPoint, beta: &BaryPoint, k: usize, l: usize) -> Result<(IntervalFamily, IntervalFamily)> {
    if alpha.degree() != beta.degree() {
        return Err(Error::DegreeMismatch { expected: alpha.degree(), found: beta.degree() });
    }
    if k >= l || l > alpha.degree() {
        return Err(Error::IndexOutOfRange { index: l, limit: alpha.degree() });
    }
    let la = lambda_ratios(alpha)?.remove(&(k, l)).unwrap();
    let lb = lambda_ratios(beta)?.remove(&(k, l)).unwrap();
    if la == lb {
        return Err(Error::EqualRatios(k, l));
    }
    let (lo, hi) = if la < lb { (la, lb) } else { (lb, la) };
    let three = int(3);
    let mut s = int(2);
    while &lo * &s >= &hi / &s {
        s = Q::one() + (s - Q::one()) / &three;
    }
    Ok((make_admissible(alpha, &s)?, make_admissible(beta, &s)?))
}

/// The closed intervals of two families at `(i,j)` do not meet.
pub fn closures_disjoint_at(a: &IntervalFamily, b: &IntervalFamily, i: usize, j: usize) -> bool {
    match (a.get(i, j), b.get(i, j)) {
        (Some((a0, a1)), Some((b0, b1))) => a1 < b0 || b1 < a0,
        _ => false,
    }
}

fn check_eps(eps: &Q) -> Result<()> {
    if !eps.is_positive() || *eps >= Q::one() {
        return Err(Error::InvalidParameter(format!("ε = {} not in (0,1)", format_q(eps))));
    }
    Ok(())
}

fn check_family(f: &GammaMor, family: &IntervalFamily) -> Result<()> {
    if family.degree() != f.dom() {
        return Err(Error::DegreeMismatch { expected: f.dom(), found: family.degree() });
    }
    Ok(())
}

fn block_row(f: &GammaMor, i: usize, scale: &Q) -> Vec<Q> {
    let mut c = vec![Q::zero(); f.cod() + 1];
    for p in f.block_elements(i) {
        c[p] = scale.clone();
    }
    c
}

/// `W(f,ε)` (or its closure) as a linear system over `t_0 … t_{k′}`.
pub fn w_constraints(f: &GammaMor, eps: &Q, family: &IntervalFamily, closed: bool) -> Result<LinSystem> {
    check_eps(eps)?;
    check_family(f, family)?;
    let n = f.dom();
    let kp = f.cod();
    let mut sys = LinSystem::new(kp + 1);
    let (strict, weak) = if closed { (Relation::Le, Relation::Le) } else { (Relation::Lt, Relation::Le) };
    if !closed {
        for i in 0..=n {
            sys.push(Row::gt(block_row(f, i, &Q::one()), Q::zero()))?;
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            let (a, b) = family.get(i, j).unwrap();
            // a·S_i − S_j < 0 and S_j − b·S_i < 0
            let sj = block_row(f, j, &Q::one());
            let lo: Vec<Q> = block_row(f, i, a).into_iter().zip(&sj).map(|(x, y)| x - y).collect();
            let hi: Vec<Q> = block_row(f, i, b).into_iter().zip(&sj).map(|(x, y)| y - x).collect();
            sys.push(Row::new(lo, strict, Q::zero()))?;
            sys.push(Row::new(hi, strict, Q::zero()))?;
        }
    }
    let mut mass = vec![Q::zero(); kp + 1];
    for i in 0..=n {
        for p in f.block_elements(i) {
            mass[p] = Q::one();
        }
    }
    let rhs = Q::one() - eps;
    if closed {
        sys.push(Row::ge(mass, rhs))?;
    } else {
        sys.push(Row::gt(mass, rhs))?;
    }
    for p in 0..=kp {
        let mut c = vec![Q::zero(); kp + 1];
        c[p] = -Q::one();
        sys.push(Row::new(c, weak, Q::zero()))?;
    }
    sys.push(Row::new(vec![Q::one(); kp + 1], Relation::Eq, Q::one()))?;
    Ok(sys)
}

/// Membership of `t` in `W(f,ε)` (or its closure), by evaluating the compiled system.
pub fn w_member(f: &GammaMor, eps: &Q, family: &IntervalFamily, closed: bool, t: &BaryPoint) -> Result<bool> {
    if t.degree() != f.cod() {
        return Err(Error::DegreeMismatch { expected: f.cod(), found: t.degree() });
    }
    Ok(w_constraints(f, eps, family, closed)?.satisfied_by(&t.coords))
}

/// Same answer as [`w_member`] without building the system.
pub fn w_contains(f: &GammaMor, eps: &Q, family: &IntervalFamily, closed: bool, t: &BaryPoint) -> Result<bool> {
    check_eps(eps)?;
    check_family(f, family)?;
    if t.degree() != f.cod() {
        return Err(Error::DegreeMismatch { expected: f.cod(), found: t.degree() });
    }
    let sums: Vec<Q> = f.blocks().iter().map(|&b| (0..=f.cod()).filter(|p| b >> p & 1 == 1).map(|p| &t.coords[p]).sum()).collect();
    Ok(sums_in_w(&sums, eps, family, closed))
}

/// The `W` test on block sums `S_0 … S_n` (their total is the covered mass).
pub fn sums_in_w(sums: &[Q], eps: &Q, family: &IntervalFamily, closed: bool) -> bool {
    let total: Q = sums.iter().sum();
    let rhs = Q::one() - eps;
    if closed {
        if total < rhs {
            return false;
        }
    } else if total <= rhs || sums.iter().any(|s| !s.is_positive()) {
        return false;
    }
    let n = sums.len() - 1;
    for i in 0..=n {
        for j in i + 1..=n {
            let (a, b) = family.get(i, j).unwrap();
            let (lo, hi) = (a * &sums[i], b * &sums[i]);
            let ok = if closed { lo <= sums[j] && sums[j] <= hi } else { lo < sums[j] && sums[j] < hi };
            if !ok {
                return false;
            }
        }
    }
    true
}
