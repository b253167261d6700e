//! Exact feasibility of finite systems of strict and weak linear
//! inequalities and equalities over ℚ, by Fourier–Motzkin elimination.
//! Feasible answers carry a witness that is re-checked exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{format_q, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Lt,
    Le,
    Eq,
}

/// `Σ coeffs[v]·x_v  rel  rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Row {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

impl Row {
    pub fn new(coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Self {
        Row { coeffs, rel, rhs }
    }

    /// `Σ coeffs·x > rhs`, stored as `−Σ coeffs·x < −rhs`.
    pub fn gt(coeffs: Vec<Q>, rhs: Q) -> Self {
        Row { coeffs: coeffs.into_iter().map(|c| -c).collect(), rel: Relation::Lt, rhs: -rhs }
    }

    pub fn ge(coeffs: Vec<Q>, rhs: Q) -> Self {
        Row { coeffs: coeffs.into_iter().map(|c| -c).collect(), rel: Relation::Le, rhs: -rhs }
    }

    pub fn lhs(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(Q::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let l = self.lhs(x);
        match self.rel {
            Relation::Lt => l < self.rhs,
            Relation::Le => l <= self.rhs,
            Relation::Eq => l == self.rhs,
        }
    }

    fn is_strict(&self) -> bool {
        self.rel == Relation::Lt
    }
}

impl fmt::Debug for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·x{}", format_q(c), v)?;
        }
        if first {
            write!(f, "0")?;
        }
        let r = match self.rel {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
        };
        write!(f, " {} {}", r, format_q(&self.rhs))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinSystem {
    nvars: usize,
    rows: Vec<Row>,
}

impl LinSystem {
    pub fn new(nvars: usize) -> Self {
        LinSystem { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn push(&mut self, row: Row) -> Result<()> {
        if row.coeffs.len() != self.nvars {
            return Err(Error::DegreeMismatch { expected: self.nvars, found: row.coeffs.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn extend(&mut self, other: &LinSystem) -> Result<()> {
        if other.nvars != self.nvars {
            return Err(Error::DegreeMismatch { expected: self.nvars, found: other.nvars });
        }
        self.rows.extend(other.rows.iter().cloned());
        Ok(())
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        x.len() == self.nvars && self.rows.iter().all(|r| r.holds(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub status: Status,
    pub witness: Option<Vec<Q>>,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }

    fn infeasible() -> Self {
        FeasibilityResult { status: Status::Infeasible, witness: None }
    }
}

pub fn eval(row: &Row, x: &[Q]) -> bool {
    row.holds(x)
}

pub fn feasible(sys: &LinSystem) -> Result<FeasibilityResult> {
    let order: Vec<usize> = (0..sys.nvars).collect();
    feasible_with_order(sys, &order)
}

/// `true` iff the two systems (over the same variables) have no common solution.
pub fn disjoint(a: &LinSystem, b: &LinSystem) -> Result<bool> {
    let mut both = a.clone();
    both.extend(b)?;
    Ok(!feasible(&both)?.is_feasible())
}

// Weak inequality Σ a·x ≤ rhs over the active variables (plus the slack
// variable, if any). `hist` is the set of input rows it was combined from.
#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<Q>,
    rhs: Q,
    hist: Vec<u64>,
}

fn hist_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

fn hist_len(h: &[u64]) -> usize {
    h.iter().map(|w| w.count_ones() as usize).sum()
}

struct Subst {
    var: usize,
    // x_var = rhs − Σ a·x  (a[var] = 0)
    a: Vec<Q>,
    rhs: Q,
}

/// Feasibility with an explicit elimination order (a permutation of the
/// variables). The answer does not depend on the order.
pub fn feasible_with_order(sys: &LinSystem, order: &[usize]) -> Result<FeasibilityResult> {
    solve(sys, order, true)
}

// Strict rows a·x < b become a·x + t ≤ b with one slack t ≤ 1; the system is
// feasible iff the projection onto t reaches some t > 0. The system is then
// weak, so rows combined from more than j+1 input rows after j eliminations
// are redundant and dropped when `prune` is set.
fn solve(sys: &LinSystem, order: &[usize], prune: bool) -> Result<FeasibilityResult> {
    let n = sys.nvars;
    let mut check = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || core::mem::replace(&mut check[v], true)) {
        return Err(Error::InvalidParameter(format!("{order:?} is not an ordering of {n} variables")));
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let slack = sys.rows.iter().any(Row::is_strict);
    let width = n + slack as usize;
    let words = (sys.rows.len() + 1).div_ceil(64);
    let single = |i: usize| {
        let mut h = vec![0u64; words];
        h[i / 64] |= 1 << (i % 64);
        h
    };

    // equalities first
    let mut eqs: Vec<(Vec<Q>, Q)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for r in &sys.rows {
        let mut a = r.coeffs.clone();
        if slack {
            a.push(if r.is_strict() { Q::one() } else { Q::zero() });
        }
        match r.rel {
            Relation::Eq => eqs.push((a, r.rhs.clone())),
            _ => {
                let hist = single(ineqs.len());
                ineqs.push(Ineq { a, rhs: r.rhs.clone(), hist });
            }
        }
    }
    if slack {
        let mut a = vec![Q::zero(); width];
        a[n] = Q::one();
        let hist = single(ineqs.len());
        ineqs.push(Ineq { a, rhs: Q::one(), hist });
    }
    let mut substs: Vec<Subst> = Vec::new();
    while let Some((a, rhs)) = eqs.pop() {
        let Some(var) = (0..n).filter(|&v| !a[v].is_zero()).min_by_key(|&v| pos[v]) else {
            if rhs.is_zero() {
                continue;
            }
            return Ok(FeasibilityResult::infeasible());
        };
        let piv = a[var].clone();
        let mut sa: Vec<Q> = a.iter().map(|c| c / &piv).collect();
        sa[var] = Q::zero();
        let srhs = &rhs / &piv;
        let apply = |coeffs: &mut Vec<Q>, r: &mut Q| {
            let c = core::mem::replace(&mut coeffs[var], Q::zero());
            if c.is_zero() {
                return;
            }
            for (v, s) in sa.iter().enumerate() {
                if !s.is_zero() {
                    coeffs[v] -= &c * s;
                }
            }
            *r -= &c * &srhs;
        };
        for (ca, cr) in eqs.iter_mut() {
            apply(ca, cr);
        }
        for q in ineqs.iter_mut() {
            apply(&mut q.a, &mut q.rhs);
        }
        substs.push(Subst { var, a: sa, rhs: srhs });
    }

    let Some(mut rows) = normalize(ineqs) else {
        return Ok(FeasibilityResult::infeasible());
    };
    let substituted: Vec<usize> = substs.iter().map(|s| s.var).collect();
    let elim: Vec<usize> = order.iter().copied().filter(|v| !substituted.contains(v)).collect();
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::new();
    for (j, &v) in elim.iter().enumerate() {
        let (with, without): (Vec<Ineq>, Vec<Ineq>) = rows.into_iter().partition(|r| !r.a[v].is_zero());
        let mut next = without;
        let (up, lo): (Vec<&Ineq>, Vec<&Ineq>) = with.iter().partition(|r| r.a[v].is_positive());
        for p in &up {
            for q in &lo {
                let hist = hist_union(&p.hist, &q.hist);
                if prune && hist_len(&hist) > j + 2 {
                    continue;
                }
                let sp = p.a[v].clone();
                let sq = -q.a[v].clone();
                let a: Vec<Q> = p.a.iter().zip(&q.a).map(|(x, y)| x / &sp + y / &sq).collect();
                next.push(Ineq { a, rhs: &p.rhs / &sp + &q.rhs / &sq, hist });
            }
        }
        stages.push((v, with));
        match normalize(next) {
            Some(r) => rows = r,
            None => return Ok(FeasibilityResult::infeasible()),
        }
    }

    let mut x = vec![Q::zero(); width];
    if slack {
        // only rows in t remain; the row t ≤ 1 (or a tighter one) is among them
        let (lo, hi) = bounds(&rows, n, &x);
        let hi = hi.expect("t is bounded above");
        if !hi.is_positive() || lo.is_some_and(|l| l > hi) {
            return Ok(FeasibilityResult::infeasible());
        }
        x[n] = hi;
    }
    for (v, with) in stages.iter().rev() {
        x[*v] = match bounds(with, *v, &x) {
            (Some(l), Some(h)) if l == h => l,
            (Some(l), Some(h)) => (l + h) / Q::from_integer(2.into()),
            (Some(l), None) => l + Q::one(),
            (None, Some(h)) => h - Q::one(),
            (None, None) => Q::zero(),
        };
    }
    for s in substs.iter().rev() {
        let rest = s.a.iter().zip(&x).fold(Q::zero(), |acc, (c, v)| acc + c * v);
        x[s.var] = &s.rhs - rest;
    }
    x.truncate(n);
    if !sys.satisfied_by(&x) {
        return Err(Error::InvalidParameter(format!("internal: witness {x:?} fails the system")));
    }
    Ok(FeasibilityResult { status: Status::Feasible, witness: Some(x) })
}

// Tightest bounds on x_v from rows in which it occurs, the other variables fixed.
fn bounds(rows: &[Ineq], v: usize, x: &[Q]) -> (Option<Q>, Option<Q>) {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for r in rows {
        if r.a[v].is_zero() {
            continue;
        }
        let rest = r.a.iter().enumerate().filter(|&(u, _)| u != v).fold(Q::zero(), |acc, (u, c)| acc + c * &x[u]);
        let b = (&r.rhs - rest) / &r.a[v];
        if r.a[v].is_positive() {
            if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        } else if lo.as_ref().is_none_or(|l| b > *l) {
            lo = Some(b);
        }
    }
    (lo, hi)
}

fn hist_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

// Scale rows so the first nonzero coefficient is ±1 and check constant rows;
// `None` if a constant row fails. A row is dropped when another row with the
// same left-hand side is at least as tight and combined from a subset of its
// input rows, so everything derived from it later is dominated as well.
fn normalize(rows: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Q>, Vec<(Q, Vec<u64>)>> = BTreeMap::new();
    for mut r in rows {
        match r.a.iter().find(|c| !c.is_zero()).cloned() {
            None => {
                if r.rhs.is_negative() {
                    return None;
                }
                continue;
            }
            Some(c) => {
                let s = c.abs();
                if !s.is_one() {
                    for v in r.a.iter_mut() {
                        *v /= &s;
                    }
                    r.rhs /= &s;
                }
            }
        }
        let kept = best.entry(r.a).or_default();
        if kept.iter().any(|(rhs, h)| *rhs <= r.rhs && hist_subset(h, &r.hist)) {
            continue;
        }
        kept.retain(|(rhs, h)| !(r.rhs <= *rhs && hist_subset(&r.hist, h)));
        kept.push((r.rhs, r.hist));
    }
    Some(best.into_iter().flat_map(|(a, kept)| kept.into_iter().map(move |(rhs, hist)| Ineq { a: a.clone(), rhs, hist })).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn row(c: &[i64], rel: Relation, rhs: i64) -> Row {
        Row::new(c.iter().map(|&v| int(v)).collect(), rel, int(rhs))
    }

    fn sys(n: usize, rows: Vec<Row>) -> LinSystem {
        let mut s = LinSystem::new(n);
        for r in rows {
            s.push(r).unwrap();
        }
        s
    }

    #[test]
    fn strict_and_weak_bounds() {
        // x ≤ 0 and x ≥ 0
        let s = sys(1, vec![row(&[1], Relation::Le, 0), row(&[-1], Relation::Le, 0)]);
        let r = feasible(&s).unwrap();
        assert!(r.is_feasible());
        assert_eq!(r.witness.unwrap(), vec![int(0)]);
        // x < 0 and x ≥ 0
        let s = sys(1, vec![row(&[1], Relation::Lt, 0), row(&[-1], Relation::Le, 0)]);
        assert_eq!(feasible(&s).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn open_triangle() {
        // x > 0, y > 0, x + y < 1
        let s = sys(2, vec![row(&[-1, 0], Relation::Lt, 0), row(&[0, -1], Relation::Lt, 0), row(&[1, 1], Relation::Lt, 1)]);
        let r = feasible(&s).unwrap();
        assert!(s.satisfied_by(r.witness.as_ref().unwrap()));
        // adding x + y > 1 empties it
        let mut t = s.clone();
        t.push(Row::gt(vec![int(1), int(1)], int(1))).unwrap();
        assert!(!feasible(&t).unwrap().is_feasible());
    }

    #[test]
    fn equalities_are_substituted() {
        // x + y = 1, x − y = 1/2, y > 0
        let mut s = sys(2, vec![row(&[1, 1], Relation::Eq, 1), row(&[0, -1], Relation::Lt, 0)]);
        s.push(Row::new(vec![int(1), int(-1)], Relation::Eq, q(1, 2))).unwrap();
        let r = feasible(&s).unwrap();
        assert_eq!(r.witness.unwrap(), vec![q(3, 4), q(1, 4)]);
        s.push(row(&[0, 1], Relation::Le, 0)).unwrap();
        assert!(!feasible(&s).unwrap().is_feasible());
        // inconsistent equalities
        let s = sys(1, vec![row(&[1], Relation::Eq, 1), row(&[2], Relation::Eq, 1)]);
        assert!(!feasible(&s).unwrap().is_feasible());
        let s = sys(1, vec![row(&[0], Relation::Eq, 1)]);
        assert!(!feasible(&s).unwrap().is_feasible());
    }

    #[test]
    fn unconstrained_and_empty() {
        let r = feasible(&LinSystem::new(3)).unwrap();
        assert_eq!(r.witness.unwrap(), vec![int(0); 3]);
        let s = sys(0, vec![Row::new(vec![], Relation::Lt, int(0))]);
        assert!(!feasible(&s).unwrap().is_feasible());
    }

    #[test]
    fn disjoint_intervals() {
        let a = sys(1, vec![row(&[1], Relation::Lt, 1), row(&[-1], Relation::Lt, 0)]);
        let b = sys(1, vec![row(&[-1], Relation::Le, -1), row(&[1], Relation::Lt, 2)]);
        assert!(disjoint(&a, &b).unwrap());
        let c = sys(1, vec![row(&[-1], Relation::Le, 0)]);
        assert!(!disjoint(&a, &c).unwrap());
        assert!(disjoint(&a, &LinSystem::new(2)).is_err());
    }

    #[test]
    fn bad_orders_rejected() {
        let s = LinSystem::new(2);
        assert!(feasible_with_order(&s, &[0]).is_err());
        assert!(feasible_with_order(&s, &[0, 0]).is_err());
        assert!(feasible_with_order(&s, &[1, 0]).is_ok());
        assert!(LinSystem::new(2).push(row(&[1], Relation::Le, 0)).is_err());
    }

    fn rel_of(i: u8) -> Relation {
        [Relation::Lt, Relation::Le, Relation::Eq][i as usize % 3]
    }

    proptest::proptest! {
        #[test]
        fn pruning_agrees_with_plain_elimination(
            nvars in 1usize..=4,
            spec in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 4), 0u8..3, -4i64..=4), 1..=9),
        ) {
            let s = sys(nvars, spec.iter().map(|(c, r, b)| row(&c[..nvars], rel_of(*r), *b)).collect());
            let order: Vec<usize> = (0..nvars).collect();
            let fast = solve(&s, &order, true).unwrap();
            let plain = solve(&s, &order, false).unwrap();
            proptest::prop_assert_eq!(fast.status, plain.status, "{:?}", s);
        }
    }

    #[test]
    fn dominated_rows_keep_their_descendants() {
        // x ≤ y, x + y ≤ −1, 3x + 2y ≥ 0, x ≥ 1/2
        let s = sys(2, vec![row(&[1, -1], Relation::Le, 0), row(&[2, 2], Relation::Le, -2), row(&[-3, -2], Relation::Le, 0), row(&[-2, 0], Relation::Le, -1)]);
        for order in [[0, 1], [1, 0]] {
            assert_eq!(feasible_with_order(&s, &order).unwrap().status, Status::Infeasible);
        }
    }

    #[test]
    fn pruning_keeps_dense_systems_small() {
        // takes over ten seconds without pruning
        let rows: [([i64; 5], u8, i64); 12] = [
            ([3, -1, 0, -3, -1], 0, 5),
            ([-2, -2, 0, 3, -1], 1, 0),
            ([-1, -2, -1, 3, 3], 1, -1),
            ([3, 3, 1, 2, 2], 0, -4),
            ([0, -1, -3, 0, -1], 0, -5),
            ([0, -3, 1, 2, 2], 0, -2),
            ([-1, 2, 3, -3, -3], 1, -6),
            ([-2, -3, -1, 2, 0], 0, 6),
            ([3, 3, 0, -1, 1], 1, -2),
            ([-3, 2, 1, 3, 0], 1, -5),
            ([-2, 1, 2, -2, -2], 1, 2),
            ([2, -1, 0, -3, 3], 0, -5),
        ];
        let s = sys(5, rows.iter().map(|(c, r, b)| row(c, rel_of(*r), *b)).collect());
        let r = feasible(&s).unwrap();
        assert_eq!(r.status, Status::Infeasible);
        for order in [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3]] {
            assert_eq!(feasible_with_order(&s, &order).unwrap().status, r.status);
        }
    }

    // one variable: feasible iff the tightest lower bound is below the tightest upper bound
    fn one_var_oracle(rows: &[(i64, Relation, i64)]) -> bool {
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        let mut fixed: Vec<Q> = Vec::new();
        for &(a, rel, b) in rows {
            if a == 0 {
                let ok = match rel {
                    Relation::Lt => 0 < b,
                    Relation::Le => 0 <= b,
                    Relation::Eq => b == 0,
                };
                if !ok {
                    return false;
                }
                continue;
            }
            let v = q(b, a);
            if rel == Relation::Eq {
                fixed.push(v);
                continue;
            }
            let strict = rel == Relation::Lt;
            let slot = if a > 0 { &mut hi } else { &mut lo };
            let tighter = match slot {
                None => true,
                Some((w, s)) => if a > 0 { v < *w || (v == *w && strict && !*s) } else { v > *w || (v == *w && strict && !*s) },
            };
            if tighter {
                *slot = Some((v, strict));
            }
        }
        if let Some(f) = fixed.first() {
            if fixed.iter().any(|g| g != f) {
                return false;
            }
            let lo_ok = lo.is_none_or(|(l, s)| l < *f || (l == *f && !s));
            let hi_ok = hi.is_none_or(|(h, s)| h > *f || (h == *f && !s));
            return lo_ok && hi_ok;
        }
        match (lo, hi) {
            (Some((l, ls)), Some((h, hs))) => l < h || (l == h && !ls && !hs),
            _ => true,
        }
    }

    #[test]
    fn one_variable_matches_oracle() {
        let rels = [Relation::Lt, Relation::Le, Relation::Eq];
        let vals = [-2i64, -1, 0, 1, 2];
        let mut cases = 0;
        for &a1 in &vals {
            for &b1 in &vals {
                for r1 in rels {
                    for &a2 in &vals {
                        for &b2 in &vals {
                            for r2 in rels {
                                let spec = [(a1, r1, b1), (a2, r2, b2)];
                                let s = sys(1, spec.iter().map(|&(a, r, b)| row(&[a], r, b)).collect());
                                let got = feasible(&s).unwrap();
                                assert_eq!(got.is_feasible(), one_var_oracle(&spec), "{spec:?}");
                                cases += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(cases, 75 * 75);
    }
}
