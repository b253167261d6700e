//! Morphisms `[k] ⇒ [k′]` of Γ′: maps of power sets preserving disjoint
//! unions and non-emptiness, increasing for the block order. Such a map is
//! determined by its values on singletons, a strictly ordered sequence of
//! non-empty blocks, which is how it is stored here (one bitmask per block).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::delta::DeltaMor;
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 63;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaMor {
    cod: usize,
    blocks: Vec<u64>,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn mask_upto(k: usize) -> u64 {
    if k >= 63 {
        u64::MAX
    } else {
        (1u64 << (k + 1)) - 1
    }
}

fn elements(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

impl GammaMor {
    pub fn new(cod: usize, blocks: Vec<u64>) -> Result<Self> {
        if cod > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(cod));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidMorphism("no blocks".into()));
        }
        for (j, &b) in blocks.iter().enumerate() {
            if b == 0 {
                return Err(Error::InvalidMorphism(format!("block {j} is empty")));
            }
            if b & !mask_upto(cod) != 0 {
                return Err(Error::InvalidMorphism(format!("block {j} leaves [{cod}]")));
            }
        }
        if blocks.windows(2).any(|w| 63 - w[0].leading_zeros() >= w[1].trailing_zeros()) {
            return Err(Error::InvalidMorphism("blocks are not strictly ordered".into()));
        }
        Ok(GammaMor { cod, blocks })
    }

    pub fn from_sets(cod: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = 0u64;
            for &e in *s {
                if e > cod {
                    return Err(Error::IndexOutOfRange { index: e, limit: cod });
                }
                b |= bit(e);
            }
            blocks.push(b);
        }
        Self::new(cod, blocks)
    }

    /// The morphism `{j} ↦ {j}` on `[k]`.
    pub fn identity(k: usize) -> Self {
        GammaMor { cod: k, blocks: (0..=k).map(bit).collect() }
    }

    pub fn dom(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_elements(&self, j: usize) -> Vec<usize> {
        elements(self.blocks[j]).collect()
    }

    pub fn block_sets(&self) -> Vec<Vec<usize>> {
        (0..self.blocks.len()).map(|j| self.block_elements(j)).collect()
    }

    /// Union of the blocks indexed by `subset` (a bitmask over `[k]`).
    pub fn eval(&self, subset: u64) -> Result<u64> {
        if subset & !mask_upto(self.dom()) != 0 {
            return Err(Error::IndexOutOfRange { index: 63 - subset.leading_zeros() as usize, limit: self.dom() });
        }
        Ok(elements(subset).fold(0, |acc, j| acc | self.blocks[j]))
    }

    /// `f([k])`.
    pub fn image(&self) -> u64 {
        self.blocks.iter().fold(0, |a, b| a | b)
    }

    pub fn is_onto(&self) -> bool {
        self.image() == mask_upto(self.cod)
    }

    /// The epi `[k′] ↠ [k]` sending `i` to the index of its block.
    pub fn onto_to_epi(&self) -> Result<DeltaMor> {
        if !self.is_onto() {
            return Err(Error::NotOnto);
        }
        let images = (0..=self.cod).map(|i| self.block_of(i).unwrap()).collect();
        Ok(DeltaMor::from_raw(self.dom(), images))
    }

    /// The onto morphism whose blocks are the fibres of `s`.
    pub fn epi_to_onto(s: &DeltaMor) -> Result<GammaMor> {
        if !s.is_epi() {
            return Err(Error::NotEpi);
        }
        if s.dom() > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(s.dom()));
        }
        let mut blocks = vec![0u64; s.cod() + 1];
        for (i, &v) in s.images().iter().enumerate() {
            blocks[v] |= bit(i);
        }
        Ok(GammaMor { cod: s.dom(), blocks })
    }

    /// `δ_*(f)`: apply a mono `d` with `dom(d) = cod(f)` to every block.
    pub fn push_mono(d: &DeltaMor, f: &GammaMor) -> Result<GammaMor> {
        if !d.is_mono() {
            return Err(Error::NotMono);
        }
        if d.dom() != f.cod {
            return Err(Error::DegreeMismatch { expected: d.dom(), found: f.cod });
        }
        if d.cod() > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(d.cod()));
        }
        let blocks = f.blocks.iter().map(|&b| elements(b).fold(0, |acc, e| acc | bit(d.at(e)))).collect();
        Ok(GammaMor { cod: d.cod(), blocks })
    }

    /// The unique decomposition `f = sup(f)_*(red(f))` with `red(f)` onto
    /// and `sup(f)` a mono.
    pub fn red_sup(&self) -> (GammaMor, DeltaMor) {
        let covered: Vec<usize> = elements(self.image()).collect();
        let rank = |e: usize| covered.binary_search(&e).unwrap();
        let blocks = self.blocks.iter().map(|&b| elements(b).fold(0, |acc, e| acc | bit(rank(e)))).collect();
        let r = covered.len() - 1;
        (GammaMor { cod: r, blocks }, DeltaMor::from_raw(self.cod, covered))
    }

    pub(crate) fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b >> i & 1 == 1)
    }

    /// `#_f(i)` with the convention that positions outside `[k′]` count 0.
    pub(crate) fn count(&self, i: isize) -> usize {
        if i < 0 || i as usize > self.cod {
            return 0;
        }
        self.block_of(i as usize).map_or(0, |j| self.blocks[j].count_ones() as usize)
    }

    /// `#_f(i)`: size of the block containing `i`, or 0 if `i` is uncovered.
    pub fn count_at(&self, i: usize) -> Result<usize> {
        if i > self.cod {
            return Err(Error::IndexOutOfRange { index: i, limit: self.cod });
        }
        Ok(self.count(i as isize))
    }

    pub(crate) fn plus_unchecked(&self, i: usize) -> Option<GammaMor> {
        let (ci, cn) = (self.count(i as isize), self.count(i as isize + 1));
        let mut blocks = self.blocks.clone();
        if ci == 0 && cn >= 1 {
            let j = self.block_of(i + 1)?;
            blocks[j] |= bit(i);
        } else if ci >= 1 && cn == 0 {
            let j = self.block_of(i)?;
            blocks[j] |= bit(i + 1);
        } else {
            return None;
        }
        Some(GammaMor { cod: self.cod, blocks })
    }

    /// `f^{+i}`: attach an uncovered `i` (or `i+1`) to the adjacent block.
    /// `Ok(None)` when neither attachment applies.
    pub fn plus(&self, i: usize) -> Result<Option<GammaMor>> {
        if self.cod == 0 || i > self.cod - 1 {
            return Err(Error::IndexOutOfRange { index: i, limit: self.cod.saturating_sub(1) });
        }
        Ok(self.plus_unchecked(i))
    }

    pub(crate) fn minus_unchecked(&self, i: usize) -> Option<GammaMor> {
        if self.cod == 0 || self.count(i as isize) == 1 {
            return None;
        }
        let low = bit(i) - 1;
        let blocks = self
            .blocks
            .iter()
            .map(|&b| {
                let b = b & !bit(i);
                (b & low) | ((b & !low) >> 1)
            })
            .collect();
        Some(GammaMor { cod: self.cod - 1, blocks })
    }

    /// `f_{−i}`: delete coordinate `i` and close the gap. Defined when
    /// `#_f(i) ≠ 1`; `Ok(None)` otherwise.
    pub fn minus(&self, i: usize) -> Result<Option<GammaMor>> {
        if i > self.cod {
            return Err(Error::IndexOutOfRange { index: i, limit: self.cod });
        }
        Ok(self.minus_unchecked(i))
    }

    /// Blockwise inclusion `f ⊂ g`.
    pub fn subset_leq(&self, g: &GammaMor) -> Result<bool> {
        self.check_same_hom(g)?;
        Ok(self.blocks.iter().zip(&g.blocks).all(|(a, b)| a & !b == 0))
    }

    /// `f ≤ g` for the order generated by `f ↦ f^{+i}`, by search from `f`.
    /// For repeated queries on one hom-set use [`PosetCache`].
    pub fn leq(&self, g: &GammaMor) -> Result<bool> {
        self.check_same_hom(g)?;
        if !self.subset_leq(g)? {
            return Ok(false);
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(h) = queue.pop_front() {
            if h == *g {
                return Ok(true);
            }
            for i in 0..h.cod {
                if let Some(next) = h.plus_unchecked(i) {
                    // every step only grows blocks, so leaving g's blocks is a dead end
                    if next.blocks.iter().zip(&g.blocks).all(|(a, b)| a & !b == 0) && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(false)
    }

    /// All `g ≥ f`, in breadth-first order starting at `f`.
    pub fn upper_set(&self) -> Vec<GammaMor> {
        let mut seen = BTreeSet::from([self.clone()]);
        let mut out = vec![self.clone()];
        let mut head = 0;
        while head < out.len() {
            let h = out[head].clone();
            head += 1;
            for i in 0..h.cod {
                if let Some(next) = h.plus_unchecked(i) {
                    if seen.insert(next.clone()) {
                        out.push(next);
                    }
                }
            }
        }
        out
    }

    /// All morphisms `[k] ⇒ [kp]` (onto ones only if `onto_only`), sorted
    /// lexicographically by block contents.
    pub fn enumerate(k: usize, kp: usize, onto_only: bool) -> Vec<GammaMor> {
        if kp > MAX_DEGREE {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut blocks = vec![0u64; k + 1];
        // label of each position: None or a block index, non-decreasing with steps ≤ 1
        fn rec(pos: usize, last: isize, kp: usize, onto: bool, blocks: &mut Vec<u64>, out: &mut Vec<GammaMor>) {
            let k = blocks.len() - 1;
            if pos > kp {
                if last == k as isize {
                    out.push(GammaMor { cod: kp, blocks: blocks.clone() });
                }
                return;
            }
            // remaining positions must be able to reach label k
            let need = (k as isize - last) as usize;
            if need > kp + 1 - pos {
                return;
            }
            if !onto {
                rec(pos + 1, last, kp, onto, blocks, out);
            }
            for lab in [last, last + 1] {
                if lab < 0 || lab > k as isize {
                    continue;
                }
                blocks[lab as usize] |= bit(pos);
                rec(pos + 1, lab, kp, onto, blocks, out);
                blocks[lab as usize] &= !bit(pos);
            }
        }
        rec(0, -1, kp, onto_only, &mut blocks, &mut out);
        out.sort_by_cached_key(|f| f.block_sets());
        out
    }

    fn check_same_hom(&self, g: &GammaMor) -> Result<()> {
        if self.dom() != g.dom() {
            return Err(Error::DegreeMismatch { expected: self.dom(), found: g.dom() });
        }
        if self.cod != g.cod {
            return Err(Error::DegreeMismatch { expected: self.cod, found: g.cod });
        }
        Ok(())
    }
}

/// Number of Γ′-morphisms `[k] ⇒ [kp]`.
pub fn hom_count(k: usize, kp: usize, onto_only: bool) -> u128 {
    // ways[l+1] = number of label strings so far whose last block index is l
    let mut ways = vec![0u128; k + 2];
    ways[0] = 1;
    for _ in 0..=kp {
        let mut next = vec![0u128; k + 2];
        for (l, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            if !onto_only {
                next[l] += w;
            }
            if l >= 1 {
                next[l] += w;
            }
            if l < k + 1 {
                next[l + 1] += w;
            }
        }
        ways = next;
    }
    ways[k + 1]
}

impl fmt::Debug for GammaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]⇒[{}] {:?}", self.dom(), self.cod, self.block_sets())
    }
}

impl fmt::Display for GammaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The hom-set `Hom_Γ′([k],[k′])` with its generating relation and the
/// reflexive-transitive closure. Built once, read-only afterwards.
#[derive(Debug, Clone)]
pub struct PosetCache {
    dom: usize,
    cod: usize,
    elements: Vec<GammaMor>,
    index: BTreeMap<GammaMor, usize>,
    edges: Vec<Vec<(usize, usize)>>,
    reach: Vec<BitSet>,
}

impl PosetCache {
    pub fn build(k: usize, kp: usize) -> Self {
        let elements = GammaMor::enumerate(k, kp, false);
        let index: BTreeMap<GammaMor, usize> = elements.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let edges: Vec<Vec<(usize, usize)>> = elements
            .iter()
            .map(|f| (0..kp).filter_map(|i| f.plus_unchecked(i).map(|g| (i, index[&g]))).collect())
            .collect();
        let n = elements.len();
        let mut reach = Vec::with_capacity(n);
        for s in 0..n {
            let mut seen = BitSet::new(n);
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(_, v) in &edges[u] {
                    if !seen.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
            reach.push(seen);
        }
        PosetCache { dom: k, cod: kp, elements, index, edges, reach }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn elements(&self) -> &[GammaMor] {
        &self.elements
    }

    pub fn index_of(&self, f: &GammaMor) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Generating edges `(source, i, target)` with `target = source^{+i}`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(s, es)| es.iter().map(move |&(i, t)| (s, i, t)))
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.reach[a].contains(b)
    }

    pub fn leq(&self, f: &GammaMor, g: &GammaMor) -> Result<bool> {
        let a = self.index_of(f).ok_or_else(|| Error::InvalidMorphism(format!("{f:?} not in this hom-set")))?;
        let b = self.index_of(g).ok_or_else(|| Error::InvalidMorphism(format!("{g:?} not in this hom-set")))?;
        Ok(self.leq_idx(a, b))
    }

    pub fn upper_indices(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.reach[a].iter()
    }

    /// First pair `(a, b)` with `a ≤ b ≤ a` and `a ≠ b`, if any.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.elements.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && self.leq_idx(a, b) && self.leq_idx(b, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MorphismKind;

    fn g(cod: usize, sets: &[&[usize]]) -> GammaMor {
        GammaMor::from_sets(cod, sets).unwrap()
    }

    #[test]
    fn validation() {
        assert!(GammaMor::from_sets(2, &[&[0, 2], &[1]]).is_err());
        assert!(GammaMor::from_sets(2, &[&[0], &[]]).is_err());
        assert!(GammaMor::from_sets(2, &[&[3]]).is_err());
        assert!(GammaMor::from_sets(4, &[&[0, 1], &[3]]).is_ok());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(g(2, &[&[0], &[1, 2]]).eval(0b11).unwrap(), 0b111);
        assert_eq!(g(2, &[&[0], &[1, 2]]).eval(0).unwrap(), 0);
        assert_eq!(g(3, &[&[0, 1], &[3]]).eval(0b10).unwrap(), 0b1000);
        assert!(g(3, &[&[0, 1], &[3]]).eval(0b100).is_err());
    }

    #[test]
    fn onto_examples() {
        assert!(g(2, &[&[0], &[1, 2]]).is_onto());
        assert!(!g(2, &[&[0], &[2]]).is_onto());
        assert!(GammaMor::identity(3).is_onto());
    }

    #[test]
    fn epi_onto_conversions() {
        let s = DeltaMor::degeneracy(1, 0).unwrap();
        assert_eq!(GammaMor::epi_to_onto(&s).unwrap(), g(1, &[&[0, 1]]));
        assert_eq!(g(2, &[&[0], &[1, 2]]).onto_to_epi().unwrap().images(), &[0, 1, 1]);
        assert_eq!(g(2, &[&[0], &[2]]).onto_to_epi(), Err(Error::NotOnto));
        assert_eq!(GammaMor::epi_to_onto(&DeltaMor::face(0, 0).unwrap()), Err(Error::NotEpi));
        for k in 0..=2 {
            for kp in 0..=4 {
                for f in GammaMor::enumerate(k, kp, true) {
                    assert_eq!(GammaMor::epi_to_onto(&f.onto_to_epi().unwrap()).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn push_mono_examples() {
        let d = DeltaMor::face(1, 1).unwrap();
        assert_eq!(GammaMor::push_mono(&d, &g(1, &[&[0], &[1]])).unwrap(), g(2, &[&[0], &[2]]));
        let f = g(2, &[&[0, 1], &[2]]);
        assert_eq!(GammaMor::push_mono(&DeltaMor::identity(2), &f).unwrap(), f);
        let d = DeltaMor::face(2, 0).unwrap();
        assert_eq!(GammaMor::push_mono(&d, &f).unwrap(), g(3, &[&[1, 2], &[3]]));
        assert_eq!(GammaMor::push_mono(&DeltaMor::degeneracy(2, 0).unwrap(), &g(2, &[&[0]])), Err(Error::NotMono));
    }

    #[test]
    fn red_sup_examples() {
        let (r, s) = g(2, &[&[0], &[2]]).red_sup();
        assert_eq!(r, g(1, &[&[0], &[1]]));
        assert_eq!(s.images(), &[0, 2]);
        let f = g(2, &[&[0, 1], &[2]]);
        assert_eq!(f.red_sup(), (f.clone(), DeltaMor::identity(2)));
        let (r, s) = g(4, &[&[1, 3]]).red_sup();
        assert_eq!(r, g(1, &[&[0, 1]]));
        assert_eq!(s.images(), &[1, 3]);
        for k in 0..=2 {
            for kp in 0..=5 {
                for f in GammaMor::enumerate(k, kp, false) {
                    let (r, s) = f.red_sup();
                    assert!(r.is_onto() && s.is_mono());
                    assert_eq!(GammaMor::push_mono(&s, &r).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        let f = g(3, &[&[0], &[2, 3]]);
        assert_eq!(f.count_at(3).unwrap(), 2);
        assert_eq!(f.count_at(1).unwrap(), 0);
        assert_eq!(g(2, &[&[0, 1, 2]]).count_at(1).unwrap(), 3);
        assert!(f.count_at(4).is_err());
    }

    #[test]
    fn plus_examples() {
        assert_eq!(g(3, &[&[1], &[3]]).plus(0).unwrap(), Some(g(3, &[&[0, 1], &[3]])));
        assert_eq!(g(3, &[&[0], &[3]]).plus(0).unwrap(), Some(g(3, &[&[0, 1], &[3]])));
        assert_eq!(g(1, &[&[0], &[1]]).plus(0).unwrap(), None);
        assert!(g(1, &[&[0], &[1]]).plus(1).is_err());
    }

    #[test]
    fn minus_examples() {
        assert_eq!(g(2, &[&[0], &[2]]).minus(1).unwrap(), Some(g(1, &[&[0], &[1]])));
        assert_eq!(g(2, &[&[0, 1], &[2]]).minus(0).unwrap(), Some(g(1, &[&[0], &[1]])));
        assert_eq!(g(1, &[&[0], &[1]]).minus(1).unwrap(), None);
        assert_eq!(g(2, &[&[0], &[1, 2]]).minus(2).unwrap(), Some(g(1, &[&[0], &[1]])));
    }

    #[test]
    fn order_examples() {
        let f = g(4, &[&[0, 4]]);
        let h = g(4, &[&[0, 2, 4]]);
        assert!(f.leq(&f).unwrap());
        assert!(f.subset_leq(&h).unwrap());
        assert!(!f.leq(&h).unwrap());
        let a = g(3, &[&[0], &[3]]);
        assert!(a.leq(&g(3, &[&[0, 1], &[3]])).unwrap());
        assert!(f.leq(&g(3, &[&[0]])).is_err());
    }

    #[test]
    fn upper_set_examples() {
        let f = g(2, &[&[0], &[1, 2]]);
        assert_eq!(f.upper_set(), vec![f.clone()]);
        let f = g(1, &[&[0]]);
        assert_eq!(f.upper_set(), vec![f.clone(), g(1, &[&[0, 1]])]);
        let f = g(2, &[&[1]]);
        let up = f.upper_set();
        let brute: Vec<_> = GammaMor::enumerate(0, 2, false).into_iter().filter(|h| f.leq(h).unwrap()).collect();
        assert_eq!(up.len(), brute.len());
        assert!(brute.iter().all(|h| up.contains(h)));
        // {1} grows to {0,1}, {1,2}, then {0,1,2}
        assert_eq!(up.len(), 4);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(GammaMor::enumerate(0, 2, false).len(), 7);
        assert_eq!(GammaMor::enumerate(1, 2, true), vec![g(2, &[&[0], &[1, 2]]), g(2, &[&[0, 1], &[2]])]);
        for k in 0..=2 {
            for kp in 0..=5 {
                let onto = GammaMor::enumerate(k, kp, true);
                assert_eq!(onto.len(), DeltaMor::enumerate(kp, k, MorphismKind::Epi).len());
                assert_eq!(onto.len() as u128, hom_count(k, kp, true));
                let all = GammaMor::enumerate(k, kp, false);
                assert_eq!(all.len() as u128, hom_count(k, kp, false));
                assert!(all.windows(2).all(|w| w[0].block_sets() < w[1].block_sets()));
            }
        }
    }

    #[test]
    fn brute_force_enumeration_agrees() {
        // every assignment of positions to {none, 0..k}, filtered by validity
        for k in 0..=2usize {
            for kp in 0..=4usize {
                let mut brute = BTreeSet::new();
                let total = (k + 2).pow(kp as u32 + 1);
                for code in 0..total {
                    let mut c = code;
                    let mut blocks = vec![0u64; k + 1];
                    for pos in 0..=kp {
                        let lab = c % (k + 2);
                        c /= k + 2;
                        if lab > 0 {
                            blocks[lab - 1] |= 1 << pos;
                        }
                    }
                    if let Ok(f) = GammaMor::new(kp, blocks) {
                        brute.insert(f);
                    }
                }
                let got: BTreeSet<_> = GammaMor::enumerate(k, kp, false).into_iter().collect();
                assert_eq!(got, brute);
            }
        }
    }

    #[test]
    fn poset_cache_matches_search() {
        for kp in 0..=4 {
            let cache = PosetCache::build(1, kp);
            for a in cache.elements() {
                for b in cache.elements() {
                    assert_eq!(cache.leq(a, b).unwrap(), a.leq(b).unwrap());
                }
                let up: BTreeSet<_> = a.upper_set().into_iter().collect();
                let via_cache: BTreeSet<_> = cache.upper_indices(cache.index_of(a).unwrap()).map(|i| cache.elements()[i].clone()).collect();
                assert_eq!(up, via_cache);
            }
            assert_eq!(cache.antisymmetry_violation(), None);
        }
    }

    #[test]
    fn hom_count_grows() {
        assert_eq!(hom_count(0, 2, false), 7);
        assert_eq!(hom_count(0, 18, false), (1 << 19) - 1);
        assert_eq!(hom_count(1, 18, true), 18);
    }
}
