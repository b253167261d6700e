//! The simplicial category Δ: objects are degrees `k` (standing for the
//! ordered set `[k] = {0, …, k}`), morphisms are non-decreasing maps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A monotone map `[dom] → [cod]`, stored by its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMor {
    cod: usize,
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    All,
    Epi,
    Mono,
}

/// A generating morphism: `Face { k, i }` is `δ_i : [k] → [k+1]`,
/// `Degeneracy { k, i }` is `σ_i : [k] → [k-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Face { k: usize, i: usize },
    Degeneracy { k: usize, i: usize },
}

impl DeltaMor {
    pub fn new(cod: usize, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidMorphism("empty image sequence".into()));
        }
        if let Some(bad) = images.iter().find(|&&v| v > cod) {
            return Err(Error::InvalidMorphism(format!("image {bad} outside [{cod}]")));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMorphism("images are not non-decreasing".into()));
        }
        Ok(DeltaMor { cod, images })
    }

    pub(crate) fn from_raw(cod: usize, images: Vec<usize>) -> Self {
        debug_assert!(Self::new(cod, images.clone()).is_ok());
        DeltaMor { cod, images }
    }

    pub fn identity(k: usize) -> Self {
        DeltaMor { cod: k, images: (0..=k).collect() }
    }

    /// `δ_i^k : [k] → [k+1]`, skipping `i`.
    pub fn face(k: usize, i: usize) -> Result<Self> {
        if i > k + 1 {
            return Err(Error::IndexOutOfRange { index: i, limit: k + 1 });
        }
        let images = (0..=k).map(|j| if j < i { j } else { j + 1 }).collect();
        Ok(DeltaMor { cod: k + 1, images })
    }

    /// `σ_i^k : [k] → [k-1]`, hitting `i` twice.
    pub fn degeneracy(k: usize, i: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::IndexOutOfRange { index: i, limit: 0 });
        }
        if i > k - 1 {
            return Err(Error::IndexOutOfRange { index: i, limit: k - 1 });
        }
        let images = (0..=k).map(|j| if j <= i { j } else { j - 1 }).collect();
        Ok(DeltaMor { cod: k - 1, images })
    }

    pub fn dom(&self) -> usize {
        self.images.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn at(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.images.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &DeltaMor) -> Result<DeltaMor> {
        compose(self, f)
    }

    pub fn is_epi(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.cod
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_mono(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    /// Unique factorization `self = mono ∘ epi`.
    pub fn epi_mono_factor(&self) -> (DeltaMor, DeltaMor) {
        let mut distinct: Vec<usize> = Vec::with_capacity(self.images.len());
        let mut epi = Vec::with_capacity(self.images.len());
        for &v in &self.images {
            if distinct.last() != Some(&v) {
                distinct.push(v);
            }
            epi.push(distinct.len() - 1);
        }
        let r = distinct.len() - 1;
        (DeltaMor { cod: r, images: epi }, DeltaMor { cod: self.cod, images: distinct })
    }

    /// Section of an epi picking the least preimage of each value.
    pub fn section_of_epi(&self) -> Result<DeltaMor> {
        if !self.is_epi() {
            return Err(Error::NotEpi);
        }
        let mut images = Vec::with_capacity(self.cod + 1);
        for (j, &v) in self.images.iter().enumerate() {
            if images.len() == v {
                images.push(j);
            }
        }
        Ok(DeltaMor { cod: self.dom(), images })
    }

    /// Preimage of `j` as a list of positions.
    pub fn preimage(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().enumerate().filter(move |(_, &v)| v == j).map(|(i, _)| i)
    }

    /// Decomposes into generators, listed in order of application
    /// (degeneracies first, then faces).
    pub fn decompose(&self) -> Vec<Generator> {
        let (epi, mono) = self.epi_mono_factor();
        let mut out = Vec::new();
        let mut cur = epi.images;
        while let Some(j) = cur.windows(2).position(|w| w[0] == w[1]) {
            out.push(Generator::Degeneracy { k: cur.len() - 1, i: j });
            cur.remove(j + 1);
        }
        let mut faces = Vec::new();
        let mut m = mono.images;
        let mut cod = mono.cod;
        while m.len() < cod + 1 {
            let missing = (0..=cod).find(|v| !m.contains(v)).unwrap();
            faces.push(Generator::Face { k: cod - 1, i: missing });
            for v in m.iter_mut() {
                if *v > missing {
                    *v -= 1;
                }
            }
            cod -= 1;
        }
        faces.reverse();
        out.extend(faces);
        out
    }

    /// Recomposes a generator list produced by [`DeltaMor::decompose`]; `k`
    /// is the domain degree.
    pub fn from_generators(k: usize, gens: &[Generator]) -> Result<DeltaMor> {
        let mut acc = DeltaMor::identity(k);
        for g in gens {
            let step = match *g {
                Generator::Face { k, i } => DeltaMor::face(k, i)?,
                Generator::Degeneracy { k, i } => DeltaMor::degeneracy(k, i)?,
            };
            acc = compose(&step, &acc)?;
        }
        Ok(acc)
    }

    /// All monotone maps `[k] → [kp]` of the given kind, in lexicographic
    /// order of image sequences.
    pub fn enumerate(k: usize, kp: usize, kind: MorphismKind) -> Vec<DeltaMor> {
        let mut out = Vec::new();
        let mut buf = vec![0usize; k + 1];
        fn rec(pos: usize, min: usize, kp: usize, kind: MorphismKind, buf: &mut Vec<usize>, out: &mut Vec<DeltaMor>) {
            if pos == buf.len() {
                let m = DeltaMor { cod: kp, images: buf.clone() };
                let keep = match kind {
                    MorphismKind::All => true,
                    MorphismKind::Epi => m.is_epi(),
                    MorphismKind::Mono => m.is_mono(),
                };
                if keep {
                    out.push(m);
                }
                return;
            }
            for v in min..=kp {
                buf[pos] = v;
                let next_min = if kind == MorphismKind::Mono { v + 1 } else { v };
                rec(pos + 1, next_min, kp, kind, buf, out);
            }
        }
        rec(0, 0, kp, kind, &mut buf, &mut out);
        out
    }
}

/// `g ∘ f`, requiring `cod(f) = dom(g)`.
pub fn compose(g: &DeltaMor, f: &DeltaMor) -> Result<DeltaMor> {
    if f.cod != g.dom() {
        return Err(Error::DegreeMismatch { expected: g.dom(), found: f.cod });
    }
    Ok(DeltaMor { cod: g.cod, images: f.images.iter().map(|&v| g.images[v]).collect() })
}

impl fmt::Debug for DeltaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}] {:?}", self.dom(), self.cod, self.images)
    }
}

impl fmt::Display for DeltaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
