//! Seeded random rational points on standard simplices.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::DeltaMor;
use crate::geom::{pushforward, BaryPoint};
use crate::rational::{int, Q};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer weights in `0..=bound`, not all zero.
pub fn random_weights<R: Rng>(rng: &mut R, k: usize, bound: u64) -> Vec<u64> {
    loop {
        let w: Vec<u64> = (0..=k).map(|_| rng.gen_range(0..=bound)).collect();
        if w.iter().any(|&v| v > 0) {
            return w;
        }
    }
}

fn from_weights(w: &[u64]) -> BaryPoint {
    BaryPoint::normalized(w.iter().map(|&v| int(v as i64)).collect()).unwrap()
}

pub fn random_point<R: Rng>(rng: &mut R, k: usize) -> BaryPoint {
    from_weights(&random_weights(rng, k, 1000))
}

/// A random point supported on a random non-empty set of coordinates.
pub fn sparse_point<R: Rng>(rng: &mut R, k: usize) -> BaryPoint {
    let mut w = random_weights(rng, k, 1000);
    let keep: Vec<bool> = (0..=k).map(|_| rng.gen_bool(0.5)).collect();
    let anchor = rng.gen_range(0..=k);
    for (i, v) in w.iter_mut().enumerate() {
        if !keep[i] && i != anchor {
            *v = 0;
        }
    }
    if w[anchor] == 0 {
        w[anchor] = 1;
    }
    from_weights(&w)
}

/// A random monotone map `[n] → [k]`.
pub fn random_map<R: Rng>(rng: &mut R, n: usize, k: usize) -> DeltaMor {
    let mut images: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=k)).collect();
    images.sort_unstable();
    DeltaMor::new(k, images).unwrap()
}

/// `d_*(α)` for a random monotone `d`, perturbed towards a random point by
/// a weight of at most 1/8 (possibly 0).
pub fn near_pushforward<R: Rng>(rng: &mut R, alpha: &BaryPoint, k: usize) -> BaryPoint {
    let d = random_map(rng, alpha.degree(), k);
    let base = pushforward(&d, alpha).unwrap();
    let noise = sparse_point(rng, k);
    let theta = Q::new(rng.gen_range(0..=16i64).into(), 128.into());
    if theta.is_zero() {
        return base;
    }
    BaryPoint::mix(&noise, &base, &theta).unwrap()
}

/// Barycenters of all faces of `Δ^k` (vertices included); only vertices and
/// the full barycenter once `k > 10`.
pub fn face_barycenters(k: usize) -> Vec<BaryPoint> {
    if k > 10 {
        let mut out: Vec<BaryPoint> = (0..=k).map(|p| BaryPoint::vertex(k, p).unwrap()).collect();
        out.push(BaryPoint::barycenter(k));
        return out;
    }
    (1u32..1 << (k + 1))
        .map(|mask| {
            let w: Vec<u64> = (0..=k).map(|i| (mask >> i & 1) as u64).collect();
            from_weights(&w)
        })
        .collect()
}

/// Sample set used by the compatibility checks: `count` uniform points,
/// `count/4` sparse points, `count/4` points near pushforwards of `alpha`,
/// and every face barycenter.
pub fn probe_set<R: Rng>(rng: &mut R, k: usize, count: usize, alpha: Option<&BaryPoint>) -> Vec<BaryPoint> {
    let mut out = Vec::with_capacity(count + count / 2 + (1 << (k + 1).min(11)));
    for _ in 0..count {
        out.push(random_point(rng, k));
    }
    for _ in 0..count / 4 {
        out.push(sparse_point(rng, k));
    }
    if let Some(a) = alpha {
        for _ in 0..count / 4 {
            out.push(near_pushforward(rng, a, k));
        }
    }
    out.extend(face_barycenters(k));
    out
}

/// Integer weights summing to exactly `total` (uniform over compositions
/// is not attempted; this is a "broken stick" with integer cuts).
pub fn integer_point<R: Rng>(rng: &mut R, k: usize, total: u64) -> Vec<u64> {
    let mut cuts: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = vec![0u64; k + 1];
    let mut prev = 0;
    for (i, c) in cuts.iter().enumerate() {
        out[i] = c - prev;
        prev = *c;
    }
    out[k] = total - prev;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn seeded_and_valid() {
        let a: Vec<BaryPoint> = {
            let mut r = rng(7);
            (0..20).map(|_| random_point(&mut r, 3)).collect()
        };
        let b: Vec<BaryPoint> = {
            let mut r = rng(7);
            (0..20).map(|_| random_point(&mut r, 3)).collect()
        };
        assert_eq!(a, b);
        let mut r = rng(1);
        for k in 0..6 {
            for _ in 0..50 {
                let s = sparse_point(&mut r, k);
                assert!(s.coords().iter().sum::<Q>().is_one());
                let w = integer_point(&mut r, k, 1 << 20);
                assert_eq!(w.iter().sum::<u64>(), 1 << 20);
            }
        }
        assert_eq!(face_barycenters(2).len(), 7);
        assert_eq!(face_barycenters(12).len(), 14);
    }
}
