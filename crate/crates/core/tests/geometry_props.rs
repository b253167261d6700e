use proptest::prelude::*;
use simpsep_core::delta::{compose, DeltaMor};
use simpsep_core::gamma::GammaMor;
use simpsep_core::geom::{make_admissible, pushforward, w_contains, w_member, BaryPoint, IntervalFamily};
use simpsep_core::rational::{int, Q};

fn point(w: &[u64]) -> BaryPoint {
    let mut w: Vec<Q> = w.iter().map(|&v| int(v as i64)).collect();
    if w.iter().all(|v| *v == int(0)) {
        w[0] = int(1);
    }
    BaryPoint::normalized(w).unwrap()
}

fn monotone(dom: usize, cod: usize, raw: &[usize]) -> DeltaMor {
    let mut v: Vec<usize> = raw[..=dom].iter().map(|x| x % (cod + 1)).collect();
    v.sort_unstable();
    DeltaMor::new(cod, v).unwrap()
}

fn setting(k: usize, kp: usize, pick: usize, alpha: &[u64]) -> (GammaMor, IntervalFamily) {
    let homs = GammaMor::enumerate(k, kp, false);
    let f = homs[pick % homs.len()].clone();
    let a = point(&alpha[..=k].iter().map(|v| v + 1).collect::<Vec<_>>());
    (f, make_admissible(&a, &int(2)).unwrap())
}

fn eps(e: u8) -> Q {
    Q::new((1 + e as i64 % 7).into(), 8.into())
}

proptest! {
    #[test]
    fn pushforward_is_functorial(a in 0usize..4, b in 0usize..4, c in 0usize..4, raw in prop::collection::vec(0usize..8, 5), raw2 in prop::collection::vec(0usize..8, 5), w in prop::collection::vec(0u64..50, 5)) {
        let f = monotone(a, b, &raw);
        let g = monotone(b, c, &raw2);
        let t = point(&w[..=a]);
        let gf = compose(&g, &f).unwrap();
        let lhs = pushforward(&gf, &t).unwrap();
        let rhs = pushforward(&g, &pushforward(&f, &t).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.coords().iter().sum::<Q>(), int(1));
        prop_assert_eq!(pushforward(&DeltaMor::identity(a), &t).unwrap(), t);
    }

    #[test]
    fn open_w_lies_in_closed_w(k in 0usize..3, extra in 0usize..3, pick in any::<usize>(), alpha in prop::collection::vec(0u64..6, 3), w in prop::collection::vec(0u64..40, 6), e in any::<u8>()) {
        let kp = k + extra;
        let (f, fam) = setting(k, kp, pick, &alpha);
        let t = point(&w[..=kp]);
        let eps = eps(e);
        let open = w_contains(&f, &eps, &fam, false, &t).unwrap();
        let closed = w_contains(&f, &eps, &fam, true, &t).unwrap();
        prop_assert!(!open || closed);
        prop_assert_eq!(open, w_member(&f, &eps, &fam, false, &t).unwrap());
        prop_assert_eq!(closed, w_member(&f, &eps, &fam, true, &t).unwrap());
    }

    #[test]
    fn w_is_convex(k in 0usize..3, extra in 0usize..3, pick in any::<usize>(), alpha in prop::collection::vec(0u64..6, 3), w1 in prop::collection::vec(0u64..40, 6), w2 in prop::collection::vec(0u64..40, 6), theta in 0i64..=16, e in any::<u8>()) {
        let kp = k + extra;
        let (f, fam) = setting(k, kp, pick, &alpha);
        let (t1, t2) = (point(&w1[..=kp]), point(&w2[..=kp]));
        let eps = eps(e);
        let th = Q::new(theta.into(), 16.into());
        let mid = BaryPoint::mix(&t1, &t2, &th).unwrap();
        for closed in [false, true] {
            if w_contains(&f, &eps, &fam, closed, &t1).unwrap() && w_contains(&f, &eps, &fam, closed, &t2).unwrap() {
                prop_assert!(w_contains(&f, &eps, &fam, closed, &mid).unwrap());
            }
        }
    }
}

#[test]
fn the_pushed_point_is_in_its_own_w() {
    // (id, α) lies in W(id, ε) for every admissible family of α
    for w in [[1u64, 1, 1], [1, 2, 3], [5, 1, 9]] {
        let a = point(&w);
        let fam = make_admissible(&a, &int(2)).unwrap();
        assert!(w_contains(&GammaMor::identity(2), &Q::new(1.into(), 8.into()), &fam, false, &a).unwrap());
    }
}
