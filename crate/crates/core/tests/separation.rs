use simpsep_core::geom::BaryPoint;
use simpsep_core::rational::{int, Q};
use simpsep_core::separation::{find_eta, verify_certificate, Branch, Certificate, InputPoint, Options, Setup};
use simpsep_core::sset::{FiniteSSet, Simplex};

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

fn input(s: &FiniteSSet, cell: &str, coords: Vec<Q>) -> InputPoint {
    InputPoint { simplex: Simplex::nondegenerate(s.cell_by_name(cell).unwrap()), coords: BaryPoint::new(coords).unwrap() }
}

fn same_cell() -> Certificate {
    let s = FiniteSSet::standard_simplex(1);
    let e = s.names()[1][0].clone();
    find_eta(&s, input(&s, &e, vec![q(1, 2), q(1, 2)]), input(&s, &e, vec![q(1, 4), q(3, 4)]), Options::default()).unwrap()
}

#[test]
fn same_cell_certificate() {
    let c = same_cell();
    assert_eq!(c.branch, Branch::SameCell);
    assert_eq!((c.n, c.m, c.kmax, c.big_n), (1, 1, 18, 4));
    assert!(c.swapped);
    assert_eq!(c.separating_pair, Some((0, 1)));
    assert_eq!(c.eta, q(1, 16));
    assert_eq!(c.containment, [true, true]);
    let r = verify_certificate(&c).unwrap();
    assert_eq!(r.degrees, 19);
    assert!(r.lps > 0 && r.shared > 0);
}

#[test]
fn distinct_cells_certificate() {
    let s = FiniteSSet::boundary(2).unwrap();
    let c = find_eta(&s, input(&s, "e01", vec![q(1, 2), q(1, 2)]), input(&s, "e12", vec![q(1, 3), q(2, 3)]), Options::default()).unwrap();
    assert_eq!(c.branch, Branch::DistinctCells);
    assert_eq!(c.kmax, 18);
    assert_eq!(c.eta, q(1, 2));
    assert!(c.evidence.iter().all(|d| d.shared == 0 && d.types.is_empty()));
    verify_certificate(&c).unwrap();
}

#[test]
fn vertex_against_edge() {
    // (e01, (1, 0)) is the vertex it collapses to, not a point of the edge
    let s = FiniteSSet::boundary(2).unwrap();
    let c = find_eta(&s, input(&s, "e01", vec![int(1), int(0)]), input(&s, "e12", vec![q(1, 2), q(1, 2)]), Options::default()).unwrap();
    assert_eq!((c.n, c.m, c.kmax), (0, 1, 12));
    assert_eq!(c.branch, Branch::DistinctCells);
    verify_certificate(&c).unwrap();
}

#[test]
fn equal_points_are_rejected() {
    let s = FiniteSSet::standard_simplex(1);
    let e = s.names()[1][0].clone();
    let p = input(&s, &e, vec![q(1, 3), q(2, 3)]);
    assert!(Setup::new(&s, p.clone(), p, Options::default()).is_err());
}

#[test]
fn mutated_certificates_fail() {
    let good = same_cell();
    let mut mutations: Vec<(&str, Certificate)> = Vec::new();
    let mut c = good.clone();
    c.eta *= int(2);
    mutations.push(("doubled η", c));
    let mut c = good.clone();
    let d = c.evidence.iter_mut().find(|d| !d.types.is_empty()).unwrap();
    d.types.pop();
    mutations.push(("dropped class set", c));
    let mut c = good.clone();
    c.evidence[5].shared += 1;
    mutations.push(("shared count", c));
    let mut c = good.clone();
    c.evidence.pop();
    mutations.push(("missing degree", c));
    let mut c = good.clone();
    c.containment[1] = false;
    mutations.push(("containment", c));
    let mut c = good.clone();
    c.swapped = false;
    mutations.push(("swap flag", c));
    let mut c = good.clone();
    c.note.clear();
    mutations.push(("note", c));
    let mut c = good.clone();
    let t = c.evidence.iter_mut().flat_map(|d| d.types.iter_mut()).next().unwrap();
    t.rows += 1;
    mutations.push(("row count", c));
    for (what, c) in mutations {
        assert!(verify_certificate(&c).is_err(), "{what} was accepted");
    }
}

#[test]
fn probes_find_no_common_point() {
    let s = FiniteSSet::standard_simplex(1);
    let e = s.names()[1][0].clone();
    let setup = Setup::new(&s, input(&s, &e, vec![q(1, 2), q(1, 2)]), input(&s, &e, vec![q(1, 4), q(3, 4)]), Options::default()).unwrap();
    let eta = q(1, 16);
    for k in [1, 2, 5, 9] {
        let r = setup.probe(k, 600, &eta, 3).unwrap();
        assert_eq!(r.common, 0, "{r:?}");
        assert!(r.in_u > 0 && r.in_v > 0, "{r:?}");
        assert_eq!(r, setup.probe(k, 600, &eta, 3).unwrap());
    }
}
