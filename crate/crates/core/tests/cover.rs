mod common;

use common::{load, poly, Q};
use nvcat_core::cocycle::periods;
use nvcat_core::cover::{build_twisted_complex, cover_homology, is_movable, torsion_summary};
use nvcat_core::laurent::LaurentPoly;

#[test]
fn mapping_torus_of_degree_two_map() {
    let (x, xi) = load("mapping_torus_deg2");
    let h = cover_homology(&build_twisted_complex(&x, &xi, Q).unwrap());
    let factors: Vec<_> = h
        .degrees
        .iter()
        .map(|d| (d.free_rank, d.invariant_factors.clone()))
        .collect();
    assert_eq!(
        factors,
        vec![(0, vec![poly(0, &[-1, 1])]), (0, vec![poly(0, &[-2, 1])]), (0, vec![])]
    );
    let s = torsion_summary(&h, 1);
    assert_eq!(s.supp, vec![Q.ratio(1, 2).unwrap(), Q.one()]);
    assert_eq!(s.torsion_dim, 2);
}

#[test]
fn torus_fibration() {
    let (x, xi) = load("torus");
    let h = cover_homology(&build_twisted_complex(&x, &xi, Q).unwrap());
    assert_eq!(h.free_ranks(), vec![0, 0, 0]);
    assert_eq!(h.degrees[0].invariant_factors, vec![poly(0, &[-1, 1])]);
    assert_eq!(h.degrees[1].invariant_factors, vec![poly(0, &[-1, 1])]);
    assert_eq!(torsion_summary(&h, 1).supp, vec![Q.one()]);
}

#[test]
fn genus_two_cover() {
    let (x, xi) = load("genus2");
    assert_eq!(periods(&x, &xi).unwrap(), 1);
    let c = build_twisted_complex(&x, &xi, Q).unwrap();
    let h = cover_homology(&c);
    assert_eq!(h.free_ranks(), vec![0, 2, 0]);
    assert_eq!(h.euler_characteristic(), x.euler_characteristic());
    let cycles = c.cycle_basis(1);
    let fixed: Vec<bool> = cycles.iter().map(|z| is_movable(&c, 1, z).unwrap().movable).collect();
    assert!(fixed.iter().any(|m| !m));
}

#[test]
fn fiber_of_mapping_torus_is_movable() {
    let (x, xi) = load("mapping_torus_deg2");
    let c = build_twisted_complex(&x, &xi, Q).unwrap();
    // the circle Y on vertices 0, 1, 2 carries xi = 0
    let mut z = vec![LaurentPoly::zero(Q); x.count(1)];
    for (e, s) in [([0, 1], 1), ([1, 2], 1), ([0, 2], -1)] {
        z[x.index_of(&e).unwrap()] = poly(0, &[s]);
    }
    let m = is_movable(&c, 1, &z).unwrap();
    assert!(m.movable);
    assert_eq!(m.annihilator, Some(poly(0, &[-2, 1])));
}
