mod common;

use hyperq::fixtures;
use hyperq::hypergroupoid::Hypergroupoid;
use hyperq::realization::CosetSpec;

#[test]
fn realized_hypergroupoids_pass_axioms() {
    for r in common::fixture_realizations() {
        let report = r.hypergroupoid().check_hg_axioms();
        assert!(report.passed(), "{}: {:?}", r.name, report.failures().collect::<Vec<_>>());
    }
    for real in common::battery_realizations().iter().take(20) {
        assert!(real.hypergroupoid().check_hg_axioms().passed());
    }
}

#[test]
fn quantale_round_trips() {
    for r in common::fixture_realizations() {
        let h = r.hypergroupoid();
        let q = h.to_quantale();
        let back = Hypergroupoid::from_quantale(&q).unwrap();
        assert!(back.same_structure(h), "{}", r.name);
        assert_eq!(back.to_quantale(), q, "{}", r.name);
    }
}

#[test]
fn two_point_quantale_as_hypergroupoid() {
    // Pair ids: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
    let h = Hypergroupoid::from_quantale(&fixtures::f1().quantale()).unwrap();
    assert_eq!(h.unit_count(), 2);
    assert_eq!(h.unit_arrows(), &[0, 3]);
    assert_eq!(h.comp(1, 2), &h.arrow_set([0]));
    assert_eq!((0..4).filter(|&g| !h.is_unit_arrow(g)).count(), 2);
}

#[test]
fn f5_gives_f3() {
    let h = Hypergroupoid::from_quantale(&fixtures::f5_quantale()).unwrap();
    assert!(h.same_structure(fixtures::f3().hypergroupoid()));
    assert_eq!(h.comp(1, 1), &h.arrow_set([0, 1]));
}

#[test]
fn composition_commutes_with_star() {
    for r in common::fixture_realizations() {
        let h = r.hypergroupoid();
        for b in 0..h.arrow_count() {
            for a in 0..h.arrow_count() {
                let starred = h.arrow_set(h.comp(b, a).atoms().map(|c| h.star(c)));
                assert_eq!(&starred, h.comp(h.star(a), h.star(b)));
            }
        }
    }
}

#[test]
fn simple_iff_left_weight_one() {
    for r in common::fixture_realizations() {
        let w = r.weighted();
        for g in 0..w.arrow_count() {
            assert_eq!(w.base().is_simple(g), w.left(g) == hyperq::ExtNat::ONE, "{} arrow {g}", r.name);
        }
    }
    for real in common::battery_realizations() {
        let w = hyperq::WeightedHypergroupoid::from_realization(&real);
        for g in 0..w.arrow_count() {
            assert_eq!(w.base().is_simple(g), w.left(g) == hyperq::ExtNat::ONE);
        }
    }
}

#[test]
fn mixed_arrows_are_simple() {
    let f4 = fixtures::f4();
    let o = fixtures::f4_mixed_arrow(&f4);
    let h = f4.hypergroupoid();
    assert!(h.is_simple(o));
    assert!(!h.is_simple(h.star(o)));
    let s = h.is_semisimple();
    assert!(s.holds);
    for (g, w) in s.witness.iter().enumerate() {
        let (u, v) = w.unwrap();
        assert!(h.is_simple(u) && h.is_simple(v));
        assert_eq!(h.comp(u, h.star(v)), &h.arrow_set([g]));
    }
}

#[test]
fn group_is_semisimple_with_unit_witness() {
    let h = fixtures::f2().hypergroupoid().clone();
    let s = h.is_semisimple();
    assert!(s.holds);
    let e = h.unit_arrows()[0];
    assert_eq!(s.witness[e], Some((e, e)));
}

/// The quotient `S3 → S3/⟨(0 1)⟩` sends `g` to the arrow containing
/// `(g·p0, p0)`, `p0` the identity coset.
fn quotient_map() -> (Hypergroupoid, Hypergroupoid, Vec<usize>) {
    let spec: CosetSpec = fixtures::s3_spec();
    let group = spec.validate(1000).unwrap();
    let regular = spec.coset_space(0).unwrap();
    let cosets = spec.coset_space(1).unwrap();
    let f2 = hyperq::orbit_atoms(&regular.action);
    let f3 = hyperq::orbit_atoms(&cosets.action);
    let map = (0..f2.hypergroupoid().arrow_count())
        .map(|a| {
            // Arrow a is labelled by x⁻¹y for its representative (x, y).
            let (x, y) = f2.representative(a);
            let label = common::regular_label(&group.elements, &regular.representatives, x, y);
            let h = group.index_of(&label).unwrap();
            f3.arrow_of(cosets.coset_of[h], 0)
        })
        .collect();
    (f2.hypergroupoid().clone(), f3.hypergroupoid().clone(), map)
}

#[test]
fn quotient_is_a_morphism() {
    let (f2, f3, map) = quotient_map();
    let report = f2.check_morphism(&f3, &[0], &map);
    assert!(report.typed && report.holds && report.star, "{report:?}");
}

#[test]
fn collapsing_delta_to_a_transposition_is_not_a_morphism() {
    let f3 = fixtures::f3().hypergroupoid().clone();
    let f2 = fixtures::f2().hypergroupoid().clone();
    let e = f2.unit_arrows()[0];
    let t = (0..f2.arrow_count()).find(|&g| g != e && f2.star(g) == g).unwrap();
    let report = f3.check_morphism(&f2, &[0], &[e, t]);
    assert!(!report.holds);
    assert_eq!(report.composition, Some((1, 1)));
}

#[test]
fn identity_morphisms() {
    for r in common::fixture_realizations() {
        let h = r.hypergroupoid();
        let units: Vec<usize> = (0..h.unit_count()).collect();
        let arrows: Vec<usize> = (0..h.arrow_count()).collect();
        assert!(h.check_morphism(h, &units, &arrows).holds);
    }
}
