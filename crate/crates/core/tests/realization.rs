mod common;

use hyperq::fixtures;
use hyperq::realization::{disjoint_union, orbit_atoms, PermAction};
use hyperq::ConcreteRealization;

fn check_partition(real: &ConcreteRealization) {
    let n = real.point_count();
    let arrows = real.hypergroupoid().arrow_count();
    let total: usize = (0..arrows).map(|a| real.orbit_size(a)).sum();
    assert_eq!(total, n * n);
    for a in 0..arrows {
        let (x, y) = real.representative(a);
        assert_eq!(real.arrow_of(x, y), a);
        assert_eq!(real.pairs(a).next(), Some((x, y)), "representative is the smallest pair");
        let h = real.hypergroupoid();
        assert_eq!(h.star(a), real.arrow_of(y, x));
        assert_eq!(h.arrow(a).src, real.unit_of_point(y));
        assert_eq!(h.arrow(a).tgt, real.unit_of_point(x));
        assert_eq!(h.is_unit_arrow(a), x == y, "unit arrows are the diagonal orbits");
    }
}

#[test]
fn pair_orbits_partition_the_square() {
    for r in common::fixture_realizations() {
        check_partition(&r.realization);
    }
    for real in common::battery_realizations() {
        check_partition(&real);
    }
}

#[test]
fn arrows_match_the_group_orbit_oracle() {
    for r in common::fixture_realizations() {
        let real = &r.realization;
        for a in 0..real.hypergroupoid().arrow_count() {
            let m = common::orbit_matrix(real, a);
            let pairs: Vec<_> = real.pairs(a).collect();
            let oracle: Vec<_> = (0..real.point_count())
                .flat_map(|x| (0..real.point_count()).map(move |y| (x, y)))
                .filter(|&(x, y)| m[x][y] == 1)
                .collect();
            assert_eq!(pairs, oracle, "{} arrow {a}", r.name);
        }
    }
}

#[test]
fn fixture_shapes() {
    let shape = |r: &fixtures::Realized| (r.hypergroupoid().unit_count(), r.hypergroupoid().arrow_count());
    assert_eq!(shape(&fixtures::f1()), (2, 4));
    assert_eq!(shape(&fixtures::f2()), (1, 6));
    assert_eq!(shape(&fixtures::f3()), (1, 2));
    let f4 = fixtures::f4();
    assert_eq!(shape(&f4), (2, 14));
    // 6 + 2 + 3 + 3 orbits on the 36 + 9 + 18 + 18 pairs of the four blocks.
    let h = f4.hypergroupoid();
    let count = |s, t| (0..14).filter(|&a| h.arrow(a).src == s && h.arrow(a).tgt == t).count();
    assert_eq!((count(0, 0), count(1, 1), count(0, 1), count(1, 0)), (6, 2, 3, 3));
}

#[test]
fn trivial_actions() {
    let real = orbit_atoms(&PermAction::new(1, vec![]).unwrap());
    assert_eq!(real.hypergroupoid().arrow_count(), 1);
    assert_eq!(real.hypergroupoid().unit_arrows(), &[0]);
    let a = PermAction::new(3, vec![vec![1, 2, 0]]).unwrap();
    let (u, offsets) = disjoint_union(std::slice::from_ref(&a)).unwrap();
    assert_eq!((u, offsets), (a, vec![0]));
}

#[test]
fn union_rejects_mismatched_generators() {
    let a = PermAction::new(2, vec![vec![1, 0]]).unwrap();
    let b = PermAction::new(2, vec![]).unwrap();
    assert!(disjoint_union(&[a, b]).is_err());
}

#[test]
fn counts_are_representative_independent() {
    let mut all: Vec<ConcreteRealization> = common::fixture_realizations().into_iter().map(|r| r.realization).collect();
    all.extend(common::battery_realizations().into_iter().filter(|r| r.point_count() <= 12));
    for real in &all {
        let n = real.hypergroupoid().arrow_count();
        for a in 0..n {
            for g in 0..n {
                for h in 0..n {
                    let mu = real.count_mu(a, g, h);
                    for (x, y) in real.pairs(a) {
                        assert_eq!(real.count_at(x, y, g, h), mu);
                    }
                }
            }
        }
    }
}

#[test]
fn swept_table_matches_direct_counts() {
    let mut all: Vec<ConcreteRealization> = common::fixture_realizations().into_iter().map(|r| r.realization).collect();
    all.extend(common::battery_realizations().into_iter().take(10));
    for real in &all {
        let n = real.hypergroupoid().arrow_count();
        let table = real.mu_table();
        let mut direct = Vec::new();
        for a in 0..n {
            for g in 0..n {
                for h in 0..n {
                    let c = real.count_mu(a, g, h);
                    if c > 0 {
                        direct.push((a, g, h, c));
                    }
                }
            }
        }
        assert_eq!(table, direct);
    }
}

#[test]
fn unit_constants_are_one() {
    for r in common::fixture_realizations() {
        let h = r.hypergroupoid();
        for g in 0..h.arrow_count() {
            assert_eq!(r.realization.count_mu(g, g, h.src_identity(g)), 1);
            assert_eq!(r.realization.count_mu(g, h.tgt_identity(g), g), 1);
        }
    }
}

#[test]
fn orbit_size_double_counting() {
    let mut all: Vec<ConcreteRealization> = common::fixture_realizations().into_iter().map(|r| r.realization).collect();
    all.extend(common::battery_realizations());
    for real in &all {
        let w = hyperq::WeightedHypergroupoid::from_realization(real);
        let h = real.hypergroupoid();
        for a in 0..h.arrow_count() {
            let size = real.orbit_size(a) as u64;
            let src = real.unit_sizes()[h.arrow(a).src] as u64;
            let tgt = real.unit_sizes()[h.arrow(a).tgt] as u64;
            assert_eq!(w.left(a).finite().unwrap() * src, size);
            assert_eq!(w.right(a).finite().unwrap() * tgt, size);
        }
    }
}

#[test]
fn f4_mixed_weights() {
    let f4 = fixtures::f4();
    let w = f4.weighted();
    let o = fixtures::f4_mixed_arrow(&f4);
    assert_eq!((w.left(o), w.right(o)), (1u64.into(), 2u64.into()));
    let f3 = fixtures::f3().weighted();
    assert_eq!((f3.left(1), f3.right(1)), (2u64.into(), 2u64.into()));
    let f2 = fixtures::f2().weighted();
    assert!((0..6).all(|g| f2.left(g) == 1u64.into() && f2.right(g) == 1u64.into()));
}
