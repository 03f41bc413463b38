#![allow(dead_code)]

use hyperq::fixtures::{self, Realized};
use hyperq::realization::{compose, enumerate_group, Perm};
use hyperq::{AlgebraElement, ConcreteRealization};
use num::{BigInt, BigRational};
use rand::Rng;

pub fn battery_realizations() -> Vec<ConcreteRealization> {
    fixtures::battery()
}

pub fn fixture_realizations() -> Vec<Realized> {
    fixtures::all_realized()
}

/// Composition `B·A` of relations given as 0/1 matrices indexed
/// `[output][input]`, counting intermediate points.
pub fn relation_product(b: &[Vec<u64>], a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = b.len();
    (0..n)
        .map(|x| (0..n).map(|y| (0..n).map(|t| b[x][t] * a[t][y]).sum()).collect())
        .collect()
}

/// The 0/1 matrix of an arrow, computed directly from the action: the orbit
/// of its representative pair under the generated group.
pub fn orbit_matrix(real: &ConcreteRealization, g: usize) -> Vec<Vec<u64>> {
    let n = real.point_count();
    let (x, y) = real.representative(g);
    let group = enumerate_group(n, real.action().generators(), 100_000).unwrap();
    let mut m = vec![vec![0; n]; n];
    for p in &group {
        m[p[x]][p[y]] = 1;
    }
    m
}

/// Group elements fixing every listed point.
pub fn stabilizer(group: &[Perm], points: &[usize]) -> Vec<usize> {
    (0..group.len()).filter(|&i| points.iter().all(|&x| group[i][x] == x)).collect()
}

/// An arrow through `(x, y)` factors as `u v*` with simple `u`, `v` exactly
/// when some point `z` has `Stab(z) ⊆ Stab(x) ∩ Stab(y)`: then `u`, `v` are
/// the equivariant maps `g z ↦ g x` and `g z ↦ g y`.
pub fn stabilizer_semisimple(real: &ConcreteRealization) -> bool {
    let n = real.point_count();
    let group = enumerate_group(n, real.action().generators(), 100_000).unwrap();
    let point_stabs: Vec<Vec<usize>> = (0..n).map(|z| stabilizer(&group, &[z])).collect();
    (0..real.hypergroupoid().arrow_count()).all(|a| {
        let (x, y) = real.representative(a);
        let pair = stabilizer(&group, &[x, y]);
        point_stabs.iter().any(|s| s.iter().all(|e| pair.contains(e)))
    })
}

pub fn random_integer_element<R: Rng>(rng: &mut R, arrows: usize) -> AlgebraElement {
    AlgebraElement::from_terms((0..rng.random_range(1..=4)).map(|_| {
        (rng.random_range(0..arrows), BigRational::from_integer(BigInt::from(rng.random_range(-5i64..=5))))
    }))
}

pub fn random_rational_element<R: Rng>(rng: &mut R, arrows: usize) -> AlgebraElement {
    AlgebraElement::from_terms((0..rng.random_range(1..=4)).map(|_| {
        let num = BigInt::from(rng.random_range(-6i64..=6));
        let den = BigInt::from(rng.random_range(1i64..=4));
        (rng.random_range(0..arrows), BigRational::new(num, den))
    }))
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Group element of the regular action carried by the arrow through `(x, y)`:
/// `x⁻¹y` with points identified with their coset representatives.
pub fn regular_label(group: &[Perm], reps: &[usize], x: usize, y: usize) -> Perm {
    let inv = hyperq::realization::invert(&group[reps[x]]);
    compose(&inv, &group[reps[y]])
}
