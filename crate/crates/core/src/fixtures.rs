//! Small reference structures used throughout the tests and the CLI
//! examples.
//!
//! * `f1`: the trivial group on two points.
//! * `f2`: `S3` acting on itself.
//! * `f3`: `S3` acting on the cosets of `⟨(0 1)⟩`.
//! * `f4`: the disjoint union of the actions of `f2` and `f3`.
//! * `f5_quantale`: the quantale of `f3`, where `Δ·Δ = ⊤`.
//!
//! `coset_battery` generates seeded random coset specifications.

use crate::algebra::WeightedHypergroupoid;
use crate::hypergroupoid::Hypergroupoid;
use crate::quantale::AtomicQuantale;
use crate::realization::{enumerate_group, orbit_atoms, ConcreteRealization, CosetSpec, Perm, PermAction, Subgroup};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A realization bundled with the derived structures tests reach for.
#[derive(Clone, Debug)]
pub struct Realized {
    pub name: &'static str,
    pub realization: ConcreteRealization,
}

impl Realized {
    fn new(name: &'static str, action: &PermAction) -> Self {
        Realized { name, realization: orbit_atoms(action) }
    }

    pub fn hypergroupoid(&self) -> &Hypergroupoid {
        self.realization.hypergroupoid()
    }

    pub fn quantale(&self) -> AtomicQuantale {
        self.hypergroupoid().to_quantale()
    }

    pub fn weighted(&self) -> WeightedHypergroupoid {
        WeightedHypergroupoid::from_realization(&self.realization)
    }
}

pub fn s3_generators() -> Vec<Perm> {
    vec![vec![1, 0, 2], vec![1, 2, 0]]
}

/// `S3` with the subgroups `{e}` and `⟨(0 1)⟩`.
pub fn s3_spec() -> CosetSpec {
    CosetSpec {
        degree: 3,
        group_generators: s3_generators(),
        subgroups: vec![
            Subgroup { name: "trivial".into(), generators: vec![] },
            Subgroup { name: "transposition".into(), generators: vec![vec![1, 0, 2]] },
        ],
    }
}

pub fn f1() -> Realized {
    Realized::new("F1", &PermAction::new(2, vec![]).expect("valid"))
}

pub fn f2() -> Realized {
    Realized::new("F2", &s3_spec().coset_space(0).expect("valid").action)
}

pub fn f3() -> Realized {
    Realized::new("F3", &s3_spec().coset_space(1).expect("valid").action)
}

pub fn f4() -> Realized {
    Realized::new("F4", &s3_spec().union_of_cosets().expect("valid").0)
}

pub fn f5_quantale() -> AtomicQuantale {
    f3().quantale()
}

/// The arrow of `f4` from the six-point unit to the three-point unit that
/// contains `(6, 0)`.
pub fn f4_mixed_arrow(f4: &Realized) -> usize {
    f4.realization.arrow_of(6, 0)
}

pub fn all_realized() -> Vec<Realized> {
    vec![f1(), f2(), f3(), f4()]
}

pub const BATTERY_SEED: u64 = 2024;
pub const BATTERY_SIZE: usize = 50;
pub const BATTERY_MAX_ORDER: usize = 48;

fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Perm {
    let mut p: Perm = (0..degree).collect();
    for i in (1..degree).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

/// Seeded coset specifications: degree 3 to 5, group order at most 48, one
/// to three subgroups, each generated by zero to two random elements.
pub fn coset_battery(seed: u64, count: usize) -> Vec<CosetSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let degree = rng.random_range(3..=5);
        let gens: Vec<Perm> = (0..rng.random_range(1..=2)).map(|_| random_perm(&mut rng, degree)).collect();
        let Ok(elements) = enumerate_group(degree, &gens, BATTERY_MAX_ORDER) else { continue };
        let subgroups = (0..rng.random_range(1..=3))
            .map(|i| Subgroup {
                name: format!("K{i}"),
                generators: (0..rng.random_range(0..=2))
                    .map(|_| elements.choose(&mut rng).expect("groups are inhabited").clone())
                    .collect(),
            })
            .collect();
        out.push(CosetSpec { degree, group_generators: gens, subgroups });
    }
    out
}

/// Realizations of the default battery.
pub fn battery() -> Vec<ConcreteRealization> {
    coset_battery(BATTERY_SEED, BATTERY_SIZE)
        .iter()
        .map(|s| orbit_atoms(&s.union_of_cosets().expect("battery specs are valid").0))
        .collect()
}
