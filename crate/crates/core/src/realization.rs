//! Concrete hypergroupoids from finite permutation actions.
//!
//! Arrows are orbits of the diagonal action on `X × X`. A pair `(x, y)` is
//! read as (output, input): `src` is the orbit of `y` and `tgt` the orbit of
//! `x`. Permutations compose as `(p∘q)(i) = p[q[i]]`.

use std::collections::HashMap;
use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergroupoid::{Arrow, Hypergroupoid};

pub type Perm = Vec<usize>;

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree).collect()
}

/// `(p∘q)(i) = p[q[i]]`: apply `q` first.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn check_perm(p: &[usize], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!("{p:?} has degree {} instead of {degree}", p.len())));
    }
    let mut seen = vec![false; degree];
    for &i in p {
        if i >= degree || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a bijection of 0..{degree}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermAction {
    points: usize,
    generators: Vec<Perm>,
}

impl PermAction {
    pub fn new(points: usize, generators: Vec<Perm>) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidAction("an action needs at least one point".into()));
        }
        for g in &generators {
            check_perm(g, points)?;
        }
        Ok(PermAction { points, generators })
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
}

/// Elements of the group generated by `gens`, breadth first from the
/// identity with generators applied in input order (`g∘h` for a frontier
/// element `h`).
pub fn enumerate_group(degree: usize, gens: &[Perm], bound: usize) -> Result<Vec<Perm>> {
    for g in gens {
        check_perm(g, degree)?;
    }
    let id = identity_perm(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for g in gens {
            let gh = compose(g, &h);
            if !seen.contains_key(&gh) {
                if elements.len() == bound {
                    return Err(Error::OrderBoundExceeded { bound });
                }
                seen.insert(gh.clone(), ());
                elements.push(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    Ok(elements)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub name: String,
    pub generators: Vec<Perm>,
}

/// A permutation group and a family of subgroups `K_i`, each given by
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpec {
    pub degree: usize,
    pub group_generators: Vec<Perm>,
    pub subgroups: Vec<Subgroup>,
}

/// The enumerated group of a validated [`CosetSpec`].
#[derive(Clone, Debug)]
pub struct Group {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &[usize]) -> Option<usize> {
        self.index.get(p).copied()
    }
}

impl CosetSpec {
    /// Enumerates the group and checks every subgroup generator lies in it.
    pub fn validate(&self, bound: usize) -> Result<Group> {
        let elements = enumerate_group(self.degree, &self.group_generators, bound)?;
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        for k in &self.subgroups {
            for g in &k.generators {
                check_perm(g, self.degree)?;
                if !index.contains_key(g) {
                    return Err(Error::InvalidCosetSpec(format!(
                        "generator {g:?} of subgroup {} is not in the group",
                        k.name
                    )));
                }
            }
        }
        Ok(Group { elements, index })
    }

    /// The left action of the group on `G/K` for subgroup number `k`.
    pub fn coset_space(&self, k: usize) -> Result<CosetAction> {
        let group = self.validate(DEFAULT_ORDER_BOUND)?;
        let sub = self
            .subgroups
            .get(k)
            .ok_or_else(|| Error::InvalidCosetSpec(format!("no subgroup number {k}")))?;
        Ok(coset_action(&group, &self.group_generators, &sub.generators))
    }

    /// `⊔_i G/K_i` over all subgroups, in order.
    pub fn union_of_cosets(&self) -> Result<(PermAction, Vec<usize>)> {
        let group = self.validate(DEFAULT_ORDER_BOUND)?;
        let parts: Vec<PermAction> = self
            .subgroups
            .iter()
            .map(|k| coset_action(&group, &self.group_generators, &k.generators).action)
            .collect();
        disjoint_union(&parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    pub action: PermAction,
    /// Point (coset) of each group element, in enumeration order.
    pub coset_of: Vec<usize>,
    /// Index of the first group element in each coset.
    pub representatives: Vec<usize>,
}

/// Cosets `hK` are the classes of `h ~ h∘k` for generators `k` of `K`;
/// they are numbered by first appearance, so the identity coset is point 0.
fn coset_action(group: &Group, gens: &[Perm], k_gens: &[Perm]) -> CosetAction {
    let order = group.order();
    let mut uf = UnionFind::<usize>::new(order);
    for (h, p) in group.elements.iter().enumerate() {
        for k in k_gens {
            uf.union(h, group.index[&compose(p, k)]);
        }
    }
    let mut point_of_root = HashMap::new();
    let mut representatives = Vec::new();
    let coset_of: Vec<usize> = (0..order)
        .map(|h| {
            *point_of_root.entry(uf.find(h)).or_insert_with(|| {
                representatives.push(h);
                representatives.len() - 1
            })
        })
        .collect();
    let generators = gens
        .iter()
        .map(|g| {
            representatives
                .iter()
                .map(|&h| coset_of[group.index[&compose(g, &group.elements[h])]])
                .collect()
        })
        .collect();
    let action = PermAction { points: representatives.len(), generators };
    CosetAction { action, coset_of, representatives }
}

/// Block-diagonal union of actions of the same generator list; returns the
/// point offset of each block.
pub fn disjoint_union(actions: &[PermAction]) -> Result<(PermAction, Vec<usize>)> {
    let first = actions.first().ok_or_else(|| Error::InvalidAction("disjoint union of no actions".into()))?;
    let gens = first.generators.len();
    if actions.iter().any(|a| a.generators.len() != gens) {
        return Err(Error::InvalidAction("actions have different numbers of generators".into()));
    }
    let mut offsets = Vec::with_capacity(actions.len());
    let mut total = 0;
    for a in actions {
        offsets.push(total);
        total += a.points;
    }
    let generators = (0..gens)
        .map(|i| {
            actions
                .iter()
                .zip(&offsets)
                .flat_map(|(a, &off)| a.generators[i].iter().map(move |&p| p + off))
                .collect()
        })
        .collect();
    Ok((PermAction { points: total, generators }, offsets))
}

/// A hypergroupoid realized by pair orbits, with the data needed to count.
#[derive(Clone, Debug)]
pub struct ConcreteRealization {
    action: PermAction,
    unit_of_point: Vec<usize>,
    /// Smallest point of each unit (point orbit).
    base_points: Vec<usize>,
    unit_sizes: Vec<usize>,
    membership: Vec<usize>,
    representatives: Vec<(usize, usize)>,
    /// Lexicographically largest pair of each arrow, for recounting.
    last_pairs: Vec<(usize, usize)>,
    orbit_sizes: Vec<usize>,
    hg: Hypergroupoid,
}

/// Computes point orbits (units) and pair orbits (arrows) and assembles the
/// hypergroupoid. Units and arrows are numbered in the order of their
/// lexicographically smallest point or pair.
pub fn orbit_atoms(action: &PermAction) -> ConcreteRealization {
    let n = action.points;
    let (unit_of_point, unit_count) = orbit_labels(n, |uf| {
        for g in &action.generators {
            for (x, &gx) in g.iter().enumerate() {
                uf.union(x, gx);
            }
        }
    });
    let mut base_points = vec![usize::MAX; unit_count];
    let mut unit_sizes = vec![0; unit_count];
    for (x, &u) in unit_of_point.iter().enumerate() {
        base_points[u] = base_points[u].min(x);
        unit_sizes[u] += 1;
    }

    let (membership, arrow_count) = orbit_labels(n * n, |uf| {
        for g in &action.generators {
            for x in 0..n {
                for y in 0..n {
                    uf.union(x * n + y, g[x] * n + g[y]);
                }
            }
        }
    });
    let mut representatives = vec![(usize::MAX, usize::MAX); arrow_count];
    let mut last_pairs = vec![(0, 0); arrow_count];
    let mut orbit_sizes = vec![0; arrow_count];
    for x in 0..n {
        for y in 0..n {
            let a = membership[x * n + y];
            if orbit_sizes[a] == 0 {
                representatives[a] = (x, y);
            }
            orbit_sizes[a] += 1;
            last_pairs[a] = (x, y);
        }
    }

    let arrows: Vec<Arrow> = representatives
        .iter()
        .map(|&(x, y)| Arrow { src: unit_of_point[y], tgt: unit_of_point[x], star: membership[y * n + x] })
        .collect();
    let units: Vec<usize> = base_points.iter().map(|&p| membership[p * n + p]).collect();

    // comp(b, a) ∋ c iff some (x, y0) ∈ c factors through (x, z) ∈ b and
    // (z, y0) ∈ a, where y0 is the base point of src(a); every orbit with
    // that source meets the column of y0.
    let mut comp = vec![Vec::new(); arrow_count * arrow_count];
    for &y0 in &base_points {
        for z in 0..n {
            let a = membership[z * n + y0];
            for x in 0..n {
                let b = membership[x * n + z];
                comp[b * arrow_count + a].push(membership[x * n + y0]);
            }
        }
    }
    let comp = comp
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(i, v)| ((i / arrow_count, i % arrow_count), v))
        .collect();
    let hg = Hypergroupoid::new(units, arrows, comp).expect("pair orbits form a hypergroupoid");

    ConcreteRealization {
        action: action.clone(),
        unit_of_point,
        base_points,
        unit_sizes,
        membership,
        representatives,
        last_pairs,
        orbit_sizes,
        hg,
    }
}

/// Class labels of a union-find over `size` items, numbered by first
/// appearance of each class.
fn orbit_labels(size: usize, join: impl FnOnce(&mut UnionFind<usize>)) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::<usize>::new(size);
    join(&mut uf);
    let mut label_of_root = HashMap::new();
    let labels = (0..size)
        .map(|i| {
            let next = label_of_root.len();
            *label_of_root.entry(uf.find(i)).or_insert(next)
        })
        .collect();
    (labels, label_of_root.len())
}

impl ConcreteRealization {
    pub fn action(&self) -> &PermAction {
        &self.action
    }

    pub fn hypergroupoid(&self) -> &Hypergroupoid {
        &self.hg
    }

    pub fn point_count(&self) -> usize {
        self.action.points
    }

    pub fn unit_of_point(&self, x: usize) -> usize {
        self.unit_of_point[x]
    }

    /// Number of points in each unit.
    pub fn unit_sizes(&self) -> &[usize] {
        &self.unit_sizes
    }

    /// Arrow containing the pair `(x, y)`.
    pub fn arrow_of(&self, x: usize, y: usize) -> usize {
        self.membership[x * self.action.points + y]
    }

    /// Lexicographically smallest pair of arrow `a`.
    pub fn representative(&self, a: usize) -> (usize, usize) {
        self.representatives[a]
    }

    pub fn orbit_size(&self, a: usize) -> usize {
        self.orbit_sizes[a]
    }

    /// All pairs of arrow `a`, in lexicographic order.
    pub fn pairs(&self, a: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.action.points;
        (0..n * n).filter(move |&i| self.membership[i] == a).map(move |i| (i / n, i % n))
    }

    /// `⟨a|g,h⟩`: with `(x, y)` the representative of `a`, the number of `t`
    /// with `(x, t) ∈ g` and `(t, y) ∈ h`.
    pub fn count_mu(&self, a: usize, g: usize, h: usize) -> u64 {
        let (x, y) = self.representatives[a];
        let count = self.count_at(x, y, g, h);
        debug_assert_eq!(count, {
            let (x2, y2) = self.last_pairs[a];
            self.count_at(x2, y2, g, h)
        });
        count
    }

    /// Number of `t` with `(x, t) ∈ g` and `(t, y) ∈ h`.
    pub fn count_at(&self, x: usize, y: usize, g: usize, h: usize) -> u64 {
        (0..self.action.points)
            .filter(|&t| self.arrow_of(x, t) == g && self.arrow_of(t, y) == h)
            .count() as u64
    }

    /// Every nonzero `⟨a|g,h⟩` as `(a, g, h, count)`, sorted.
    ///
    /// Counts are taken at one pair `(x_a, y0)` per arrow `a`, with `y0` the
    /// base point of `src(a)`, by sweeping the middle point once.
    pub fn mu_table(&self) -> Vec<(usize, usize, usize, u64)> {
        let n = self.action.points;
        let arrows = self.hg.arrow_count();
        let mut out: Vec<(usize, usize, usize, u64)> = (0..arrows)
            .into_par_iter()
            .flat_map_iter(|a| {
                let y0 = self.base_points[self.hg.arrow(a).src];
                let x = (0..n).find(|&x| self.arrow_of(x, y0) == a).expect("every arrow meets its base column");
                let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
                for t in 0..n {
                    *counts.entry((self.arrow_of(x, t), self.arrow_of(t, y0))).or_default() += 1;
                }
                counts.into_iter().map(move |((g, h), c)| (a, g, h, c))
            })
            .collect();
        out.sort_unstable();
        out
    }
}
