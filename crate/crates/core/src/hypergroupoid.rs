//! Hypergroupoids: groupoid-like structures whose composition returns a set.
//!
//! Composition convention: `comp(b, a)` is "first `a`, then `b`". It is
//! defined when `src(b) = tgt(a)` and is the empty set otherwise, matching
//! relation composition `b·a = {(x, y) | ∃z. (x, z) ∈ b, (z, y) ∈ a}` where a
//! pair is written (output, input).

use rayon::prelude::*;

use crate::bits::AtomSet;
use crate::error::{Error, Result};
use crate::quantale::AtomicQuantale;
use crate::report::{AxiomCheck, AxiomReport, Outcome, Tally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    /// Index into the unit list.
    pub src: usize,
    pub tgt: usize,
    pub star: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergroupoid {
    /// `units[e]` is the id of the identity arrow `1_e`.
    units: Vec<usize>,
    arrows: Vec<Arrow>,
    comp: Vec<AtomSet>,
}

impl Hypergroupoid {
    /// Builds a hypergroupoid from its identity arrows, typed arrows and the
    /// composition table. `comp` lists `((b, a), result)`; every composable
    /// pair must appear with an inhabited result and no other pair may.
    pub fn new(units: Vec<usize>, arrows: Vec<Arrow>, comp: Vec<((usize, usize), Vec<usize>)>) -> Result<Self> {
        let n = arrows.len();
        let bad = |m: String| Err(Error::InvalidHypergroupoid(m));
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= units.len() || a.tgt >= units.len() || a.star >= n {
                return bad(format!("arrow {i} refers to a missing unit or arrow"));
            }
            let s = arrows[a.star];
            if s.star != i || s.src != a.tgt || s.tgt != a.src {
                return bad(format!("star of arrow {i} is not an involution exchanging src and tgt"));
            }
        }
        for (e, &id) in units.iter().enumerate() {
            match arrows.get(id) {
                Some(a) if a.src == e && a.tgt == e && a.star == id => {}
                _ => return bad(format!("identity arrow {id} of unit {e} is not a self-adjoint loop at {e}")),
            }
        }
        let mut table = vec![AtomSet::empty(n); n * n];
        let mut seen = vec![false; n * n];
        for ((b, a), result) in comp {
            if b >= n || a >= n {
                return bad(format!("composition entry ({b},{a}) out of range"));
            }
            if arrows[b].src != arrows[a].tgt {
                return bad(format!("composition entry for non-composable pair ({b},{a})"));
            }
            for &c in &result {
                if c >= n || arrows[c].src != arrows[a].src || arrows[c].tgt != arrows[b].tgt {
                    return bad(format!("comp({b},{a}) contains mistyped arrow {c}"));
                }
            }
            table[b * n + a] = AtomSet::from_atoms(n, result);
            seen[b * n + a] = true;
        }
        for b in 0..n {
            for a in 0..n {
                if arrows[b].src == arrows[a].tgt && (!seen[b * n + a] || table[b * n + a].is_empty()) {
                    return bad(format!("comp({b},{a}) is empty for a composable pair"));
                }
            }
        }
        Ok(Hypergroupoid { units, arrows, comp: table })
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, g: usize) -> Arrow {
        self.arrows[g]
    }

    /// Identity arrow ids, indexed by unit.
    pub fn unit_arrows(&self) -> &[usize] {
        &self.units
    }

    pub fn identity(&self, unit: usize) -> usize {
        self.units[unit]
    }

    pub fn is_unit_arrow(&self, g: usize) -> bool {
        self.units[self.arrows[g].src] == g
    }

    pub fn star(&self, g: usize) -> usize {
        self.arrows[g].star
    }

    /// `1_{src(g)}`.
    pub fn src_identity(&self, g: usize) -> usize {
        self.units[self.arrows[g].src]
    }

    /// `1_{tgt(g)}`.
    pub fn tgt_identity(&self, g: usize) -> usize {
        self.units[self.arrows[g].tgt]
    }

    pub fn composable(&self, b: usize, a: usize) -> bool {
        self.arrows[b].src == self.arrows[a].tgt
    }

    /// `comp(b, a)`: first `a`, then `b`.
    pub fn comp(&self, b: usize, a: usize) -> &AtomSet {
        &self.comp[b * self.arrows.len() + a]
    }

    /// Union of `comp(b, a)` over `b ∈ bs`, `a ∈ as_`.
    pub fn comp_sets(&self, bs: &AtomSet, as_: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.arrows.len());
        for b in bs.atoms() {
            for a in as_.atoms() {
                out.union_with(self.comp(b, a));
            }
        }
        out
    }

    pub fn arrow_set<I: IntoIterator<Item = usize>>(&self, ids: I) -> AtomSet {
        AtomSet::from_atoms(self.arrows.len(), ids)
    }

    /// Checks (HG1) units, (HG2) associativity, (HG3) reversibility and
    /// `comp(b, a)* = comp(a*, b*)`. Witnesses are arrow ids.
    pub fn check_hg_axioms(&self) -> AxiomReport<usize> {
        let n = self.arrows.len();
        let mut hg1 = Tally::new();
        for g in 0..n {
            let one = self.arrow_set([g]);
            let ok = *self.comp(self.tgt_identity(g), g) == one && *self.comp(g, self.src_identity(g)) == one;
            hg1.record(ok, || vec![g]);
        }

        // (HG2) over composable triples, split by the first arrow.
        let blocks: Vec<(u64, Option<Vec<usize>>)> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut cases = 0;
                for y in (0..n).filter(|&y| self.composable(x, y)) {
                    let xy = self.comp(x, y);
                    for z in (0..n).filter(|&z| self.composable(y, z)) {
                        cases += 1;
                        let left = self.comp_sets(xy, &self.arrow_set([z]));
                        let right = self.comp_sets(&self.arrow_set([x]), self.comp(y, z));
                        if left != right {
                            return (cases, Some(vec![x, y, z]));
                        }
                    }
                }
                (cases, None)
            })
            .collect();
        let hg2 = AxiomCheck {
            axiom: "HG2",
            cases: blocks.iter().map(|b| b.0).sum(),
            outcome: match blocks.into_iter().find_map(|b| b.1) {
                Some(w) => Outcome::Failed(w),
                None => Outcome::Verified,
            },
        };

        let mut hg3 = Tally::new();
        let mut inv = Tally::new();
        for y in 0..n {
            for z in (0..n).filter(|&z| self.composable(y, z)) {
                for x in self.comp(y, z).atoms() {
                    hg3.record(self.comp(self.star(y), x).contains(z), || vec![x, y, z]);
                }
                let starred = self.arrow_set(self.comp(y, z).atoms().map(|c| self.star(c)));
                inv.record(starred == *self.comp(self.star(z), self.star(y)), || vec![y, z]);
            }
        }
        AxiomReport {
            mode: None,
            checks: vec![hg1.finish("HG1"), hg2, hg3.finish("HG3"), inv.finish("HG*")],
        }
    }

    /// Reads an atomic modular quantale as a hypergroupoid: atoms become
    /// arrows, unit atoms become units and `src`/`tgt` are the unique unit
    /// atoms absorbing an atom on the right/left.
    pub fn from_quantale(q: &AtomicQuantale) -> Result<Self> {
        let n = q.atom_count();
        let unit_atoms: Vec<usize> = q.unit().atoms().collect();
        let index_of = |e: usize| unit_atoms.binary_search(&e).expect("absorbing units are unit atoms");
        let mut arrows = Vec::with_capacity(n);
        for g in 0..n {
            let (left, right) = q.absorbing_units(g);
            match (left.as_slice(), right.as_slice()) {
                ([t], [s]) => arrows.push(Arrow { src: index_of(*s), tgt: index_of(*t), star: q.atom_star(g) }),
                _ => {
                    return Err(Error::NotModular(format!(
                        "atom {g} has {} left and {} right absorbing units",
                        left.len(),
                        right.len()
                    )))
                }
            }
        }
        let mut comp = Vec::new();
        for b in 0..n {
            for a in 0..n {
                let p = q.atom_product(b, a);
                if arrows[b].src == arrows[a].tgt {
                    comp.push(((b, a), p.atoms().collect()));
                } else if !p.is_empty() {
                    return Err(Error::NotModular(format!("atoms {b} and {a} have mismatched units but a nonzero product")));
                }
            }
        }
        Hypergroupoid::new(unit_atoms, arrows, comp).map_err(|e| Error::NotModular(e.to_string()))
    }

    pub fn to_quantale(&self) -> AtomicQuantale {
        let n = self.arrows.len();
        let product = (0..n)
            .map(|b| (0..n).map(|a| self.comp(b, a).atoms().collect()).collect())
            .collect();
        let star = self.arrows.iter().map(|a| a.star).collect();
        AtomicQuantale::new(product, star, self.units.clone()).expect("a valid hypergroupoid gives a valid table")
    }

    /// Equality of the arrow-level data, ignoring how units are numbered.
    pub fn same_structure(&self, other: &Hypergroupoid) -> bool {
        let n = self.arrows.len();
        n == other.arrows.len()
            && (0..n).all(|g| {
                self.star(g) == other.star(g)
                    && self.src_identity(g) == other.src_identity(g)
                    && self.tgt_identity(g) == other.tgt_identity(g)
            })
            && self.comp == other.comp
    }

    /// `comp(g, g*) = {1_tgt(g)}`.
    pub fn is_simple(&self, g: usize) -> bool {
        self.comp(g, self.star(g)).only() == Some(self.tgt_identity(g))
    }

    pub fn simple_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&g| self.is_simple(g)).collect()
    }

    /// Searches, for every arrow `g`, simple arrows `u`, `v` (id order, `u`
    /// outer) with `comp(u, v*) = {g}`.
    pub fn is_semisimple(&self) -> Semisimplicity {
        let simple = self.simple_arrows();
        let mut witness = vec![None; self.arrows.len()];
        for &u in &simple {
            for &v in &simple {
                let vs = self.star(v);
                if self.composable(u, vs) {
                    if let Some(g) = self.comp(u, vs).only() {
                        witness[g].get_or_insert((u, v));
                    }
                }
            }
        }
        Semisimplicity { holds: witness.iter().all(Option::is_some), witness }
    }

    /// Checks that `unit_map`/`arrow_map` define a morphism into `target`:
    /// `f(1_e) = 1_f(e)` and `f(comp(b, a)) ⊆ comp(f(b), f(a))`.
    ///
    /// Star preservation is reported separately and does not affect `holds`.
    pub fn check_morphism(&self, target: &Hypergroupoid, unit_map: &[usize], arrow_map: &[usize]) -> MorphismReport {
        let n = self.arrows.len();
        let typed = unit_map.len() == self.units.len()
            && arrow_map.len() == n
            && unit_map.iter().all(|&e| e < target.units.len())
            && arrow_map.iter().all(|&g| g < target.arrows.len())
            && (0..n).all(|g| {
                let (a, fa) = (self.arrows[g], target.arrows[arrow_map[g]]);
                fa.src == unit_map[a.src] && fa.tgt == unit_map[a.tgt]
            });
        if !typed {
            return MorphismReport { typed, units: false, star: false, composition: None, holds: false };
        }
        let units = (0..self.units.len()).all(|e| arrow_map[self.units[e]] == target.units[unit_map[e]]);
        let star = (0..n).all(|g| arrow_map[self.star(g)] == target.star(arrow_map[g]));
        let mut composition = None;
        'outer: for b in 0..n {
            for a in (0..n).filter(|&a| self.composable(b, a)) {
                let allowed = target.comp(arrow_map[b], arrow_map[a]);
                if self.comp(b, a).atoms().any(|c| !allowed.contains(arrow_map[c])) {
                    composition = Some((b, a));
                    break 'outer;
                }
            }
        }
        MorphismReport { typed, units, star, composition, holds: units && composition.is_none() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semisimplicity {
    pub holds: bool,
    /// `witness[g] = Some((u, v))` with `comp(u, v*) = {g}`.
    pub witness: Vec<Option<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// Maps are total and respect `src`/`tgt`.
    pub typed: bool,
    pub units: bool,
    /// `f(g*) = f(g)*`; a consequence of the morphism laws, flagged separately.
    pub star: bool,
    /// First composable pair whose image escapes `comp(f(b), f(a))`.
    pub composition: Option<(usize, usize)>,
    pub holds: bool,
}
