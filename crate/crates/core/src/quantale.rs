//! Finite atomic quantales.
//!
//! An atomic quantale is stored by its atoms: a product table giving the
//! atom set `u·v` for each pair of atoms, an involution on atoms and the set
//! of unit atoms. A general element is a subset of atoms and every law is
//! extended from atoms by union. Order is inclusion, join is union and meet
//! is intersection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::AtomSet;
use crate::error::{Error, Result};
use crate::report::{AxiomCheck, AxiomReport, CheckMode, Outcome, Tally};

/// An element of an atomic quantale: a set of atoms.
pub type QElement = AtomSet;

/// Exhaustive checking tabulates the full product table; past this many atoms
/// the table no longer fits comfortably in memory.
const MAX_TABULATED_ATOMS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicQuantale {
    n: usize,
    product: Vec<QElement>,
    star: Vec<usize>,
    unit: QElement,
}

impl AtomicQuantale {
    /// `product[u][v]` lists the atoms of `u·v`.
    pub fn new(product: Vec<Vec<Vec<usize>>>, star: Vec<usize>, unit_atoms: Vec<usize>) -> Result<Self> {
        let n = star.len();
        if product.len() != n || product.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidQuantale(format!("product table must be {n}x{n}")));
        }
        let in_range = |a: &usize| *a < n;
        if !star.iter().all(in_range) || !unit_atoms.iter().all(in_range) {
            return Err(Error::InvalidQuantale("atom id out of range".into()));
        }
        if let Some(a) = (0..n).find(|&a| star[star[a]] != a) {
            return Err(Error::InvalidQuantale(format!("star is not an involution at atom {a}")));
        }
        let unit = AtomSet::from_atoms(n, unit_atoms);
        if let Some(e) = unit.atoms().find(|&e| !unit.contains(star[e])) {
            return Err(Error::InvalidQuantale(format!("unit atoms not closed under star at {e}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in product {
            for cell in row {
                if !cell.iter().all(in_range) {
                    return Err(Error::InvalidQuantale("product atom out of range".into()));
                }
                table.push(AtomSet::from_atoms(n, cell));
            }
        }
        Ok(AtomicQuantale { n, product: table, star, unit })
    }

    pub fn atom_count(&self) -> usize {
        self.n
    }

    pub fn atom_product(&self, u: usize, v: usize) -> &QElement {
        &self.product[u * self.n + v]
    }

    pub fn atom_star(&self, u: usize) -> usize {
        self.star[u]
    }

    pub fn unit(&self) -> &QElement {
        &self.unit
    }

    pub fn bottom(&self) -> QElement {
        AtomSet::empty(self.n)
    }

    pub fn top(&self) -> QElement {
        AtomSet::full(self.n)
    }

    pub fn atom(&self, u: usize) -> QElement {
        AtomSet::singleton(self.n, u)
    }

    pub fn element<I: IntoIterator<Item = usize>>(&self, atoms: I) -> QElement {
        AtomSet::from_atoms(self.n, atoms)
    }

    /// `a·b`, the union of `u·v` over atoms `u ∈ a`, `v ∈ b`.
    pub fn q_mul(&self, a: &QElement, b: &QElement) -> QElement {
        let mut out = self.bottom();
        for u in a.atoms() {
            for v in b.atoms() {
                out.union_with(self.atom_product(u, v));
            }
        }
        out
    }

    pub fn q_star(&self, a: &QElement) -> QElement {
        AtomSet::from_atoms(self.n, a.atoms().map(|u| self.star[u]))
    }

    /// Unit atoms `e` with `g ∈ e·g` (left) and `g ∈ g·e` (right).
    ///
    /// In a modular quantale each list has exactly one entry: the target and
    /// the source unit of `g` respectively.
    pub fn absorbing_units(&self, g: usize) -> (Vec<usize>, Vec<usize>) {
        let left = self.unit.atoms().filter(|&e| self.atom_product(e, g).contains(g)).collect();
        let right = self.unit.atoms().filter(|&e| self.atom_product(g, e).contains(g)).collect();
        (left, right)
    }

    /// Atoms `u` with `u·u*` a single unit atom.
    pub fn simple_atoms(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| {
                let uu = self.atom_product(u, self.star[u]);
                uu.len() == 1 && uu.is_subset(&self.unit)
            })
            .collect()
    }

    /// Evaluates every axiom instance that the triple `(x, y, z)` determines.
    ///
    /// Single-argument laws use `x`, two-argument laws use `(x, y)`.
    pub fn axioms_at(&self, x: &QElement, y: &QElement, z: &QElement) -> Vec<(&'static str, bool)> {
        let xy = self.q_mul(x, y);
        let yz = self.q_mul(y, z);
        let y_or_z = y.union(z);
        let sx = self.q_star(x);
        let sy = self.q_star(y);
        let bot = self.bottom();
        vec![
            ("Q3", x.intersection(&y_or_z) == x.intersection(y).union(&x.intersection(z))),
            ("Q4", self.q_mul(&xy, z) == self.q_mul(x, &yz)),
            (
                "Q5",
                self.q_mul(x, &y_or_z) == xy.union(&self.q_mul(x, z))
                    && self.q_mul(&y_or_z, x) == self.q_mul(y, x).union(&self.q_mul(z, x))
                    && self.q_mul(x, &bot).is_empty()
                    && self.q_mul(&bot, x).is_empty(),
            ),
            ("Q6", self.q_mul(&self.unit, x) == *x && self.q_mul(x, &self.unit) == *x),
            ("Q7", self.q_star(&sx) == *x && self.q_star(&x.union(y)) == sx.union(&sy)),
            ("Q8", self.q_star(&xy) == self.q_mul(&sy, &sx)),
            (
                "Q9",
                x.intersection(&yz)
                    .is_subset(&self.q_mul(y, &self.q_mul(&sy, x).intersection(z))),
            ),
        ]
    }

    /// Checks the modular-quantale axioms (Q1)–(Q9).
    ///
    /// (Q1) and (Q2) hold by construction (subset order, arbitrary unions)
    /// and are reported as vacuous. Exhaustive mode returns the
    /// lexicographically first failing triple per axiom, with elements
    /// ordered by their atom bitmask.
    pub fn check_axioms(&self, mode: CheckMode) -> Result<AxiomReport<QElement>> {
        let mut checks = vec![
            AxiomCheck { axiom: "Q1", cases: 0, outcome: Outcome::Vacuous },
            AxiomCheck { axiom: "Q2", cases: 0, outcome: Outcome::Vacuous },
        ];
        match mode {
            CheckMode::Exhaustive { bound } => {
                let bound = bound.min(MAX_TABULATED_ATOMS);
                if self.n > bound {
                    return Err(Error::BoundExceeded { atoms: self.n, bound });
                }
                checks.extend(self.exhaustive_checks());
            }
            CheckMode::Sampled { count, seed } => checks.extend(self.sampled_checks(count, seed)),
        }
        Ok(AxiomReport { mode: Some(mode), checks })
    }

    fn sampled_checks(&self, count: u64, seed: u64) -> Vec<AxiomCheck<QElement>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names = ["Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9"];
        let mut tallies: Vec<Tally<QElement>> = names.iter().map(|_| Tally::new()).collect();
        for _ in 0..count {
            let x = self.random_element(&mut rng);
            let y = self.random_element(&mut rng);
            let z = self.random_element(&mut rng);
            for (tally, (_, ok)) in tallies.iter_mut().zip(self.axioms_at(&x, &y, &z)) {
                tally.record(ok, || vec![x.clone(), y.clone(), z.clone()]);
            }
        }
        names.iter().zip(tallies).map(|(name, t)| t.finish(name)).collect()
    }

    /// Half the samples are sparse (at most three atoms) so that products do
    /// not saturate to `⊤` on larger quantales.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> QElement {
        let mut e = self.bottom();
        if self.n == 0 {
            return e;
        }
        if rng.random_bool(0.5) {
            for _ in 0..rng.random_range(0..=3) {
                e.insert(rng.random_range(0..self.n));
            }
        } else {
            for a in 0..self.n {
                if rng.random_bool(0.5) {
                    e.insert(a);
                }
            }
        }
        e
    }

    fn exhaustive_checks(&self) -> Vec<AxiomCheck<QElement>> {
        let t = Tables::build(self);
        let size = t.size;
        let per_x: Vec<XResult> = (0..size).into_par_iter().map(|x| t.check_x(x)).collect();

        let mut merged = XResult::default();
        for r in per_x {
            merged.absorb(r);
        }
        let n = self.n;
        let elems = |w: &[u16]| w.iter().map(|&m| AtomSet::from_mask(n, m as u64)).collect::<Vec<_>>();
        ["Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9"]
            .iter()
            .zip(merged.cases.iter().zip(merged.first.iter()))
            .map(|(axiom, (&cases, first))| AxiomCheck {
                axiom,
                cases,
                outcome: match first {
                    Some(w) => Outcome::Failed(elems(w)),
                    None => Outcome::Verified,
                },
            })
            .collect()
    }

    /// Whether every atom factors as `u·v*` with `u`, `v` simple atoms.
    ///
    /// This is (Q10) for an atomic quantale. The witness for atom `f` is the
    /// first pair `(u, v)` in id order with `u·v* = {f}`.
    pub fn is_grothendieck(&self) -> Grothendieck {
        let simple = self.simple_atoms();
        let mut witness = vec![None; self.n];
        for &u in &simple {
            for &v in &simple {
                if let Some(f) = self.atom_product(u, self.star[v]).only() {
                    witness[f].get_or_insert((u, v));
                }
            }
        }
        Grothendieck { holds: witness.iter().all(Option::is_some), witness }
    }

    /// The site whose objects are the elements below `1`.
    ///
    /// `hom(q, q')` is `{ f | 1 ∧ f*f = q, f f* ⩽ q' }`. Only atoms `a` with
    /// `1 ∧ a*a ⩽ q` and `a a* ⩽ q'` can occur in such an `f`, so the search
    /// runs over subsets of those atoms.
    pub fn site(&self) -> Result<Site> {
        const MAX_UNITS: usize = 16;
        const MAX_CANDIDATES: usize = 20;
        let units: Vec<usize> = self.unit.atoms().collect();
        if units.len() > MAX_UNITS {
            return Err(Error::BoundExceeded { atoms: units.len(), bound: MAX_UNITS });
        }
        let objects: Vec<QElement> = (0u64..1 << units.len())
            .map(|m| AtomSet::from_atoms(self.n, units.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e)))
            .collect();

        let domain: Vec<QElement> = (0..self.n)
            .map(|a| self.atom_product(self.star[a], a).intersection(&self.unit))
            .collect();
        let image: Vec<&QElement> = (0..self.n).map(|a| self.atom_product(a, self.star[a])).collect();

        let mut homs = Vec::with_capacity(objects.len() * objects.len());
        for q in &objects {
            for q2 in &objects {
                let cands: Vec<usize> = (0..self.n)
                    .filter(|&a| domain[a].is_subset(q) && image[a].is_subset(q2))
                    .collect();
                if cands.len() > MAX_CANDIDATES {
                    return Err(Error::BoundExceeded { atoms: cands.len(), bound: MAX_CANDIDATES });
                }
                let mut hom = Vec::new();
                for m in 0u64..1 << cands.len() {
                    let f = AtomSet::from_atoms(self.n, cands.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &a)| a));
                    if self.is_site_morphism(&f, q, q2) {
                        hom.push(f);
                    }
                }
                homs.push(hom);
            }
        }
        Ok(Site { objects, homs })
    }

    /// `1 ∧ f*f = q` and `f f* ⩽ q'`.
    pub fn is_site_morphism(&self, f: &QElement, q: &QElement, q2: &QElement) -> bool {
        let sf = self.q_star(f);
        self.q_mul(&sf, f).intersection(&self.unit) == *q && self.q_mul(f, &sf).is_subset(q2)
    }

    /// A family of morphisms into `q` covers it when the union of their
    /// images `f f*` is `q`.
    pub fn is_covering(&self, q: &QElement, family: &[QElement]) -> bool {
        let mut img = self.bottom();
        for f in family {
            img.union_with(&self.q_mul(f, &self.q_star(f)));
        }
        img == *q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grothendieck {
    pub holds: bool,
    pub witness: Vec<Option<(usize, usize)>>,
}

/// Objects and hom-sets of `Site(Q)`; composition is the quantale product.
#[derive(Clone, Debug)]
pub struct Site {
    pub objects: Vec<QElement>,
    homs: Vec<Vec<QElement>>,
}

impl Site {
    pub fn object_index(&self, q: &QElement) -> Option<usize> {
        self.objects.iter().position(|o| o == q)
    }

    /// Morphisms from object `i` to object `j`.
    pub fn hom(&self, i: usize, j: usize) -> &[QElement] {
        &self.homs[i * self.objects.len() + j]
    }

    /// `g ∘ f = g·f`.
    pub fn compose(q: &AtomicQuantale, g: &QElement, f: &QElement) -> QElement {
        q.q_mul(g, f)
    }

    pub fn identity(&self, i: usize) -> &QElement {
        &self.objects[i]
    }
}

#[derive(Default)]
struct XResult {
    cases: [u64; 7],
    first: [Option<Vec<u16>>; 7],
}

impl XResult {
    fn hit(&mut self, k: usize, ok: bool, w: impl FnOnce() -> Vec<u16>) {
        self.cases[k] += 1;
        if !ok && self.first[k].is_none() {
            self.first[k] = Some(w());
        }
    }

    /// Merge a later block (in `x` order) into this one.
    fn absorb(&mut self, other: XResult) {
        for k in 0..7 {
            self.cases[k] += other.cases[k];
            if self.first[k].is_none() {
                self.first[k] = other.first[k].clone();
            }
        }
    }
}

/// Full product and star tables over all `2^n` elements, as bitmasks.
struct Tables {
    size: usize,
    unit: u16,
    mul: Vec<u16>,
    star: Vec<u16>,
}

impl Tables {
    fn build(q: &AtomicQuantale) -> Self {
        let n = q.n;
        let size = 1usize << n;
        let mask = |s: &AtomSet| s.to_mask().expect("tabulated quantales have few atoms") as u16;

        // Row of each atom against every element, built up one bit at a time.
        let mut atom_rows = vec![0u16; n * size];
        for u in 0..n {
            for y in 1..size {
                let low = y.trailing_zeros() as usize;
                atom_rows[u * size + y] = atom_rows[u * size + (y & (y - 1))] | mask(q.atom_product(u, low));
            }
        }
        let mut mul = vec![0u16; size * size];
        for x in 1..size {
            let low = x.trailing_zeros() as usize;
            let rest = x & (x - 1);
            for y in 0..size {
                mul[x * size + y] = mul[rest * size + y] | atom_rows[low * size + y];
            }
        }
        let star = (0..size)
            .map(|x| (0..n).filter(|i| x >> i & 1 == 1).fold(0u16, |acc, i| acc | 1 << q.star[i]))
            .collect();
        Tables { size, unit: mask(&q.unit), mul, star }
    }

    #[inline]
    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    #[inline]
    fn s(&self, x: usize) -> usize {
        self.star[x] as usize
    }

    fn check_x(&self, x: usize) -> XResult {
        let mut r = XResult::default();
        let w = |v: &[usize]| v.iter().map(|&e| e as u16).collect::<Vec<_>>();
        let unit = self.unit as usize;
        let sx = self.s(x);

        r.hit(3, self.m(unit, x) == x && self.m(x, unit) == x, || w(&[x]));
        r.hit(2, self.m(x, 0) == 0 && self.m(0, x) == 0, || w(&[x]));
        r.hit(4, self.s(sx) == x, || w(&[x]));

        for y in 0..self.size {
            let xy = self.m(x, y);
            let sy = self.s(y);
            r.hit(4, self.s(x | y) == sx | sy, || w(&[x, y]));
            r.hit(5, self.s(xy) == self.m(sy, sx), || w(&[x, y]));
            let syx = self.m(sy, x);
            for z in 0..self.size {
                let yz = self.m(y, z);
                r.hit(0, x & (y | z) == (x & y) | (x & z), || w(&[x, y, z]));
                r.hit(1, self.m(xy, z) == self.m(x, yz), || w(&[x, y, z]));
                r.hit(
                    2,
                    self.m(x, y | z) == xy | self.m(x, z) && self.m(y | z, x) == self.m(y, x) | self.m(z, x),
                    || w(&[x, y, z]),
                );
                r.hit(6, x & yz & !self.m(y, syx & z) == 0, || w(&[x, y, z]));
            }
        }
        r
    }
}
