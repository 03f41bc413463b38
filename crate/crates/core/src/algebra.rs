//! The convolution algebra of a weighted hypergroupoid.
//!
//! Basis elements `[g]` multiply by `[g][h] = Σ_{a ∈ comp(g,h)} ⟨a|g,h⟩ [a]`.
//! The weights are `|g|_l = ⟨1_src(g)|g*,g⟩` (outputs per input) and
//! `|g|_r = ⟨1_tgt(g)|g,g*⟩` (inputs per output), and `χ(g) = |g|_l / |g|_r`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bits::AtomSet;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::hypergroupoid::Hypergroupoid;
use crate::realization::ConcreteRealization;
use crate::report::{AxiomReport, Tally};

/// Scalars an algebra element can carry.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Zero + One + Add<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn from_count(n: u64) -> Self;
}

impl Coefficient for BigRational {
    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Coefficient for Complex64 {
    fn from_count(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// A finitely supported combination `Σ c_g [g]`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Combination<C> {
    terms: BTreeMap<usize, C>,
}

pub type AlgebraElement = Combination<BigRational>;
pub type ComplexElement = Combination<Complex64>;

impl<C: Coefficient> Default for Combination<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Combination<C> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn basis(g: usize) -> Self {
        Self::from_terms([(g, C::one())])
    }

    /// Sums repeated arrows and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (usize, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn add_term(&mut self, g: usize, c: C) {
        let sum = match self.terms.remove(&g) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(g, sum);
        }
    }

    pub fn coeff(&self, g: usize) -> C {
        self.terms.get(&g).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms().map(|(g, c)| (g, c.clone() * s.clone())))
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_terms(self.terms().chain(other.terms()).map(|(g, c)| (g, c.clone())))
    }

    /// Multiplies each `[g]` coefficient by `f(g)`.
    pub fn map_basis(&self, mut f: impl FnMut(usize) -> C) -> Self {
        Self::from_terms(self.terms().map(|(g, c)| (g, c.clone() * f(g))))
    }
}

impl AlgebraElement {
    pub fn to_complex(&self) -> ComplexElement {
        ComplexElement::from_terms(self.terms().map(|(g, c)| (g, Complex64::new(rat_to_f64(c), 0.0))))
    }
}

impl ComplexElement {
    /// Largest coefficient modulus of `self − other`.
    pub fn max_distance(&self, other: &ComplexElement) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|&g| (self.coeff(g) - other.coeff(g)).norm())
            .fold(0.0, f64::max)
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

/// Renders `2*[a3] + 1/2*[a0]` style literals in arrow order.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*[a{g}]")?;
        }
        Ok(())
    }
}

/// A hypergroupoid with structure constants `⟨a|g,h⟩` for `a ∈ comp(g,h)`.
#[derive(Clone, Debug)]
pub struct WeightedHypergroupoid {
    base: Hypergroupoid,
    /// `mu[g * n + h]`: `(a, ⟨a|g,h⟩)` sorted by `a`, one entry per `a ∈ comp(g,h)`.
    mu: Vec<Vec<(usize, ExtNat)>>,
    left: Vec<ExtNat>,
    right: Vec<ExtNat>,
}

impl WeightedHypergroupoid {
    /// Attaches structure constants given as `((a, g, h), value)`. Every
    /// `a ∈ comp(g, h)` needs exactly one entry and no other triple may
    /// appear.
    pub fn new<I>(base: Hypergroupoid, mu: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), ExtNat)>,
    {
        let n = base.arrow_count();
        let mut table: Vec<Vec<(usize, ExtNat)>> = vec![Vec::new(); n * n];
        for ((a, g, h), v) in mu {
            if a >= n || g >= n || h >= n || !base.comp(g, h).contains(a) {
                return Err(Error::InvalidWeights(format!("<{a}|{g},{h}> given but {a} is not in comp({g},{h})")));
            }
            table[g * n + h].push((a, v));
        }
        for g in 0..n {
            for h in 0..n {
                let cell = &mut table[g * n + h];
                cell.sort_unstable_by_key(|e| e.0);
                let ids: Vec<usize> = cell.iter().map(|e| e.0).collect();
                if ids != base.comp(g, h).atoms().collect::<Vec<_>>() {
                    return Err(Error::InvalidWeights(format!("constants for comp({g},{h}) are missing or repeated")));
                }
            }
        }
        let mut w = WeightedHypergroupoid { base, mu: table, left: Vec::new(), right: Vec::new() };
        w.left = (0..n).map(|g| w.mu(w.base.src_identity(g), w.base.star(g), g)).collect();
        w.right = (0..n).map(|g| w.mu(w.base.tgt_identity(g), g, w.base.star(g))).collect();
        Ok(w)
    }

    /// Structure constants counted on the realization.
    pub fn from_realization(real: &ConcreteRealization) -> Self {
        let mu = real.mu_table().into_iter().map(|(a, g, h, c)| ((a, g, h), ExtNat::Fin(c)));
        WeightedHypergroupoid::new(real.hypergroupoid().clone(), mu).expect("counted constants match the composition table")
    }

    pub fn base(&self) -> &Hypergroupoid {
        &self.base
    }

    pub fn arrow_count(&self) -> usize {
        self.base.arrow_count()
    }

    /// `⟨a|g,h⟩`, zero when `a ∉ comp(g,h)`.
    pub fn mu(&self, a: usize, g: usize, h: usize) -> ExtNat {
        let cell = &self.mu[g * self.arrow_count() + h];
        match cell.binary_search_by_key(&a, |e| e.0) {
            Ok(i) => cell[i].1,
            Err(_) => ExtNat::ZERO,
        }
    }

    /// `(a, ⟨a|g,h⟩)` for `a ∈ comp(g,h)`.
    pub fn mu_row(&self, g: usize, h: usize) -> &[(usize, ExtNat)] {
        &self.mu[g * self.arrow_count() + h]
    }

    /// Every `((a, g, h), ⟨a|g,h⟩)`, ordered by `(g, h, a)`.
    pub fn mu_entries(&self) -> impl Iterator<Item = ((usize, usize, usize), ExtNat)> + '_ {
        let n = self.arrow_count();
        self.mu
            .iter()
            .enumerate()
            .flat_map(move |(i, cell)| cell.iter().map(move |&(a, v)| ((a, i / n, i % n), v)))
    }

    pub fn left(&self, g: usize) -> ExtNat {
        self.left[g]
    }

    pub fn right(&self, g: usize) -> ExtNat {
        self.right[g]
    }

    /// Checks, over composable `(g, h)` and `a ∈ comp(g, h)`:
    /// (1) `⟨a|g,h⟩|a|_l = ⟨h|g*,a⟩|h|_l`,
    /// (2) `⟨a|g,h⟩|a|_r = ⟨g|a,h*⟩|g|_r`,
    /// (3) `|g|_l|h|_l = Σ_a ⟨a|g,h⟩|a|_l`,
    /// and the symmetries `|g*|_l = |g|_r`, `⟨a|g,h⟩ = ⟨a*|h*,g*⟩`.
    pub fn validate_weights(&self) -> AxiomReport<usize> {
        let n = self.arrow_count();
        let b = &self.base;
        let (mut one, mut two, mut three, mut lr, mut sym) =
            (Tally::new(), Tally::new(), Tally::new(), Tally::new(), Tally::new());
        for g in 0..n {
            lr.record(self.left(b.star(g)) == self.right(g), || vec![g]);
        }
        for g in 0..n {
            for h in (0..n).filter(|&h| b.composable(g, h)) {
                let mut total = ExtNat::ZERO;
                for &(a, m) in self.mu_row(g, h) {
                    one.record(m * self.left(a) == self.mu(h, b.star(g), a) * self.left(h), || vec![a, g, h]);
                    two.record(m * self.right(a) == self.mu(g, a, b.star(h)) * self.right(g), || vec![a, g, h]);
                    sym.record(m == self.mu(b.star(a), b.star(h), b.star(g)), || vec![a, g, h]);
                    total = total + m * self.left(a);
                }
                three.record(self.left(g) * self.left(h) == total, || vec![g, h]);
            }
        }
        AxiomReport {
            mode: None,
            checks: vec![
                one.finish("identity-1"),
                two.finish("identity-2"),
                three.finish("identity-3"),
                lr.finish("left-star"),
                sym.finish("mu-star"),
            ],
        }
    }

    /// Every left weight is finite. Composition sets are finite here by
    /// construction.
    pub fn is_locally_finite(&self) -> bool {
        self.left.iter().all(|w| w.is_finite())
    }

    pub fn unit_element<C: Coefficient>(&self) -> Combination<C> {
        Combination::from_terms(self.base.unit_arrows().iter().map(|&e| (e, C::one())))
    }

    fn check_ids<C: Coefficient>(&self, u: &Combination<C>) -> Result<()> {
        match u.support().find(|&g| g >= self.arrow_count()) {
            Some(g) => Err(Error::UnknownArrow(g)),
            None => Ok(()),
        }
    }

    /// Bilinear extension of `[g][h] = Σ ⟨a|g,h⟩[a]`.
    pub fn mul<C: Coefficient>(&self, u: &Combination<C>, v: &Combination<C>) -> Result<Combination<C>> {
        self.check_ids(u)?;
        self.check_ids(v)?;
        let mut out = Combination::zero();
        for (g, cg) in u.terms() {
            for (h, ch) in v.terms() {
                let c = cg.clone() * ch.clone();
                for &(a, m) in self.mu_row(g, h) {
                    match m {
                        ExtNat::Fin(0) => {}
                        ExtNat::Fin(k) => out.add_term(a, c.clone() * C::from_count(k)),
                        ExtNat::Inf => return Err(Error::InfiniteCoefficient { a, g, h }),
                    }
                }
            }
        }
        Ok(out)
    }

    /// `χ(g) = |g|_l / |g|_r`.
    pub fn chi(&self, g: usize) -> Result<BigRational> {
        if g >= self.arrow_count() {
            return Err(Error::UnknownArrow(g));
        }
        match (self.left[g], self.right[g]) {
            (ExtNat::Fin(0), _) | (_, ExtNat::Fin(0)) => Err(Error::ZeroWeight { arrow: g }),
            (ExtNat::Fin(l), ExtNat::Fin(r)) => Ok(BigRational::new(l.into(), r.into())),
            _ => Err(Error::InfiniteWeight { arrow: g }),
        }
    }

    fn try_map(&self, u: &AlgebraElement, f: impl Fn(usize) -> Result<(usize, BigRational)>) -> Result<AlgebraElement> {
        self.check_ids(u)?;
        let mut out = AlgebraElement::zero();
        for (g, c) in u.terms() {
            let (h, s) = f(g)?;
            out.add_term(h, c * s);
        }
        Ok(out)
    }

    /// `[g]* = χ(g)[g*]`, extended linearly.
    pub fn star(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_map(u, |g| Ok((self.base.star(g), self.chi(g)?)))
    }

    /// `e_g = [g] / |g|_l`.
    pub fn e_basis(&self, g: usize) -> Result<AlgebraElement> {
        self.chi(g)?;
        let l = self.left[g].finite().expect("chi checked finiteness");
        Ok(AlgebraElement::from_terms([(g, BigRational::new(1.into(), l.into()))]))
    }

    /// `σ_i([g]) = χ(g)^{-1}[g]`, exact.
    pub fn sigma_imag(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_map(u, |g| Ok((g, self.chi(g)?.recip())))
    }

    /// `σ_{-i}([g]) = χ(g)[g]`, the inverse of [`Self::sigma_imag`].
    pub fn sigma_imag_inverse(&self, u: &AlgebraElement) -> Result<AlgebraElement> {
        self.try_map(u, |g| Ok((g, self.chi(g)?)))
    }

    /// `σ_t([g]) = χ(g)^{it}[g] = exp(i t ln χ(g))[g]`.
    pub fn sigma(&self, t: f64, u: &AlgebraElement) -> Result<ComplexElement> {
        self.sigma_complex(t, &u.to_complex())
    }

    pub fn sigma_complex(&self, t: f64, u: &ComplexElement) -> Result<ComplexElement> {
        self.check_ids(u)?;
        let mut out = ComplexElement::zero();
        for (g, c) in u.terms() {
            let phase = t * rat_to_f64(&self.chi(g)?).ln();
            out.add_term(g, c * Complex64::from_polar(1.0, phase));
        }
        Ok(out)
    }

    /// Sum of the coefficients at identity arrows.
    pub fn eta<C: Coefficient>(&self, u: &Combination<C>) -> C {
        self.base.unit_arrows().iter().fold(C::zero(), |acc, &e| acc + u.coeff(e))
    }

    /// `η([q]σ_i([q']))` and `η([q'][q])`.
    pub fn kms_pair(&self, q: usize, q2: usize) -> Result<(BigRational, BigRational)> {
        let lhs = self.eta(&self.mul(&AlgebraElement::basis(q), &self.sigma_imag(&AlgebraElement::basis(q2))?)?);
        let rhs = self.eta(&self.mul(&AlgebraElement::basis(q2), &AlgebraElement::basis(q))?);
        Ok((lhs, rhs))
    }

    /// Exact KMS check at inverse temperature one over every arrow pair.
    pub fn kms_check(&self) -> Result<KmsReport> {
        let n = self.arrow_count();
        let rows: Vec<Vec<KmsFailure>> = (0..n)
            .into_par_iter()
            .map(|q| {
                let mut bad = Vec::new();
                for q2 in 0..n {
                    let (lhs, rhs) = self.kms_pair(q, q2)?;
                    if lhs != rhs {
                        bad.push(KmsFailure { q, q2, lhs, rhs });
                    }
                }
                Ok(bad)
            })
            .collect::<Result<_>>()?;
        Ok(KmsReport { pairs: (n * n) as u64, failures: rows.into_iter().flatten().collect() })
    }

    /// `(f∗h)(a) = Σ_{g,g'} f(g)·h(g')·⟨a|g,g'⟩` over extended naturals.
    /// Zero values are omitted from the result.
    pub fn convolve_ext(&self, f: &BTreeMap<usize, ExtNat>, h: &BTreeMap<usize, ExtNat>) -> Result<BTreeMap<usize, ExtNat>> {
        let n = self.arrow_count();
        if let Some(&g) = f.keys().chain(h.keys()).find(|&&g| g >= n) {
            return Err(Error::UnknownArrow(g));
        }
        let mut out: BTreeMap<usize, ExtNat> = BTreeMap::new();
        for (&g, &fg) in f {
            for (&g2, &hg) in h {
                for &(a, m) in self.mu_row(g, g2) {
                    let entry = out.entry(a).or_default();
                    *entry = *entry + fg * hg * m;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Supremum formula for semi-simple hypergroupoids: the largest
    /// `|comp(g*, x) ∩ comp(h, y)|` over simple `x`, `y` with
    /// `comp(x, y*) = {a}`.
    pub fn mu_semisimple(base: &Hypergroupoid, a: usize, g: usize, h: usize) -> Result<ExtNat> {
        let s = base.is_semisimple();
        if let Some(arrow) = s.witness.iter().position(Option::is_none) {
            return Err(Error::NotSemisimple { arrow });
        }
        let n = base.arrow_count();
        if let Some(&bad) = [a, g, h].iter().find(|&&x| x >= n) {
            return Err(Error::UnknownArrow(bad));
        }
        let simple = base.simple_arrows();
        let mut best = 0;
        for &x in &simple {
            for &y in &simple {
                let ys = base.star(y);
                if base.composable(x, ys) && base.comp(x, ys).only() == Some(a) {
                    let meet = base.comp(base.star(g), x).intersection(base.comp(h, y));
                    best = best.max(meet.len());
                }
            }
        }
        Ok(ExtNat::from(best))
    }

    /// A simple `u` with `src(g) = tgt(u)` such that `comp(g, u)` consists of
    /// simple arrows, trying `1_src(g)` first and then simple arrows in id
    /// order. When it exists, `|comp(g, u)| = |g|_l`.
    pub fn left_finite_witness(&self, g: usize) -> Option<(usize, AtomSet)> {
        let b = &self.base;
        let candidates = std::iter::once(b.src_identity(g)).chain(b.simple_arrows());
        for u in candidates.filter(|&u| b.composable(g, u)) {
            let gu = b.comp(g, u);
            if gu.atoms().all(|c| b.is_simple(c)) {
                debug_assert!(!self.left(g).is_finite() || self.left(g) == ExtNat::from(gu.len()));
                return Some((u, gu.clone()));
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmsFailure {
    pub q: usize,
    pub q2: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmsReport {
    pub pairs: u64,
    pub failures: Vec<KmsFailure>,
}

impl KmsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The `|X| × |X|` matrix of `u`: `[g]` has a 1 at `(x, y)` for each
/// `(x, y) ∈ g`.
pub fn regular_rep(real: &ConcreteRealization, u: &AlgebraElement) -> Result<DMatrix<BigRational>> {
    let n = real.point_count();
    let arrows = real.hypergroupoid().arrow_count();
    if let Some(g) = u.support().find(|&g| g >= arrows) {
        return Err(Error::UnknownArrow(g));
    }
    Ok(DMatrix::from_fn(n, n, |x, y| u.coeff(real.arrow_of(x, y))))
}

/// Reads a matrix constant on every arrow back as an element; `None` if it
/// is not constant on some arrow.
pub fn decompose(real: &ConcreteRealization, m: &DMatrix<BigRational>) -> Option<AlgebraElement> {
    let arrows = real.hypergroupoid().arrow_count();
    let mut out = AlgebraElement::zero();
    for a in 0..arrows {
        let (x, y) = real.representative(a);
        let c = &m[(x, y)];
        if real.pairs(a).any(|(x, y)| m[(x, y)] != *c) {
            return None;
        }
        out.add_term(a, c.clone());
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointFailure {
    pub g: usize,
    pub v: usize,
    pub v2: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub cases: u64,
    pub failures: Vec<AdjointFailure>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(v·[g])(x) = Σ_{y : (y, x) ∈ g} v(y)` on functions given per point.
fn act(real: &ConcreteRealization, v: &[u64], g: usize) -> Vec<u64> {
    let n = real.point_count();
    (0..n)
        .map(|x| (0..n).filter(|&y| real.arrow_of(y, x) == g).map(|y| v[y]).sum())
        .collect()
}

/// Verifies `⟨v, v'·[g]⟩ = χ(g)⟨v·[g*], v'⟩` for every arrow `g` and all
/// pairs of unit indicator functions `v`, `v'` on `X`.
///
/// The pairing multiplies the values of two invariant functions at one point
/// of each unit and sums over units, so it does not weigh units by size.
pub fn adjoint_check(w: &WeightedHypergroupoid, real: &ConcreteRealization) -> Result<AdjointReport> {
    let n = real.point_count();
    let units = real.unit_sizes().len();
    let base_point: Vec<usize> = (0..units).map(|e| (0..n).find(|&x| real.unit_of_point(x) == e).expect("units are inhabited")).collect();
    let indicator = |e: usize| (0..n).map(|x| u64::from(real.unit_of_point(x) == e)).collect::<Vec<_>>();
    let pairing = |v: &[u64], w: &[u64]| -> BigRational {
        BigRational::from_integer(base_point.iter().map(|&x| BigInt::from(v[x]) * BigInt::from(w[x])).sum())
    };
    let mut report = AdjointReport { cases: 0, failures: Vec::new() };
    for g in 0..w.arrow_count() {
        let chi = w.chi(g)?;
        let gs = w.base().star(g);
        for e in 0..units {
            let v = indicator(e);
            let v_gs = act(real, &v, gs);
            for e2 in 0..units {
                let v2 = indicator(e2);
                let lhs = pairing(&v, &act(real, &v2, g));
                let rhs = &chi * pairing(&v_gs, &v2);
                report.cases += 1;
                if lhs != rhs {
                    report.failures.push(AdjointFailure { g, v: e, v2: e2, lhs, rhs });
                }
            }
        }
    }
    Ok(report)
}
