//! Finite fragments of `Proj(Q)`: matrices over an atomic quantale,
//! idempotent self-adjoint objects, Q-sets, Q-relations and modular actions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::AtomSet;
use crate::error::{Error, Result};
use crate::quantale::{AtomicQuantale, QElement};
use crate::report::{AxiomReport, Tally};

/// A `rows × cols` matrix with entries in `Q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantaleMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QElement>,
}

impl QuantaleMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<QElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(QuantaleMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QElement) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        QuantaleMatrix { rows, cols, entries }
    }

    /// `1` on the diagonal, `⊥` elsewhere.
    pub fn identity(q: &AtomicQuantale, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| if i == j { q.unit().clone() } else { q.bottom() })
    }

    pub fn zero(q: &AtomicQuantale, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| q.bottom())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QElement {
        &self.entries[i * self.cols + j]
    }

    /// `(M*)_{i,j} = (M_{j,i})*`.
    pub fn star_transpose(&self, q: &AtomicQuantale) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| q.q_star(self.get(j, i)))
    }

    /// Entrywise `⩽`; false on shape mismatch.
    pub fn leq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.is_subset(b))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("join of differently shaped matrices".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.union(b)).collect();
        Ok(QuantaleMatrix { rows: self.rows, cols: self.cols, entries })
    }
}

/// `(MN)_{i,j} = ⋁_k M_{i,k} N_{k,j}`.
pub fn matmul(q: &AtomicQuantale, m: &QuantaleMatrix, n: &QuantaleMatrix) -> Result<QuantaleMatrix> {
    if m.cols != n.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            m.rows, m.cols, n.rows, n.cols
        )));
    }
    Ok(QuantaleMatrix::from_fn(m.rows, n.cols, |i, j| {
        let mut acc = q.bottom();
        for k in 0..m.cols {
            acc.union_with(&q.q_mul(m.get(i, k), n.get(k, j)));
        }
        acc
    }))
}

/// `P² = P` and `P* = P`.
pub fn is_proj_object(q: &AtomicQuantale, p: &QuantaleMatrix) -> bool {
    p.rows == p.cols && matmul(q, p, p).as_ref() == Ok(p) && p.star_transpose(q) == *p
}

/// An object of `Proj(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjObject(QuantaleMatrix);

impl ProjObject {
    pub fn new(q: &AtomicQuantale, p: QuantaleMatrix) -> Result<Self> {
        if p.rows != p.cols {
            return Err(Error::DimensionMismatch("a Proj(Q) object is a square matrix".into()));
        }
        if !is_proj_object(q, &p) {
            return Err(Error::NotProjObject);
        }
        Ok(ProjObject(p))
    }

    pub fn matrix(&self) -> &QuantaleMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }
}

fn check_shape(src: &ProjObject, dst: &ProjObject, m: &QuantaleMatrix) -> Result<()> {
    if m.rows != src.size() || m.cols != dst.size() {
        return Err(Error::DimensionMismatch(format!(
            "morphism is {}x{}, objects have sizes {} and {}",
            m.rows,
            m.cols,
            src.size(),
            dst.size()
        )));
    }
    Ok(())
}

/// `P·M = M` and `M·P' = M`, where `P` is `src` and `P'` is `dst`.
pub fn is_proj_morphism(q: &AtomicQuantale, src: &ProjObject, dst: &ProjObject, m: &QuantaleMatrix) -> Result<bool> {
    check_shape(src, dst, m)?;
    Ok(matmul(q, &src.0, m)? == *m && matmul(q, m, &dst.0)? == *m)
}

/// `M M* ⩽ P` and `P' ⩽ M* M`.
pub fn is_functional(q: &AtomicQuantale, src: &ProjObject, dst: &ProjObject, m: &QuantaleMatrix) -> Result<bool> {
    check_shape(src, dst, m)?;
    let ms = m.star_transpose(q);
    Ok(matmul(q, m, &ms)?.leq(&src.0) && dst.0.leq(&matmul(q, &ms, m)?))
}

/// Outcome of the Q-set axioms on a bracket `⟦x,y⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSetReport {
    /// `⟦x,y⟧ = ⟦y,x⟧*`.
    pub s1: bool,
    /// `⟦x,y⟧⟦y,z⟧ ⩽ ⟦x,z⟧`.
    pub s2: bool,
    /// `⟦x,y⟧ = ⋁_t ⟦x,t⟧⟦t,y⟧`.
    pub s2_primed: bool,
    /// `⟦x,y⟧⟦y,y⟧ = ⟦x,y⟧`.
    pub lemma: bool,
}

impl QSetReport {
    pub fn is_qset(&self) -> bool {
        self.s1 && self.s2
    }

    /// Under (S1), (S2) and (S2′) must agree, and a Q-set satisfies the
    /// lemma. Any violation of that is a discrepancy.
    pub fn discrepancy(&self) -> bool {
        (self.s1 && self.s2 != self.s2_primed) || (self.is_qset() && !self.lemma)
    }
}

pub fn check_qset(q: &AtomicQuantale, bracket: &QuantaleMatrix) -> Result<QSetReport> {
    if bracket.rows != bracket.cols {
        return Err(Error::DimensionMismatch("a Q-set bracket is square".into()));
    }
    let n = bracket.rows;
    let b = |x, y| bracket.get(x, y);
    let s1 = *bracket == bracket.star_transpose(q);
    let s2 = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| q.q_mul(b(x, y), b(y, z)).is_subset(b(x, z)))));
    let s2_primed = matmul(q, bracket, bracket)? == *bracket;
    let lemma = (0..n).all(|x| (0..n).all(|y| q.q_mul(b(x, y), b(y, y)) == *b(x, y)));
    Ok(QSetReport { s1, s2, s2_primed, lemma })
}

/// Outcome of the Q-relation and Q-function axioms on `R(y, x)`, with the
/// primed forms evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRelationReport {
    /// `⟦y,y'⟧R(y',x) ⩽ R(y,x)`, with equality when `y = y'`.
    pub r1: bool,
    /// `R(y,x')⟦x',x⟧ ⩽ R(y,x)`, with equality when `x = x'`.
    pub r2: bool,
    /// `⋁_{y'} ⟦y,y'⟧R(y',x) = R(y,x)`.
    pub r1_primed: bool,
    /// `⋁_{x'} R(y,x')⟦x',x⟧ = R(y,x)`.
    pub r2_primed: bool,
    /// `R(y,x)R(y',x)* ⩽ ⟦y,y'⟧`.
    pub f1: bool,
    /// `⟦x,x⟧ ⩽ ⋁_y R(y,x)*R(y,x)`.
    pub f2: bool,
    /// `⟦x,x'⟧ ⩽ ⋁_y R(y,x)*R(y,x')`.
    pub f2_primed: bool,
}

impl QRelationReport {
    pub fn is_relation(&self) -> bool {
        self.r1 && self.r2
    }

    pub fn is_function(&self) -> bool {
        self.is_relation() && self.f1 && self.f2
    }

    /// Names of the primed/unprimed pairs that disagree where they must
    /// agree (both brackets being Q-sets; (F2) only under (R2)).
    pub fn discrepancies(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.r1 != self.r1_primed {
            out.push("R1");
        }
        if self.r2 != self.r2_primed {
            out.push("R2");
        }
        if self.r2 && self.f2 != self.f2_primed {
            out.push("F2");
        }
        out
    }
}

/// `table` is `|Y| × |X|` with entries `R(y, x)`.
pub fn check_qrelation(
    q: &AtomicQuantale,
    bx: &QuantaleMatrix,
    by: &QuantaleMatrix,
    table: &QuantaleMatrix,
) -> Result<QRelationReport> {
    let (nx, ny) = (bx.rows, by.rows);
    if bx.cols != nx || by.cols != ny || table.rows != ny || table.cols != nx {
        return Err(Error::DimensionMismatch("relation table must be |Y|x|X| over square brackets".into()));
    }
    let r = |y, x| table.get(y, x);
    let r1 = (0..ny).all(|y| {
        (0..ny).all(|y2| {
            (0..nx).all(|x| {
                let lhs = q.q_mul(by.get(y, y2), r(y2, x));
                if y == y2 { lhs == *r(y, x) } else { lhs.is_subset(r(y, x)) }
            })
        })
    });
    let r2 = (0..ny).all(|y| {
        (0..nx).all(|x2| {
            (0..nx).all(|x| {
                let lhs = q.q_mul(r(y, x2), bx.get(x2, x));
                if x == x2 { lhs == *r(y, x) } else { lhs.is_subset(r(y, x)) }
            })
        })
    });
    let r1_primed = matmul(q, by, table)? == *table;
    let r2_primed = matmul(q, table, bx)? == *table;
    let f1 = (0..ny).all(|y| (0..ny).all(|y2| (0..nx).all(|x| q.q_mul(r(y, x), &q.q_star(r(y2, x))).is_subset(by.get(y, y2)))));
    let rs_r = matmul(q, &table.star_transpose(q), table)?;
    let f2 = (0..nx).all(|x| bx.get(x, x).is_subset(rs_r.get(x, x)));
    let f2_primed = bx.leq(&rs_r);
    Ok(QRelationReport { r1, r2, r1_primed, r2_primed, f1, f2, f2_primed })
}

/// Same checks as [`check_qrelation`]; the function predicates are
/// [`QRelationReport::is_function`].
pub fn check_qfunction(
    q: &AtomicQuantale,
    bx: &QuantaleMatrix,
    by: &QuantaleMatrix,
    table: &QuantaleMatrix,
) -> Result<QRelationReport> {
    check_qrelation(q, bx, by, table)
}

/// A finite lattice with a right action of `Q`, given on atoms.
///
/// Elements are `0..size`. The action of a general `q` is the join of the
/// actions of its atoms, so `m·⊥ = ⊥` and joins in `q` are preserved by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    size: usize,
    bottom: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    atoms: usize,
    action: Vec<usize>,
}

impl FiniteModule {
    /// `join`/`meet` are `size × size` tables and `action[m * atoms + a]` is
    /// `m·a`.
    pub fn new(size: usize, bottom: usize, join: Vec<usize>, meet: Vec<usize>, atoms: usize, action: Vec<usize>) -> Result<Self> {
        let ok = size > 0
            && bottom < size
            && join.len() == size * size
            && meet.len() == size * size
            && action.len() == size * atoms
            && join.iter().chain(&meet).chain(&action).all(|&e| e < size);
        if !ok {
            return Err(Error::DimensionMismatch("module tables do not match the lattice size".into()));
        }
        Ok(FiniteModule { size, bottom, join, meet, atoms, action })
    }

    /// `Q` acting on itself by right multiplication; elements are atom
    /// bitmasks.
    pub fn regular(q: &AtomicQuantale) -> Result<Self> {
        const MAX_ATOMS: usize = 10;
        let n = q.atom_count();
        if n > MAX_ATOMS {
            return Err(Error::BoundExceeded { atoms: n, bound: MAX_ATOMS });
        }
        let size = 1usize << n;
        let join = (0..size * size).map(|k| (k / size) | (k % size)).collect();
        let meet = (0..size * size).map(|k| (k / size) & (k % size)).collect();
        let action = (0..size * n)
            .map(|k| {
                let m = AtomSet::from_mask(n, (k / n) as u64);
                q.q_mul(&m, &q.atom(k % n)).to_mask().expect("few atoms") as usize
            })
            .collect();
        FiniteModule::new(size, 0, join, meet, n, action)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    pub fn act_atom(&self, m: usize, a: usize) -> usize {
        self.action[m * self.atoms + a]
    }

    /// `m·q = ⋁_{a ∈ q} m·a`.
    pub fn act(&self, m: usize, q: &QElement) -> usize {
        q.atoms().fold(self.bottom, |acc, a| self.join(acc, self.act_atom(m, a)))
    }
}

/// The `Q`-elements a module check ranges over: all of them for small
/// quantales, else every atom plus a fixed seeded sample.
pub fn test_elements(q: &AtomicQuantale) -> Vec<QElement> {
    const ALL_UP_TO: usize = 8;
    const SAMPLES: usize = 64;
    let n = q.atom_count();
    if n <= ALL_UP_TO {
        return (0..1u64 << n).map(|m| AtomSet::from_mask(n, m)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out: Vec<QElement> = (0..n).map(|a| q.atom(a)).collect();
    out.extend((0..SAMPLES).map(|_| q.random_element(&mut rng)));
    out
}

/// Module laws and the modularity inequality `m ∧ nq ⩽ (mq* ∧ n)q`.
/// Witnesses are rendered as text since they mix lattice and quantale
/// elements.
pub fn check_modular_action(q: &AtomicQuantale, l: &FiniteModule) -> Result<AxiomReport<String>> {
    if l.atoms != q.atom_count() {
        return Err(Error::DimensionMismatch("module acted on by a different atom set".into()));
    }
    let n = q.atom_count();
    let (mut bil, mut unit, mut assoc, mut modular) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    for a in 0..n {
        bil.record(l.act_atom(l.bottom, a) == l.bottom, || vec![format!("bottom·a{a}")]);
        for m in 0..l.size {
            for m2 in 0..l.size {
                let ok = l.act_atom(l.join(m, m2), a) == l.join(l.act_atom(m, a), l.act_atom(m2, a));
                bil.record(ok, || vec![format!("m={m}"), format!("n={m2}"), format!("a{a}")]);
            }
        }
    }
    for m in 0..l.size {
        unit.record(l.act(m, q.unit()) == m, || vec![format!("m={m}")]);
        for a in 0..n {
            for b in 0..n {
                let ok = l.act_atom(l.act_atom(m, a), b) == l.act(m, q.atom_product(a, b));
                assoc.record(ok, || vec![format!("m={m}"), format!("a{a}"), format!("a{b}")]);
            }
        }
    }
    let elems = test_elements(q);
    for qe in &elems {
        let qs = q.q_star(qe);
        for m in 0..l.size {
            let mqs = l.act(m, &qs);
            for m2 in 0..l.size {
                let lhs = l.meet(m, l.act(m2, qe));
                let rhs = l.act(l.meet(mqs, m2), qe);
                modular.record(l.leq(lhs, rhs), || vec![format!("m={m}"), format!("n={m2}"), format!("q={qe}")]);
            }
        }
    }
    Ok(AxiomReport {
        mode: None,
        checks: vec![
            bil.finish("join-bilinear"),
            unit.finish("unit"),
            assoc.finish("associative"),
            modular.finish("modular"),
        ],
    })
}

/// Checks that `f: A × B → C` (table `f[a * |B| + b]`) is a `Q`-bilinear
/// map: join-preserving in each variable and
/// `f(aq, b) ⩽ f(a, bq*)q`, `f(a, bq) ⩽ f(aq*, b)q`, `f(a, b)q ⩽ f(aq, bq)`.
pub fn check_q_bilinear(
    q: &AtomicQuantale,
    a: &FiniteModule,
    b: &FiniteModule,
    c: &FiniteModule,
    f: &[usize],
) -> Result<AxiomReport<String>> {
    if f.len() != a.size * b.size || f.iter().any(|&v| v >= c.size) {
        return Err(Error::DimensionMismatch("bilinear map table does not match A × B → C".into()));
    }
    let fv = |x: usize, y: usize| f[x * b.size + y];
    let (mut lin, mut c1, mut c2, mut c3) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    for y in 0..b.size {
        lin.record(fv(a.bottom, y) == c.bottom, || vec![format!("f(bottom,{y})")]);
        for x in 0..a.size {
            for x2 in 0..a.size {
                lin.record(fv(a.join(x, x2), y) == c.join(fv(x, y), fv(x2, y)), || vec![format!("a={x}"), format!("a'={x2}"), format!("b={y}")]);
            }
        }
    }
    for x in 0..a.size {
        lin.record(fv(x, b.bottom) == c.bottom, || vec![format!("f({x},bottom)")]);
        for y in 0..b.size {
            for y2 in 0..b.size {
                lin.record(fv(x, b.join(y, y2)) == c.join(fv(x, y), fv(x, y2)), || vec![format!("a={x}"), format!("b={y}"), format!("b'={y2}")]);
            }
        }
    }
    for qe in &test_elements(q) {
        let qs = q.q_star(qe);
        for x in 0..a.size {
            for y in 0..b.size {
                let w = || vec![format!("a={x}"), format!("b={y}"), format!("q={qe}")];
                c1.record(c.leq(fv(a.act(x, qe), y), c.act(fv(x, b.act(y, &qs)), qe)), w);
                c2.record(c.leq(fv(x, b.act(y, qe)), c.act(fv(a.act(x, &qs), y), qe)), w);
                c3.record(c.leq(c.act(fv(x, y), qe), fv(a.act(x, qe), b.act(y, qe))), w);
            }
        }
    }
    Ok(AxiomReport {
        mode: None,
        checks: vec![lin.finish("join-bilinear"), c1.finish("Q-bil-1"), c2.finish("Q-bil-2"), c3.finish("Q-bil-3")],
    })
}
