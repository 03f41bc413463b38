//! Report structures and their two renderings.
//!
//! JSON output is serde with struct field order; table output is plain
//! aligned text. Rationals are always written `p/q`.

use std::fmt::Write;

use hyperq::report::{AxiomReport, Outcome};
use num::BigRational;
use serde::Serialize;

pub fn ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize)]
pub struct Envelope<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: String,
    pub input_sha256: String,
    pub command: &'static str,
    pub result: T,
}

pub trait Table {
    fn table(&self, out: &mut String);
}

impl<T: Table> Envelope<T> {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.tool, self.version).unwrap();
        writeln!(out, "input: {} (sha256 {})", self.input, self.input_sha256).unwrap();
        writeln!(out, "command: {}", self.command).unwrap();
        self.result.table(&mut out);
        out
    }
}

/// Left-aligned columns separated by two spaces.
pub fn columns(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let text: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", text.join("  ").trim_end()).unwrap();
    };
    line(out, &mut header.iter().copied());
    for row in rows {
        line(out, &mut row.iter().map(String::as_str));
    }
}

#[derive(Serialize)]
pub struct AtomRow {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    pub star: usize,
    pub unit: bool,
    pub simple: bool,
    pub orbit_size: Option<usize>,
    pub representative: Option<[usize; 2]>,
}

#[derive(Serialize)]
pub struct AtomsReport {
    pub points: Option<usize>,
    pub units: usize,
    pub arrows: Vec<AtomRow>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), ToString::to_string)
}

impl Table for AtomsReport {
    fn table(&self, out: &mut String) {
        writeln!(out, "points: {}", opt(&self.points)).unwrap();
        writeln!(out, "units: {}", self.units).unwrap();
        writeln!(out, "arrows: {}", self.arrows.len()).unwrap();
        let rows: Vec<Vec<String>> = self
            .arrows
            .iter()
            .map(|a| {
                vec![
                    format!("a{}", a.id),
                    format!("u{}", a.src),
                    format!("u{}", a.tgt),
                    format!("a{}", a.star),
                    yes_no(a.unit),
                    yes_no(a.simple),
                    opt(&a.orbit_size),
                    a.representative.map_or("-".into(), |[x, y]| format!("({x},{y})")),
                ]
            })
            .collect();
        columns(out, &["id", "src", "tgt", "star", "unit", "simple", "size", "rep"], &rows);
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

#[derive(Serialize)]
pub struct WeightRow {
    pub arrow: usize,
    pub left: String,
    pub right: String,
    pub chi: String,
}

#[derive(Serialize)]
pub struct MuRow {
    pub a: usize,
    pub g: usize,
    pub h: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct AlgebraReport {
    pub locally_finite: bool,
    pub weights: Vec<WeightRow>,
    pub structure_constants: Vec<MuRow>,
}

impl Table for AlgebraReport {
    fn table(&self, out: &mut String) {
        writeln!(out, "locally finite: {}", yes_no(self.locally_finite)).unwrap();
        writeln!(out, "\nweights").unwrap();
        let rows: Vec<Vec<String>> = self
            .weights
            .iter()
            .map(|w| vec![format!("a{}", w.arrow), w.left.clone(), w.right.clone(), w.chi.clone()])
            .collect();
        columns(out, &["arrow", "left", "right", "chi"], &rows);
        writeln!(out, "\nstructure constants <a|g,h>").unwrap();
        let rows: Vec<Vec<String>> = self
            .structure_constants
            .iter()
            .map(|m| vec![format!("a{}", m.g), format!("a{}", m.h), format!("a{}", m.a), m.value.clone()])
            .collect();
        columns(out, &["g", "h", "a", "value"], &rows);
    }
}

#[derive(Serialize)]
pub struct CheckRow {
    pub axiom: String,
    pub status: &'static str,
    pub cases: u64,
    pub counterexample: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct AxiomSection {
    pub mode: Option<String>,
    pub error: Option<String>,
    pub checks: Vec<CheckRow>,
}

impl AxiomSection {
    pub fn from_report<W>(report: &AxiomReport<W>, show: impl Fn(&W) -> String) -> Self {
        let checks = report
            .checks
            .iter()
            .map(|c| {
                let (status, counterexample) = match &c.outcome {
                    Outcome::Verified => ("verified", None),
                    Outcome::Vacuous => ("vacuous", None),
                    Outcome::Failed(w) => ("failed", Some(w.iter().map(&show).collect())),
                };
                CheckRow { axiom: c.axiom.to_string(), status, cases: c.cases, counterexample }
            })
            .collect();
        AxiomSection { mode: report.mode.map(|m| m.to_string()), error: None, checks }
    }

    pub fn error(message: String) -> Self {
        AxiomSection { mode: None, error: Some(message), checks: Vec::new() }
    }

    pub fn failures(&self, prefix: &str) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| c.status == "failed")
            .map(|c| format!("{prefix}:{}", c.axiom))
            .collect();
        if self.error.is_some() {
            out.push(format!("{prefix}:structure"));
        }
        out
    }

    fn table(&self, title: &str, out: &mut String) {
        write!(out, "\n{title}").unwrap();
        if let Some(m) = &self.mode {
            write!(out, " [{m}]").unwrap();
        }
        writeln!(out).unwrap();
        if let Some(e) = &self.error {
            writeln!(out, "error: {e}").unwrap();
        }
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.axiom.clone(),
                    c.status.to_string(),
                    c.cases.to_string(),
                    c.counterexample.as_ref().map_or(String::new(), |w| w.join(" ")),
                ]
            })
            .collect();
        if !rows.is_empty() {
            columns(out, &["check", "status", "cases", "counterexample"], &rows);
        }
    }
}

#[derive(Serialize)]
pub struct GrothendieckSection {
    pub holds: bool,
    pub unfactored_atoms: Vec<usize>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub quantale: AxiomSection,
    pub hypergroupoid: AxiomSection,
    pub weights: Option<AxiomSection>,
    /// Informational: whether every atom factors through simple atoms.
    pub grothendieck: Option<GrothendieckSection>,
}

impl Table for CheckReport {
    fn table(&self, out: &mut String) {
        writeln!(out, "passed: {}", yes_no(self.passed)).unwrap();
        self.quantale.table("quantale axioms", out);
        self.hypergroupoid.table("hypergroupoid axioms", out);
        if let Some(w) = &self.weights {
            w.table("weight identities", out);
        }
        if let Some(g) = &self.grothendieck {
            writeln!(out, "\nQ10 (informational): {}", if g.holds { "holds" } else { "fails" }).unwrap();
            if !g.unfactored_atoms.is_empty() {
                let ids: Vec<String> = g.unfactored_atoms.iter().map(|a| format!("a{a}")).collect();
                writeln!(out, "unfactored atoms: {}", ids.join(" ")).unwrap();
            }
        }
    }
}

#[derive(Serialize)]
pub struct KmsRow {
    pub q: usize,
    pub q2: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct KmsSection {
    pub passed: bool,
    pub pairs: u64,
    pub failures: Vec<KmsRow>,
}

impl Table for KmsSection {
    fn table(&self, out: &mut String) {
        writeln!(out, "pairs checked: {}", self.pairs).unwrap();
        writeln!(out, "failures: {}", self.failures.len()).unwrap();
        let rows: Vec<Vec<String>> = self
            .failures
            .iter()
            .map(|f| vec![format!("a{}", f.q), format!("a{}", f.q2), f.lhs.clone(), f.rhs.clone()])
            .collect();
        if !rows.is_empty() {
            columns(out, &["q", "q'", "eta([q] sigma_i([q']))", "eta([q'][q])"], &rows);
        }
    }
}

#[derive(Serialize)]
pub struct ComplexTerm {
    pub arrow: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize)]
pub struct EvolveReport {
    pub t: f64,
    pub element: String,
    pub terms: Vec<ComplexTerm>,
}

impl Table for EvolveReport {
    fn table(&self, out: &mut String) {
        writeln!(out, "t: {}", self.t).unwrap();
        writeln!(out, "element: {}", self.element).unwrap();
        let rows: Vec<Vec<String>> = self
            .terms
            .iter()
            .map(|c| vec![format!("a{}", c.arrow), format!("{:+.15e}", c.re), format!("{:+.15e}", c.im)])
            .collect();
        columns(out, &["arrow", "re", "im"], &rows);
    }
}

#[derive(Serialize)]
pub struct ExtTerm {
    pub arrow: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct ConvolveReport {
    pub f: Vec<ExtTerm>,
    pub g: Vec<ExtTerm>,
    pub result: Vec<ExtTerm>,
}

impl Table for ConvolveReport {
    fn table(&self, out: &mut String) {
        let show = |v: &[ExtTerm]| {
            if v.is_empty() {
                "0".to_string()
            } else {
                v.iter().map(|t| format!("{}*[a{}]", t.value, t.arrow)).collect::<Vec<_>>().join(" + ")
            }
        };
        writeln!(out, "f: {}", show(&self.f)).unwrap();
        writeln!(out, "g: {}", show(&self.g)).unwrap();
        writeln!(out, "f*g: {}", show(&self.result)).unwrap();
    }
}

#[derive(Serialize)]
pub struct HomRow {
    pub from: usize,
    pub to: usize,
    pub count: usize,
}

#[derive(Serialize)]
pub struct SiteReport {
    pub objects: Vec<String>,
    pub homs: Vec<HomRow>,
}

impl Table for SiteReport {
    fn table(&self, out: &mut String) {
        writeln!(out, "objects: {}", self.objects.len()).unwrap();
        for (i, o) in self.objects.iter().enumerate() {
            writeln!(out, "  q{i} = {o}").unwrap();
        }
        let rows: Vec<Vec<String>> = self
            .homs
            .iter()
            .map(|h| vec![format!("q{}", h.from), format!("q{}", h.to), h.count.to_string()])
            .collect();
        columns(out, &["from", "to", "homs"], &rows);
    }
}
