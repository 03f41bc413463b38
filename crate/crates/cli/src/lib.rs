//! Command-line driver: reads a `hyperq/1` JSON input, runs the pipeline
//! and renders a deterministic report.

pub mod input;
pub mod literal;
pub mod report;

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperq::{CheckMode, ExtNat};
use serde::Serialize;
use sha2::{Digest, Sha256};

use input::Model;
use report::*;

#[derive(Debug, Parser)]
#[command(name = "hyperq", version, about = "Atomic quantales, hypergroupoids and their convolution algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List units and arrows (pair orbits for realized inputs).
    Atoms { file: PathBuf },
    /// Weights, characters and structure constants.
    Algebra { file: PathBuf },
    /// Quantale, hypergroupoid and weight-identity checks.
    Check {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Exact KMS check at inverse temperature one.
    Kms { file: PathBuf },
    /// Apply the time evolution at real time t to an element.
    Evolve {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Element literal, e.g. `2*[a3] + 1/2*[a0]`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Convolve two functions with values in the extended naturals.
    Convolve {
        file: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Objects and hom-set sizes of the site of the quantale.
    Site { file: PathBuf },
}

#[derive(Debug, Args)]
#[group(multiple = true)]
pub struct ModeArgs {
    /// Check every element triple (at most 9 atoms).
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Check this many seeded random triples.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0, requires = "samples")]
    pub seed: u64,
}

/// Default triple budget when a quantale is too large for exhaustive checks.
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// Rendered report plus the names of failed checks.
pub struct Run {
    pub stdout: String,
    pub failures: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Run> {
    let file = match &cli.command {
        Command::Atoms { file }
        | Command::Algebra { file }
        | Command::Check { file, .. }
        | Command::Kms { file }
        | Command::Evolve { file, .. }
        | Command::Convolve { file, .. }
        | Command::Site { file } => file,
    };
    let bytes = std::fs::read(file).with_context(|| format!("cannot read {}", file.display()))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).context("input is not UTF-8")?;
    let model = input::build(input::parse(&text)?)?;
    let name = model.name().to_string();
    let header = Header { name, digest, format: cli.format };
    match &cli.command {
        Command::Atoms { .. } => Ok(header.emit(("atoms", atoms(&model)?), vec![])),
        Command::Algebra { .. } => Ok(header.emit(("algebra", algebra(&model)?), vec![])),
        Command::Check { mode, .. } => {
            let report = check(&model, mode)?;
            let mut failures = report.quantale.failures("quantale");
            failures.extend(report.hypergroupoid.failures("hypergroupoid"));
            if let Some(w) = &report.weights {
                failures.extend(w.failures("weights"));
            }
            Ok(header.emit(("check", report), failures))
        }
        Command::Kms { .. } => {
            let report = kms(&model)?;
            let failures = if report.passed { vec![] } else { vec!["kms".to_string()] };
            Ok(header.emit(("kms", report), failures))
        }
        Command::Evolve { t, element, .. } => Ok(header.emit(("evolve", evolve(&model, *t, element)?), vec![])),
        Command::Convolve { f, g, .. } => Ok(header.emit(("convolve", convolve(&model, f, g)?), vec![])),
        Command::Site { .. } => Ok(header.emit(("site", site(&model)?), vec![])),
    }
}

struct Header {
    name: String,
    digest: String,
    format: Format,
}

impl Header {
    fn emit<T: Serialize + Table>(&self, (command, result): (&'static str, T), failures: Vec<String>) -> Run {
        let env = Envelope {
            tool: "hyperq",
            version: env!("CARGO_PKG_VERSION"),
            input: self.name.clone(),
            input_sha256: self.digest.clone(),
            command,
            result,
        };
        let stdout = match self.format {
            Format::Table => env.render_table(),
            Format::Json => serde_json::to_string_pretty(&env).expect("reports serialize") + "\n",
        };
        Run { stdout, failures }
    }
}

fn ext(v: ExtNat) -> String {
    v.to_string()
}

fn atoms(model: &Model) -> Result<AtomsReport> {
    let h = model.hypergroupoid()?;
    let real = match model {
        Model::Realized { real, .. } => Some(real),
        _ => None,
    };
    let arrows = (0..h.arrow_count())
        .map(|g| {
            let a = h.arrow(g);
            AtomRow {
                id: g,
                src: a.src,
                tgt: a.tgt,
                star: a.star,
                unit: h.is_unit_arrow(g),
                simple: h.is_simple(g),
                orbit_size: real.map(|r| r.orbit_size(g)),
                representative: real.map(|r| {
                    let (x, y) = r.representative(g);
                    [x, y]
                }),
            }
        })
        .collect();
    Ok(AtomsReport { points: real.map(|r| r.point_count()), units: h.unit_count(), arrows })
}

fn algebra(model: &Model) -> Result<AlgebraReport> {
    let w = model.weighted()?;
    let weights = (0..w.arrow_count())
        .map(|g| WeightRow {
            arrow: g,
            left: ext(w.left(g)),
            right: ext(w.right(g)),
            chi: w.chi(g).map_or_else(|_| "undefined".into(), |c| ratio(&c)),
        })
        .collect();
    let structure_constants = w
        .mu_entries()
        .map(|((a, g, h), v)| MuRow { a, g, h, value: ext(v) })
        .collect();
    Ok(AlgebraReport { locally_finite: w.is_locally_finite(), weights, structure_constants })
}

fn check(model: &Model, args: &ModeArgs) -> Result<CheckReport> {
    let q = model.quantale();
    let mode = if args.exhaustive {
        CheckMode::exhaustive()
    } else if let Some(count) = args.samples {
        CheckMode::Sampled { count, seed: args.seed }
    } else if q.atom_count() <= CheckMode::DEFAULT_BOUND {
        CheckMode::exhaustive()
    } else {
        CheckMode::Sampled { count: DEFAULT_SAMPLES, seed: 0 }
    };
    let qreport = q.check_axioms(mode)?;
    let quantale = AxiomSection::from_report(&qreport, |e| e.to_string());
    let hg = model.hypergroupoid();
    let hypergroupoid = match &hg {
        Ok(h) => AxiomSection::from_report(&h.check_hg_axioms(), |g| format!("a{g}")),
        Err(e) => AxiomSection::error(e.to_string()),
    };
    let weights = model
        .weighted()
        .ok()
        .map(|w| AxiomSection::from_report(&w.validate_weights(), |g| format!("a{g}")));
    let grothendieck = hg.ok().map(|_| {
        let g = q.is_grothendieck();
        GrothendieckSection {
            holds: g.holds,
            unfactored_atoms: g.witness.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(a, _)| a).collect(),
        }
    });
    let passed = quantale.failures("").is_empty()
        && hypergroupoid.failures("").is_empty()
        && weights.as_ref().is_none_or(|w| w.failures("").is_empty());
    Ok(CheckReport { passed, quantale, hypergroupoid, weights, grothendieck })
}

fn kms(model: &Model) -> Result<KmsSection> {
    let report = model.weighted()?.kms_check()?;
    Ok(KmsSection {
        passed: report.passed(),
        pairs: report.pairs,
        failures: report
            .failures
            .iter()
            .map(|f| KmsRow { q: f.q, q2: f.q2, lhs: ratio(&f.lhs), rhs: ratio(&f.rhs) })
            .collect(),
    })
}

fn evolve(model: &Model, t: f64, element: &str) -> Result<EvolveReport> {
    let u = literal::parse_element(element)?;
    let evolved = model.weighted()?.sigma(t, &u)?;
    Ok(EvolveReport {
        t,
        element: u.to_string(),
        terms: evolved.terms().map(|(g, c)| ComplexTerm { arrow: g, re: c.re, im: c.im }).collect(),
    })
}

fn convolve(model: &Model, f: &str, g: &str) -> Result<ConvolveReport> {
    let f = literal::parse_ext_function(f)?;
    let g = literal::parse_ext_function(g)?;
    let result = model.weighted()?.convolve_ext(&f, &g)?;
    let list = |m: &std::collections::BTreeMap<usize, ExtNat>| {
        m.iter().map(|(&arrow, &v)| ExtTerm { arrow, value: ext(v) }).collect()
    };
    Ok(ConvolveReport { f: list(&f), g: list(&g), result: list(&result) })
}

fn site(model: &Model) -> Result<SiteReport> {
    let q = model.quantale();
    let site = q.site()?;
    let k = site.objects.len();
    let homs = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| HomRow { from: i, to: j, count: site.hom(i, j).len() })
        .collect();
    Ok(SiteReport { objects: site.objects.iter().map(ToString::to_string).collect(), homs })
}
