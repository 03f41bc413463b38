//! The `hyperq/1` JSON input schema.

use anyhow::{bail, ensure, Context, Result};
use hyperq::algebra::WeightedHypergroupoid;
use hyperq::hypergroupoid::{Arrow, Hypergroupoid};
use hyperq::quantale::AtomicQuantale;
use hyperq::realization::{orbit_atoms, ConcreteRealization, CosetSpec, Perm, PermAction, Subgroup};
use hyperq::ExtNat;
use serde::Deserialize;

pub const SCHEMA: &str = "hyperq/1";

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InputSpec {
    Action {
        schema: String,
        name: String,
        points: usize,
        generators: Vec<Perm>,
    },
    Coset {
        schema: String,
        name: String,
        degree: usize,
        group_generators: Vec<Perm>,
        subgroups: Vec<SubgroupSpec>,
    },
    Abstract {
        schema: String,
        name: String,
        /// Identity arrow of each unit.
        units: Vec<usize>,
        arrows: Vec<ArrowSpec>,
        comp: Vec<CompEntry>,
        mu: Option<Vec<MuEntry>>,
    },
    Quantale {
        schema: String,
        name: String,
        atoms: usize,
        product: Vec<ProductEntry>,
        star: Vec<usize>,
        unit: Vec<usize>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub name: String,
    pub generators: Vec<Perm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub src: usize,
    pub tgt: usize,
    pub star: usize,
}

/// `comp(g, h)`: first `h`, then `g`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompEntry {
    pub g: usize,
    pub h: usize,
    pub result: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuEntry {
    pub a: usize,
    pub g: usize,
    pub h: usize,
    pub value: MuValue,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MuValue {
    Count(u64),
    Sentinel(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub u: usize,
    pub v: usize,
    pub result: Vec<usize>,
}

/// What the pipeline could build from an input file.
pub enum Model {
    Realized { name: String, real: Box<ConcreteRealization>, weighted: WeightedHypergroupoid },
    Abstract { name: String, base: Hypergroupoid, weighted: Option<WeightedHypergroupoid> },
    Quantale { name: String, quantale: AtomicQuantale },
}

impl Model {
    pub fn name(&self) -> &str {
        match self {
            Model::Realized { name, .. } | Model::Abstract { name, .. } | Model::Quantale { name, .. } => name,
        }
    }

    pub fn weighted(&self) -> Result<&WeightedHypergroupoid> {
        match self {
            Model::Realized { weighted, .. } => Ok(weighted),
            Model::Abstract { weighted: Some(w), .. } => Ok(w),
            _ => bail!("this input carries no structure constants"),
        }
    }

    /// The quantale of the input, built from the hypergroupoid if needed.
    pub fn quantale(&self) -> AtomicQuantale {
        match self {
            Model::Realized { real, .. } => real.hypergroupoid().to_quantale(),
            Model::Abstract { base, .. } => base.to_quantale(),
            Model::Quantale { quantale, .. } => quantale.clone(),
        }
    }

    pub fn hypergroupoid(&self) -> Result<Hypergroupoid> {
        match self {
            Model::Realized { real, .. } => Ok(real.hypergroupoid().clone()),
            Model::Abstract { base, .. } => Ok(base.clone()),
            Model::Quantale { quantale, .. } => Ok(Hypergroupoid::from_quantale(quantale)?),
        }
    }
}

fn check_schema(schema: &str) -> Result<()> {
    ensure!(schema == SCHEMA, "unsupported schema {schema:?}, expected {SCHEMA:?}");
    Ok(())
}

pub fn parse(text: &str) -> Result<InputSpec> {
    serde_json::from_str(text).context("input is not a valid hyperq/1 document")
}

pub fn build(spec: InputSpec) -> Result<Model> {
    match spec {
        InputSpec::Action { schema, name, points, generators } => {
            check_schema(&schema)?;
            let real = orbit_atoms(&PermAction::new(points, generators)?);
            let weighted = WeightedHypergroupoid::from_realization(&real);
            Ok(Model::Realized { name, real: Box::new(real), weighted })
        }
        InputSpec::Coset { schema, name, degree, group_generators, subgroups } => {
            check_schema(&schema)?;
            let spec = CosetSpec {
                degree,
                group_generators,
                subgroups: subgroups.into_iter().map(|s| Subgroup { name: s.name, generators: s.generators }).collect(),
            };
            let (action, _) = spec.union_of_cosets()?;
            let real = orbit_atoms(&action);
            let weighted = WeightedHypergroupoid::from_realization(&real);
            Ok(Model::Realized { name, real: Box::new(real), weighted })
        }
        InputSpec::Abstract { schema, name, units, arrows, comp, mu } => {
            check_schema(&schema)?;
            let arrows = arrows.into_iter().map(|a| Arrow { src: a.src, tgt: a.tgt, star: a.star }).collect();
            let comp = comp.into_iter().map(|c| ((c.g, c.h), c.result)).collect();
            let base = Hypergroupoid::new(units, arrows, comp)?;
            let weighted = match mu {
                None => None,
                Some(entries) => {
                    let mut table = Vec::with_capacity(entries.len());
                    for e in entries {
                        let v = match e.value {
                            MuValue::Count(n) => ExtNat::Fin(n),
                            MuValue::Sentinel(s) if s == "inf" => ExtNat::Inf,
                            MuValue::Sentinel(s) => bail!("mu value {s:?} is neither a count nor \"inf\""),
                        };
                        table.push(((e.a, e.g, e.h), v));
                    }
                    Some(WeightedHypergroupoid::new(base.clone(), table)?)
                }
            };
            Ok(Model::Abstract { name, base, weighted })
        }
        InputSpec::Quantale { schema, name, atoms, product, star, unit } => {
            check_schema(&schema)?;
            let mut table = vec![vec![Vec::new(); atoms]; atoms];
            for p in product {
                ensure!(p.u < atoms && p.v < atoms, "product entry ({}, {}) out of range", p.u, p.v);
                table[p.u][p.v] = p.result;
            }
            ensure!(star.len() == atoms, "star lists {} atoms, expected {atoms}", star.len());
            Ok(Model::Quantale { name, quantale: AtomicQuantale::new(table, star, unit)? })
        }
    }
}
