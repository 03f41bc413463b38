//! Pass/fail bookkeeping shared by the axiom checkers.

use std::fmt;

/// How the triple space of an axiom check was covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every element triple, when the atom count is at most `bound`.
    Exhaustive { bound: usize },
    /// `count` seeded random triples.
    Sampled { count: u64, seed: u64 },
}

impl CheckMode {
    pub const DEFAULT_BOUND: usize = 9;

    pub fn exhaustive() -> Self {
        CheckMode::Exhaustive { bound: Self::DEFAULT_BOUND }
    }
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive { bound } => write!(f, "exhaustive(bound={bound})"),
            CheckMode::Sampled { count, seed } => write!(f, "sampled(count={count},seed={seed})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<W> {
    /// Holds on every checked case.
    Verified,
    /// Holds by construction of the representation.
    Vacuous,
    /// First failing arguments, in enumeration order.
    Failed(Vec<W>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck<W> {
    pub axiom: &'static str,
    pub cases: u64,
    pub outcome: Outcome<W>,
}

impl<W> AxiomCheck<W> {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Failed(_))
    }
}

/// Per-axiom results. `W` is the witness type of a counterexample
/// (quantale elements or arrow ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport<W> {
    pub mode: Option<CheckMode>,
    pub checks: Vec<AxiomCheck<W>>,
}

impl<W> AxiomReport<W> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck<W>> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn counterexample(&self, axiom: &str) -> Option<&[W]> {
        match &self.get(axiom)?.outcome {
            Outcome::Failed(w) => Some(w),
            _ => None,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck<W>> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Accumulates the first failure per axiom while cases are counted.
pub(crate) struct Tally<W> {
    cases: u64,
    first: Option<Vec<W>>,
}

impl<W> Tally<W> {
    pub(crate) fn new() -> Self {
        Tally { cases: 0, first: None }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<W>) {
        self.cases += 1;
        if !ok && self.first.is_none() {
            self.first = Some(witness());
        }
    }

    pub(crate) fn finish(self, axiom: &'static str) -> AxiomCheck<W> {
        AxiomCheck {
            axiom,
            cases: self.cases,
            outcome: match self.first {
                Some(w) => Outcome::Failed(w),
                None => Outcome::Verified,
            },
        }
    }
}
