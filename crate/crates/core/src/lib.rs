//! Exact computations with finite atomic quantales, hypergroupoids and
//! their convolution algebras.
//!
//! The pipeline runs from a permutation action ([`realization`]) through the
//! hypergroupoid of pair orbits ([`hypergroupoid`]) and its quantale
//! ([`quantale`]) to the weighted convolution algebra ([`algebra`]). The
//! [`projcat`] module checks matrix-level constructions over a quantale.

pub mod algebra;
pub mod bits;
pub mod error;
pub mod extnat;
pub mod fixtures;
pub mod hypergroupoid;
pub mod projcat;
pub mod quantale;
pub mod realization;
pub mod report;

pub use algebra::{AlgebraElement, Combination, ComplexElement, KmsReport, WeightedHypergroupoid};
pub use bits::AtomSet;
pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use hypergroupoid::{Arrow, Hypergroupoid};
pub use quantale::{AtomicQuantale, QElement};
pub use realization::{orbit_atoms, ConcreteRealization, CosetSpec, PermAction};
pub use report::{AxiomReport, CheckMode, Outcome};
