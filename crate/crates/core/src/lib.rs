//! Finite groupoids with relational morphisms.
//!
//! Everything is built on [`relation::FinRel`], a finite relation stored as
//! its graph of `(output, input)` pairs. A [`Groupoid`] is validated from its
//! multiplication, inverse and unit relations; a [`Morphism`] `Γ ⊸ Δ` is a
//! relation satisfying `hm = m'(h×h)`, `hs = s'h` and `he = e'`; an
//! [`Action`] is a relation `Γ×X ⊸ X`.

pub mod action;
pub mod bisection;
pub mod builders;
pub mod catalog;
pub mod error;
pub mod groupoid;
pub mod morphism;
pub mod relation;
pub mod search;

pub use action::{Action, CosetSpace, GammaSet, Quotient};
pub use builders::{GroupAction, GroupTable, ProductForm};
pub use error::{ActionAxiom, Error, GroupoidAxiom, MorphismAxiom, Result};
pub use groupoid::{Groupoid, GroupoidData, SubgroupoidRef};
pub use morphism::{CancellationWitness, Morphism, Side};
pub use relation::{FinRel, Universe};
pub use search::EnumBudget;
