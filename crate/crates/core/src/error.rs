use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The axiom of a groupoid that a raw table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupoidAxiom {
    /// Malformed data: missing inverse entries, units outside the element set, ...
    Structure,
    /// `s² = id`
    Involution,
    /// `m(e×id) = m(id×e) = id`
    UnitLaw,
    /// `m(m×id) = m(id×m)`
    Associativity,
    /// `sm = mσ(s×s)`
    AntiHomomorphism,
    /// `∅ ≠ m(s(γ), γ) ⊆ E`
    InverseUnits,
    /// `m` single-valued with domain exactly the composable pairs.
    Composability,
    /// The small-category laws read off the table.
    CategoryLaw,
}

impl fmt::Display for GroupoidAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Structure => "structure",
            Self::Involution => "s² = id",
            Self::UnitLaw => "m(e×id) = m(id×e) = id",
            Self::Associativity => "m(m×id) = m(id×m)",
            Self::AntiHomomorphism => "sm = mσ(s×s)",
            Self::InverseUnits => "∅ ≠ m(s(γ),γ) ⊆ E",
            Self::Composability => "D(m) = Γ^(2)",
            Self::CategoryLaw => "category law",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismAxiom {
    /// `hm = m'(h×h)`
    Multiplicative,
    /// `hs = s'h`
    Inverse,
    /// `he = e'`
    Units,
    /// Consequences that must follow from the three equalities (base map, fibers, domain, image).
    Derived,
}

impl fmt::Display for MorphismAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Multiplicative => "hm = m'(h×h)",
            Self::Inverse => "hs = s'h",
            Self::Units => "he = e'",
            Self::Derived => "derived morphism structure",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionAxiom {
    /// `Φ(m×id) = Φ(id×Φ)`
    Associativity,
    /// `Φ(e×id) = id`
    Units,
    /// The classical fibered-action laws.
    Classical,
    /// Consequences of the two equalities (base map, domain, symmetry, single-valuedness).
    Derived,
}

impl fmt::Display for ActionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Associativity => "Φ(m×id) = Φ(id×Φ)",
            Self::Units => "Φ(e×id) = id",
            Self::Classical => "ρ(x)x = x, γ1(γ2x) = (γ1γ2)x",
            Self::Derived => "derived action structure",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: `{left}` is not `{right}`")]
    UniverseMismatch { left: String, right: String },
    #[error("unknown element `{element}` in `{universe}`")]
    UnknownElement { universe: String, element: String },
    #[error("duplicate element `{element}` in `{universe}`")]
    DuplicateElement { universe: String, element: String },
    #[error("element `{0}` contains the reserved separator `,`")]
    ReservedSeparator(String),
    #[error("groupoid `{name}` violates {axiom} at {witness}")]
    GroupoidAxiom {
        name: String,
        axiom: GroupoidAxiom,
        witness: String,
    },
    #[error("relation violates {axiom} at {witness}")]
    MorphismAxiom {
        axiom: MorphismAxiom,
        witness: String,
    },
    #[error("relation violates {axiom} at {witness}")]
    ActionAxiom { axiom: ActionAxiom, witness: String },
    #[error("group `{name}` is invalid: {reason}")]
    GroupAxiom { name: String, reason: String },
    #[error("not a group action: {0}")]
    NotGroupAction(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("groupoid `{0}` is not transitive")]
    NotTransitive(String),
    #[error("not a functor: {0}")]
    NotFunctor(String),
    #[error("functor is not a bijection on units: {0}")]
    NotUnitBijective(String),
    #[error("morphism is a monomorphism; no cancellation witness exists")]
    IsMono,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("refusing to tabulate {count} bisections (limit {limit})")]
    TooManyBisections { count: usize, limit: usize },
    /// A statement that holds for every validated input failed; signals a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
