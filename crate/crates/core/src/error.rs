use std::fmt;

use thiserror::Error;

/// The defining axioms of a generalized effect algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Commutativity,
    Associativity,
    Zero,
    Cancellation,
    Positivity,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Commutativity => "GEA1",
            Axiom::Associativity => "GEA2",
            Axiom::Zero => "GEA3",
            Axiom::Cancellation => "GEA4",
            Axiom::Positivity => "GEA5",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("model has {0} elements, more than the supported maximum")]
    TooManyElements(usize),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("conflicting equations: {a} + {b} = {first} and = {second}")]
    ConflictingEquation {
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("axiom {axiom} violated at ({})", witness.join(", "))]
    AxiomViolation { axiom: Axiom, witness: Vec<String> },
    #[error("subset {0} is not an ideal")]
    NotAnIdeal(String),
    #[error("map is not in the exocenter")]
    NotInExocenter,
    #[error("map for element `{0}` is not in the exocenter")]
    MapNotInExocenter(String),
    #[error("not hull determining: {condition} fails at ({})", elements.join(", "))]
    NotHullDetermining {
        condition: &'static str,
        elements: Vec<String>,
    },
    #[error("equivalence classes overlap at `{0}`")]
    OverlappingClasses(String),
    #[error("relation is not an SK-congruence (first failure: {0})")]
    NotSkCongruence(String),
    #[error("relation is not a dimension equivalence relation")]
    NotDer,
    #[error("map does not split the relation")]
    NotSplitting,
    #[error("subset is not hereditary")]
    NotHereditary,
    #[error("subset has no upper bound")]
    Unbounded,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
