use thiserror::Error;

use crate::stone::{BranchPoint, Cell};

/// Where a function fails to dominate anything in the ground lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A whole cell on which the function is identically `-inf`.
    Cell(Cell),
    /// A branch point at which a ramp diverges to `-inf`.
    Branch(BranchPoint),
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::Cell(c) => write!(f, "cell {c} is -inf"),
            Certificate::Branch(p) => write!(f, "branch {p} limit -inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("UndefinedSum: +inf and -inf cannot be added")]
    UndefinedSum,
    #[error("NotAPartition: {0}")]
    NotAPartition(String),
    #[error("CellNotResolved: function is not constant on cell {0}")]
    CellNotResolved(Cell),
    #[error("SumUndefined: summands are -inf on the whole cell {0}")]
    SumUndefined(Cell),
    #[error("NotNegatable: function is infinite on the whole cell {0}")]
    NotNegatable(Cell),
    #[error("NegativeScalar: scalar {0} is not a finite non-negative number")]
    NegativeScalar(String),
    #[error("NotInCone: {0}")]
    NotInCone(Certificate),
    #[error("InvalidWitness: {0}")]
    InvalidWitness(String),
    #[error("ModelMismatch: operands live in different ground lattices")]
    ModelMismatch,
    #[error("NoLowerBound: {0}")]
    NoLowerBound(String),
    #[error("EmptyFamily: supremum and infimum need at least one element")]
    EmptyFamily,
    #[error("PreconditionFailed: x > u + v at {0}")]
    PreconditionFailed(BranchPoint),
    #[error("NotPositive: value is negative at {0}")]
    NotPositive(BranchPoint),
    #[error("Discontinuous: branch value at {0} differs from the limit of its ramp")]
    Discontinuous(BranchPoint),
    #[error("NotRepresentable: {0}")]
    NotRepresentable(String),
    #[error("ParseError: at position {pos}, expected one of {}", expected.join(" | "))]
    Parse { pos: usize, expected: Vec<String> },
}

impl Error {
    /// The bare variant name, used by the CLI when reporting domain errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UndefinedSum => "UndefinedSum",
            Error::NotAPartition(_) => "NotAPartition",
            Error::CellNotResolved(_) => "CellNotResolved",
            Error::SumUndefined(_) => "SumUndefined",
            Error::NotNegatable(_) => "NotNegatable",
            Error::NegativeScalar(_) => "NegativeScalar",
            Error::NotInCone(_) => "NotInCone",
            Error::InvalidWitness(_) => "InvalidWitness",
            Error::ModelMismatch => "ModelMismatch",
            Error::NoLowerBound(_) => "NoLowerBound",
            Error::EmptyFamily => "EmptyFamily",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotPositive(_) => "NotPositive",
            Error::Discontinuous(_) => "Discontinuous",
            Error::NotRepresentable(_) => "NotRepresentable",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
