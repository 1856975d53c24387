use alloc::string::String;

use crate::engine::CosetOrbit;

/// Failures of group arithmetic and subgroup construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element does not belong to the {expected} family")]
    DescriptorMismatch { expected: &'static str },
    #[error("generator id {0} is not part of the group")]
    UnknownGenerator(i64),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("enumeration exceeded the cap of {cap} elements")]
    ResourceLimit { cap: usize },
    #[error("unsupported subgroup: {0}")]
    UnsupportedSubgroup(String),
}

/// Failures raised by the quasi-normalizer engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coset comparison undecided after {} cosets", partial.representatives.len())]
    IndeterminateOrbit { partial: CosetOrbit },
    #[error("membership undecided: {0}")]
    Indeterminate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("exact backends disagree: {0}")]
    BackendDisagreement(String),
}

/// Failures of the finite-dimensional workbench.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VnError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("identity `{identity}` failed with residual {residual:e}")]
    Construction { identity: &'static str, residual: f64 },
    #[error("operator is not in the span of M e_B M (residual {0:e})")]
    Representation(f64),
}
