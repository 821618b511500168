use thiserror::Error;

use crate::spectral::Multiplicity;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operation was asked to run on a tensor whose eigenvalue
    /// multiplicity selects a different formula.
    #[error("branch mismatch: {operation} requires {expected} eigenvalues, tensor is {found}")]
    Branch {
        operation: &'static str,
        expected: &'static str,
        found: Multiplicity,
    },

    /// The eigenbasis spin is only defined for simple eigenvalues.
    #[error("spin undefined for eigenvalue {index} of a {mult} spectrum: eigenvalue is repeated")]
    SpinUndefined { index: usize, mult: Multiplicity },

    /// The Lode-angle derivative is singular at `J2 = 0` or `θ = ±π/6`.
    #[error("degenerate invariants: {0}")]
    Degenerate(&'static str),

    #[error("tensor is not deviatoric: trace {trace:e} exceeds tolerance {tolerance:e}")]
    NotDeviatoric { trace: f64, tolerance: f64 },

    #[error("eigenvalue {lambda} outside the domain of the scalar map")]
    MapDomain { lambda: f64 },

    #[error("kinematics: {0}")]
    Kinematics(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("jacobi iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
