//! Closed-form spectral decomposition of symmetric 3×3 tensors.
//!
//! Eigenvalues, eigenbases and eigenbasis spins are computed from the
//! tensor invariants alone, without eigenvectors or tensor inversion, in
//! every eigenvalue-multiplicity regime. On top of that the crate evaluates
//! isotropic tensor functions with exact consistent tangents, the logarithmic
//! strain of a deformation gradient, and the stress reconstruction of an
//! invariant-space elastoplastic return map.

pub mod batch;
pub mod error;
pub mod invariants;
pub mod isofunc;
pub mod logstrain;
pub mod oracle;
pub mod plasticity;
pub mod sampling;
pub mod spectral;
pub mod tensor;
pub mod tolerance;

pub use error::{Error, Result};
pub use invariants::{invariants, InvariantSet};
pub use isofunc::{isotropic_function, ScalarEigenMap};
pub use logstrain::{log_strain, DefGradient, LogStrainResult};
pub use plasticity::{stress_update, ElasticMap, InvariantReturnMap, StressUpdate};
pub use spectral::{spectrum, DoubleBranch, Multiplicity, Spectrum};
pub use tensor::{SymTensor2, SymTensor4};
pub use tolerance::Tolerances;
