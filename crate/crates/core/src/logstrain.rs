//! Logarithmic strain `ε = ½ ln B`, `B = F Fᵀ`, with the tangent `dε/dB`.
//!
//! Distinct eigenvalues go through the spectral sum and the eigenbasis
//! spins. With a repeated pair the strain invariants are explicit functions
//! of `(I1_B, q_B)`:
//!
//! ```text
//! I1_ε = ½ [ ln((I1_B ∓ 2q_B)/3) + 2 ln((I1_B ± q_B)/3) ]
//! q_ε  = ±½ ln( (I1_B ± q_B) / (I1_B ∓ 2q_B) )        for θ_B = ±π/6
//! ```
//!
//! With three equal eigenvalues `ε = ½ ln(λ) I` and `dε/dB = 𝓘 / (2λ)`.

use crate::error::{Error, Result};
use crate::isofunc::{
    apply_distinct, apply_double_corrected, apply_triple, HalfLog, InvariantMapValues,
};
use crate::oracle::fd_tensor_derivative;
use crate::spectral::{spectrum_with, DoubleBranch, Multiplicity};
use crate::tensor::{mat_det, Mat3, SymTensor2, SymTensor4};
use crate::tolerance::Tolerances;

/// Smallest admissible `λ_III / λ_I` of `B`.
pub const SPD_RATIO_FLOOR: f64 = 1e-14;

/// Deformation gradient, a general 3×3 matrix with positive determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefGradient(Mat3);

impl DefGradient {
    pub fn new(f: Mat3) -> Result<Self> {
        if !f.iter().flatten().all(|x| x.is_finite()) {
            return Err(Error::Kinematics("non-finite deformation gradient".into()));
        }
        let det = mat_det(&f);
        if det <= 0.0 {
            return Err(Error::Kinematics(format!(
                "det F = {det:e} must be positive"
            )));
        }
        Ok(DefGradient(f))
    }

    /// Nine components in row-major order.
    pub fn from_row_major(c: [f64; 9]) -> Result<Self> {
        DefGradient::new([[c[0], c[1], c[2]], [c[3], c[4], c[5]], [c[6], c[7], c[8]]])
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn det(&self) -> f64 {
        mat_det(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogStrainResult {
    pub b: SymTensor2,
    pub eps: SymTensor2,
    pub deps_db: SymTensor4,
    pub branch: Multiplicity,
}

/// `B = F Fᵀ`.
pub fn left_cauchy_green(f: &DefGradient) -> SymTensor2 {
    let m = f.matrix();
    let dot = |i: usize, j: usize| m[i][0] * m[j][0] + m[i][1] * m[j][1] + m[i][2] * m[j][2];
    SymTensor2([
        dot(0, 0),
        dot(1, 1),
        dot(2, 2),
        dot(0, 1),
        dot(0, 2),
        dot(1, 2),
    ])
}

/// Strain invariants and their partials for a repeated pair of `B`
/// eigenvalues.
///
/// `dq_ε/dq_B` carries `(±4q_B − 2I1_B)` in its denominator, matching the
/// other entries; this is what the chain rule and finite differences give.
pub fn log_invariant_map(i1b: f64, qb: f64, branch: DoubleBranch) -> Result<InvariantMapValues> {
    let pm = branch.sign();
    let unique = (i1b - 2.0 * pm * qb) / 3.0;
    let repeated = (i1b + pm * qb) / 3.0;
    if unique <= 0.0 || repeated <= 0.0 {
        return Err(Error::Kinematics(format!(
            "B eigenvalues ({unique}, {repeated}) are not positive"
        )));
    }
    let p = i1b + pm * qb;
    let m = pm * 4.0 * qb - 2.0 * i1b;
    Ok(InvariantMapValues {
        i1s: 0.5 * (unique.ln() + 2.0 * repeated.ln()),
        qs: pm * 0.5 * ((i1b + pm * qb) / (i1b - 2.0 * pm * qb)).ln(),
        di1s_di1t: 3.0 * (pm * qb - i1b) / (p * m),
        di1s_dqt: 3.0 * qb / ((pm * 2.0 * qb - i1b) * p),
        dqs_di1t: 3.0 * qb / (p * m),
        dqs_dqt: -3.0 * i1b / (p * m),
    })
}

pub fn log_strain(f: &DefGradient) -> Result<LogStrainResult> {
    log_strain_from_b(&left_cauchy_green(f))
}

pub fn log_strain_with(f: &DefGradient, tol: &Tolerances) -> Result<LogStrainResult> {
    log_strain_from_b_with(&left_cauchy_green(f), tol)
}

pub fn log_strain_from_b(b: &SymTensor2) -> Result<LogStrainResult> {
    log_strain_from_b_with(b, &Tolerances::DEFAULT)
}

/// `ε = ½ ln B` for a symmetric positive definite `B`.
pub fn log_strain_from_b_with(b: &SymTensor2, tol: &Tolerances) -> Result<LogStrainResult> {
    let sp = spectrum_with(b, tol);
    if !(sp.lambda[2] > SPD_RATIO_FLOOR * sp.lambda[0]) || sp.lambda[0] <= 0.0 {
        return Err(Error::Kinematics(format!(
            "B is not positive definite: eigenvalues {:?}",
            sp.lambda
        )));
    }
    let out = match sp.mult {
        Multiplicity::Distinct => apply_distinct(b, &sp, &HalfLog)?,
        Multiplicity::Double(branch) => {
            let m = log_invariant_map(sp.inv.i1, sp.inv.q(), branch)?;
            let repeated = (sp.inv.i1 + branch.sign() * sp.inv.q()) / 3.0;
            apply_double_corrected(b, &sp, &m, 0.5 / repeated)?
        }
        Multiplicity::Triple => {
            let lambda = sp.inv.i1 / 3.0;
            let half_inv = 0.5 / lambda;
            let m = InvariantMapValues {
                i1s: 1.5 * lambda.ln(),
                qs: 0.0,
                di1s_di1t: half_inv,
                di1s_dqt: 0.0,
                dqs_di1t: 0.0,
                dqs_dqt: half_inv,
            };
            apply_triple(b, &sp, &m)?
        }
    };
    Ok(LogStrainResult {
        b: *b,
        eps: out.value,
        deps_db: out.tangent,
        branch: out.mult,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentCheck {
    pub analytic: SymTensor4,
    pub finite_difference: SymTensor4,
    /// `max |FD − analytic| / max |analytic|`.
    pub max_rel_error: f64,
}

/// Compares `dε/dB` with central differences of `ε(B ± hΔ)` over the six
/// unit perturbations; the step is `h · max(1, ‖B‖)`.
pub fn log_strain_tangent_check(f: &DefGradient, h: f64) -> Result<TangentCheck> {
    let base = log_strain(f)?;
    let step = h * base.b.norm().max(1.0);
    let fd = fd_tensor_derivative(|b| log_strain_from_b(b).map(|r| r.eps), &base.b, step)?;
    let max_rel_error = (fd - base.deps_db).max_abs() / base.deps_db.max_abs();
    Ok(TangentCheck {
        analytic: base.deps_db,
        finite_difference: fd,
        max_rel_error,
    })
}
