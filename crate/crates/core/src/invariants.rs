//! Invariants of a symmetric tensor and their tensor derivatives.

use std::f64::consts::FRAC_PI_6;

use crate::error::{Error, Result};
use crate::tensor::{SymTensor2, SymTensor4};
use crate::tolerance::{Tolerances, DEVIATORIC_TRACE_TOL, LODE_CLAMP_WARNING, LODE_COS_FLOOR};

/// Principal invariants, deviatoric invariants and Lode angle of one tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSet {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub j2: f64,
    pub j3: f64,
    /// Lode angle in `[−π/6, π/6]`; zero by convention when undefined.
    pub theta: f64,
    /// False when `J2` is at or below the classification floor.
    pub theta_defined: bool,
    /// Clamped `sin 3θ`.
    pub sin3theta: f64,
    /// `cos 3θ ≥ 0`, evaluated as `sqrt((1 − s)(1 + s))`.
    pub cos3theta: f64,
    /// Unclamped arcsin argument `−(√27/2) J3 / J2^{3/2}`.
    pub lode_arg: f64,
    /// Set when the arcsin argument overshot ±1 by more than
    /// [`LODE_CLAMP_WARNING`].
    pub ill_conditioned: bool,
}

impl InvariantSet {
    /// `q = sqrt(3 J2)`.
    pub fn q(&self) -> f64 {
        (3.0 * self.j2).sqrt()
    }

    /// The three angles `β = (θ + 2π/3, θ, θ − 2π/3)`.
    pub fn betas(&self) -> [f64; 3] {
        let two_thirds_pi = 2.0 * std::f64::consts::FRAC_PI_3;
        [
            self.theta + two_thirds_pi,
            self.theta,
            self.theta - two_thirds_pi,
        ]
    }
}

/// `T − (I1/3) I`.
pub fn deviator(t: &SymTensor2) -> SymTensor2 {
    let mean = t.trace() / 3.0;
    let c = t.0;
    SymTensor2([c[0] - mean, c[1] - mean, c[2] - mean, c[3], c[4], c[5]])
}

/// Cofactor transpose; `T · adj(T) = det(T) I`, defined for singular `T`.
pub fn adjugate(t: &SymTensor2) -> SymTensor2 {
    let [xx, yy, zz, xy, xz, yz] = t.0;
    SymTensor2([
        yy * zz - yz * yz,
        xx * zz - xz * xz,
        xx * yy - xy * xy,
        xz * yz - xy * zz,
        xy * yz - xz * yy,
        xy * xz - yz * xx,
    ])
}

pub fn invariants(t: &SymTensor2) -> InvariantSet {
    invariants_with(t, &Tolerances::DEFAULT)
}

pub fn invariants_with(t: &SymTensor2, tol: &Tolerances) -> InvariantSet {
    let i1 = t.trace();
    let i2 = 0.5 * (i1 * i1 - t.ddot(t));
    let i3 = t.det();
    let s = deviator(t);
    let j2 = 0.5 * s.ddot(&s);
    let j3 = s.det();

    // λ_I − λ_III ≤ 2 sqrt(J2), so an undefined angle always lands in the
    // triple branch.
    let theta_defined = j2 > 0.0 && 2.0 * j2.sqrt() > tol.triple_floor(t.norm());
    if !theta_defined {
        return InvariantSet {
            i1,
            i2,
            i3,
            j2,
            j3,
            theta: 0.0,
            theta_defined,
            sin3theta: 0.0,
            cos3theta: 1.0,
            lode_arg: 0.0,
            ill_conditioned: false,
        };
    }

    let lode_arg = -(27.0_f64.sqrt() / 2.0) * j3 / (j2 * j2.sqrt());
    let excess = lode_arg.abs() - 1.0;
    let ill_conditioned = excess > LODE_CLAMP_WARNING;
    if ill_conditioned {
        log::warn!("Lode arcsin argument {lode_arg} exceeds unit range by {excess:e}");
    }
    let sin3theta = lode_arg.clamp(-1.0, 1.0);
    let cos3theta = ((1.0 - sin3theta) * (1.0 + sin3theta)).sqrt();
    let theta = (sin3theta.asin() / 3.0).clamp(-FRAC_PI_6, FRAC_PI_6);

    InvariantSet {
        i1,
        i2,
        i3,
        j2,
        j3,
        theta,
        theta_defined,
        sin3theta,
        cos3theta,
        lode_arg,
        ill_conditioned,
    }
}

/// `dI1/dT = I`.
pub fn d_i1(_t: &SymTensor2) -> SymTensor2 {
    SymTensor2::IDENTITY
}

/// `dI2/dT = I1 I − T`.
pub fn d_i2(t: &SymTensor2) -> SymTensor2 {
    SymTensor2::IDENTITY * t.trace() - *t
}

/// `dI3/dT = adj(T)`.
pub fn d_i3(t: &SymTensor2) -> SymTensor2 {
    adjugate(t)
}

/// Second derivative of `det T`, i.e. the derivative of the adjugate.
///
/// From `adj T = T² − I1 T + I2 I`:
///
/// ```text
/// d adj / dT = ½(T_ik δ_jl + T_il δ_jk + δ_ik T_jl + δ_il T_jk)
///              − T ⊗ I − I ⊗ T − I1 𝓘 + I1 I ⊗ I
/// ```
pub fn d2_i3(t: &SymTensor2) -> SymTensor4 {
    let i1 = t.trace();
    let d = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let square_term = SymTensor4::from_fn(|i, j, k, l| {
        0.5 * (t.get(i, k) * d(j, l)
            + t.get(i, l) * d(j, k)
            + d(i, k) * t.get(j, l)
            + d(i, l) * t.get(j, k))
    });
    square_term - t.sym_dyad(&SymTensor2::IDENTITY) - SymTensor4::IDENTITY * i1
        + SymTensor4::identity_dyad() * i1
}

/// `dJ3/ds` for a deviatoric `s`, which is its adjugate.
pub fn dj3_ds(s: &SymTensor2) -> Result<SymTensor2> {
    let tolerance = DEVIATORIC_TRACE_TOL * s.norm();
    let trace = s.trace();
    if trace.abs() > tolerance {
        return Err(Error::NotDeviatoric { trace, tolerance });
    }
    Ok(adjugate(s))
}

/// `dθ/dT` without the deviator inverse:
///
/// ```text
/// dθ/dT = −1/cos3θ · [ √3/(2 J2^{3/2}) dJ3/ds + √3/(6 √J2) I + sin3θ/(2 J2) s ]
/// ```
pub fn dtheta_dt(t: &SymTensor2, inv: &InvariantSet) -> Result<SymTensor2> {
    if !inv.theta_defined {
        return Err(Error::Degenerate("Lode angle undefined for J2 = 0"));
    }
    if inv.cos3theta <= LODE_COS_FLOOR {
        return Err(Error::Degenerate(
            "Lode angle derivative singular at θ = ±π/6",
        ));
    }
    let s = deviator(t);
    let sqrt3 = 3.0_f64.sqrt();
    let sqrt_j2 = inv.j2.sqrt();
    // adj(s) directly: the rounded deviator may miss the trace check by ulps
    // when T carries a large mean part.
    let dj3 = adjugate(&s);
    let bracket = dj3 * (sqrt3 / (2.0 * inv.j2 * sqrt_j2))
        + SymTensor2::IDENTITY * (sqrt3 / (6.0 * sqrt_j2))
        + s * (inv.sin3theta / (2.0 * inv.j2));
    Ok(bracket * (-1.0 / inv.cos3theta))
}
