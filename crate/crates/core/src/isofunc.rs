//! Isotropic tensor functions `S = Σ η(λ_i) N_i` and their exact tangents.
//!
//! The distinct branch differentiates the spectral sum with the eigenbasis
//! spins. When two eigenvalues coincide the deviator of `S` is proportional
//! to that of `T`, so `S` depends on `T` only through `(I1_T, q_T)`:
//!
//! ```text
//! S = (I1_S / 3) I + (q_S / q_T) t
//! ```
//!
//! and its tangent needs only the four partials of `(I1_S, q_S)` with
//! respect to `(I1_T, q_T)`. The triple branch is the `q_T → 0` limit.

use crate::error::{Error, Result};
use crate::invariants::deviator;
use crate::spectral::{
    eigenbasis_distinct, spectrum_with, spin, DoubleBranch, Multiplicity, Spectrum,
};
use crate::tensor::{SymTensor2, SymTensor4};
use crate::tolerance::Tolerances;

/// A scalar function `λ ↦ η(λ)` applied to every eigenvalue.
///
/// Implementations must be pure: they are evaluated concurrently.
pub trait ScalarEigenMap: Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;

    /// Open interval of admissible arguments.
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        lo < x && x < hi
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl ScalarEigenMap for Identity {
    fn value(&self, x: f64) -> f64 {
        x
    }
    fn derivative(&self, _x: f64) -> f64 {
        1.0
    }
}

/// `η(λ) = λⁿ`.
#[derive(Debug, Clone, Copy)]
pub struct Power(pub i32);

impl ScalarEigenMap for Power {
    fn value(&self, x: f64) -> f64 {
        x.powi(self.0)
    }
    fn derivative(&self, x: f64) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            f64::from(self.0) * x.powi(self.0 - 1)
        }
    }
    fn domain(&self) -> (f64, f64) {
        if self.0 < 0 {
            (0.0, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
    }
}

/// `η(λ) = ½ ln λ`, mapping `B` to the logarithmic strain.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfLog;

impl ScalarEigenMap for HalfLog {
    fn value(&self, x: f64) -> f64 {
        0.5 * x.ln()
    }
    fn derivative(&self, x: f64) -> f64 {
        0.5 / x
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }
}

/// `η(λ) = exp(a λ)`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledExp(pub f64);

impl ScalarEigenMap for ScaledExp {
    fn value(&self, x: f64) -> f64 {
        (self.0 * x).exp()
    }
    fn derivative(&self, x: f64) -> f64 {
        self.0 * (self.0 * x).exp()
    }
}

/// Map built from a pair of closures.
pub struct FnMap<F, G> {
    pub value: F,
    pub derivative: G,
    pub domain: (f64, f64),
}

impl<F, G> ScalarEigenMap for FnMap<F, G>
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }
    fn derivative(&self, x: f64) -> f64 {
        (self.derivative)(x)
    }
    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Gate: the map's derivative agrees with central differences of its value
/// at every sample point, to `rel_tol`.
pub fn check_map_derivative(map: &dyn ScalarEigenMap, points: &[f64], rel_tol: f64) -> Result<()> {
    for &x in points {
        if !map.contains(x) {
            return Err(Error::MapDomain { lambda: x });
        }
        let h = 1e-6 * x.abs().max(1.0);
        let fd = (map.value(x + h) - map.value(x - h)) / (2.0 * h);
        let d = map.derivative(x);
        if (fd - d).abs() > rel_tol * d.abs().max(fd.abs()).max(1e-300) {
            return Err(Error::Contract(format!(
                "map derivative {d} disagrees with finite difference {fd} at {x}"
            )));
        }
    }
    Ok(())
}

/// Values and partials of `I1_S(I1_T, q_T)` and `q_S(I1_T, q_T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantMapValues {
    pub i1s: f64,
    /// Signed: `S` deviator is `(q_S / q_T) t`.
    pub qs: f64,
    pub di1s_di1t: f64,
    pub di1s_dqt: f64,
    pub dqs_di1t: f64,
    pub dqs_dqt: f64,
}

impl InvariantMapValues {
    /// Chain rule through `λ̂ = (I1_T ∓ 2 q_T)/3`, `λ_rep = (I1_T ± q_T)/3`
    /// for `θ = ±π/6`.
    pub fn double_from_map(
        map: &dyn ScalarEigenMap,
        i1t: f64,
        qt: f64,
        branch: DoubleBranch,
    ) -> Result<Self> {
        let sign = branch.sign();
        let unique = (i1t - 2.0 * sign * qt) / 3.0;
        let repeated = (i1t + sign * qt) / 3.0;
        for lambda in [unique, repeated] {
            if !map.contains(lambda) {
                return Err(Error::MapDomain { lambda });
            }
        }
        let (eta_u, eta_r) = (map.value(unique), map.value(repeated));
        let (d_u, d_r) = (map.derivative(unique), map.derivative(repeated));
        Ok(InvariantMapValues {
            i1s: eta_u + 2.0 * eta_r,
            qs: sign * (eta_r - eta_u),
            di1s_di1t: (d_u + 2.0 * d_r) / 3.0,
            di1s_dqt: 2.0 * sign * (d_r - d_u) / 3.0,
            dqs_di1t: sign * (d_r - d_u) / 3.0,
            dqs_dqt: (d_r + 2.0 * d_u) / 3.0,
        })
    }

    /// All three eigenvalues equal `λ`.
    pub fn triple_from_map(map: &dyn ScalarEigenMap, lambda: f64) -> Result<Self> {
        if !map.contains(lambda) {
            return Err(Error::MapDomain { lambda });
        }
        let d = map.derivative(lambda);
        Ok(InvariantMapValues {
            i1s: 3.0 * map.value(lambda),
            qs: 0.0,
            di1s_di1t: d,
            di1s_dqt: 0.0,
            dqs_di1t: 0.0,
            dqs_dqt: d,
        })
    }
}

/// `S` and `dS/dT` together with the branch that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicOutput {
    pub value: SymTensor2,
    pub tangent: SymTensor4,
    pub mult: Multiplicity,
}

fn branch_error(operation: &'static str, expected: &'static str, found: Multiplicity) -> Error {
    Error::Branch {
        operation,
        expected,
        found,
    }
}

/// `S = Σ η(λ_i) N_i`, `dS/dT = Σ η′(λ_i) N_i⊗N_i + η(λ_i) dN_i/dT`.
pub fn apply_distinct(
    t: &SymTensor2,
    sp: &Spectrum,
    map: &dyn ScalarEigenMap,
) -> Result<IsotropicOutput> {
    if sp.mult != Multiplicity::Distinct {
        return Err(branch_error("apply_distinct", "distinct", sp.mult));
    }
    if let Some(&lambda) = sp.lambda.iter().find(|&&l| !map.contains(l)) {
        return Err(Error::MapDomain { lambda });
    }
    let mut value = SymTensor2::ZERO;
    let mut tangent = SymTensor4::ZERO;
    for i in 0..3 {
        let n = sp.bases[i];
        let eta = map.value(sp.lambda[i]);
        value += n * eta;
        tangent += n.dyad(&n) * map.derivative(sp.lambda[i]);
        tangent += spin(t, sp, i)? * eta;
    }
    Ok(IsotropicOutput {
        value,
        tangent,
        mult: sp.mult,
    })
}

/// Coincident-pair branch:
///
/// ```text
/// dS/dT = ⅓ ∂I1S/∂I1T I⊗I ∓ ½ ∂I1S/∂qT I⊗N̂ᵈ + (qS/qT)(𝓘 − ⅓ I⊗I)
///       + (3/2)(∂qS/∂qT − qS/qT) N̂ᵈ⊗N̂ᵈ ∓ ∂qS/∂I1T N̂ᵈ⊗I
/// ```
pub fn apply_double(
    t: &SymTensor2,
    sp: &Spectrum,
    m: &InvariantMapValues,
) -> Result<IsotropicOutput> {
    let branch = match sp.mult {
        Multiplicity::Double(b) => b,
        other => return Err(branch_error("apply_double", "double", other)),
    };
    let qt = sp.inv.q();
    if qt <= 0.0 {
        return Err(branch_error("apply_double", "double", Multiplicity::Triple));
    }
    let id = SymTensor2::IDENTITY;
    let dev = deviator(t);
    let minus_sign = -branch.sign();
    let n_dev = dev * (minus_sign / qt);
    let ratio = m.qs / qt;

    let value = id * (m.i1s / 3.0) + dev * ratio;
    let mut tangent = SymTensor4::identity_dyad() * (m.di1s_di1t / 3.0);
    tangent += id.dyad(&n_dev) * (minus_sign * 0.5 * m.di1s_dqt);
    tangent += SymTensor4::deviatoric_projector() * ratio;
    tangent += n_dev.dyad(&n_dev) * (1.5 * (m.dqs_dqt - ratio));
    tangent += n_dev.dyad(&id) * (minus_sign * m.dqs_di1t);
    Ok(IsotropicOutput {
        value,
        tangent,
        mult: sp.mult,
    })
}

/// Projector onto the two directions that split the repeated pair,
/// `P ⊠ P − ½ P⊗P` with `P = I − N_u`.
///
/// `N_u` is the unique eigenvalue's basis from the secular-equation formula,
/// which stays exact for a tensor that was snapped to the double branch
/// with a small residual split.
pub fn pair_split_projector(t: &SymTensor2, sp: &Spectrum) -> Result<SymTensor4> {
    let branch = match sp.mult {
        Multiplicity::Double(b) => b,
        other => return Err(branch_error("pair_split_projector", "double", other)),
    };
    let unique = branch.unique_index();
    let n_u = eigenbasis_distinct(t, &sp.inv, sp.beta[unique])?;
    let p = SymTensor2::IDENTITY - n_u;
    Ok(SymTensor4::from_fn(|i, j, k, l| {
        0.5 * (p.get(i, k) * p.get(j, l) + p.get(i, l) * p.get(j, k))
            - 0.5 * p.get(i, j) * p.get(k, l)
    }))
}

/// [`apply_double`] with the slope along the pair-splitting directions
/// corrected from `qS/qT` to `η′(λ_rep)`.
///
/// The coincident-pair tangent differentiates `(I1S/3) I + (qS/qT) t` as if
/// that relation held off the double manifold too. Along perturbations that
/// are trace-free inside the repeated eigenspace it therefore returns the
/// divided difference `qS/qT`, while the true slope of `S` there is
/// `η′(λ_rep)`. Adding
///
/// ```text
/// (η′(λ_rep) − qS/qT) (P ⊠ P − ½ P⊗P)
/// ```
///
/// to the tangent gives the exact derivative, which is also the limit of the
/// distinct branch; it vanishes on structure-preserving perturbations. The
/// same term contracted with `t` is added to `S`: zero on an exact double,
/// and the first-order effect of the residual split on a snapped one.
pub fn apply_double_corrected(
    t: &SymTensor2,
    sp: &Spectrum,
    m: &InvariantMapValues,
    repeated_slope: f64,
) -> Result<IsotropicOutput> {
    let mut out = apply_double(t, sp, m)?;
    let correction = pair_split_projector(t, sp)? * (repeated_slope - m.qs / sp.inv.q());
    out.value += correction.contract(&deviator(t));
    out.tangent += correction;
    Ok(out)
}

/// Triple branch: `S = (I1S/3) I`,
/// `dS/dT = ⅓ ∂I1S/∂I1T I⊗I + ∂qS/∂qT (𝓘 − ⅓ I⊗I)`.
pub fn apply_triple(
    _t: &SymTensor2,
    sp: &Spectrum,
    m: &InvariantMapValues,
) -> Result<IsotropicOutput> {
    if sp.mult != Multiplicity::Triple {
        return Err(branch_error("apply_triple", "triple", sp.mult));
    }
    let value = SymTensor2::IDENTITY * (m.i1s / 3.0);
    let tangent = SymTensor4::identity_dyad() * (m.di1s_di1t / 3.0)
        + SymTensor4::deviatoric_projector() * m.dqs_dqt;
    Ok(IsotropicOutput {
        value,
        tangent,
        mult: sp.mult,
    })
}

pub fn isotropic_function(t: &SymTensor2, map: &dyn ScalarEigenMap) -> Result<IsotropicOutput> {
    isotropic_function_with(t, map, &Tolerances::DEFAULT)
}

/// Classifies `T` and dispatches to the matching branch.
pub fn isotropic_function_with(
    t: &SymTensor2,
    map: &dyn ScalarEigenMap,
    tol: &Tolerances,
) -> Result<IsotropicOutput> {
    let sp = spectrum_with(t, tol);
    isotropic_function_on(t, &sp, map)
}

/// Dispatch on an already computed spectrum.
pub fn isotropic_function_on(
    t: &SymTensor2,
    sp: &Spectrum,
    map: &dyn ScalarEigenMap,
) -> Result<IsotropicOutput> {
    match sp.mult {
        Multiplicity::Distinct => apply_distinct(t, sp, map),
        Multiplicity::Double(branch) => {
            let m = InvariantMapValues::double_from_map(map, sp.inv.i1, sp.inv.q(), branch)?;
            let repeated = (sp.inv.i1 + branch.sign() * sp.inv.q()) / 3.0;
            apply_double_corrected(t, sp, &m, map.derivative(repeated))
        }
        Multiplicity::Triple => {
            let m = InvariantMapValues::triple_from_map(map, sp.inv.i1 / 3.0)?;
            apply_triple(t, sp, &m)
        }
    }
}
