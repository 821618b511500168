//! Stress reconstruction and consistent tangent for isotropic elastoplasticity
//! integrated in strain-invariant space.
//!
//! A return map gives `(p, q, θσ)` and their partials as functions of the
//! predictor invariants `(εv*, εq*, θε*)`. Stress and predictor are
//! co-axial, so the stress tensor follows from the predictor eigenbases:
//!
//! ```text
//! distinct:  σ = Σ [p + ⅔ q sin β_i(θσ)] N_i*
//! double:    σ = p I + 2q / (3 εq*) e*
//! triple:    σ = p I
//! ```

use crate::error::{Error, Result};
use crate::invariants::{deviator, dtheta_dt, invariants, invariants_with};
use crate::spectral::{spectrum_with, spin, Multiplicity, Spectrum};
use crate::tensor::{SymTensor2, SymTensor4};
use crate::tolerance::Tolerances;

/// `(εv*, εq*, θε*)` of an elastic strain predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainPredictorInvariants {
    /// Volumetric strain, `tr ε*`.
    pub eps_v: f64,
    /// Equivalent strain `sqrt(⅔ e*:e*)`.
    pub eps_q: f64,
    /// Strain Lode angle; zero when undefined.
    pub theta_eps: f64,
    pub theta_defined: bool,
}

/// Hydrostatic pressure, von Mises stress and stress Lode angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressInvariants {
    pub p: f64,
    pub q: f64,
    pub theta_sigma: f64,
}

/// Output of a return map: stress invariants and their partials with
/// respect to `(εv*, εq*, θε*)`, in that order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnMapValues {
    pub p: f64,
    pub q: f64,
    pub theta_sigma: f64,
    pub dp: [f64; 3],
    pub dq: [f64; 3],
    pub dtheta: [f64; 3],
}

/// An invariant-space return algorithm, injected as data.
///
/// Implementations must be reentrant.
pub trait InvariantReturnMap: Sync {
    fn evaluate(&self, inv: &StrainPredictorInvariants) -> ReturnMapValues;
}

/// Linear isotropic elasticity: `p = K εv`, `q = 3G εq`, `θσ = θε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticMap {
    pub bulk: f64,
    pub shear: f64,
}

impl InvariantReturnMap for ElasticMap {
    fn evaluate(&self, inv: &StrainPredictorInvariants) -> ReturnMapValues {
        ReturnMapValues {
            p: self.bulk * inv.eps_v,
            q: 3.0 * self.shear * inv.eps_q,
            theta_sigma: inv.theta_eps,
            dp: [self.bulk, 0.0, 0.0],
            dq: [0.0, 3.0 * self.shear, 0.0],
            dtheta: [0.0, 0.0, 1.0],
        }
    }
}

/// Perfectly plastic von Mises demo: `q = min(3G εq, q_y)`.
///
/// At `3G εq = q_y` exactly the plastic branch is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonMisesDemo {
    pub bulk: f64,
    pub shear: f64,
    pub yield_stress: f64,
}

pub fn vonmises_demo_map(bulk: f64, shear: f64, yield_stress: f64) -> Result<VonMisesDemo> {
    if !(bulk > 0.0 && shear > 0.0 && yield_stress > 0.0) {
        return Err(Error::Contract(format!(
            "demo map needs positive K, G, q_y; got {bulk}, {shear}, {yield_stress}"
        )));
    }
    Ok(VonMisesDemo {
        bulk,
        shear,
        yield_stress,
    })
}

impl VonMisesDemo {
    pub fn is_plastic(&self, eps_q: f64) -> bool {
        3.0 * self.shear * eps_q >= self.yield_stress
    }
}

impl InvariantReturnMap for VonMisesDemo {
    fn evaluate(&self, inv: &StrainPredictorInvariants) -> ReturnMapValues {
        let (q, dq) = if self.is_plastic(inv.eps_q) {
            (self.yield_stress, [0.0, 0.0, 0.0])
        } else {
            (3.0 * self.shear * inv.eps_q, [0.0, 3.0 * self.shear, 0.0])
        };
        ReturnMapValues {
            p: self.bulk * inv.eps_v,
            q,
            theta_sigma: inv.theta_eps,
            dp: [self.bulk, 0.0, 0.0],
            dq,
            dtheta: [0.0, 0.0, 1.0],
        }
    }
}

pub fn predictor_invariants(eps: &SymTensor2) -> StrainPredictorInvariants {
    predictor_invariants_with(eps, &Tolerances::DEFAULT)
}

pub fn predictor_invariants_with(eps: &SymTensor2, tol: &Tolerances) -> StrainPredictorInvariants {
    let inv = invariants_with(eps, tol);
    let e = deviator(eps);
    StrainPredictorInvariants {
        eps_v: inv.i1,
        eps_q: (2.0 / 3.0 * e.ddot(&e)).sqrt(),
        theta_eps: inv.theta,
        theta_defined: inv.theta_defined,
    }
}

pub fn stress_invariants(sigma: &SymTensor2) -> StressInvariants {
    let inv = invariants(sigma);
    StressInvariants {
        p: inv.i1 / 3.0,
        q: inv.q(),
        theta_sigma: inv.theta,
    }
}

/// Gate on a return map at one predictor state: partials agree with
/// central differences to `rel_tol`, and a purely volumetric predictor has
/// `∂p/∂εq = ∂q/∂εv = 0`.
pub fn check_return_map(
    map: &dyn InvariantReturnMap,
    at: &StrainPredictorInvariants,
    rel_tol: f64,
) -> Result<()> {
    let base = map.evaluate(at);
    let steps = [
        1e-6 * at.eps_v.abs().max(1e-2),
        1e-6 * at.eps_q.abs().max(1e-2),
        1e-6,
    ];
    for (k, h) in steps.into_iter().enumerate() {
        let shifted = |d: f64| {
            let mut s = *at;
            match k {
                0 => s.eps_v += d,
                1 => s.eps_q += d,
                _ => s.theta_eps += d,
            }
            map.evaluate(&s)
        };
        let (plus, minus) = (shifted(h), shifted(-h));
        let checks = [
            ("p", (plus.p - minus.p) / (2.0 * h), base.dp[k], base.p),
            ("q", (plus.q - minus.q) / (2.0 * h), base.dq[k], base.q),
            (
                "theta",
                (plus.theta_sigma - minus.theta_sigma) / (2.0 * h),
                base.dtheta[k],
                1.0,
            ),
        ];
        for (name, fd, analytic, magnitude) in checks {
            let scale = analytic
                .abs()
                .max(fd.abs())
                .max(1e-12 * magnitude.abs())
                .max(1e-300);
            if (fd - analytic).abs() > rel_tol * scale {
                return Err(Error::Contract(format!(
                    "return map partial d{name}/d[{k}] = {analytic} disagrees with FD {fd}"
                )));
            }
        }
    }
    if at.eps_q == 0.0 {
        volumetric_condition(&base)?;
    }
    Ok(())
}

fn volumetric_condition(values: &ReturnMapValues) -> Result<()> {
    let scale = values.dp[0].abs().max(values.dq[1].abs()).max(1e-300);
    if values.dp[1].abs() > 1e-12 * scale || values.dq[0].abs() > 1e-12 * scale {
        return Err(Error::Contract(format!(
            "volumetric predictor requires dp/deps_q = dq/deps_v = 0, got {} and {}",
            values.dp[1], values.dq[0]
        )));
    }
    Ok(())
}

/// Stress, tangent and the branch used for one predictor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressUpdate {
    pub sigma: SymTensor2,
    pub tangent: SymTensor4,
    pub branch: Multiplicity,
    pub predictor: StrainPredictorInvariants,
    pub values: ReturnMapValues,
}

pub fn reconstruct_stress(eps: &SymTensor2, map: &dyn InvariantReturnMap) -> Result<SymTensor2> {
    stress_update(eps, map, &Tolerances::DEFAULT).map(|u| u.sigma)
}

pub fn consistent_tangent(eps: &SymTensor2, map: &dyn InvariantReturnMap) -> Result<SymTensor4> {
    stress_update(eps, map, &Tolerances::DEFAULT).map(|u| u.tangent)
}

pub fn stress_update(
    eps: &SymTensor2,
    map: &dyn InvariantReturnMap,
    tol: &Tolerances,
) -> Result<StressUpdate> {
    let sp = spectrum_with(eps, tol);
    let e = deviator(eps);
    let predictor = StrainPredictorInvariants {
        eps_v: sp.inv.i1,
        eps_q: (2.0 / 3.0 * e.ddot(&e)).sqrt(),
        theta_eps: sp.inv.theta,
        theta_defined: sp.inv.theta_defined,
    };
    let values = map.evaluate(&predictor);
    if !(values.q >= 0.0) {
        return Err(Error::Contract(format!(
            "return map produced q = {} < 0",
            values.q
        )));
    }
    let (sigma, tangent) = match sp.mult {
        Multiplicity::Distinct => distinct_branch(eps, &sp, &predictor, &values, &e)?,
        Multiplicity::Double(_) => double_branch(&predictor, &values, &e),
        Multiplicity::Triple => {
            volumetric_condition(&values)?;
            let id = SymTensor2::IDENTITY;
            let tangent = SymTensor4::identity_dyad() * values.dp[0]
                + SymTensor4::deviatoric_projector() * (2.0 / 3.0 * values.dq[1]);
            (id * values.p, tangent)
        }
    };
    Ok(StressUpdate {
        sigma,
        tangent,
        branch: sp.mult,
        predictor,
        values,
    })
}

fn distinct_branch(
    eps: &SymTensor2,
    sp: &Spectrum,
    predictor: &StrainPredictorInvariants,
    v: &ReturnMapValues,
    e: &SymTensor2,
) -> Result<(SymTensor2, SymTensor4)> {
    let id = SymTensor2::IDENTITY;
    let two_thirds_pi = 2.0 * std::f64::consts::FRAC_PI_3;
    let beta_sigma = [
        v.theta_sigma + two_thirds_pi,
        v.theta_sigma,
        v.theta_sigma - two_thirds_pi,
    ];
    let dtheta_eps = dtheta_dt(eps, &sp.inv)?;
    let deq_factor = 2.0 / (3.0 * predictor.eps_q);

    let mut sigma = SymTensor2::ZERO;
    let mut tangent = SymTensor4::ZERO;
    for i in 0..3 {
        let (sin_b, cos_b) = beta_sigma[i].sin_cos();
        let n = sp.bases[i];
        let coefficient = v.p + 2.0 / 3.0 * v.q * sin_b;
        sigma += n * coefficient;
        tangent += spin(eps, sp, i)? * coefficient;

        // ∂(p + ⅔ q sin β_i)/∂ of each predictor invariant
        let partial =
            |k: usize| v.dp[k] + 2.0 / 3.0 * (v.dq[k] * sin_b + v.q * v.dtheta[k] * cos_b);
        let gradient = id * partial(0) + *e * (deq_factor * partial(1)) + dtheta_eps * partial(2);
        tangent += n.dyad(&gradient);
    }
    Ok((sigma, tangent))
}

fn double_branch(
    predictor: &StrainPredictorInvariants,
    v: &ReturnMapValues,
    e: &SymTensor2,
) -> (SymTensor2, SymTensor4) {
    let id = SymTensor2::IDENTITY;
    let c = 2.0 / (3.0 * predictor.eps_q);
    let sigma = id * v.p + *e * (c * v.q);
    let mut bracket = id.dyad(e) * v.dp[1];
    bracket += e.dyad(&id) * v.dq[0];
    bracket += e.dyad(e) * (c * (v.dq[1] - v.q / predictor.eps_q));
    bracket += SymTensor4::deviatoric_projector() * v.q;
    let tangent = SymTensor4::identity_dyad() * v.dp[0] + bracket * c;
    (sigma, tangent)
}
