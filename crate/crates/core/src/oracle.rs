//! Independent verification machinery: cyclic Jacobi eigensolver and
//! central finite differences. Not used on any production path.

use crate::error::{Error, Result};
use crate::isofunc::{isotropic_function_on, isotropic_function_with, Power};
use crate::spectral::{spectrum_with, DoubleBranch, Multiplicity};
use crate::tensor::{SymTensor2, SymTensor4, PAIRS};
use crate::tolerance::Tolerances;

pub const MAX_SWEEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: [f64; 3],
}

impl EigenPair {
    /// `n ⊗ n`.
    pub fn projector(&self) -> SymTensor2 {
        let n = self.vector;
        SymTensor2([
            n[0] * n[0],
            n[1] * n[1],
            n[2] * n[2],
            n[0] * n[1],
            n[0] * n[2],
            n[1] * n[2],
        ])
    }
}

/// Eigenpairs by cyclic Jacobi rotations, sorted by descending value.
pub fn jacobi_eigen(t: &SymTensor2) -> Result<[EigenPair; 3]> {
    let mut a = t.to_mat();
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let target = 1e-15 * t.norm();

    let off =
        |a: &[[f64; 3]; 3]| (2.0 * (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2))).sqrt();

    let mut sweeps = 0;
    while off(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps });
        }
        sweeps += 1;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t_rot = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t_rot = if theta == 0.0 { 1.0 } else { t_rot };
            let c = 1.0 / (t_rot * t_rot + 1.0).sqrt();
            let s = t_rot * c;

            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            for row in v.iter_mut() {
                let vkp = row[p];
                let vkq = row[q];
                row[p] = c * vkp - s * vkq;
                row[q] = s * vkp + c * vkq;
            }
        }
    }

    let mut pairs: Vec<EigenPair> = (0..3)
        .map(|k| EigenPair {
            value: a[k][k],
            vector: [v[0][k], v[1][k], v[2][k]],
        })
        .collect();
    pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
    Ok([pairs[0], pairs[1], pairs[2]])
}

/// Default finite-difference step, `1e-6 · max(1, ‖T‖)`.
pub fn default_step(t: &SymTensor2) -> f64 {
    1e-6 * t.norm().max(1.0)
}

/// Unit perturbation of stored component `b`; shear components move both
/// off-diagonal slots.
pub fn basis_element(b: usize) -> SymTensor2 {
    let mut e = SymTensor2::ZERO;
    e.0[b] = 1.0;
    e
}

/// Central-difference derivative of a tensor-valued map under the library
/// contraction convention.
///
/// A stored shear perturbation changes two tensor slots, so its difference
/// quotient is halved to recover the component `∂f_ij/∂T_kl`.
pub fn fd_tensor_derivative<E>(
    f: impl Fn(&SymTensor2) -> std::result::Result<SymTensor2, E>,
    t: &SymTensor2,
    h: f64,
) -> std::result::Result<SymTensor4, E> {
    let mut out = SymTensor4::ZERO;
    for (b, &(k, l)) in PAIRS.iter().enumerate() {
        let e = basis_element(b) * h;
        let plus = f(&(*t + e))?;
        let minus = f(&(*t - e))?;
        let scale = if k == l { 1.0 } else { 0.5 };
        let column = (plus - minus) * (scale / (2.0 * h));
        for a in 0..6 {
            out.0[a][b] = column.0[a];
        }
    }
    Ok(out)
}

/// Central-difference gradient of a scalar function, `∂f/∂T_kl`.
pub fn fd_scalar_gradient<E>(
    f: impl Fn(&SymTensor2) -> std::result::Result<f64, E>,
    t: &SymTensor2,
    h: f64,
) -> std::result::Result<SymTensor2, E> {
    let mut out = SymTensor2::ZERO;
    for (b, &(k, l)) in PAIRS.iter().enumerate() {
        let e = basis_element(b) * h;
        let scale = if k == l { 1.0 } else { 0.5 };
        out.0[b] = (f(&(*t + e))? - f(&(*t - e))?) * scale / (2.0 * h);
    }
    Ok(out)
}

/// Central-difference directional derivative `(f(T + hΔ) − f(T − hΔ)) / 2h`.
pub fn fd_directional<E>(
    f: impl Fn(&SymTensor2) -> std::result::Result<SymTensor2, E>,
    t: &SymTensor2,
    direction: &SymTensor2,
    h: f64,
) -> std::result::Result<SymTensor2, E> {
    let plus = f(&(*t + *direction * h))?;
    let minus = f(&(*t - *direction * h))?;
    Ok((plus - minus) * (1.0 / (2.0 * h)))
}

/// Deviations of one tensor's closed-form results from the oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub mult: Multiplicity,
    /// `max |λ_i − λ_i^J|` over the spread (over `‖T‖` for a triple).
    pub eigenvalue: f64,
    /// Largest Frobenius distance between a closed-form basis and the
    /// matching projector sum from the Jacobi eigenvectors.
    pub basis: f64,
    /// Relative FD error of the `T ↦ T²` isotropic-function tangent.
    pub tangent: f64,
}

/// Compares spectrum and tangent against Jacobi and FD oracles.
///
/// Repeated eigenvalues are compared through the projector of the whole
/// eigenspace, since the individual Jacobi vectors are not unique there.
pub fn deviation_from_oracles(t: &SymTensor2, tol: &Tolerances) -> Result<Deviation> {
    let sp = spectrum_with(t, tol);
    let pairs = jacobi_eigen(t)?;
    let spread = sp.spread();
    let value_scale = match sp.mult {
        Multiplicity::Triple => t.norm().max(f64::MIN_POSITIVE),
        _ => spread,
    };
    let eigenvalue = (0..3)
        .map(|i| (sp.lambda[i] - pairs[i].value).abs())
        .fold(0.0, f64::max)
        / value_scale;

    let groups: &[&[usize]] = match sp.mult {
        Multiplicity::Distinct => &[&[0], &[1], &[2]],
        Multiplicity::Double(DoubleBranch::UniqueLargest) => &[&[0], &[1, 2]],
        Multiplicity::Double(DoubleBranch::UniqueSmallest) => &[&[0, 1], &[2]],
        Multiplicity::Triple => &[&[0, 1, 2]],
    };
    let mut basis = 0.0_f64;
    for group in groups {
        let closed = group
            .iter()
            .fold(SymTensor2::ZERO, |acc, &i| acc + sp.bases[i]);
        let oracle = group
            .iter()
            .fold(SymTensor2::ZERO, |acc, &i| acc + pairs[i].projector());
        basis = basis.max((closed - oracle).norm());
    }

    let square = Power(2);
    let analytic = isotropic_function_on(t, &sp, &square)?.tangent;
    let fd = fd_tensor_derivative(
        |x| isotropic_function_with(x, &square, tol).map(|o| o.value),
        t,
        default_step(t),
    )?;
    let tangent = (fd - analytic).max_abs() / analytic.max_abs().max(f64::MIN_POSITIVE);
    Ok(Deviation {
        mult: sp.mult,
        eigenvalue,
        basis,
        tangent,
    })
}
