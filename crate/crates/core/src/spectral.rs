//! Closed-form eigenvalues, eigenbases and eigenbasis spins.
//!
//! Eigenvalues come from the invariants through the Lode angle. Eigenbases
//! are `N_i = dλ_i/dT`, obtained from the secular equation without
//! eigenvectors or a tensor inverse:
//!
//! ```text
//! N_i = { λ_i [(λ_i − I1) I + T] + adj T } / [ J2 (4 sin²β_i − 1) ]
//! ```
//!
//! The expression is invariant under `T ↦ T + cI`, so it is evaluated on the
//! deviator, which keeps the cancellation in the numerator independent of
//! the mean part of `T`. With repeated eigenvalues the basis of the unique
//! eigenvalue is proportional to the deviator and the repeated pair shares
//! `½(I − N̂)`; with three equal eigenvalues every basis is `I/3`.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{adjugate, d2_i3, deviator, invariants_with, InvariantSet};
use crate::tensor::{SymTensor2, SymTensor4};
use crate::tolerance::Tolerances;

/// Which eigenvalue is not repeated in the double case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoubleBranch {
    /// `λ_I > λ_II = λ_III`, Lode angle `−π/6`.
    UniqueLargest,
    /// `λ_I = λ_II > λ_III`, Lode angle `+π/6`.
    UniqueSmallest,
}

impl DoubleBranch {
    /// Index of the simple eigenvalue in the descending ordering.
    pub fn unique_index(self) -> usize {
        match self {
            DoubleBranch::UniqueLargest => 0,
            DoubleBranch::UniqueSmallest => 2,
        }
    }

    /// Sign of the Lode angle, `θ = sign · π/6`.
    ///
    /// Written `±` in the degenerate-branch formulas; `∓` is its negation.
    pub fn sign(self) -> f64 {
        match self {
            DoubleBranch::UniqueLargest => -1.0,
            DoubleBranch::UniqueSmallest => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Distinct,
    Double(DoubleBranch),
    Triple,
}

impl Multiplicity {
    pub fn tag(&self) -> &'static str {
        match self {
            Multiplicity::Distinct => "distinct",
            Multiplicity::Double(_) => "double",
            Multiplicity::Triple => "triple",
        }
    }

    /// Whether eigenvalue `index` is simple, so that its spin exists.
    pub fn is_simple(&self, index: usize) -> bool {
        match self {
            Multiplicity::Distinct => true,
            Multiplicity::Double(b) => b.unique_index() == index,
            Multiplicity::Triple => false,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Double(DoubleBranch::UniqueLargest) => {
                write!(f, "double (unique largest)")
            }
            Multiplicity::Double(DoubleBranch::UniqueSmallest) => {
                write!(f, "double (unique smallest)")
            }
            m => f.write_str(m.tag()),
        }
    }
}

/// Eigenvalues, multiplicity and eigenbases of one symmetric tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    /// Descending eigenvalues `λ_I ≥ λ_II ≥ λ_III`.
    pub lambda: [f64; 3],
    /// `(θ + 2π/3, θ, θ − 2π/3)`.
    pub beta: [f64; 3],
    pub mult: Multiplicity,
    /// Eigenbases `N_i`, aligned with `lambda`.
    pub bases: [SymTensor2; 3],
    pub inv: InvariantSet,
    /// Frobenius norm of the source tensor.
    pub scale: f64,
}

impl Spectrum {
    /// `Σ λ_i N_i`.
    pub fn reconstruct(&self) -> SymTensor2 {
        self.bases
            .iter()
            .zip(self.lambda)
            .fold(SymTensor2::ZERO, |acc, (n, l)| acc + *n * l)
    }

    pub fn spread(&self) -> f64 {
        self.lambda[0] - self.lambda[2]
    }
}

/// Closed-form eigenvalues in descending order.
pub fn eigenvalues(inv: &InvariantSet) -> [f64; 3] {
    let mean = inv.i1 / 3.0;
    let radius = 2.0 / 3.0_f64.sqrt() * inv.j2.max(0.0).sqrt();
    let b = inv.betas();
    let mut lambda = [
        mean + radius * b[0].sin(),
        mean + radius * b[1].sin(),
        mean + radius * b[2].sin(),
    ];
    // Ordering holds analytically for θ ∈ [−π/6, π/6]; rounding at the
    // endpoints can swap two equal values by an ulp.
    debug_assert!(
        lambda[0] - lambda[1] >= -4.0 * f64::EPSILON * (radius + mean.abs())
            && lambda[1] - lambda[2] >= -4.0 * f64::EPSILON * (radius + mean.abs()),
        "eigenvalues not descending: {lambda:?}"
    );
    lambda.sort_by(|a, b| b.total_cmp(a));
    lambda
}

pub fn classify(lambda: &[f64; 3], scale: f64) -> Multiplicity {
    classify_with(lambda, scale, &Tolerances::DEFAULT)
}

pub fn classify_with(lambda: &[f64; 3], scale: f64, tol: &Tolerances) -> Multiplicity {
    let spread = lambda[0] - lambda[2];
    if spread <= tol.triple_floor(scale) {
        return Multiplicity::Triple;
    }
    let low_gap = lambda[1] - lambda[2];
    let high_gap = lambda[0] - lambda[1];
    let limit = tol.gap_threshold(scale, spread) * spread;
    if low_gap <= limit && low_gap <= high_gap {
        Multiplicity::Double(DoubleBranch::UniqueLargest)
    } else if high_gap <= limit {
        Multiplicity::Double(DoubleBranch::UniqueSmallest)
    } else {
        Multiplicity::Distinct
    }
}

/// Denominator factor `4 sin²β − 1`, proportional to the gap product
/// `(λ_i − λ_j)(λ_i − λ_k)`.
fn gap_factor(beta: f64) -> f64 {
    let s = beta.sin();
    4.0 * s * s - 1.0
}

/// Eigenbasis of a simple eigenvalue from the secular-equation formula.
///
/// `beta` is the angle paired with the eigenvalue. Fails with a branch error
/// when the eigenvalue is (numerically) repeated.
pub fn eigenbasis_distinct(t: &SymTensor2, inv: &InvariantSet, beta: f64) -> Result<SymTensor2> {
    eigenbasis_distinct_with(t, inv, beta, Tolerances::DEFAULT.gap)
}

fn eigenbasis_distinct_with(
    t: &SymTensor2,
    inv: &InvariantSet,
    beta: f64,
    floor: f64,
) -> Result<SymTensor2> {
    let g = gap_factor(beta);
    if !inv.theta_defined || g.abs() <= floor {
        let found = classify_with(&eigenvalues(inv), t.norm(), &Tolerances::DEFAULT);
        return Err(Error::Branch {
            operation: "eigenbasis_distinct",
            expected: "a simple",
            found,
        });
    }
    let s = deviator(t);
    let l = 2.0 / 3.0_f64.sqrt() * inv.j2.sqrt() * beta.sin();
    let numerator = (SymTensor2::IDENTITY * l + s) * l + adjugate(&s);
    Ok(numerator * (1.0 / (inv.j2 * g)))
}

/// Bases of a double-eigenvalue tensor: `(N̂, ½(I − N̂))`.
///
/// `N̂ = I/3 ∓ t/q` for `θ = ±π/6`, with the sign taken from the classified
/// branch.
pub fn eigenbasis_double(
    t: &SymTensor2,
    inv: &InvariantSet,
    branch: DoubleBranch,
) -> Result<(SymTensor2, SymTensor2)> {
    let q = inv.q();
    if !inv.theta_defined || q <= 0.0 {
        return Err(Error::Branch {
            operation: "eigenbasis_double",
            expected: "double",
            found: Multiplicity::Triple,
        });
    }
    let dev = deviator(t);
    let n_hat = SymTensor2::IDENTITY * (1.0 / 3.0) - dev * (branch.sign() / q);
    let n_rep = (SymTensor2::IDENTITY - n_hat) * 0.5;
    Ok((n_hat, n_rep))
}

pub fn spectrum(t: &SymTensor2) -> Spectrum {
    spectrum_with(t, &Tolerances::DEFAULT)
}

pub fn spectrum_with(t: &SymTensor2, tol: &Tolerances) -> Spectrum {
    let inv = invariants_with(t, tol);
    let mut lambda = eigenvalues(&inv);
    let scale = t.norm();
    let beta = inv.betas();
    let mult = classify_with(&lambda, scale, tol);
    // Near θ = ±π/6 the trigonometric form loses half the digits; the
    // degenerate branches use the exact (I1, q) values instead.
    match mult {
        Multiplicity::Triple => lambda = [inv.i1 / 3.0; 3],
        Multiplicity::Double(branch) => {
            let (sign, q) = (branch.sign(), inv.q());
            let repeated = (inv.i1 + sign * q) / 3.0;
            lambda = [repeated; 3];
            lambda[branch.unique_index()] = (inv.i1 - 2.0 * sign * q) / 3.0;
        }
        Multiplicity::Distinct => {}
    }
    let third = SymTensor2::IDENTITY * (1.0 / 3.0);

    let bases = match mult {
        Multiplicity::Triple => [third; 3],
        Multiplicity::Double(branch) => {
            // The secular formula stays well conditioned for the simple
            // eigenvalue and, unlike I/3 ∓ t/q, remains a projector when the
            // pair is split inside the classification band.
            let unique = branch.unique_index();
            let n_hat = eigenbasis_distinct_with(t, &inv, beta[unique], 0.0)
                .or_else(|_| eigenbasis_double(t, &inv, branch).map(|(n, _)| n))
                .unwrap_or(third);
            let n_rep = (SymTensor2::IDENTITY - n_hat) * 0.5;
            let mut bases = [n_rep; 3];
            bases[unique] = n_hat;
            bases
        }
        Multiplicity::Distinct => {
            // N_II carries both gaps in its denominator; the outer bases do
            // not, so the middle one is closed from Σ N_i = I.
            let n_1 = eigenbasis_distinct_with(t, &inv, beta[0], 0.0).unwrap_or(third);
            let n_3 = eigenbasis_distinct_with(t, &inv, beta[2], 0.0).unwrap_or(third);
            let n_2 = SymTensor2::IDENTITY - n_1 - n_3;
            [n_1, n_2, n_3]
        }
    };

    Spectrum {
        lambda,
        beta,
        mult,
        bases,
        inv,
        scale,
    }
}

/// Spin `dN_i/dT` of the basis of a simple eigenvalue:
///
/// ```text
/// dN_i/dT = 1/[J2(4sin²β_i − 1)] · [ −4√(3J2) sinβ_i N_i⊗N_i
///           + (2λ_i − I1)(N_i⊗I + I⊗N_i) + (N_i⊗T + T⊗N_i)
///           + λ_i(𝓘 − I⊗I) + d²I3/dT² ]
/// ```
///
/// Evaluated on the deviator (the spin is shift invariant).
pub fn spin(t: &SymTensor2, sp: &Spectrum, index: usize) -> Result<SymTensor4> {
    if index > 2 || !sp.mult.is_simple(index) {
        return Err(Error::SpinUndefined {
            index,
            mult: sp.mult,
        });
    }
    let inv = &sp.inv;
    let beta = sp.beta[index];
    let g = gap_factor(beta);
    if g.abs() <= 0.0 || inv.j2 <= 0.0 {
        return Err(Error::SpinUndefined {
            index,
            mult: sp.mult,
        });
    }
    let s = deviator(t);
    let n = sp.bases[index];
    let id = SymTensor2::IDENTITY;
    let l = 2.0 / 3.0_f64.sqrt() * inv.j2.sqrt() * beta.sin();
    let mut body = n.dyad(&n) * (-4.0 * (3.0 * inv.j2).sqrt() * beta.sin());
    body += n.sym_dyad(&id) * (2.0 * l);
    body += n.sym_dyad(&s);
    body += (SymTensor4::IDENTITY - SymTensor4::identity_dyad()) * l;
    body += d2_i3(&s);
    Ok(body * (1.0 / (inv.j2 * g)))
}
