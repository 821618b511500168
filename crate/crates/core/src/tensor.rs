//! Symmetric second- and fourth-order tensor value types.
//!
//! A [`SymTensor2`] stores the six independent components of a symmetric
//! 3×3 tensor in the fixed order `(11, 22, 33, 12, 13, 23)`. Every
//! contraction counts the shear slots twice, so `A : B` equals the full
//! nine-term sum `A_ij B_ij`.
//!
//! A [`SymTensor4`] stores the 6×6 array of tensor components
//! `A_ijkl` with `(ij)` and `(kl)` mapped through the same index order.
//! Entries are plain tensor components; the shear weighting lives in the
//! contraction, not in the stored values. Under that convention the
//! symmetric fourth-order identity has diagonal `(1, 1, 1, ½, ½, ½)` and a
//! dyad `A ⊗ B` has entries `A_a B_b`.
//!
//! ```text
//!  index   0    1    2    3    4    5
//!  pair   11   22   33   12   13   23
//!  weight  1    1    1    2    2    2
//! ```

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Contraction weights for the stored components.
pub const WEIGHTS: [f64; 6] = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0];

/// Maps a stored component index to its `(row, col)` pair.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];

/// Maps a `(row, col)` pair to the stored component index.
pub const fn voigt_index(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) | (1, 0) => 3,
        (0, 2) | (2, 0) => 4,
        _ => 5,
    }
}

/// Plain row-major 3×3 matrix used at the boundaries (rotations, products).
pub type Mat3 = [[f64; 3]; 3];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub fn mat_transpose(a: &Mat3) -> Mat3 {
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn mat_det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Symmetric second-order tensor.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct SymTensor2(pub [f64; 6]);

impl fmt::Debug for SymTensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTensor2{:?}", self.0)
    }
}

impl SymTensor2 {
    pub const ZERO: SymTensor2 = SymTensor2([0.0; 6]);
    pub const IDENTITY: SymTensor2 = SymTensor2([1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);

    pub const fn new(components: [f64; 6]) -> Self {
        SymTensor2(components)
    }

    pub fn from_diag(d0: f64, d1: f64, d2: f64) -> Self {
        SymTensor2([d0, d1, d2, 0.0, 0.0, 0.0])
    }

    /// Symmetric part of a full matrix.
    pub fn from_mat(m: &Mat3) -> Self {
        SymTensor2([
            m[0][0],
            m[1][1],
            m[2][2],
            0.5 * (m[0][1] + m[1][0]),
            0.5 * (m[0][2] + m[2][0]),
            0.5 * (m[1][2] + m[2][1]),
        ])
    }

    pub fn components(&self) -> &[f64; 6] {
        &self.0
    }

    pub fn to_mat(&self) -> Mat3 {
        let c = &self.0;
        [[c[0], c[3], c[4]], [c[3], c[1], c[5]], [c[4], c[5], c[2]]]
    }

    /// Component `T_ij` for any `i, j < 3`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[voigt_index(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[1] + self.0[2]
    }

    /// `A : B` with shear counted twice.
    pub fn ddot(&self, other: &SymTensor2) -> f64 {
        let (a, b) = (&self.0, &other.0);
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5])
    }

    /// Frobenius norm, `sqrt(T : T)`.
    pub fn norm(&self) -> f64 {
        self.ddot(self).sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn det(&self) -> f64 {
        let c = &self.0;
        c[0] * (c[1] * c[2] - c[5] * c[5]) - c[3] * (c[3] * c[2] - c[5] * c[4])
            + c[4] * (c[3] * c[5] - c[1] * c[4])
    }

    /// Full matrix product `A · B` (generally not symmetric).
    pub fn mat_product(&self, other: &SymTensor2) -> Mat3 {
        mat_mul(&self.to_mat(), &other.to_mat())
    }

    /// `A · A`, which is symmetric.
    pub fn square(&self) -> SymTensor2 {
        SymTensor2::from_mat(&self.mat_product(self))
    }

    /// `Rᵀ T R`.
    pub fn rotate(&self, r: &Mat3) -> SymTensor2 {
        let rt = mat_transpose(r);
        SymTensor2::from_mat(&mat_mul(&mat_mul(&rt, &self.to_mat()), r))
    }

    /// Dyadic product `self ⊗ other`.
    pub fn dyad(&self, other: &SymTensor2) -> SymTensor4 {
        let mut out = SymTensor4::ZERO;
        for a in 0..6 {
            for b in 0..6 {
                out.0[a][b] = self.0[a] * other.0[b];
            }
        }
        out
    }

    /// `self ⊗ other + other ⊗ self`.
    pub fn sym_dyad(&self, other: &SymTensor2) -> SymTensor4 {
        let mut out = SymTensor4::ZERO;
        for a in 0..6 {
            for b in 0..6 {
                out.0[a][b] = self.0[a] * other.0[b] + other.0[a] * self.0[b];
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

impl Index<usize> for SymTensor2 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for SymTensor2 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for SymTensor2 {
    type Output = SymTensor2;
    fn add(mut self, rhs: SymTensor2) -> SymTensor2 {
        self += rhs;
        self
    }
}

impl AddAssign for SymTensor2 {
    fn add_assign(&mut self, rhs: SymTensor2) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for SymTensor2 {
    type Output = SymTensor2;
    fn sub(mut self, rhs: SymTensor2) -> SymTensor2 {
        self -= rhs;
        self
    }
}

impl SubAssign for SymTensor2 {
    fn sub_assign(&mut self, rhs: SymTensor2) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for SymTensor2 {
    type Output = SymTensor2;
    fn neg(self) -> SymTensor2 {
        self * -1.0
    }
}

impl Mul<f64> for SymTensor2 {
    type Output = SymTensor2;
    fn mul(mut self, s: f64) -> SymTensor2 {
        for a in self.0.iter_mut() {
            *a *= s;
        }
        self
    }
}

impl Mul<SymTensor2> for f64 {
    type Output = SymTensor2;
    fn mul(self, t: SymTensor2) -> SymTensor2 {
        t * self
    }
}

/// Fourth-order tensor with minor symmetries, stored as 6×6 components.
#[derive(Clone, Copy, PartialEq)]
pub struct SymTensor4(pub [[f64; 6]; 6]);

impl fmt::Debug for SymTensor4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymTensor4[")?;
        for row in &self.0 {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Default for SymTensor4 {
    fn default() -> Self {
        SymTensor4::ZERO
    }
}

impl SymTensor4 {
    pub const ZERO: SymTensor4 = SymTensor4([[0.0; 6]; 6]);

    /// Symmetric fourth-order identity: `𝓘 : X = X` for symmetric `X`.
    pub const IDENTITY: SymTensor4 = SymTensor4([
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.5, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.5, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.5],
    ]);

    /// `I ⊗ I`.
    pub fn identity_dyad() -> SymTensor4 {
        SymTensor2::IDENTITY.dyad(&SymTensor2::IDENTITY)
    }

    /// Deviatoric projector `𝓘 − ⅓ I ⊗ I`.
    pub fn deviatoric_projector() -> SymTensor4 {
        SymTensor4::IDENTITY - SymTensor4::identity_dyad() * (1.0 / 3.0)
    }

    /// Component `A_ijkl` for any indices.
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.0[voigt_index(i, j)][voigt_index(k, l)]
    }

    /// Builds a tensor from a component function evaluated on the
    /// representative index pairs; the function must already have minor
    /// symmetry.
    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> SymTensor4 {
        let mut out = SymTensor4::ZERO;
        for (a, &(i, j)) in PAIRS.iter().enumerate() {
            for (b, &(k, l)) in PAIRS.iter().enumerate() {
                out.0[a][b] = f(i, j, k, l);
            }
        }
        out
    }

    /// `A : X`.
    pub fn contract(&self, x: &SymTensor2) -> SymTensor2 {
        let mut out = [0.0; 6];
        for (a, row) in self.0.iter().enumerate() {
            let mut acc = 0.0;
            for b in 0..6 {
                acc += row[b] * (WEIGHTS[b] * x.0[b]);
            }
            out[a] = acc;
        }
        SymTensor2(out)
    }

    /// `X : A`.
    pub fn left_contract(&self, x: &SymTensor2) -> SymTensor2 {
        self.transpose().contract(x)
    }

    /// `A : B` as a composition of linear maps.
    pub fn compose(&self, other: &SymTensor4) -> SymTensor4 {
        let mut out = SymTensor4::ZERO;
        for a in 0..6 {
            for b in 0..6 {
                let mut acc = 0.0;
                for c in 0..6 {
                    acc += self.0[a][c] * WEIGHTS[c] * other.0[c][b];
                }
                out.0[a][b] = acc;
            }
        }
        out
    }

    /// Major transpose, `A_klij`.
    pub fn transpose(&self) -> SymTensor4 {
        let mut out = SymTensor4::ZERO;
        for a in 0..6 {
            for b in 0..6 {
                out.0[a][b] = self.0[b][a];
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Norm of the full 81-component array.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                acc += WEIGHTS[a] * WEIGHTS[b] * self.0[a][b] * self.0[a][b];
            }
        }
        acc.sqrt()
    }

    /// Largest deviation from major symmetry.
    pub fn major_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..6 {
            for b in (a + 1)..6 {
                worst = worst.max((self.0[a][b] - self.0[b][a]).abs());
            }
        }
        worst
    }

    /// Row-major flattening of the stored 6×6 array.
    pub fn to_flat(&self) -> [f64; 36] {
        let mut out = [0.0; 36];
        for a in 0..6 {
            out[6 * a..6 * a + 6].copy_from_slice(&self.0[a]);
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Add for SymTensor4 {
    type Output = SymTensor4;
    fn add(mut self, rhs: SymTensor4) -> SymTensor4 {
        self += rhs;
        self
    }
}

impl AddAssign for SymTensor4 {
    fn add_assign(&mut self, rhs: SymTensor4) {
        for a in 0..6 {
            for b in 0..6 {
                self.0[a][b] += rhs.0[a][b];
            }
        }
    }
}

impl Sub for SymTensor4 {
    type Output = SymTensor4;
    fn sub(mut self, rhs: SymTensor4) -> SymTensor4 {
        self -= rhs;
        self
    }
}

impl SubAssign for SymTensor4 {
    fn sub_assign(&mut self, rhs: SymTensor4) {
        for a in 0..6 {
            for b in 0..6 {
                self.0[a][b] -= rhs.0[a][b];
            }
        }
    }
}

impl Mul<f64> for SymTensor4 {
    type Output = SymTensor4;
    fn mul(mut self, s: f64) -> SymTensor4 {
        for row in self.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        self
    }
}

impl Mul<SymTensor4> for f64 {
    type Output = SymTensor4;
    fn mul(self, t: SymTensor4) -> SymTensor4 {
        t * self
    }
}
