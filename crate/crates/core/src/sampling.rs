//! Seeded random tensors, rotations and deformation gradients for
//! verification corpora.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::tensor::{mat_mul, Mat3, SymTensor2};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rotation matrix from a uniformly drawn unit quaternion.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Mat3 {
    let mut q = [0.0_f64; 4];
    loop {
        for x in q.iter_mut() {
            *x = rng.gen_range(-1.0..1.0);
        }
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            for x in q.iter_mut() {
                *x /= n;
            }
            break;
        }
    }
    rotation_from_quaternion(q)
}

pub fn rotation_from_quaternion([w, x, y, z]: [f64; 4]) -> Mat3 {
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

/// Log-uniform magnitude in `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// Symmetric tensor with components uniform in `[−scale, scale]`.
pub fn random_symmetric<R: Rng>(rng: &mut R, scale: f64) -> SymTensor2 {
    let mut c = [0.0; 6];
    for x in c.iter_mut() {
        *x = scale * rng.gen_range(-1.0..1.0);
    }
    SymTensor2(c)
}

/// `Rᵀ diag(eigenvalues) R` for a random rotation `R`.
pub fn with_eigenvalues<R: Rng>(rng: &mut R, eigenvalues: [f64; 3]) -> SymTensor2 {
    let r = random_rotation(rng);
    SymTensor2::from_diag(eigenvalues[0], eigenvalues[1], eigenvalues[2]).rotate(&r)
}

/// Relative gap `min(λ_i − λ_{i+1}) / (λ_I − λ_III)` from sorted values.
pub fn relative_gap(lambda: &[f64; 3]) -> f64 {
    let spread = lambda[0] - lambda[2];
    if spread <= 0.0 {
        return 0.0;
    }
    (lambda[0] - lambda[1]).min(lambda[1] - lambda[2]) / spread
}

/// Deformation gradient `R · U` with a random rotation and a random SPD
/// stretch whose determinant is log-uniform in `[det_lo, det_hi]`.
pub fn random_deformation<R: Rng>(rng: &mut R, det_lo: f64, det_hi: f64) -> Mat3 {
    let det = log_uniform(rng, det_lo, det_hi);
    let mut stretches = [0.0; 3];
    for s in stretches.iter_mut() {
        *s = log_uniform(rng, 0.5, 2.0);
    }
    let correction = (det / (stretches[0] * stretches[1] * stretches[2])).cbrt();
    for s in stretches.iter_mut() {
        *s *= correction;
    }
    let q = random_rotation(rng);
    let u = SymTensor2::from_diag(stretches[0], stretches[1], stretches[2])
        .rotate(&q)
        .to_mat();
    mat_mul(&random_rotation(rng), &u)
}
