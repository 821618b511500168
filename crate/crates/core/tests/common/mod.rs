#![allow(dead_code)]

use proptest::prelude::*;

use isotensor::sampling::rotation_from_quaternion;
use isotensor::tensor::Mat3;
use isotensor::{SymTensor2, SymTensor4};

/// Symmetric tensor with a log-uniform component scale in `[1e-3, 1e3]`.
pub fn mixed_scale_tensor() -> impl Strategy<Value = SymTensor2> {
    (prop::array::uniform6(-1.0..1.0f64), -3.0..3.0f64)
        .prop_map(|(c, e)| SymTensor2(c) * 10f64.powf(e))
}

pub fn unit_tensor() -> impl Strategy<Value = SymTensor2> {
    prop::array::uniform6(-1.0..1.0f64)
        .prop_filter("non-degenerate", |c| SymTensor2(*c).norm() > 0.1)
        .prop_map(SymTensor2)
}

pub fn rotation() -> impl Strategy<Value = Mat3> {
    prop::array::uniform4(-1.0..1.0f64)
        .prop_filter("well-defined axis", |q| {
            q.iter().map(|x| x * x).sum::<f64>() > 0.01
        })
        .prop_map(|q| {
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            rotation_from_quaternion([q[0] / n, q[1] / n, q[2] / n, q[3] / n])
        })
}

pub fn rel4(a: &SymTensor4, b: &SymTensor4) -> f64 {
    (*a - *b).max_abs() / b.max_abs()
}

pub fn commutator_norm(a: &SymTensor2, b: &SymTensor2) -> f64 {
    let ab = a.mat_product(b);
    let mut worst = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((ab[i][j] - ab[j][i]).abs());
        }
    }
    worst
}
