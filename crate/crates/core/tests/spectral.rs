mod common;

use proptest::prelude::*;

use common::{mixed_scale_tensor, rel4, rotation, unit_tensor};
use isotensor::invariants::{adjugate, invariants};
use isotensor::oracle::{default_step, fd_tensor_derivative, jacobi_eigen};
use isotensor::sampling::{log_uniform, random_symmetric, relative_gap, rng, with_eigenvalues};
use isotensor::spectral::{
    classify, eigenbasis_distinct, eigenbasis_double, eigenvalues, spectrum, spin,
};
use isotensor::{DoubleBranch, Error, Multiplicity, SymTensor2};

#[test]
fn closed_form_eigenvalues() {
    let lambda = eigenvalues(&invariants(&SymTensor2::from_diag(5.0, 2.0, -1.0)));
    for (l, e) in lambda.iter().zip([5.0, 2.0, -1.0]) {
        assert!((l - e).abs() < 1e-14);
    }
    assert_eq!(spectrum(&(SymTensor2::IDENTITY * 2.0)).lambda, [2.0; 3]);
}

#[test]
fn classification_examples() {
    assert_eq!(classify(&[5.0, 2.0, -1.0], 5.0), Multiplicity::Distinct);
    assert_eq!(
        classify(&[4.0, 1.0, 1.0], 4.0),
        Multiplicity::Double(DoubleBranch::UniqueLargest)
    );
    assert_eq!(
        classify(&[1.0, 1.0, -2.0], 2.0),
        Multiplicity::Double(DoubleBranch::UniqueSmallest)
    );
    assert_eq!(
        classify(&[2.0 + 1e-16, 2.0, 2.0 - 1e-16], 2.0),
        Multiplicity::Triple
    );
}

#[test]
fn distinct_bases_by_hand() {
    let t = SymTensor2::from_diag(5.0, 2.0, -1.0);
    let inv = invariants(&t);
    let beta = inv.betas();
    let n1 = eigenbasis_distinct(&t, &inv, beta[0]).unwrap();
    let n2 = eigenbasis_distinct(&t, &inv, beta[1]).unwrap();
    assert!((n1 - SymTensor2::from_diag(1.0, 0.0, 0.0)).max_abs() < 1e-14);
    assert!((n2 - SymTensor2::from_diag(0.0, 1.0, 0.0)).max_abs() < 1e-14);
}

#[test]
fn double_bases_by_hand() {
    let t = SymTensor2::from_diag(4.0, 1.0, 1.0);
    let (n_hat, n_rep) =
        eigenbasis_double(&t, &invariants(&t), DoubleBranch::UniqueLargest).unwrap();
    assert!((n_hat - SymTensor2::from_diag(1.0, 0.0, 0.0)).max_abs() < 1e-15);
    assert!((n_rep - SymTensor2::from_diag(0.0, 0.5, 0.5)).max_abs() < 1e-15);

    let t = SymTensor2::from_diag(1.0, 1.0, -2.0);
    let sp = spectrum(&t);
    assert_eq!(sp.mult, Multiplicity::Double(DoubleBranch::UniqueSmallest));
    assert!((sp.bases[2] - SymTensor2::from_diag(0.0, 0.0, 1.0)).max_abs() < 1e-15);

    let t = SymTensor2::IDENTITY;
    assert!(matches!(
        eigenbasis_double(&t, &invariants(&t), DoubleBranch::UniqueLargest),
        Err(Error::Branch { .. })
    ));
}

#[test]
fn rotated_double_basis() {
    let mut r = rng(21);
    for _ in 0..100 {
        let rot = isotensor::sampling::random_rotation(&mut r);
        let a = log_uniform(&mut r, 0.1, 10.0);
        let t = SymTensor2::from_diag(3.0 * a, a, a).rotate(&rot);
        let sp = spectrum(&t);
        assert_eq!(sp.mult, Multiplicity::Double(DoubleBranch::UniqueLargest));
        let expected = SymTensor2::from_diag(1.0, 0.0, 0.0).rotate(&rot);
        assert!((sp.bases[0] - expected).max_abs() < 1e-10);
        let n = sp.bases[0];
        assert!((SymTensor2::from_mat(&n.mat_product(&n)) - n).max_abs() < 1e-8);
    }
}

#[test]
fn triple_bases() {
    let sp = spectrum(&(SymTensor2::IDENTITY * 2.0));
    assert_eq!(sp.mult, Multiplicity::Triple);
    for n in sp.bases {
        assert_eq!(n, SymTensor2::IDENTITY * (1.0 / 3.0));
    }
    for i in 0..3 {
        assert!(matches!(
            spin(&SymTensor2::IDENTITY, &sp, i),
            Err(Error::SpinUndefined { .. })
        ));
    }
}

#[test]
fn spin_on_diagonal_matches_fd() {
    let t = SymTensor2::from_diag(5.0, 2.0, -1.0);
    let sp = spectrum(&t);
    let h = 1e-6 * t.norm();
    for i in 0..3 {
        let fd = fd_tensor_derivative(|x| Ok::<_, Error>(spectrum(x).bases[i]), &t, h).unwrap();
        assert!(rel4(&fd, &spin(&t, &sp, i).unwrap()) < 1e-5);
    }
}

#[test]
fn unique_spin_of_a_double() {
    let t = SymTensor2::from_diag(4.0, 1.0, 1.0);
    let sp = spectrum(&t);
    assert!(matches!(spin(&t, &sp, 1), Err(Error::SpinUndefined { .. })));
    let analytic = spin(&t, &sp, 0).unwrap();
    // perturbed tensors are distinct; index 0 stays the continuously connected one
    let fd = fd_tensor_derivative(|x| Ok::<_, Error>(spectrum(x).bases[0]), &t, 1e-6).unwrap();
    assert!(rel4(&fd, &analytic) < 1e-4);
    assert!(analytic.major_asymmetry() < 1e-10);
}

#[test]
fn identities_over_many_draws() {
    let mut r = rng(22);
    for _ in 0..10_000 {
        let scale = log_uniform(&mut r, 1e-3, 1e3);
        let t = random_symmetric(&mut r, scale);
        let sp = spectrum(&t);
        let sum = sp.bases.iter().fold(SymTensor2::ZERO, |a, b| a + *b);
        assert!((sum - SymTensor2::IDENTITY).max_abs() <= 1e-12 * scale);
        assert!((sp.reconstruct() - t).max_abs() <= 1e-10 * scale);
        if sp.mult == Multiplicity::Distinct {
            for i in 0..3 {
                for j in 0..3 {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((sp.bases[i].ddot(&sp.bases[j]) - expected).abs() <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn oracle_agreement_on_separated_tensors() {
    let mut r = rng(23);
    let mut n = 0;
    while n < 1000 {
        let t = random_symmetric(&mut r, 1.0);
        let sp = spectrum(&t);
        if relative_gap(&sp.lambda) <= 1e-4 {
            continue;
        }
        n += 1;
        let pairs = jacobi_eigen(&t).unwrap();
        for i in 0..3 {
            assert!((sp.lambda[i] - pairs[i].value).abs() <= 1e-10 * sp.spread());
            assert!((sp.bases[i] - pairs[i].projector()).norm() <= 1e-8);
        }
    }
}

#[test]
fn ill_scaled_doubles_stay_double() {
    // spread ≪ trace: rounding pushes the computed pair gap to ~1e-7·spread
    let mut r = rng(25);
    for ratio in [1e-2, 1e-3, 1e-4] {
        for low in [true, false] {
            let lambda = if low {
                [1.0 + ratio, 1.0, 1.0]
            } else {
                [1.0 + ratio, 1.0 + ratio, 1.0]
            };
            for _ in 0..200 {
                let sp = spectrum(&with_eigenvalues(&mut r, lambda));
                assert!(matches!(sp.mult, Multiplicity::Double(_)), "{lambda:?}");
            }
        }
    }
}

#[test]
fn gap_threshold_floor() {
    let tol = isotensor::Tolerances::DEFAULT;
    assert_eq!(tol.gap_threshold(1.0, 1.0), f64::EPSILON.cbrt());
    assert!(tol.gap_threshold(1e3, 1.0) > tol.gap_threshold(1.0, 1.0));
    let loose = isotensor::Tolerances { gap: 1e-3, ..tol };
    assert_eq!(loose.gap_threshold(1.0, 1.0), 1e-3);
}

#[test]
fn continuity_across_double_threshold() {
    let near = spectrum(&SymTensor2::from_diag(4.0, 1.0 + 1e-4, 1.0 - 1e-4));
    let exact = spectrum(&SymTensor2::from_diag(4.0, 1.0, 1.0));
    assert_eq!(near.mult, Multiplicity::Distinct);
    assert!((near.bases[0] - exact.bases[0]).norm() <= 1e-3);
}

#[test]
fn spin_error_is_second_order() {
    let mut r = rng(24);
    let t = with_eigenvalues(&mut r, [3.0, 1.0, -2.0]);
    let d = random_symmetric(&mut r, 1.0);
    let sp = spectrum(&t);
    let s = spin(&t, &sp, 1).unwrap().contract(&d);
    let error = |h: f64| {
        let fd = (spectrum(&(t + d * h)).bases[1] - spectrum(&(t - d * h)).bases[1]) * (0.5 / h);
        (fd - s).norm()
    };
    let (e1, e2) = (error(1e-2), error(5e-3));
    let order = (e1 / e2).log2();
    assert!((order - 2.0).abs() < 0.2, "observed order {order}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn equivariance(t in mixed_scale_tensor(), r in rotation()) {
        let a = spectrum(&t);
        prop_assume!(a.mult == Multiplicity::Distinct && relative_gap(&a.lambda) > 1e-3);
        let b = spectrum(&t.rotate(&r));
        for i in 0..3 {
            prop_assert!((b.bases[i] - a.bases[i].rotate(&r)).max_abs() <= 1e-9);
        }
    }

    #[test]
    fn adjugate_shares_eigenbases(t in unit_tensor()) {
        let sp = spectrum(&t);
        prop_assume!(sp.mult == Multiplicity::Distinct && relative_gap(&sp.lambda) > 1e-3);
        prop_assume!(sp.lambda.iter().all(|l| l.abs() > 1e-2));
        let adj = adjugate(&t);
        let rebuilt = (0..3).fold(SymTensor2::ZERO, |acc, i| {
            acc + sp.bases[i] * (sp.inv.i3 / sp.lambda[i])
        });
        prop_assert!((adj - rebuilt).max_abs() <= 1e-8 * adj.max_abs().max(1.0));
    }

    #[test]
    fn spins_match_fd(t in unit_tensor()) {
        let sp = spectrum(&t);
        prop_assume!(sp.mult == Multiplicity::Distinct && relative_gap(&sp.lambda) > 1e-2);
        let h = default_step(&t);
        for i in 0..3 {
            let fd = fd_tensor_derivative(|x| Ok::<_, Error>(spectrum(x).bases[i]), &t, h).unwrap();
            let analytic = spin(&t, &sp, i).unwrap();
            prop_assert!(rel4(&fd, &analytic) < 1e-4);
            prop_assert!(analytic.major_asymmetry() < 1e-10 * analytic.max_abs());
        }
    }
}
