//! Acceptance gate: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line. The test fails if any criterion fails.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use isotensor::isofunc::{isotropic_function, HalfLog, Power, ScalarEigenMap, ScaledExp};
use isotensor::logstrain::{log_strain, log_strain_from_b, DefGradient};
use isotensor::oracle::{fd_tensor_derivative, jacobi_eigen};
use isotensor::plasticity::{
    stress_invariants, stress_update, vonmises_demo_map, ElasticMap, InvariantReturnMap,
};
use isotensor::sampling::{
    log_uniform, random_deformation, random_rotation, random_symmetric, relative_gap, rng,
    with_eigenvalues, SampleRng,
};
use isotensor::spectral::{spectrum, spin};
use isotensor::{Multiplicity, SymTensor2, SymTensor4, Tolerances};

struct Outcome {
    pass: bool,
    detail: String,
    limit: Option<Duration>,
    elapsed: Duration,
}

fn rel4(a: &SymTensor4, b: &SymTensor4) -> f64 {
    (*a - *b).max_abs() / b.max_abs()
}

fn sci(values: &[f64]) -> String {
    let v: Vec<String> = values.iter().map(|x| format!("{x:.1e}")).collect();
    format!("[{}]", v.join(", "))
}

fn run(limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    Outcome {
        pass: pass && in_time,
        detail,
        limit,
        elapsed,
    }
}

fn spectral_identity() -> (bool, String) {
    let mut r = rng(1);
    let (mut worst_sum, mut worst_rec) = (0.0_f64, 0.0_f64);
    for _ in 0..10_000 {
        let scale = log_uniform(&mut r, 1e-3, 1e3);
        let t = random_symmetric(&mut r, scale);
        let sp = spectrum(&t);
        let sum = sp.bases.iter().fold(SymTensor2::ZERO, |a, b| a + *b);
        worst_sum = worst_sum.max((sum - SymTensor2::IDENTITY).max_abs() / (1e-12 * scale));
        worst_rec = worst_rec.max((sp.reconstruct() - t).max_abs() / (1e-10 * scale));
    }
    (
        worst_sum <= 1.0 && worst_rec <= 1.0,
        format!("sum N = I at {worst_sum:.3} of tol, sum lN = T at {worst_rec:.3} of tol"),
    )
}

fn oracle_equivalence() -> (bool, String) {
    let mut r = rng(2);
    let (mut n, mut worst_value, mut worst_basis) = (0, 0.0_f64, 0.0_f64);
    while n < 1000 {
        let scale = log_uniform(&mut r, 1e-3, 1e3);
        let t = random_symmetric(&mut r, scale);
        let sp = spectrum(&t);
        if relative_gap(&sp.lambda) <= 1e-4 {
            continue;
        }
        n += 1;
        let pairs = jacobi_eigen(&t).expect("jacobi converges");
        for i in 0..3 {
            worst_value = worst_value.max((sp.lambda[i] - pairs[i].value).abs() / sp.spread());
            worst_basis = worst_basis.max((sp.bases[i] - pairs[i].projector()).norm());
        }
    }
    (
        worst_value <= 1e-10 && worst_basis <= 1e-8,
        format!(
            "eigenvalues {worst_value:.2e}/spread (tol 1e-10), bases {worst_basis:.2e} (tol 1e-8)"
        ),
    )
}

fn unit_direction(r: &mut SampleRng) -> SymTensor2 {
    let d = random_symmetric(r, 1.0);
    d * (1.0 / d.norm())
}

fn spin_vs_fd() -> (bool, String) {
    let mut r = rng(3);
    let (mut n, mut worst) = (0, 0.0_f64);
    while n < 200 {
        let scale = log_uniform(&mut r, 1e-2, 1e2);
        let t = random_symmetric(&mut r, scale);
        let sp = spectrum(&t);
        if sp.mult != Multiplicity::Distinct {
            continue;
        }
        n += 1;
        let dir = unit_direction(&mut r);
        let h = 1e-6 * t.norm();
        let (plus, minus) = (spectrum(&(t + dir * h)), spectrum(&(t - dir * h)));
        for i in 0..3 {
            let predicted = spin(&t, &sp, i).unwrap().contract(&dir);
            let fd = (plus.bases[i] - minus.bases[i]) * (0.5 / h);
            worst = worst.max((fd - predicted).norm() / predicted.norm());
        }
    }
    (
        worst <= 1e-4,
        format!("worst relative error {worst:.2e} (tol 1e-4)"),
    )
}

#[derive(Clone, Copy)]
enum Branch {
    Distinct,
    Double,
    Triple,
}

fn sample_eigenvalues(r: &mut SampleRng, branch: Branch, positive: bool) -> [f64; 3] {
    let draw = |r: &mut SampleRng| {
        let m = log_uniform(r, 0.1, 10.0);
        if positive || r.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    match branch {
        Branch::Distinct => [draw(r), draw(r), draw(r)],
        Branch::Double => {
            let (a, b) = (draw(r), draw(r));
            if r.gen_bool(0.5) {
                [a, b, b]
            } else {
                [a, a, b]
            }
        }
        Branch::Triple => [draw(r); 3],
    }
}

fn isofunc_tangents() -> (bool, String) {
    let maps: [(&str, &dyn ScalarEigenMap, bool); 3] = [
        ("half-log", &HalfLog, true),
        ("square", &Power(2), false),
        ("cube", &Power(3), false),
    ];
    let mut r = rng(4);
    let mut pass = true;
    let mut lines = Vec::new();
    for (name, map, positive) in maps {
        for (label, branch) in [
            ("distinct", Branch::Distinct),
            ("double", Branch::Double),
            ("triple", Branch::Triple),
        ] {
            let mut worst = 0.0_f64;
            for _ in 0..200 {
                let lambda = sample_eigenvalues(&mut r, branch, positive);
                let t = with_eigenvalues(&mut r, lambda);
                let out = isotropic_function(&t, map).unwrap();
                let fd = fd_tensor_derivative(
                    |x| isotropic_function(x, map).map(|o| o.value),
                    &t,
                    1e-6 * t.norm(),
                )
                .unwrap();
                worst = worst.max(rel4(&fd, &out.tangent));
            }
            pass &= worst <= 1e-4;
            lines.push(format!("{name}/{label} {worst:.1e}"));
        }
    }
    (
        pass,
        format!("worst per map/branch (tol 1e-4): {}", lines.join(", ")),
    )
}

fn logstrain_round_trip() -> (bool, String) {
    let mut r = rng(5);
    let (mut worst_b, mut worst_trace) = (0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let f = DefGradient::new(random_deformation(&mut r, 0.1, 10.0)).unwrap();
        let res = log_strain(&f).unwrap();
        let b_again = isotropic_function(&res.eps, &ScaledExp(2.0)).unwrap().value;
        worst_b = worst_b.max((b_again - res.b).norm() / res.b.norm());
        worst_trace = worst_trace.max((res.eps.trace() - f.det().ln()).abs());
    }
    (
        worst_b <= 1e-9 && worst_trace <= 1e-10,
        format!("B round trip {worst_b:.2e}·|B| (tol 1e-9), tr eps vs ln det F {worst_trace:.2e} (tol 1e-10)"),
    )
}

fn degenerate_continuity() -> (bool, String) {
    let mut r = rng(6);
    let rot = random_rotation(&mut r);
    let deltas = [1e-2, 1e-3, 1e-4];
    let monotone_and_small =
        |errors: &[f64]| errors.windows(2).all(|w| w[1] < w[0]) && errors[errors.len() - 1] <= 1e-3;

    let b_of = |d: f64| SymTensor2::from_diag(4.0, 1.0 + d, 1.0 - d).rotate(&rot);
    let base = log_strain_from_b(&b_of(0.0)).unwrap();
    let mut log_errors = Vec::new();
    for d in deltas {
        let near = log_strain_from_b(&b_of(d)).unwrap();
        assert_eq!(near.branch, Multiplicity::Distinct);
        let e_eps = (near.eps - base.eps).max_abs() / base.eps.max_abs();
        let e_tan = rel4(&near.deps_db, &base.deps_db);
        log_errors.push(e_eps.max(e_tan));
    }

    let map = vonmises_demo_map(100.0, 50.0, 0.1).unwrap();
    let eps_of =
        |d: f64| SymTensor2::from_diag(4e-3, 1e-3 * (1.0 + d), 1e-3 * (1.0 - d)).rotate(&rot);
    let tol = Tolerances::DEFAULT;
    let base = stress_update(&eps_of(0.0), &map, &tol).unwrap();
    let mut stress_errors = Vec::new();
    for d in deltas {
        let near = stress_update(&eps_of(d), &map, &tol).unwrap();
        assert_eq!(near.branch, Multiplicity::Distinct);
        let e_sig = (near.sigma - base.sigma).max_abs() / base.sigma.max_abs();
        stress_errors.push(e_sig.max(rel4(&near.tangent, &base.tangent)));
    }
    (
        monotone_and_small(&log_errors) && monotone_and_small(&stress_errors),
        format!(
            "log strain {}, plastic stress {} (decreasing, last ≤ 1e-3)",
            sci(&log_errors),
            sci(&stress_errors)
        ),
    )
}

fn elastic_identity() -> (bool, String) {
    let (k, g) = (5.0 / 3.0, 1.0);
    let map = ElasticMap { bulk: k, shear: g };
    let expected_tangent =
        SymTensor4::identity_dyad() * k + SymTensor4::deviatoric_projector() * (2.0 * g);
    let mut r = rng(7);
    let mut worst = [0.0_f64; 3];
    for (slot, branch) in [Branch::Distinct, Branch::Double, Branch::Triple]
        .into_iter()
        .enumerate()
    {
        for _ in 0..200 {
            let scale = log_uniform(&mut r, 1e-4, 1e-1);
            let lambda = sample_eigenvalues(&mut r, branch, false).map(|x| x * scale);
            let eps = with_eigenvalues(&mut r, lambda);
            let u = stress_update(&eps, &map, &Tolerances::DEFAULT).unwrap();
            let e = eps - SymTensor2::IDENTITY * (eps.trace() / 3.0);
            let sigma = SymTensor2::IDENTITY * (k * eps.trace()) + e * (2.0 * g);
            let e_sig = (u.sigma - sigma).max_abs() / ((k + 2.0 * g) * eps.max_abs());
            let e_tan = (u.tangent - expected_tangent).max_abs() / (k + 2.0 * g);
            worst[slot] = worst[slot].max(e_sig).max(e_tan);
        }
    }
    (
        worst.iter().all(|&w| w <= 1e-9),
        format!(
            "distinct {:.1e}, double {:.1e}, triple {:.1e} relative to moduli (tol 1e-9)",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn vonmises_path() -> (bool, String) {
    let (k, g, qy) = (100.0, 50.0, 1.0);
    let map = vonmises_demo_map(k, g, qy).unwrap();
    let mut r = rng(8);
    let direction = with_eigenvalues(&mut r, [1.3, 0.2, -0.9]);
    let dev = direction - SymTensor2::IDENTITY * (direction.trace() / 3.0);
    let unit_eps_q = (2.0 / 3.0 * dev.ddot(&dev)).sqrt();
    let t_yield = qy / (3.0 * g * unit_eps_q);

    let (mut elastic, mut plastic) = (0, 0);
    let (mut worst_q, mut worst_fd) = (f64::NEG_INFINITY, 0.0_f64);
    for step in 1..=40 {
        let t = t_yield * 0.05 * step as f64 + 0.013 * t_yield;
        let eps = direction * t;
        let u = stress_update(&eps, &map as &dyn InvariantReturnMap, &Tolerances::DEFAULT).unwrap();
        if map.is_plastic(u.predictor.eps_q) {
            plastic += 1;
        } else {
            elastic += 1;
        }
        worst_q = worst_q.max(stress_invariants(&u.sigma).q - qy);
        let fd = fd_tensor_derivative(
            |x| stress_update(x, &map, &Tolerances::DEFAULT).map(|u| u.sigma),
            &eps,
            1e-6 * eps.norm(),
        )
        .unwrap();
        worst_fd = worst_fd.max(rel4(&fd, &u.tangent));
    }
    (
        worst_q <= 1e-10 && worst_fd <= 1e-4 && elastic > 0 && plastic > 0,
        format!(
            "{elastic} elastic + {plastic} plastic points, max q(σ) − q_y = {worst_q:.1e} (tol 1e-10), tangent vs FD {worst_fd:.1e} (tol 1e-4)"
        ),
    )
}

fn cli_determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_isotensor");
    let verify = || {
        Command::new(bin)
            .args(["verify", "--seed", "42"])
            .output()
            .expect("run verify")
    };
    let (a, b) = (verify(), verify());
    let same = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let input = dir.join("acceptance_basis_input.jsonl");
    let mut r = rng(9);
    let mut text = String::new();
    for n in 0..10_000 {
        let scale = log_uniform(&mut r, 1e-3, 1e3);
        let t = random_symmetric(&mut r, scale);
        let c: Vec<String> = t.0.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("{{\"id\":\"b{n}\",\"T\":[{}]}}\n", c.join(",")));
    }
    fs::write(&input, text).expect("write corpus");
    let start = Instant::now();
    let run = Command::new(bin)
        .arg("basis")
        .arg("--input")
        .arg(&input)
        .output()
        .expect("run basis");
    let elapsed = start.elapsed();
    let lines = run.stdout.iter().filter(|&&c| c == b'\n').count();
    let fast = run.status.success() && lines == 10_000 && elapsed < Duration::from_secs(2);
    (
        same && fast,
        format!(
            "verify twice byte-identical: {same}; 10^4-record basis run {lines} lines in {:.2} s (limit 2 s)",
            elapsed.as_secs_f64()
        ),
    )
}

#[test]
fn acceptance() {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria: Vec<(&str, Outcome)> = vec![
        ("spectral identity suite", run(secs(5), spectral_identity)),
        ("oracle equivalence", run(secs(5), oracle_equivalence)),
        ("spin vs finite differences", run(secs(10), spin_vs_fd)),
        (
            "isotropic-function tangents",
            run(secs(20), isofunc_tangents),
        ),
        ("log-strain round trip", run(secs(5), logstrain_round_trip)),
        ("degenerate continuity", run(None, degenerate_continuity)),
        ("elastic-map identity", run(None, elastic_identity)),
        ("von Mises demo", run(None, vonmises_path)),
        ("CLI determinism and throughput", run(None, cli_determinism)),
    ];
    // bypass libtest capture so the report shows in a plain `cargo test`
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (n, (name, o)) in criteria.iter().enumerate() {
        let time = match o.limit {
            Some(l) => format!("{:.2} s, limit {} s", o.elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2} s", o.elapsed.as_secs_f64()),
        };
        writeln!(
            out,
            "criterion {} {} [{}] {} ({time})",
            n + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        )
        .unwrap();
        failed += usize::from(!o.pass);
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
