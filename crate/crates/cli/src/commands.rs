use serde_json::{json, Map, Value};

use isotensor::invariants::invariants_with;
use isotensor::logstrain::log_strain_with;
use isotensor::oracle::deviation_from_oracles;
use isotensor::plasticity::{stress_update, VonMisesDemo};
use isotensor::spectral::{spectrum_with, spin};
use isotensor::{SymTensor4, Tolerances};

use crate::record::Record;

#[derive(Debug, Clone, Copy)]
pub enum Command {
    Invariants,
    Eigen,
    Basis,
    Spin,
    LogStrain,
    Stress(VonMisesDemo),
    Verify,
}

fn flat(t: &SymTensor4) -> Vec<f64> {
    t.to_flat().to_vec()
}

/// Evaluates one record. The `id` field is added by the caller.
pub fn evaluate(command: Command, record: &Record, tol: &Tolerances) -> Result<Value, String> {
    let out = match command {
        Command::Invariants => {
            let inv = invariants_with(&record.tensor()?, tol);
            json!({
                "I1": inv.i1,
                "I2": inv.i2,
                "I3": inv.i3,
                "J2": inv.j2,
                "J3": inv.j3,
                "theta": inv.theta,
                "theta_defined": inv.theta_defined,
            })
        }
        Command::Eigen => {
            let sp = spectrum_with(&record.tensor()?, tol);
            json!({ "eigenvalues": sp.lambda, "multiplicity": sp.mult.tag() })
        }
        Command::Basis => {
            let sp = spectrum_with(&record.tensor()?, tol);
            let bases: Vec<[f64; 6]> = sp.bases.iter().map(|b| b.0).collect();
            json!({ "eigenvalues": sp.lambda, "multiplicity": sp.mult.tag(), "bases": bases })
        }
        Command::Spin => {
            let t = record.tensor()?;
            let sp = spectrum_with(&t, tol);
            let spins = (0..3)
                .map(|i| spin(&t, &sp, i).map(|s| flat(&s)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            json!({ "eigenvalues": sp.lambda, "multiplicity": sp.mult.tag(), "spins": spins })
        }
        Command::LogStrain => {
            let r = log_strain_with(&record.gradient()?, tol).map_err(|e| e.to_string())?;
            json!({ "eps": r.eps.0, "deps_dB": flat(&r.deps_db), "branch": r.branch.tag() })
        }
        Command::Stress(map) => {
            let u = stress_update(&record.tensor()?, &map, tol).map_err(|e| e.to_string())?;
            json!({
                "sigma": u.sigma.0,
                "tangent": flat(&u.tangent),
                "branch": u.branch.tag(),
                "p": u.values.p,
                "q": u.values.q,
                "theta_sigma": u.values.theta_sigma,
                "plastic": map.is_plastic(u.predictor.eps_q),
            })
        }
        Command::Verify => {
            let d = deviation_from_oracles(&record.tensor()?, tol).map_err(|e| e.to_string())?;
            json!({
                "multiplicity": d.mult.tag(),
                "eigenvalue_deviation": d.eigenvalue,
                "basis_deviation": d.basis,
                "tangent_deviation": d.tangent,
            })
        }
    };
    Ok(out)
}

/// Puts `id` first in an output object.
pub fn with_id(id: &Option<String>, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("id".into(), id.clone().map_or(Value::Null, Value::String));
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}

/// Running maxima over successful `verify` records.
#[derive(Debug, Default)]
pub struct VerifySummary {
    pub records: usize,
    pub failed: usize,
    pub eigenvalue: f64,
    pub basis: f64,
    pub tangent: f64,
}

impl VerifySummary {
    pub fn add(&mut self, out: Option<&Value>) {
        self.records += 1;
        let Some(out) = out else {
            self.failed += 1;
            return;
        };
        let field = |k: &str| out.get(k).and_then(Value::as_f64).unwrap_or(f64::NAN);
        self.eigenvalue = self.eigenvalue.max(field("eigenvalue_deviation"));
        self.basis = self.basis.max(field("basis_deviation"));
        self.tangent = self.tangent.max(field("tangent_deviation"));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "summary": {
                "records": self.records,
                "failed": self.failed,
                "max_eigenvalue_deviation": self.eigenvalue,
                "max_basis_deviation": self.basis,
                "max_tangent_deviation": self.tangent,
            }
        })
    }
}
