//! Wire format: one JSON object per line.

use serde::Deserialize;
use serde_json::{json, Value};

use isotensor::{DefGradient, SymTensor2};

#[derive(Debug, Deserialize)]
struct RawRecord {
    id: Option<Value>,
    #[serde(rename = "T")]
    t: Option<Vec<f64>>,
    #[serde(rename = "F")]
    f: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Tensor([f64; 6]),
    Gradient([f64; 9]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub line: usize,
    pub id: Option<String>,
    pub payload: Payload,
}

/// A record that could not be processed, reported in place of its output.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordError {
    pub line: usize,
    pub id: Option<String>,
    pub message: String,
}

impl RecordError {
    pub fn to_json(&self) -> Value {
        match &self.id {
            Some(id) => json!({ "id": id, "line": self.line, "error": self.message }),
            None => json!({ "line": self.line, "error": self.message }),
        }
    }
}

fn id_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn finite_array<const N: usize>(v: Vec<f64>, key: &str) -> Result<[f64; N], String> {
    let arr: [f64; N] = v
        .try_into()
        .map_err(|v: Vec<f64>| format!("{key} must have {N} entries, got {}", v.len()))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(format!("{key} has non-finite entries"));
    }
    Ok(arr)
}

/// Parses one line. `line` is 1-based.
pub fn parse_line(line: usize, text: &str) -> Result<Record, RecordError> {
    let fail = |id: Option<String>, message: String| RecordError { line, id, message };
    let raw: RawRecord =
        serde_json::from_str(text).map_err(|e| fail(None, format!("malformed record: {e}")))?;
    let id = raw.id.as_ref().map(id_string);
    let payload = match (raw.t, raw.f) {
        (Some(t), None) => Payload::Tensor(finite_array(t, "T").map_err(|m| fail(id.clone(), m))?),
        (None, Some(f)) => {
            Payload::Gradient(finite_array(f, "F").map_err(|m| fail(id.clone(), m))?)
        }
        (Some(_), Some(_)) => return Err(fail(id, "record has both T and F".into())),
        (None, None) => return Err(fail(id, "record has neither T nor F".into())),
    };
    Ok(Record { line, id, payload })
}

impl Record {
    pub fn tensor(&self) -> Result<SymTensor2, String> {
        match self.payload {
            Payload::Tensor(c) => Ok(SymTensor2(c)),
            Payload::Gradient(_) => Err("this command takes T (6 components), not F".into()),
        }
    }

    pub fn gradient(&self) -> Result<DefGradient, String> {
        match self.payload {
            Payload::Gradient(c) => DefGradient::from_row_major(c).map_err(|e| e.to_string()),
            Payload::Tensor(_) => Err("this command takes F (9 components), not T".into()),
        }
    }
}
