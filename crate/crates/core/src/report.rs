//! Deterministic JSON reports for the CLI.
//!
//! Keys are emitted sorted (the default map of `serde_json` is ordered)
//! and every float is printed with 17 significant digits, so identical
//! inputs and flags produce byte-identical reports.

use serde_json::ser::Formatter;
use serde_json::{Map, Value};

use crate::matfile::MatrixFile;
use crate::matrix::Matrix;
use crate::tol::Tolerances;

/// A machine-readable report: the command, an echo of the inputs, the
/// command-specific payload, and the tolerances in force.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub tolerances: Value,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value, result: Value, tol: &Tolerances) -> Self {
        Report {
            command,
            inputs,
            result,
            tolerances: tolerances_value(tol),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.into()));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("result".into(), self.result.clone());
        map.insert("tolerances".into(), self.tolerances.clone());
        Value::Object(map)
    }

    /// Serializes with sorted keys and fixed-width float formatting.
    pub fn to_json(&self) -> String {
        let value = self.to_value();
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigitsFormatter);
        serde::Serialize::serialize(&value, &mut ser).expect("report serialization");
        String::from_utf8(out).expect("report is utf-8")
    }
}

/// Writes floats as `{:.16e}`: 17 significant decimal digits, enough to
/// round-trip any f64.
struct SignificantDigitsFormatter;

impl Formatter for SignificantDigitsFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn tolerances_value(tol: &Tolerances) -> Value {
    let mut map = Map::new();
    map.insert("cluster".into(), Value::from(tol.cluster));
    map.insert("orth".into(), Value::from(tol.orth));
    map.insert("rank".into(), tol.rank.map_or(Value::Null, Value::from));
    Value::Object(map)
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&v| Value::from(v)).collect()))
            .collect(),
    )
}

pub fn vector_value(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| Value::from(x)).collect())
}

/// Echo block for one matrix input: path, shape, content digest.
pub fn input_echo(file: &MatrixFile) -> Value {
    let mut map = Map::new();
    map.insert("path".into(), Value::String(file.path.clone()));
    map.insert("rows".into(), Value::from(file.parsed.rows() as u64));
    map.insert("cols".into(), Value::from(file.parsed.cols() as u64));
    map.insert(
        "digest".into(),
        Value::String(format!("sha256:{}", file.digest)),
    );
    Value::Object(map)
}
