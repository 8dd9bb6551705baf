//! Deterministic rendering. Every number is tagged with its mode; floats are
//! printed with a digit count fixed by the job's precision.

use moment_core::{ComplexScalar, Mode, MomentSequence, Scalar};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Decimal digits carried by a `bits`-bit mantissa.
pub fn digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn mode_tag(mode: Mode) -> String {
    match mode {
        Mode::Exact => "exact".into(),
        Mode::Float(p) => format!("float{p}"),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Renderer {
    pub digits: usize,
}

impl Renderer {
    pub fn new(precision: u32) -> Self {
        Renderer {
            digits: digits_for(precision),
        }
    }

    pub fn text(&self, x: &Scalar) -> String {
        x.render(self.digits)
    }

    pub fn num(&self, x: &Scalar) -> Value {
        json!({ "mode": mode_tag(x.mode()), "value": self.text(x) })
    }

    pub fn nums(&self, xs: &[Scalar]) -> Value {
        Value::Array(xs.iter().map(|x| self.num(x)).collect())
    }

    pub fn complex(&self, z: &ComplexScalar) -> Value {
        json!({ "re": self.num(&z.re), "im": self.num(&z.im) })
    }
}

/// SHA-256 over the kind and the canonical text of every moment.
pub fn digest(seq: &MomentSequence) -> String {
    let mut h = Sha256::new();
    h.update(seq.kind.as_str().as_bytes());
    for g in &seq.gamma {
        h.update(b"\n");
        let digits = match g.mode() {
            Mode::Exact => 1,
            Mode::Float(p) => digits_for(p) + 2,
        };
        h.update(g.render(digits).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Rows for CSV output.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
