//! Moment files: `{"kind": ..., "moments": ["1", "1/2", "0.25"], "label": ...}`.

use std::fmt;
use std::path::Path;

use moment_core::moments::normalize;
use moment_core::{Kind, MomentSequence, Scalar};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentFile {
    kind: Option<String>,
    moments: Vec<String>,
    label: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemaError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: ")?,
            (Some(l), None) => write!(f, "line {l}: ")?,
            _ => {}
        }
        if let Some(field) = &self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

fn field_error(text: &str, field: &str, line: Option<usize>, message: String) -> SchemaError {
    let line = line.or_else(|| key_offset(text, field).map(|at| line_of(text, at)));
    SchemaError {
        line,
        column: None,
        field: Some(field.to_string()),
        message,
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].matches('\n').count() + 1
}

fn key_offset(text: &str, key: &str) -> Option<usize> {
    text.find(&format!("\"{key}\""))
}

/// Byte offset of the `index`-th string literal in the `moments` array.
fn element_offset(text: &str, index: usize) -> Option<usize> {
    let start = key_offset(text, "moments")? + "\"moments\"".len();
    let open = start + text[start..].find('[')?;
    let mut seen = 0;
    let mut in_string = false;
    let mut escaped = false;
    let mut depth = 0;
    for (i, ch) in text[open..].char_indices() {
        let at = open + i;
        if in_string {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            '"' if depth == 1 => {
                if seen == index {
                    return Some(at);
                }
                seen += 1;
                in_string = true;
            }
            '"' => in_string = true,
            _ => {}
        }
    }
    None
}

/// Parse moment file text. Integers and `p/q` stay exact; decimals become
/// floats at `prec` bits. The result is normalized to `gamma_0 = 1`.
pub fn parse_moments(text: &str, prec: u32, default_label: &str) -> Result<MomentSequence, SchemaError> {
    let file: MomentFile = serde_json::from_str(text).map_err(|e| SchemaError {
        line: Some(e.line()),
        column: Some(e.column()),
        field: None,
        message: e.to_string(),
    })?;
    let kind = match file.kind.as_deref() {
        None => Kind::Unknown,
        Some(k) => Kind::parse(k).ok_or_else(|| {
            field_error(
                text,
                "kind",
                None,
                format!("expected hamburger, stieltjes or unknown, found `{k}`"),
            )
        })?,
    };
    if file.moments.is_empty() {
        return Err(field_error(text, "moments", None, "at least one moment is required".into()));
    }
    let mut raw = Vec::with_capacity(file.moments.len());
    for (i, s) in file.moments.iter().enumerate() {
        let v = Scalar::parse(s, prec).ok_or_else(|| {
            field_error(
                text,
                &format!("moments[{i}]"),
                element_offset(text, i).map(|at| line_of(text, at)),
                format!("`{s}` is not an integer, p/q rational or decimal"),
            )
        })?;
        raw.push(v);
    }
    let mut seq = normalize(&raw, kind).map_err(|e| field_error(text, "moments", None, e.to_string()))?;
    seq.label = file.label.unwrap_or_else(|| default_label.to_string());
    Ok(seq)
}

pub fn read_moments(path: &Path, prec: u32) -> Result<MomentSequence, SchemaError> {
    let text = std::fs::read_to_string(path).map_err(|e| SchemaError {
        line: None,
        column: None,
        field: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    parse_moments(&text, prec, stem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use moment_core::Mode;

    #[test]
    fn exact_and_float_inputs() {
        let s = parse_moments(r#"{"kind":"stieltjes","moments":["1","1","2","6"]}"#, 128, "x").unwrap();
        assert_eq!(s.kind, Kind::Stieltjes);
        assert_eq!(s.mode(), Mode::Exact);
        assert_eq!(s.gamma[3], Scalar::int(6));
        assert_eq!(s.label, "x");

        let h = parse_moments(r#"{"kind":"hamburger","moments":["2","0","2","0","6"],"label":"h"}"#, 128, "x").unwrap();
        assert_eq!(h.gamma[4], Scalar::int(3));
        assert_eq!(h.label, "h");

        let f = parse_moments(r#"{"moments":["1.0","2.718281828"]}"#, 200, "x").unwrap();
        assert_eq!(f.kind, Kind::Unknown);
        assert_eq!(f.mode(), Mode::Float(200));
    }

    #[test]
    fn diagnostics_point_at_the_field() {
        let text = "{\n  \"kind\": \"stieltjes\",\n  \"moments\": [\n    \"1\",\n    \"x/2\"\n  ]\n}";
        let e = parse_moments(text, 64, "x").unwrap_err();
        assert_eq!(e.field.as_deref(), Some("moments[1]"));
        assert_eq!(e.line, Some(5));

        let e = parse_moments("{\"kind\": \"weird\", \"moments\": [\"1\"]}", 64, "x").unwrap_err();
        assert_eq!(e.field.as_deref(), Some("kind"));

        let e = parse_moments("{\"moments\": [1, 2]}", 64, "x").unwrap_err();
        assert_eq!(e.line, Some(1));
        assert!(e.message.contains("string"), "{}", e.message);

        let e = parse_moments("{\"moments\": [\"0\", \"1\"]}", 64, "x").unwrap_err();
        assert_eq!(e.field.as_deref(), Some("moments"));

        assert!(parse_moments("{\"moments\": [\"1\"], \"extra\": 1}", 64, "x").is_err());
    }
}
