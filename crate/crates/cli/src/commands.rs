//! Commands, looked up by name. Each command checks its parameters into a
//! [`Plan`] before any input is read.

use moment_core::determinacy::{classify, TrendFit};
use moment_core::hankel::{existence_check, hankel_dets};
use moment_core::jacobi::{eigensystem, section, Variant};
use moment_core::moments::{even_embed, index_shift, shift_moments};
use moment_core::nevanlinna::{abcd, weyl_disk};
use moment_core::orthopoly::recursion_coeffs;
use moment_core::pade::{pade_table, MAX_SHAPE};
use moment_core::{ComplexScalar, Mode, MomentSequence, Scalar};
use serde_json::{json, Value};

use crate::report::{digest, digits_for, mode_tag, Renderer, Table};
use crate::{Failure, Params};

pub struct Output {
    pub result: Value,
    pub table: Option<Table>,
}

impl Output {
    fn doc(result: Value) -> Self {
        Output { result, table: None }
    }
}

pub trait Plan {
    fn execute(&self, seq: &MomentSequence, prec: u32, r: &Renderer) -> Result<Output, Failure>;
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    /// Command-specific flags this command accepts.
    fn params(&self) -> &'static [&'static str];
    /// Whether the command can emit CSV.
    fn tabular(&self) -> bool {
        false
    }
    fn plan(&self, params: &Params, prec: u32) -> Result<Box<dyn Plan>, String>;
}

pub struct CommandRegistry {
    commands: Vec<Box<dyn Command>>,
}

impl CommandRegistry {
    pub fn empty() -> Self {
        CommandRegistry { commands: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Analyze));
        r.register(Box::new(Jacobi));
        r.register(Box::new(Quadrature));
        r.register(Box::new(Pade));
        r.register(Box::new(Nevanlinna));
        r.register(Box::new(Transform));
        r.register(Box::new(Classify));
        r
    }

    /// Adds a command; a later registration under the same name wins.
    pub fn register(&mut self, c: Box<dyn Command>) {
        self.commands.retain(|x| x.name() != c.name());
        self.commands.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.iter().map(|c| c.name()).collect()
    }
}

fn usize_param(params: &Params, key: &str, min: usize) -> Result<Option<usize>, String> {
    let Some(text) = params.get(key) else {
        return Ok(None);
    };
    let v: usize = text
        .trim()
        .parse()
        .map_err(|_| format!("--{key} expects a nonnegative integer, got `{text}`"))?;
    if v < min {
        return Err(format!("--{key} must be at least {min}"));
    }
    Ok(Some(v))
}

fn scalar_param(params: &Params, key: &str, prec: u32) -> Result<Option<Scalar>, String> {
    params
        .get(key)
        .map(|t| {
            Scalar::parse(t, prec).ok_or_else(|| format!("--{key} expects an integer, p/q or decimal, got `{t}`"))
        })
        .transpose()
}

fn variant_param(params: &Params) -> Result<Option<Variant>, String> {
    params
        .get("variant")
        .map(|t| Variant::parse(t.trim()).ok_or_else(|| format!("--variant expects F or K, got `{t}`")))
        .transpose()
}

/// Largest depth whose coefficients fit in `gamma_0..gamma_K`.
fn max_depth(seq: &MomentSequence) -> usize {
    seq.k().div_ceil(2)
}

fn depth_or_max(depth: Option<usize>, seq: &MomentSequence) -> Result<usize, Failure> {
    match depth {
        Some(n) => Ok(n),
        None if max_depth(seq) >= 1 => Ok(max_depth(seq)),
        None => Err(Failure::Validation("moment prefix too short for any depth".into())),
    }
}

fn opt_num(r: &Renderer, x: &Option<Scalar>) -> Value {
    x.as_ref().map_or(Value::Null, |x| r.num(x))
}

fn float_num(x: f64) -> Value {
    json!({ "mode": "f64", "value": format!("{x:e}") })
}

struct Analyze;

struct AnalyzePlan {
    depth: Option<usize>,
}

impl Command for Analyze {
    fn name(&self) -> &'static str {
        "analyze"
    }
    fn params(&self) -> &'static [&'static str] {
        &["depth"]
    }
    fn plan(&self, params: &Params, _prec: u32) -> Result<Box<dyn Plan>, String> {
        Ok(Box::new(AnalyzePlan {
            depth: usize_param(params, "depth", 1)?,
        }))
    }
}

impl Plan for AnalyzePlan {
    fn execute(&self, seq: &MomentSequence, _prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let rep = match self.depth {
            Some(n) => hankel_dets(seq, n)?,
            None => existence_check(seq),
        };
        Ok(Output::doc(json!({
            "depth": rep.h.len() - 1,
            "h": r.nums(&rep.h),
            "s": r.nums(&rep.s),
            "first_h_failure": rep.first_h_failure,
            "first_s_failure": rep.first_s_failure,
            "low_confidence": rep.low_confidence,
            "verdict": rep.verdict.as_str(),
        })))
    }
}

struct Jacobi;

struct JacobiPlan {
    depth: Option<usize>,
    variant: Option<Variant>,
}

impl Command for Jacobi {
    fn name(&self) -> &'static str {
        "jacobi"
    }
    fn params(&self) -> &'static [&'static str] {
        &["depth", "variant"]
    }
    fn plan(&self, params: &Params, _prec: u32) -> Result<Box<dyn Plan>, String> {
        Ok(Box::new(JacobiPlan {
            depth: usize_param(params, "depth", 1)?,
            variant: variant_param(params)?,
        }))
    }
}

impl Plan for JacobiPlan {
    fn execute(&self, seq: &MomentSequence, _prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let n = depth_or_max(self.depth, seq)?;
        let coeffs = recursion_coeffs(seq, n)?;
        let mut result = json!({
            "depth": n,
            "b": r.nums(&coeffs.b),
            "a2": r.nums(&coeffs.a2),
        });
        if let Some(v) = self.variant {
            let sec = section(&coeffs, n, v)?;
            result["section"] = json!({
                "variant": v.to_string(),
                "size": sec.n,
                "diag": r.nums(&sec.diag),
                "offdiag2": r.nums(sec.offdiag2()),
                "alpha": opt_num(r, &sec.alpha),
            });
        }
        Ok(Output::doc(result))
    }
}

struct Quadrature;

impl Command for Quadrature {
    fn name(&self) -> &'static str {
        "quadrature"
    }
    fn params(&self) -> &'static [&'static str] {
        &["depth", "variant"]
    }
    fn tabular(&self) -> bool {
        true
    }
    fn plan(&self, params: &Params, _prec: u32) -> Result<Box<dyn Plan>, String> {
        Ok(Box::new(QuadraturePlan {
            depth: usize_param(params, "depth", 1)?,
            variant: variant_param(params)?.unwrap_or(Variant::F),
        }))
    }
}

struct QuadraturePlan {
    depth: Option<usize>,
    variant: Variant,
}

impl Plan for QuadraturePlan {
    fn execute(&self, seq: &MomentSequence, prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let variant = self.variant;
        let n = depth_or_max(self.depth, seq)?;
        let coeffs = recursion_coeffs(seq, n)?;
        let q = eigensystem(&section(&coeffs, n, variant)?, prec)?;
        // F reproduces gamma_0..gamma_{2N-1}, K only through gamma_{2N-2}.
        let through = match variant {
            Variant::F => 2 * n - 1,
            Variant::K => 2 * n - 2,
        }
        .min(seq.k());
        let mut worst = Scalar::zero().to_mode(Mode::Float(prec));
        for k in 0..=through {
            let diff = (q.moment(k as u32) - &seq.gamma[k]).abs();
            let scale = seq.gamma[k].abs();
            let e = if scale.is_zero() { diff } else { diff / scale };
            worst = worst.max(e);
        }
        let total: Scalar = q.weights.iter().cloned().sum();
        let rows = q
            .nodes
            .iter()
            .zip(&q.weights)
            .enumerate()
            .map(|(i, (x, w))| vec![(i + 1).to_string(), r.text(x), r.text(w), mode_tag(x.mode())])
            .collect();
        Ok(Output {
            result: json!({
                "variant": variant.to_string(),
                "size": n,
                "nodes": r.nums(&q.nodes),
                "weights": r.nums(&q.weights),
                "weight_sum": r.num(&total),
                "weight_discrepancy": r.num(&q.weight_discrepancy),
                "reproduced_through": through,
                "max_moment_error": r.num(&worst),
            }),
            table: Some(Table {
                headers: vec!["index", "node", "weight", "mode"],
                rows,
            }),
        })
    }
}

struct Pade;

struct PadePlan {
    x: Scalar,
    n_max: Option<usize>,
    shapes: Vec<i64>,
}

impl Command for Pade {
    fn name(&self) -> &'static str {
        "pade"
    }
    fn params(&self) -> &'static [&'static str] {
        &["x", "nmax", "shapes"]
    }
    fn tabular(&self) -> bool {
        true
    }
    fn plan(&self, params: &Params, prec: u32) -> Result<Box<dyn Plan>, String> {
        let x = scalar_param(params, "x", prec)?.unwrap_or_else(Scalar::one);
        if x.is_negative() {
            return Err("--x must be nonnegative".into());
        }
        let shapes = match params.get("shapes") {
            None => vec![0, 1],
            Some(text) => text
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("--shapes expects comma-separated integers, got `{text}`"))
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        if let Some(l) = shapes.iter().find(|l| l.abs() > MAX_SHAPE) {
            return Err(format!("shape {l} outside the supported range -{MAX_SHAPE}..={MAX_SHAPE}"));
        }
        Ok(Box::new(PadePlan {
            x,
            n_max: usize_param(params, "nmax", 1)?,
            shapes,
        }))
    }
}

impl Plan for PadePlan {
    fn execute(&self, seq: &MomentSequence, _prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let n_max = self.n_max.unwrap_or(seq.k());
        let table = pade_table(seq, &self.x, n_max, &self.shapes)?;
        let mut csv_rows = Vec::new();
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|row| {
                let values: Vec<Value> = row
                    .values
                    .iter()
                    .map(|(big_n, v)| {
                        let n = (*big_n as i64 + row.ell - 1) as usize;
                        csv_rows.push(vec![
                            row.ell.to_string(),
                            big_n.to_string(),
                            n.to_string(),
                            big_n.to_string(),
                            v.as_ref().map_or_else(String::new, |v| r.text(v)),
                            v.as_ref().map_or_else(|| "none".to_string(), |v| mode_tag(v.mode())),
                        ]);
                        json!({ "N": big_n, "n": n, "m": big_n, "value": opt_num(r, v) })
                    })
                    .collect();
                json!({ "ell": row.ell, "monotone": row.monotone, "values": values })
            })
            .collect();
        let bracket = table.bracket.as_ref().map_or(Value::Null, |(n, lo, hi)| {
            json!({
                "N": n,
                "lower": r.num(lo),
                "upper": r.num(hi),
                "width": r.num(&(hi - lo)),
            })
        });
        Ok(Output {
            result: json!({
                "x": r.num(&table.x),
                "rows": rows,
                "bracket": bracket,
                "warnings": table.warnings,
            }),
            table: Some(Table {
                headers: vec!["ell", "N", "n", "m", "value", "mode"],
                rows: csv_rows,
            }),
        })
    }
}

struct Nevanlinna;

struct NevanlinnaPlan {
    depth: Option<usize>,
    z: ComplexScalar,
}

fn complex_param(params: &Params, key: &str, prec: u32) -> Result<Option<ComplexScalar>, String> {
    let Some(text) = params.get(key) else {
        return Ok(None);
    };
    let bad = || format!("--{key} expects RE,IM, got `{text}`");
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re = Scalar::parse(re, prec).ok_or_else(bad)?;
    let im = Scalar::parse(im, prec).ok_or_else(bad)?;
    Ok(Some(ComplexScalar::new(re, im)))
}

impl Command for Nevanlinna {
    fn name(&self) -> &'static str {
        "nevanlinna"
    }
    fn params(&self) -> &'static [&'static str] {
        &["depth", "z"]
    }
    fn plan(&self, params: &Params, prec: u32) -> Result<Box<dyn Plan>, String> {
        let z = complex_param(params, "z", prec)?.unwrap_or_else(ComplexScalar::i);
        if !z.im.is_positive() {
            return Err("--z must lie in the open upper half plane".into());
        }
        Ok(Box::new(NevanlinnaPlan {
            depth: usize_param(params, "depth", 1)?,
            z,
        }))
    }
}

impl Plan for NevanlinnaPlan {
    fn execute(&self, seq: &MomentSequence, prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let n = match self.depth {
            Some(n) => n,
            None => depth_or_max(None, seq)?.saturating_sub(1).max(1),
        };
        let coeffs = recursion_coeffs(seq, n + 1)?;
        let m = abcd(&coeffs, &self.z, n)?;
        let residual = (&m.det() - &ComplexScalar::one()).abs(prec);
        let disk = weyl_disk(&coeffs, &self.z, n, prec)?;
        Ok(Output::doc(json!({
            "z": r.complex(&self.z),
            "depth": n,
            "A": r.complex(&m.a),
            "B": r.complex(&m.b),
            "C": r.complex(&m.c),
            "D": r.complex(&m.d),
            "det_residual": r.num(&residual),
            "weyl_disk": {
                "depth": disk.depth,
                "center": r.complex(&disk.center),
                "radius": r.num(&disk.radius),
            },
        })))
    }
}

struct Transform;

enum TransformOp {
    Shift(Scalar),
    IndexShift(usize),
    Even,
}

impl Command for Transform {
    fn name(&self) -> &'static str {
        "transform"
    }
    fn params(&self) -> &'static [&'static str] {
        &["op", "c", "ell"]
    }
    fn plan(&self, params: &Params, prec: u32) -> Result<Box<dyn Plan>, String> {
        let c = scalar_param(params, "c", prec)?;
        let ell = usize_param(params, "ell", 1)?;
        let op = params.get("op").map(String::as_str);
        let op = match (op, c, ell) {
            (Some("shift"), Some(c), None) => TransformOp::Shift(c),
            (Some("index-shift"), None, Some(l)) => TransformOp::IndexShift(l),
            (Some("even"), None, None) => TransformOp::Even,
            (Some("shift"), ..) => return Err("--op shift takes --c and nothing else".into()),
            (Some("index-shift"), ..) => return Err("--op index-shift takes --ell and nothing else".into()),
            (Some("even"), ..) => return Err("--op even takes no further parameters".into()),
            (Some(other), ..) => return Err(format!("unknown --op `{other}`; expected shift, index-shift or even")),
            (None, ..) => return Err("transform needs --op".into()),
        };
        Ok(Box::new(op))
    }
}

impl Plan for TransformOp {
    fn execute(&self, seq: &MomentSequence, _prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let (name, out) = match self {
            TransformOp::Shift(c) => ("shift", shift_moments(seq, c)),
            TransformOp::IndexShift(l) => ("index-shift", index_shift(seq, *l)?),
            TransformOp::Even => ("even", even_embed(seq)?),
        };
        // Full-width decimals so the emitted file reads back to the same values.
        let file_moments: Vec<String> = out
            .gamma
            .iter()
            .map(|g| match g.mode() {
                Mode::Exact => g.render(1),
                Mode::Float(p) => g.render(digits_for(p) + 2),
            })
            .collect();
        Ok(Output::doc(json!({
            "op": name,
            "kind": out.kind.as_str(),
            "max_index": out.k(),
            "mode": mode_tag(out.mode()),
            "moments": r.nums(&out.gamma),
            "digest": digest(&out),
            "moment_file": {
                "kind": out.kind.as_str(),
                "label": out.label,
                "moments": file_moments,
            },
        })))
    }
}

struct Classify;

struct ClassifyPlan {
    depth: Option<usize>,
}

impl Command for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }
    fn params(&self) -> &'static [&'static str] {
        &["depth"]
    }
    fn plan(&self, params: &Params, _prec: u32) -> Result<Box<dyn Plan>, String> {
        Ok(Box::new(ClassifyPlan {
            depth: usize_param(params, "depth", 2)?,
        }))
    }
}

fn trend_json(t: &TrendFit) -> Value {
    json!({
        "growth": format!("{:?}", t.growth).to_lowercase(),
        "c1": float_num(t.c1),
        "c2": float_num(t.c2),
        "rms": float_num(t.rms),
        "divergent": t.divergent,
    })
}

impl Plan for ClassifyPlan {
    fn execute(&self, seq: &MomentSequence, prec: u32, r: &Renderer) -> Result<Output, Failure> {
        let n = self.depth.unwrap_or(seq.k() / 2);
        if n < 2 {
            return Err(Failure::Validation("classify needs depth >= 2, so gamma_0..gamma_4 at least".into()));
        }
        let rep = classify(seq, n, prec)?;
        let ev = &rep.evidence;
        Ok(Output::doc(json!({
            "verdict": rep.verdict.as_str(),
            "trail": rep.trail,
            "depth": rep.depth,
            "note": "numerical evidence at finite depth, not a proof",
            "evidence": {
                "carleman_hamburger": r.nums(&ev.carleman.hamburger),
                "carleman_hamburger_trend": trend_json(&ev.carleman.hamburger_trend),
                "carleman_stieltjes": ev.carleman.stieltjes.as_ref().map(|s| r.nums(s)),
                "carleman_stieltjes_trend": ev.carleman.stieltjes_trend.as_ref().map(trend_json),
                "l_partials": ev.l_partials.as_ref().map(|s| r.nums(s)),
                "m_partials": r.nums(&ev.m_partials),
                "q_partials": r.nums(&ev.q_partials),
            },
        })))
    }
}
