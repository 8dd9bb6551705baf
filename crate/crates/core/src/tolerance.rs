//! Mode-aware comparison thresholds.
//!
//! Exact mode compares for equality. Float mode at precision `p` allows a
//! relative slack of `2^-(p - guard)`, where `guard` is the number of bits
//! a computation is allowed to lose.

use crate::complex::ComplexScalar;
use crate::scalar::{Mode, Scalar};

/// Guard bits for algebraic identities (Wronskian, kernel vectors).
pub const IDENTITY_GUARD: u32 = 16;
/// Guard bits for longer pipelines (quadrature moments, product vs sum forms).
pub const PIPELINE_GUARD: u32 = 24;
/// Cauchy-test threshold on relative increments of partial sums.
pub const CAUCHY_REL: f64 = 1e-4;
/// A trend slope must exceed this multiple of the fit residual to count as divergence.
pub const TREND_RATIO: f64 = 10.0;

/// `2^-(p - guard)` for float modes, zero for exact.
pub fn slack(mode: Mode, guard: u32) -> Scalar {
    match mode {
        Mode::Exact => Scalar::zero(),
        Mode::Float(p) => Scalar::pow2_neg(p.saturating_sub(guard)),
    }
}

/// Threshold below which an identity failure aborts with a conditioning
/// diagnostic: `2^-(p/2)`.
pub fn abort_slack(mode: Mode) -> Scalar {
    match mode {
        Mode::Exact => Scalar::zero(),
        Mode::Float(p) => Scalar::pow2_neg(p / 2),
    }
}

/// `|a - b| <= slack * max(scale, 1)`; equality in exact mode.
pub fn close(a: &Scalar, b: &Scalar, scale: &Scalar, guard: u32) -> bool {
    let mode = a.mode().join(b.mode()).join(scale.mode());
    if mode == Mode::Exact {
        return a == b;
    }
    let s = scale.abs().max(Scalar::one());
    (a - b).abs() <= slack(mode, guard) * s
}

pub fn close_complex(a: &ComplexScalar, b: &ComplexScalar, scale: &Scalar, guard: u32) -> bool {
    let mode = a.mode().join(b.mode()).join(scale.mode());
    if mode == Mode::Exact {
        return a == b;
    }
    let s = scale.abs().max(Scalar::one());
    let tol = slack(mode, guard) * s;
    (a - b).norm_sqr() <= tol.square()
}

/// Largest magnitude among a set of values, used as a residual scale.
pub fn magnitude<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    xs.into_iter()
        .fold(Scalar::zero(), |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_requires_equality() {
        assert!(close(&Scalar::ratio(1, 2), &Scalar::ratio(2, 4), &Scalar::one(), 16));
        assert!(!close(&Scalar::ratio(1, 2), &Scalar::ratio(1, 3), &Scalar::one(), 16));
    }

    #[test]
    fn float_slack_scales() {
        let a = Scalar::float(64, 1.0);
        let b = &a + &Scalar::pow2_neg(60);
        assert!(close(&a, &b, &Scalar::one(), 16));
        assert!(!close(&a, &b, &Scalar::one(), 2));
    }
}
