//! Real scalars that are either exact rationals or MPFR floats.
//!
//! Mixed arithmetic promotes the exact operand to the float operand's
//! precision. Float-float results take the larger of the two precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Arithmetic mode of a computation context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    /// Binary float with the given precision in bits.
    Float(u32),
}

impl Mode {
    /// Combine two modes: float wins, larger precision wins.
    pub fn join(self, other: Mode) -> Mode {
        match (self, other) {
            (Mode::Exact, m) | (m, Mode::Exact) => m,
            (Mode::Float(a), Mode::Float(b)) => Mode::Float(a.max(b)),
        }
    }

    pub fn precision(self) -> Option<u32> {
        match self {
            Mode::Exact => None,
            Mode::Float(p) => Some(p),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float(p) => write!(f, "float{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rational),
    Float(Float),
}

use Scalar::{Exact, Float as Flt};

impl Scalar {
    pub fn zero() -> Self {
        Exact(Rational::new())
    }

    pub fn one() -> Self {
        Exact(Rational::from(1))
    }

    pub fn int(n: i64) -> Self {
        Exact(Rational::from(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Exact(Rational::from((num, den)))
    }

    pub fn from_integer(n: Integer) -> Self {
        Exact(Rational::from(n))
    }

    pub fn float(prec: u32, v: f64) -> Self {
        Flt(Float::with_val(prec, v))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Exact(_) => Mode::Exact,
            Flt(x) => Mode::Float(x.prec()),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exact(q) => q.cmp0() == Ordering::Equal,
            Flt(x) => x.is_zero(),
        }
    }

    /// Sign as an ordering against zero. NaN compares as `Equal`.
    pub fn sign(&self) -> Ordering {
        match self {
            Exact(q) => q.cmp0(),
            Flt(x) => x.cmp0().unwrap_or(Ordering::Equal),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Exact(_) => true,
            Flt(x) => x.is_finite(),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Exact(q) => Exact(Rational::from(q.abs_ref())),
            Flt(x) => Flt(Float::with_val(x.prec(), x.abs_ref())),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn recip(&self) -> Scalar {
        &Scalar::one() / self
    }

    pub fn powi(&self, n: u32) -> Scalar {
        match self {
            Exact(q) => Exact(Rational::from(q.pow(n))),
            Flt(x) => Flt(Float::with_val(x.prec(), x.pow(n))),
        }
    }

    /// Convert to the requested mode. Exact to float rounds; float to exact
    /// is refused and returns the value unchanged.
    pub fn to_mode(&self, mode: Mode) -> Scalar {
        match (self, mode) {
            (Exact(q), Mode::Float(p)) => Flt(Float::with_val(p, q)),
            (Flt(x), Mode::Float(p)) if x.prec() < p => Flt(Float::with_val(p, x)),
            _ => self.clone(),
        }
    }

    /// Float rounded to exactly `prec` bits.
    pub fn round_to(&self, prec: u32) -> Scalar {
        match self {
            Exact(q) => Flt(Float::with_val(prec, q)),
            Flt(x) => Flt(Float::with_val(prec, x)),
        }
    }

    /// Float value at `prec` bits (at least the value's own precision).
    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Exact(q) => Float::with_val(prec, q),
            Flt(x) => Float::with_val(prec.max(x.prec()), x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exact(q) => q.to_f64(),
            Flt(x) => x.to_f64(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Exact(q) => Some(q),
            Flt(_) => None,
        }
    }

    /// Square root. Exact inputs that are perfect squares stay exact;
    /// everything else is evaluated at `prec` (or the input's precision).
    pub fn sqrt(&self, prec: u32) -> Scalar {
        match self {
            Exact(q) => {
                if q.cmp0() != Ordering::Less {
                    let (n, d) = (q.numer(), q.denom());
                    if n.is_perfect_square() && d.is_perfect_square() {
                        let n = Integer::from(n.sqrt_ref());
                        let d = Integer::from(d.sqrt_ref());
                        return Exact(Rational::from((n, d)));
                    }
                }
                Flt(Float::with_val(prec, q).sqrt())
            }
            Flt(x) => Flt(Float::with_val(x.prec(), x.sqrt_ref())),
        }
    }

    pub fn exp(&self, prec: u32) -> Scalar {
        if self.is_zero() && self.is_exact() {
            return Scalar::one();
        }
        let x = self.to_float(prec);
        Flt(x.exp())
    }

    pub fn ln(&self, prec: u32) -> Scalar {
        if let Exact(q) = self {
            if *q == 1 {
                return Scalar::zero();
            }
        }
        let x = self.to_float(prec);
        Flt(x.ln())
    }

    /// `self^e` for a real exponent, always evaluated in float.
    pub fn powf(&self, e: &Scalar, prec: u32) -> Scalar {
        let x = self.to_float(prec);
        let p = x.prec();
        Flt(x.pow(e.to_float(p)))
    }

    /// `2^-bits` as an exact dyadic rational.
    pub fn pow2_neg(bits: u32) -> Scalar {
        Exact(Rational::from((Integer::from(1), Integer::from(1) << bits)))
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Parse an integer, a `p/q` rational, or a decimal literal. Decimals
    /// become floats at `prec` bits.
    pub fn parse(text: &str, prec: u32) -> Option<Scalar> {
        let t = text.trim();
        if t.is_empty() {
            return None;
        }
        let looks_rational = t
            .chars()
            .all(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/');
        if looks_rational {
            let cleaned = t.strip_prefix('+').unwrap_or(t);
            return Rational::from_str_radix(cleaned, 10)
                .ok()
                .filter(|_| !cleaned.ends_with('/'))
                .map(Exact);
        }
        let parsed = Float::parse(t).ok()?;
        let x = Float::with_val(prec, parsed);
        x.is_finite().then_some(Flt(x))
    }

    /// Deterministic text form. Exact values print as `p` or `p/q`; floats
    /// print in scientific notation with `digits` significant digits.
    pub fn render(&self, digits: usize) -> String {
        match self {
            Exact(q) => {
                if *q.denom() == 1 {
                    q.numer().to_string()
                } else {
                    q.to_string()
                }
            }
            Flt(x) => render_float(x, digits),
        }
    }
}

fn render_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0.0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let (neg, mant, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let exp = exp.unwrap_or(0) - 1;
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    let (head, tail) = mant.split_at(1);
    s.push_str(head);
    s.push('.');
    if tail.is_empty() {
        s.push('0');
    } else {
        s.push_str(tail);
    }
    s.push('e');
    s.push_str(&exp.to_string());
    s
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact(_) => f.write_str(&self.render(0)),
            Flt(x) => {
                let digits = (f64::from(x.prec()) * std::f64::consts::LOG10_2) as usize;
                f.write_str(&render_float(x, digits.min(40)))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Exact(a), Exact(b)) => a == b,
            (Flt(a), Flt(b)) => a == b,
            (Flt(a), Exact(b)) | (Exact(b), Flt(a)) => *a == *b,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Exact(a), Exact(b)) => a.partial_cmp(b),
            (Flt(a), Flt(b)) => a.partial_cmp(b),
            (Flt(a), Exact(b)) => a.partial_cmp(b),
            (Exact(a), Flt(b)) => b.partial_cmp(a).map(Ordering::reverse),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Exact(q)
    }
}

impl From<Float> for Scalar {
    fn from(x: Float) -> Self {
        Flt(x)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                match (self, rhs) {
                    (Exact(a), Exact(b)) => Exact(Rational::from(a $op b)),
                    (Flt(a), Flt(b)) => {
                        let p = a.prec().max(b.prec());
                        Flt(Float::with_val(p, a $op b))
                    }
                    (Flt(a), Exact(b)) => Flt(Float::with_val(a.prec(), a $op b)),
                    (Exact(a), Flt(b)) => {
                        let a = Float::with_val(b.prec(), a);
                        Flt(Float::with_val(b.prec(), &a $op b))
                    }
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Exact(a) => Exact(Rational::from(-a)),
            Flt(a) => Flt(Float::with_val(a.prec(), -a)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Joint mode of a collection of scalars.
pub fn joint_mode<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Mode {
    xs.into_iter().fold(Mode::Exact, |m, x| m.join(x.mode()))
}
