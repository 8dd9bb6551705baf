//! Dense polynomials with [`Scalar`] coefficients, lowest degree first.

use std::ops::{Add, Mul, Sub};

use crate::complex::ComplexScalar;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Scalar, c1: Scalar) -> Self {
        Poly {
            coeffs: vec![c0, c1],
        }
    }

    /// Degree ignoring exact-zero leading coefficients; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn trimmed(mut self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        self.coeffs.truncate(len);
        self
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexScalar) -> ComplexScalar {
        let mut acc = ComplexScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc.re = &acc.re + c;
        }
        ComplexScalar::new(acc.re, acc.im)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::int(k as i64))
                .collect(),
        )
    }

    /// First `order` Taylor coefficients of `self / den`; needs `den(0) != 0`.
    pub fn series_div(&self, den: &Poly, order: usize) -> Vec<Scalar> {
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "series division by a polynomial vanishing at 0");
        let mut out: Vec<Scalar> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                acc = acc - &den.coeffs[j] * &out[k - j];
            }
            out.push(acc / &d0);
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn product_and_eval() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        let c = &a * &b;
        assert_eq!(c.clone().trimmed(), p(&[-1, 0, 1]));
        assert_eq!(c.eval(&Scalar::int(3)), Scalar::int(8));
    }

    #[test]
    fn geometric_series() {
        let s = Poly::one().series_div(&p(&[1, 1]), 4);
        let expect: Vec<_> = [1, -1, 1, -1].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn complex_eval_matches_real_on_axis() {
        let a = p(&[2, -3, 1]);
        let z = ComplexScalar::gauss(4, 0);
        assert_eq!(a.eval_complex(&z).re, a.eval(&Scalar::int(4)));
        let w = ComplexScalar::gauss(0, 1);
        assert_eq!(a.eval_complex(&w), ComplexScalar::gauss(1, -3));
    }

    #[test]
    fn degree_skips_zero_tail() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[0, 1, 3]).derivative(), p(&[1, 6]));
    }
}
