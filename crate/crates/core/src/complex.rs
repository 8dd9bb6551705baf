//! Complex numbers over [`Scalar`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    /// Builds a complex number, promoting so both parts share one mode.
    pub fn new(re: Scalar, im: Scalar) -> Self {
        let mode = re.mode().join(im.mode());
        ComplexScalar {
            re: re.to_mode(mode),
            im: im.to_mode(mode),
        }
    }

    pub fn real(re: Scalar) -> Self {
        let im = Scalar::zero().to_mode(re.mode());
        ComplexScalar { re, im }
    }

    pub fn zero() -> Self {
        Self::real(Scalar::zero())
    }

    pub fn one() -> Self {
        Self::real(Scalar::one())
    }

    pub fn i() -> Self {
        ComplexScalar::new(Scalar::zero(), Scalar::one())
    }

    /// Exact Gaussian rational `(a + b i)`.
    pub fn gauss(a: i64, b: i64) -> Self {
        ComplexScalar::new(Scalar::int(a), Scalar::int(b))
    }

    pub fn mode(&self) -> Mode {
        self.re.mode().join(self.im.mode())
    }

    pub fn to_mode(&self, mode: Mode) -> Self {
        ComplexScalar::new(self.re.to_mode(mode), self.im.to_mode(mode))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2`, exact when the parts are exact.
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self, prec: u32) -> Scalar {
        self.norm_sqr().sqrt(prec)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        ComplexScalar::new(&self.re * s, &self.im * s)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        ComplexScalar::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = ComplexScalar::one().to_mode(self.mode());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn render(&self, digits: usize) -> (String, String) {
        (self.re.render(digits), self.im.render(digits))
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} i)", self.re, self.im)
    }
}

impl From<Scalar> for ComplexScalar {
    fn from(s: Scalar) -> Self {
        ComplexScalar::real(s)
    }
}

impl<'a> Add<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        if rhs.im.is_zero() && rhs.im.is_exact() {
            return self.scale(&rhs.re);
        }
        ComplexScalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a ComplexScalar> for &'a ComplexScalar {
    type Output = ComplexScalar;
    fn div(self, rhs: &ComplexScalar) -> ComplexScalar {
        if rhs.im.is_zero() {
            return ComplexScalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        let d = rhs.norm_sqr();
        ComplexScalar::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<ComplexScalar> for ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: ComplexScalar) -> ComplexScalar {
                &self $op &rhs
            }
        }
        impl<'a> $trait<&'a ComplexScalar> for ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: &'a ComplexScalar) -> ComplexScalar {
                &self $op rhs
            }
        }
        impl<'a> $trait<ComplexScalar> for &'a ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: ComplexScalar) -> ComplexScalar {
                self $op &rhs
            }
        }
    };
}

owned_ops!(Add, add, +);
owned_ops!(Sub, sub, -);
owned_ops!(Mul, mul, *);
owned_ops!(Div, div, /);

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rationals_divide_exactly() {
        let a = ComplexScalar::gauss(1, 2);
        let b = ComplexScalar::gauss(3, -1);
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(q.mode(), Mode::Exact);
    }

    #[test]
    fn modes_are_unified() {
        let z = ComplexScalar::new(Scalar::int(1), Scalar::float(96, 0.5));
        assert_eq!(z.re.mode(), Mode::Float(96));
    }

    #[test]
    fn conj_and_norm() {
        let z = ComplexScalar::gauss(3, 4);
        assert_eq!(z.norm_sqr(), Scalar::int(25));
        assert_eq!((&z * &z.conj()).im, Scalar::zero());
        assert_eq!(z.abs(64), Scalar::int(5));
    }
}
