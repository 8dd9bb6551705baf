//! Padé approximants `f^[n,m]` to `sum_j (-1)^j gamma_j z^j` near the
//! staircase, built from Jacobi sections of the moment problem and of its
//! index-shifted and stripped relatives.

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::jacobi;
use crate::linalg;
use crate::moments::{index_shift, Kind, MomentSequence};
use crate::orthopoly::{self, recursion_coeffs};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::tolerance;

/// Largest `|l|` accepted for the shape `l = n - m + 1`.
pub const MAX_SHAPE: i64 = 3;

/// Numerator and denominator of `f^[n,m]`, with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    pub n: usize,
    pub m: usize,
    pub num: Poly,
    pub den: Poly,
}

impl Approximant {
    pub fn eval(&self, z: &ComplexScalar) -> Result<ComplexScalar> {
        let d = self.den.eval_complex(z);
        if d.is_zero() {
            return Err(Error::PoleHit);
        }
        Ok(&self.num.eval_complex(z) / &d)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PadeValue {
    pub n: usize,
    pub m: usize,
    pub z: ComplexScalar,
    pub value: ComplexScalar,
}

/// Series coefficient `kappa_j = (-1)^j gamma_j`.
pub fn kappa(seq: &MomentSequence, j: usize) -> Result<Scalar> {
    let g = seq.get(j)?.clone();
    Ok(if j % 2 == 0 { g } else { -g })
}

/// `z^deg p(-1/z)` for `deg(p) <= deg`.
fn reverse(p: &Poly, deg: usize) -> Poly {
    let mut out = vec![Scalar::zero(); deg + 1];
    for (k, c) in p.coeffs.iter().enumerate().take(deg + 1) {
        out[deg - k] = if k % 2 == 0 { c.clone() } else { -c };
    }
    debug_assert!(p.coeffs.iter().skip(deg + 1).all(Scalar::is_zero));
    Poly::new(out)
}

fn normalized(n: usize, m: usize, num: Poly, den: Poly) -> Result<Approximant> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::NotExists { n, m });
    }
    let inv = d0.recip();
    Ok(Approximant {
        n,
        m,
        num: num.scale(&inv),
        den: den.scale(&inv),
    })
}

/// `f^[N-1,N]` from the F-section: `(delta_0, (1 + z A_F)^-1 delta_0)`.
fn friedrichs(seq: &MomentSequence, size: usize) -> Result<Approximant> {
    let coeffs = recursion_coeffs(seq, size)?;
    let p = orthopoly::monic_polys(&coeffs, size)?;
    let q = orthopoly::monic_second_kind_polys(&coeffs, size)?;
    let den = reverse(&p[size], size);
    let num = reverse(&q[size], size - 1).scale(&Scalar::int(-1));
    normalized(size - 1, size, num, den)
}

/// `f^[N-1,N-1]` from the K-section of size `N`. The corner absorbs
/// `b_{N-1}`, so only `gamma_0..gamma_{2N-2}` are needed.
fn krein(seq: &MomentSequence, size: usize) -> Result<Approximant> {
    if size == 1 {
        return Ok(Approximant {
            n: 0,
            m: 0,
            num: Poly::one(),
            den: Poly::one(),
        });
    }
    let coeffs = recursion_coeffs(seq, size - 1)?;
    if coeffs.a2.len() < size - 1 {
        return Err(Error::TooShort {
            needed: 2 * size - 2,
            have: seq.k(),
        });
    }
    let p = orthopoly::monic_polys(&coeffs, size - 1)?;
    let q = orthopoly::monic_second_kind_polys(&coeffs, size - 1)?;
    let top = p[size - 1].coeff(0);
    if top.is_zero() {
        return Err(Error::NotExists {
            n: size - 1,
            m: size - 1,
        });
    }
    let d = p[size - 2].coeff(0) / top;
    let a2 = &coeffs.a2[size - 2];
    let x = Poly::linear(Scalar::zero(), Scalar::one());
    let m_hat = &(&x * &p[size - 1]) - &(&p[size - 2] - &p[size - 1].scale(&d)).scale(a2);
    let n_hat = &(&x * &q[size - 1]) - &(&q[size - 2] - &q[size - 1].scale(&d)).scale(a2);
    let den = reverse(&m_hat, size);
    let num = reverse(&n_hat, size - 1).scale(&Scalar::int(-1));
    normalized(size - 1, size - 1, num, den)
}

fn taylor(seq: &MomentSequence, n: usize) -> Result<Approximant> {
    let coeffs = (0..=n).map(|j| kappa(seq, j)).collect::<Result<Vec<_>>>()?;
    Ok(Approximant {
        n,
        m: 0,
        num: Poly::new(coeffs),
        den: Poly::one(),
    })
}

/// `sum_{j<k} kappa_j z^j + kappa_k z^k g` as one rational function.
fn prefix_plus(seq: &MomentSequence, k: usize, g: &Approximant, n: usize, m: usize) -> Result<Approximant> {
    let head = Poly::new((0..k).map(|j| kappa(seq, j)).collect::<Result<Vec<_>>>()?);
    let tail = g.num.scale(&kappa(seq, k)?).shift(k);
    let num = &(&head * &g.den) + &tail;
    Ok(Approximant {
        n,
        m,
        num,
        den: g.den.clone(),
    })
}

fn approximant_normalized(seq: &MomentSequence, n: usize, m: usize) -> Result<Approximant> {
    let ell = n as i64 - m as i64 + 1;
    if ell.abs() > MAX_SHAPE {
        return Err(Error::UnsupportedShape { n, m });
    }
    seq.require(n + m)?;
    if m == 0 {
        return taylor(seq, n);
    }
    match ell {
        0 => friedrichs(seq, m),
        1 => krein(seq, m + 1),
        l if l > 1 && l % 2 == 1 => {
            let k = (l - 1) as usize;
            let g = krein(&index_shift(seq, k)?, m + 1)?;
            prefix_plus(seq, k, &g, n, m)
        }
        l if l > 1 => {
            let k = l as usize;
            let g = friedrichs(&index_shift(seq, k)?, m)?;
            prefix_plus(seq, k, &g, n, m)
        }
        _ => {
            // f = 1 / (1 + b_0 z - a_0^2 z^2 f0) with f0 the stripped problem's series.
            let total = n + m;
            let depth = total.div_ceil(2);
            let coeffs = recursion_coeffs(seq, depth)?;
            let inner_seq = if total == 2 {
                MomentSequence::new(vec![Scalar::one().to_mode(seq.mode())], Kind::Unknown, "stripped")
            } else {
                jacobi::moments_from_jacobi(&jacobi::strip(&coeffs)?, total - 2)?
            };
            let inner = approximant_normalized(&inner_seq, m - 2, n)?;
            let b0z = Poly::linear(Scalar::zero(), coeffs.b[0].clone());
            let den = &(&inner.den + &(&b0z * &inner.den)) - &inner.num.scale(&coeffs.a2[0]).shift(2);
            normalized(n, m, inner.den, den)
        }
    }
}

/// Rational form of `f^[n,m]` from the spectral identities.
pub fn pade_approximant(seq: &MomentSequence, n: usize, m: usize) -> Result<Approximant> {
    let g0 = seq.get(0)?.clone();
    if !g0.is_positive() {
        return Err(Error::NonpositiveMass);
    }
    if g0 == Scalar::one() {
        return approximant_normalized(seq, n, m);
    }
    let unit = MomentSequence::new(
        seq.gamma.iter().map(|g| g / &g0).collect(),
        seq.kind,
        seq.label.clone(),
    );
    let mut a = approximant_normalized(&unit, n, m)?;
    a.num = a.num.scale(&g0);
    Ok(a)
}

pub fn pade_value(seq: &MomentSequence, n: usize, m: usize, z: &ComplexScalar) -> Result<PadeValue> {
    let a = pade_approximant(seq, n, m)?;
    Ok(PadeValue {
        n,
        m,
        z: z.clone(),
        value: a.eval(z)?,
    })
}

/// Classical Padé by the linear system
/// `sum_{k<=m} beta_k kappa_{j-k} = 0` for `j = n+1..=n+m`.
fn linear_system_pade(seq: &MomentSequence, n: usize, m: usize) -> Result<(Poly, Poly)> {
    let kap = |j: isize| -> Result<Scalar> {
        if j < 0 {
            Ok(Scalar::zero())
        } else {
            kappa(seq, j as usize)
        }
    };
    let beta = if m == 0 {
        vec![Scalar::one()]
    } else {
        let mut rows = Vec::with_capacity(m);
        for j in n + 1..=n + m {
            rows.push(
                (0..=m)
                    .map(|k| kap(j as isize - k as isize))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        linalg::kernel_vector(&rows)
    };
    let mut alpha = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = Scalar::zero();
        for (k, b) in beta.iter().enumerate().take(j.min(m) + 1) {
            acc = acc + b * &kap((j - k) as isize)?;
        }
        alpha.push(acc);
    }
    Ok((Poly::new(alpha), Poly::new(beta)))
}

fn polys_agree(a: &Poly, b: &Poly) -> bool {
    let len = a.coeffs.len().max(b.coeffs.len());
    let scale = tolerance::magnitude(a.coeffs.iter().chain(&b.coeffs));
    (0..len).all(|k| tolerance::close(&a.coeff(k), &b.coeff(k), &scale, tolerance::PIPELINE_GUARD))
}

/// First Taylor order at which `f^[n,m]` differs from the series, capped at
/// `K + 1` when every available coefficient matches. The approximant is also
/// compared with the classical linear-system construction.
pub fn taylor_match_check(seq: &MomentSequence, n: usize, m: usize) -> Result<usize> {
    let a = pade_approximant(seq, n, m)?;
    let (alpha, beta) = linear_system_pade(seq, n, m)?;
    if !polys_agree(&(&a.num * &beta), &(&alpha * &a.den)) {
        return Err(Error::CrossCheckFailure(format!(
            "[{n},{m}] disagrees with the linear-system approximant"
        )));
    }
    let order = seq.k() + 1;
    let series = a.num.series_div(&a.den, order);
    // A genuine mismatch is an O(1) relative difference, so float coefficients
    // only count as mismatched beyond the abort band 2^-(p/2).
    let band = tolerance::abort_slack(seq.mode().join(a.den.coeff(0).mode()));
    for (j, s) in series.iter().enumerate() {
        let k = kappa(seq, j)?;
        let scale = k.abs().max(s.abs());
        let mismatch = if band.is_zero() {
            *s != k
        } else {
            (s - &k).abs() > &band * &scale
        };
        if mismatch {
            return Ok(j);
        }
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PadeRow {
    /// Shape `l`: entries are `f^[N+l-1, N]`.
    pub ell: i64,
    /// `(N, value)`; `None` where the approximant does not exist.
    pub values: Vec<(usize, Option<Scalar>)>,
    /// Whether `(-1)^l f` strictly increases in `N`; `None` when not asserted.
    pub monotone: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PadeTable {
    pub x: Scalar,
    pub rows: Vec<PadeRow>,
    /// `(N, f^[N-1,N](x), f^[N,N](x))` at the largest `N` where both exist.
    pub bracket: Option<(usize, Scalar, Scalar)>,
    pub warnings: Vec<String>,
}

pub fn pade_table(seq: &MomentSequence, x: &Scalar, n_max: usize, shapes: &[i64]) -> Result<PadeTable> {
    if x.is_negative() {
        return Err(Error::InvalidArgument("x must be nonnegative".into()));
    }
    if let Some(&l) = shapes.iter().find(|l| l.abs() > MAX_SHAPE) {
        return Err(Error::UnsupportedShape {
            n: 0,
            m: (1 - l).max(0) as usize,
        });
    }
    let z = ComplexScalar::real(x.clone());
    let stieltjes = seq.kind == Kind::Stieltjes;
    let mut warnings = Vec::new();
    if !stieltjes {
        warnings.push(format!(
            "sequence kind is {}; monotonicity not asserted",
            seq.kind.as_str()
        ));
    }
    let cell = |n: usize, m: usize| -> Result<Option<Scalar>> {
        match pade_value(seq, n, m, &z) {
            Ok(v) => Ok(Some(v.value.re)),
            Err(Error::NotExists { .. }) | Err(Error::PoleHit) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let mut rows = Vec::new();
    for &ell in shapes {
        let mut values = Vec::new();
        for big_n in 1..=n_max {
            let n = big_n as i64 + ell - 1;
            if n < 0 {
                continue;
            }
            if n as usize + big_n > seq.k() {
                break;
            }
            values.push((big_n, cell(n as usize, big_n)?));
        }
        let monotone = (stieltjes && x.is_positive()).then(|| {
            let signed: Vec<Scalar> = values
                .iter()
                .filter_map(|(_, v)| v.clone())
                .map(|v| if ell % 2 == 0 { v } else { -v })
                .collect();
            signed.windows(2).all(|w| w[0] < w[1])
        });
        if monotone == Some(false) {
            warnings.push(format!("shape {ell}: chain is not strictly monotone"));
        }
        rows.push(PadeRow { ell, values, monotone });
    }
    let mut bracket = None;
    for big_n in (1..=n_max.min(seq.k() / 2)).rev() {
        if let (Some(lo), Some(hi)) = (cell(big_n - 1, big_n)?, cell(big_n, big_n)?) {
            bracket = Some((big_n, lo, hi));
            break;
        }
    }
    Ok(PadeTable {
        x: x.clone(),
        rows,
        bracket,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate;

    fn lag(k: usize) -> MomentSequence {
        generate("laguerre", k, 128).unwrap()
    }

    #[test]
    fn laguerre_small_values() {
        let s = lag(8);
        let one = ComplexScalar::one();
        assert_eq!(pade_value(&s, 0, 1, &one).unwrap().value.re, Scalar::ratio(1, 2));
        assert_eq!(pade_value(&s, 1, 1, &one).unwrap().value.re, Scalar::ratio(2, 3));
        assert_eq!(pade_value(&s, 0, 0, &ComplexScalar::gauss(5, 1)).unwrap().value, ComplexScalar::one());
        let a = pade_approximant(&s, 1, 1).unwrap();
        assert_eq!(a.num.clone().trimmed(), Poly::new(vec![Scalar::one(), Scalar::one()]));
        assert_eq!(a.den.clone().trimmed(), Poly::new(vec![Scalar::one(), Scalar::int(2)]));
    }

    #[test]
    fn match_orders() {
        let s = lag(8);
        assert_eq!(taylor_match_check(&s, 0, 1).unwrap(), 2);
        assert_eq!(taylor_match_check(&s, 1, 1).unwrap(), 3);
        for (n, m) in [(2, 3), (3, 1), (4, 2), (0, 2), (1, 4), (2, 0)] {
            assert!(taylor_match_check(&s, n, m).unwrap() > n + m, "[{n},{m}]");
        }
    }

    #[test]
    fn hermite_odd_diagonal_missing() {
        let h = generate("hermite", 8, 128).unwrap();
        assert_eq!(pade_approximant(&h, 1, 1), Err(Error::NotExists { n: 1, m: 1 }));
        assert!(pade_approximant(&h, 2, 2).is_ok());
    }

    #[test]
    fn shape_cap() {
        assert_eq!(pade_approximant(&lag(20), 8, 2), Err(Error::UnsupportedShape { n: 8, m: 2 }));
    }

    #[test]
    fn table_at_zero_is_one() {
        let t = pade_table(&lag(10), &Scalar::zero(), 4, &[-1, 0, 1]).unwrap();
        for row in &t.rows {
            for (_, v) in &row.values {
                assert_eq!(v.clone().unwrap(), Scalar::one());
            }
        }
    }
}
