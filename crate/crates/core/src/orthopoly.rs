//! Recursion coefficients from moments and the first- and second-kind
//! orthogonal polynomials.
//!
//! Polynomials are carried in monic form `p^_n` together with the squared
//! normalizer `nu_n^2 = a_0^2 ... a_{n-1}^2`, so that `P_n = p^_n / nu_n`.
//! Every product `P_j(x) P_j(y)` is then rational in exact mode, and square
//! roots appear only when an orthonormal value is asked for.

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::hankel;
use crate::moments::MomentSequence;
use crate::poly::Poly;
use crate::scalar::{joint_mode, Mode, Scalar};

/// Jacobi parameters. `b` holds `b_0..b_{N-1}`; `a2` holds `a_0^2..` and has
/// either `N-1` entries (enough for the `N x N` section) or `N` (enough for
/// the orthonormal `P_N`).
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionCoefficients {
    pub b: Vec<Scalar>,
    pub a2: Vec<Scalar>,
}

impl RecursionCoefficients {
    pub fn new(b: Vec<Scalar>, a2: Vec<Scalar>) -> Self {
        assert!(
            a2.len() + 1 == b.len() || a2.len() == b.len(),
            "a2 must have N-1 or N entries"
        );
        RecursionCoefficients { b, a2 }
    }

    /// Section size `N`.
    pub fn depth(&self) -> usize {
        self.b.len()
    }

    /// Largest `n` for which the orthonormal `P_n` is available.
    pub fn orthonormal_limit(&self) -> usize {
        self.a2.len()
    }

    pub fn mode(&self) -> Mode {
        joint_mode(self.b.iter().chain(&self.a2))
    }

    pub fn to_mode(&self, mode: Mode) -> Self {
        RecursionCoefficients {
            b: self.b.iter().map(|x| x.to_mode(mode)).collect(),
            a2: self.a2.iter().map(|x| x.to_mode(mode)).collect(),
        }
    }

    /// First `n` levels: `b_0..b_{n-1}` and `a_0^2..a_{n-1}^2` where available.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.depth() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate depth {} to {n}",
                self.depth()
            )));
        }
        Ok(RecursionCoefficients {
            b: self.b[..n].to_vec(),
            a2: self.a2[..n.min(self.a2.len())].to_vec(),
        })
    }

    /// `nu_n^2` for `n = 0..=orthonormal_limit()`.
    pub fn norms(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.a2.len() + 1);
        let mut acc = Scalar::one();
        out.push(acc.clone());
        for a2 in &self.a2 {
            acc = &acc * a2;
            out.push(acc.clone());
        }
        out
    }

    fn need_orthonormal(&self, n: usize) -> Result<()> {
        if n <= self.orthonormal_limit() {
            Ok(())
        } else {
            Err(Error::TooShort {
                needed: 2 * n,
                have: 2 * self.orthonormal_limit(),
            })
        }
    }

    fn need_depth(&self, n: usize) -> Result<()> {
        if n <= self.depth() {
            Ok(())
        } else {
            Err(Error::TooShort {
                needed: 2 * n - 1,
                have: 2 * self.depth() - 1,
            })
        }
    }
}

/// Jacobi parameters for depth `n` by the Chebyshev mixed-moment recurrence.
/// Needs `gamma_0..gamma_{2n-1}`; `a_{n-1}^2` is included when `gamma_{2n}` is present.
pub fn recursion_coeffs(seq: &MomentSequence, n: usize) -> Result<RecursionCoefficients> {
    if n == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    seq.require(2 * n - 1)?;
    let kmax = seq.k();
    let check = |s: &Scalar, index: usize| -> Result<()> {
        if s.is_zero() {
            Err(Error::DegenerateSequence { index })
        } else if s.is_negative() {
            Err(Error::IndefiniteSequence { index })
        } else {
            Ok(())
        }
    };

    // sigma_k[l] = E[p^_k(x) x^l], valid for k <= l <= K - k.
    let mut prev: Vec<Scalar> = Vec::new();
    let mut cur: Vec<Scalar> = seq.gamma.clone();
    check(&cur[0], 0)?;
    let mut b = vec![&cur[1] / &cur[0]];
    let mut a2: Vec<Scalar> = Vec::new();
    for k in 1..=n {
        if 2 * k > kmax {
            break;
        }
        let mut next = vec![Scalar::zero(); kmax + 1];
        for l in k..=kmax - k {
            let mut v = &cur[l + 1] - &(&b[k - 1] * &cur[l]);
            if k >= 2 {
                v = v - &a2[k - 2] * &prev[l];
            }
            next[l] = v;
        }
        check(&next[k], k)?;
        a2.push(&next[k] / &cur[k - 1]);
        if k < n {
            b.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(RecursionCoefficients { b, a2 })
}

/// Monic first- and second-kind values at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoEval {
    pub z: ComplexScalar,
    /// `p^_0(z) ..= p^_n(z)`.
    pub p_hat: Vec<ComplexScalar>,
    /// `q^_0(z) ..= q^_n(z)`.
    pub q_hat: Vec<ComplexScalar>,
    /// `nu_j^2` for the indices where it is known.
    pub norm2: Vec<Scalar>,
}

impl OrthoEval {
    pub fn len(&self) -> usize {
        self.p_hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p_hat.is_empty()
    }

    fn inv_norm(&self, j: usize, prec: u32) -> Result<Scalar> {
        let n2 = self.norm2.get(j).ok_or(Error::TooShort {
            needed: 2 * j,
            have: 2 * self.norm2.len().saturating_sub(1),
        })?;
        Ok(n2.sqrt(prec).recip())
    }

    /// Orthonormal `P_j(z)`; exact when `nu_j^2` is a rational square.
    pub fn p(&self, j: usize, prec: u32) -> Result<ComplexScalar> {
        Ok(self.p_hat[j].scale(&self.inv_norm(j, prec)?))
    }

    /// Orthonormal `Q_j(z)`.
    pub fn q(&self, j: usize, prec: u32) -> Result<ComplexScalar> {
        Ok(self.q_hat[j].scale(&self.inv_norm(j, prec)?))
    }

    /// `|P_j(z)|^2`, rational in exact mode.
    pub fn p_abs2(&self, j: usize) -> Scalar {
        self.p_hat[j].norm_sqr() / &self.norm2[j]
    }

    /// `|Q_j(z)|^2`.
    pub fn q_abs2(&self, j: usize) -> Scalar {
        self.q_hat[j].norm_sqr() / &self.norm2[j]
    }

    /// Wronskian `a_{k-1}(Q_k P_{k-1} - Q_{k-1} P_k)`, in monic bookkeeping
    /// `(q^_k p^_{k-1} - q^_{k-1} p^_k) / nu_{k-1}^2`. Identically 1.
    pub fn wronskian(&self, k: usize) -> ComplexScalar {
        let num = &(&self.q_hat[k] * &self.p_hat[k - 1]) - &(&self.q_hat[k - 1] * &self.p_hat[k]);
        num.scale(&self.norm2[k - 1].recip())
    }
}

/// Product `X_j(x) Y_j(y)` of two orthonormal values with the same index,
/// from monic values and `nu_j^2`.
pub fn same_index(x: &ComplexScalar, y: &ComplexScalar, norm2: &Scalar) -> ComplexScalar {
    (x * y).scale(&norm2.recip())
}

/// Monic recurrences `p^_{n+1} = (z - b_n) p^_n - a_{n-1}^2 p^_{n-1}` with
/// `p^_0 = 1` and `q^_0 = 0, q^_1 = 1`, up to degree `n <= depth`.
pub fn eval_monic(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize) -> Result<OrthoEval> {
    coeffs.need_depth(n)?;
    let mode = coeffs.mode().join(z.mode());
    let one = ComplexScalar::one().to_mode(mode);
    let zero = ComplexScalar::zero().to_mode(mode);
    let mut p = vec![one.clone()];
    let mut q = vec![zero];
    for k in 0..n {
        let shift = z - &ComplexScalar::real(coeffs.b[k].clone());
        let mut pn = &shift * &p[k];
        let mut qn = if k == 0 { one.clone() } else { &shift * &q[k] };
        if k >= 1 {
            pn = &pn - &p[k - 1].scale(&coeffs.a2[k - 1]);
            qn = &qn - &q[k - 1].scale(&coeffs.a2[k - 1]);
        }
        p.push(pn);
        q.push(qn);
    }
    let mut norm2 = coeffs.norms();
    norm2.truncate(n + 1);
    Ok(OrthoEval {
        z: z.clone(),
        p_hat: p,
        q_hat: q,
        norm2,
    })
}

/// `P_0(z) ..= P_n(z)` and `Q_0(z) ..= Q_n(z)`. Needs `a_{n-1}^2`.
pub fn eval_pq(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize) -> Result<OrthoEval> {
    coeffs.need_orthonormal(n)?;
    eval_monic(coeffs, z, n)
}

/// Orthonormal `P_0(z) ..= P_n(z)` at `prec` bits where square roots are irrational.
pub fn eval_p(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize, prec: u32) -> Result<Vec<ComplexScalar>> {
    let e = eval_pq(coeffs, z, n)?;
    (0..=n).map(|j| e.p(j, prec)).collect()
}

/// Orthonormal `Q_0(z) ..= Q_n(z)`.
pub fn eval_q(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize, prec: u32) -> Result<Vec<ComplexScalar>> {
    let e = eval_pq(coeffs, z, n)?;
    (0..=n).map(|j| e.q(j, prec)).collect()
}

/// Coefficient vectors of `p^_0 ..= p^_n`.
pub fn monic_polys(coeffs: &RecursionCoefficients, n: usize) -> Result<Vec<Poly>> {
    coeffs.need_depth(n)?;
    let mut out = vec![Poly::one()];
    for k in 0..n {
        let lin = Poly::linear(-&coeffs.b[k], Scalar::one());
        let mut next = &lin * &out[k];
        if k >= 1 {
            next = &next - &out[k - 1].scale(&coeffs.a2[k - 1]);
        }
        out.push(next);
    }
    Ok(out)
}

/// Coefficient vectors of `q^_0 ..= q^_n`.
pub fn monic_second_kind_polys(coeffs: &RecursionCoefficients, n: usize) -> Result<Vec<Poly>> {
    coeffs.need_depth(n)?;
    let mut out = vec![Poly::zero(), Poly::one()];
    for k in 1..n {
        let lin = Poly::linear(-&coeffs.b[k], Scalar::one());
        let next = &(&lin * &out[k]) - &out[k - 1].scale(&coeffs.a2[k - 1]);
        out.push(next);
    }
    out.truncate(n + 1);
    Ok(out)
}

/// Second-kind values from the divided-difference identity
/// `q^_j(z) = E_X[(p^_j(X) - p^_j(z)) / (X - z)]`, independent of the
/// second-kind recurrence. `p_hat` is evaluated from coefficient vectors.
pub fn eval_second_kind_by_integral(
    coeffs: &RecursionCoefficients,
    seq: &MomentSequence,
    z: &ComplexScalar,
    n: usize,
) -> Result<OrthoEval> {
    let polys = monic_polys(coeffs, n)?;
    seq.require(n.saturating_sub(1))?;
    let mode = coeffs.mode().join(z.mode()).join(seq.mode());
    let mut zpow = vec![ComplexScalar::one().to_mode(mode)];
    for k in 1..=n {
        zpow.push(&zpow[k - 1] * z);
    }
    let mut p_hat = Vec::with_capacity(n + 1);
    let mut q_hat = Vec::with_capacity(n + 1);
    for p in &polys {
        p_hat.push(p.eval_complex(z).to_mode(mode));
        // (X^k - z^k)/(X - z) = sum_{i<k} X^i z^{k-1-i}
        let mut acc = ComplexScalar::zero().to_mode(mode);
        for (k, c) in p.coeffs.iter().enumerate().skip(1) {
            let mut inner = ComplexScalar::zero();
            for i in 0..k {
                inner = &inner + &zpow[k - 1 - i].scale(&seq.gamma[i]);
            }
            acc = &acc + &inner.scale(c);
        }
        q_hat.push(acc);
    }
    let mut norm2 = coeffs.norms();
    norm2.truncate(n + 1);
    Ok(OrthoEval {
        z: z.clone(),
        p_hat,
        q_hat,
        norm2,
    })
}

/// Krein-section polynomials `M_N = P_N - (P_N(0)/P_{N-1}(0)) P_{N-1}` and
/// the matching `N_N`, in monic form.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinEval {
    pub n: usize,
    /// `p^_N(0) / p^_{N-1}(0)`.
    pub c: Scalar,
    pub m_hat: ComplexScalar,
    pub n_hat: ComplexScalar,
    /// `nu_N^2` when `a_{N-1}^2` is known.
    pub norm2: Option<Scalar>,
}

impl KreinEval {
    /// Orthonormal `(M_N(z), N_N(z))`.
    pub fn values(&self, prec: u32) -> Result<(ComplexScalar, ComplexScalar)> {
        let n2 = self.norm2.as_ref().ok_or(Error::TooShort {
            needed: 2 * self.n,
            have: 2 * self.n - 1,
        })?;
        let s = n2.sqrt(prec).recip();
        Ok((self.m_hat.scale(&s), self.n_hat.scale(&s)))
    }
}

/// Ratio `c = p^_N(0) / p^_{N-1}(0)` fixing the Krein polynomials.
pub fn krein_ratio(coeffs: &RecursionCoefficients, n: usize) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("Krein polynomials need N >= 1".into()));
    }
    let at0 = eval_monic(coeffs, &ComplexScalar::zero(), n)?;
    let den = &at0.p_hat[n - 1].re;
    if den.is_zero() {
        return Err(Error::ZeroDenominator { index: n - 1 });
    }
    Ok(&at0.p_hat[n].re / den)
}

pub fn eval_mn(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize) -> Result<KreinEval> {
    let c = krein_ratio(coeffs, n)?;
    let e = eval_monic(coeffs, z, n)?;
    let m_hat = &e.p_hat[n] - &e.p_hat[n - 1].scale(&c);
    let n_hat = &e.q_hat[n] - &e.q_hat[n - 1].scale(&c);
    Ok(KreinEval {
        n,
        c,
        m_hat,
        n_hat,
        norm2: e.norm2.get(n).cloned(),
    })
}

/// Determinant form of `P_n(z)`: returns `(S_n(z), h_n h_{n+1})` with
/// `P_n(z) = S_n(z) / sqrt(h_n h_{n+1})`.
pub fn det_formula_p(seq: &MomentSequence, n: usize, z: &ComplexScalar) -> Result<(ComplexScalar, Scalar)> {
    let s = hankel::bordered_p(seq, n)?;
    let h = hankel::hankel_dets(seq, n + 1)?;
    Ok((s.eval_complex(z), &h.h[n] * &h.h[n + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate;

    fn lag(depth: usize) -> RecursionCoefficients {
        recursion_coeffs(&generate("laguerre", 2 * depth, 64).unwrap(), depth).unwrap()
    }

    fn her(depth: usize) -> RecursionCoefficients {
        recursion_coeffs(&generate("hermite", 2 * depth, 64).unwrap(), depth).unwrap()
    }

    #[test]
    fn known_coefficients() {
        let h = her(6);
        let l = lag(6);
        for n in 0..6 {
            assert_eq!(h.b[n], Scalar::zero());
            assert_eq!(h.a2[n], Scalar::int(n as i64 + 1));
            assert_eq!(l.b[n], Scalar::int(2 * n as i64 + 1));
            assert_eq!(l.a2[n], Scalar::int((n as i64 + 1).pow(2)));
        }
    }

    #[test]
    fn odd_prefix_omits_last_a() {
        let s = generate("laguerre", 5, 64).unwrap();
        let c = recursion_coeffs(&s, 3).unwrap();
        assert_eq!(c.b.len(), 3);
        assert_eq!(c.a2.len(), 2);
        assert!(matches!(recursion_coeffs(&s, 4), Err(Error::TooShort { .. })));
    }

    #[test]
    fn degenerate_and_indefinite() {
        let ones = MomentSequence::new(vec![Scalar::one(); 6], crate::Kind::Unknown, "");
        assert_eq!(recursion_coeffs(&ones, 2), Err(Error::DegenerateSequence { index: 1 }));
        let bad = MomentSequence::new(
            [1, 2, 1, 0].iter().map(|&x| Scalar::int(x)).collect(),
            crate::Kind::Unknown,
            "",
        );
        assert_eq!(recursion_coeffs(&bad, 2), Err(Error::IndefiniteSequence { index: 1 }));
    }

    #[test]
    fn first_values() {
        let h = her(3);
        let two = ComplexScalar::gauss(2, 0);
        let p = eval_p(&h, &two, 2, 128).unwrap();
        assert_eq!(p[0], ComplexScalar::one());
        assert_eq!(p[1].re, Scalar::int(2));
        assert!((p[2].re.to_f64() - 3.0 / 2f64.sqrt()).abs() < 1e-30);
        let q = eval_q(&h, &two, 2, 128).unwrap();
        assert!((q[2].re.to_f64() - 2f64.sqrt()).abs() < 1e-30);

        let l = lag(3);
        let zero = ComplexScalar::zero();
        let p = eval_p(&l, &zero, 2, 64).unwrap();
        assert_eq!((p[1].re.clone(), p[2].re.clone()), (Scalar::int(-1), Scalar::int(1)));
        let q = eval_q(&l, &zero, 2, 64).unwrap();
        assert_eq!(q[1].re, Scalar::one());
        assert_eq!(q[2].re, Scalar::ratio(-3, 2));
    }

    #[test]
    fn krein_polynomials() {
        let l = lag(3);
        let k = eval_mn(&l, &ComplexScalar::zero(), 2).unwrap();
        assert!(k.m_hat.is_zero());
        assert_eq!(k.c, Scalar::int(-2));
        assert_eq!(
            eval_mn(&her(3), &ComplexScalar::one(), 2),
            Err(Error::ZeroDenominator { index: 1 })
        );
    }

    #[test]
    fn integral_form_small() {
        let s = generate("laguerre", 6, 64).unwrap();
        let l = recursion_coeffs(&s, 3).unwrap();
        let e = eval_second_kind_by_integral(&l, &s, &ComplexScalar::zero(), 2).unwrap();
        assert_eq!(e.q(2, 64).unwrap().re, Scalar::ratio(-3, 2));
        assert_eq!(e.q_hat[0], ComplexScalar::zero());
    }

    #[test]
    fn det_formula_small() {
        let s = generate("laguerre", 6, 64).unwrap();
        let (sv, rad) = det_formula_p(&s, 1, &ComplexScalar::zero()).unwrap();
        assert_eq!(sv.re, Scalar::int(-1));
        assert_eq!(rad, Scalar::one());
        let (s0, r0) = det_formula_p(&s, 0, &ComplexScalar::zero()).unwrap();
        assert_eq!((s0.re, r0), (Scalar::one(), Scalar::one()));
    }
}
