//! Finite Friedrichs (F) and Krein (K) sections of the Jacobi matrix, their
//! spectra and quadrature weights, and their resolvents.

use std::fmt;

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::moments::{Kind, MomentSequence};
use crate::orthopoly::{self, RecursionCoefficients};
use crate::scalar::{Mode, Scalar};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Plain `N x N` truncation.
    F,
    /// Truncation with the corner shifted so that 0 is an eigenvalue.
    K,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "F" | "f" => Some(Variant::F),
            "K" | "k" => Some(Variant::K),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::F => "F",
            Variant::K => "K",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiSection {
    pub n: usize,
    pub variant: Variant,
    /// Coefficients truncated to this section.
    pub coeffs: RecursionCoefficients,
    /// Diagonal of the section; for K the last entry is `b_{N-1} - alpha_{N-1}`.
    pub diag: Vec<Scalar>,
    /// `alpha_{N-1} = -a_{N-1} P_N(0) / P_{N-1}(0) = -p^_N(0) / p^_{N-1}(0)`.
    pub alpha: Option<Scalar>,
}

impl JacobiSection {
    /// Off-diagonal squares `a_0^2 .. a_{N-2}^2`.
    pub fn offdiag2(&self) -> &[Scalar] {
        &self.coeffs.a2[..self.n - 1]
    }

    pub fn mode(&self) -> Mode {
        self.coeffs.mode()
    }

    /// Characteristic polynomial `det(x - A)` and its derivative at real `x`.
    fn char_poly(&self, x: &Scalar) -> (Scalar, Scalar) {
        let (mut p0, mut p1) = (Scalar::zero(), Scalar::one());
        let (mut d0, mut d1) = (Scalar::zero(), Scalar::zero());
        for k in 0..self.n {
            let shift = x - &self.diag[k];
            let (mut p2, mut d2) = (&shift * &p1, &shift * &d1 + &p1);
            if k >= 1 {
                let a2 = &self.coeffs.a2[k - 1];
                p2 = p2 - a2 * &p0;
                d2 = d2 - a2 * &d0;
            }
            (p0, p1) = (p1, p2);
            (d0, d1) = (d1, d2);
        }
        (p1, d1)
    }

    /// Second-kind numerator whose ratio with [`Self::char_poly`] is `-resolvent`.
    fn second_kind(&self, z: &ComplexScalar) -> Result<(ComplexScalar, ComplexScalar)> {
        let e = orthopoly::eval_monic(&self.coeffs, z, self.n)?;
        let n = self.n;
        match (&self.alpha, self.variant) {
            (Some(alpha), Variant::K) => Ok((
                &e.p_hat[n] + &e.p_hat[n - 1].scale(alpha),
                &e.q_hat[n] + &e.q_hat[n - 1].scale(alpha),
            )),
            _ => Ok((e.p_hat[n].clone(), e.q_hat[n].clone())),
        }
    }

    /// Number of eigenvalues strictly below `x` (Sturm count of LDL^T pivots).
    pub fn count_below(&self, x: &Scalar) -> usize {
        sturm_count(&self.diag, self.offdiag2(), x)
    }
}

/// Number of negative pivots of `T - x` for the symmetric tridiagonal `T`
/// with diagonal `diag` and squared off-diagonals `off2`.
pub fn sturm_count(diag: &[Scalar], off2: &[Scalar], x: &Scalar) -> usize {
    let tiny = match x.mode().join(diag.first().map_or(Mode::Exact, Scalar::mode)) {
        Mode::Exact => Scalar::ratio(1, 1 << 40) * Scalar::ratio(1, 1 << 40),
        m @ Mode::Float(p) => tolerance::slack(m, 0) * Scalar::pow2_neg(p),
    };
    let mut count = 0;
    let mut d = Scalar::one();
    for k in 0..diag.len() {
        let mut next = &diag[k] - x;
        if k >= 1 {
            next = next - &off2[k - 1] / &d;
        }
        if next.is_zero() {
            next = tiny.clone();
        }
        if next.is_negative() {
            count += 1;
        }
        d = next;
    }
    count
}

/// Build the F or K section of size `n`.
pub fn section(coeffs: &RecursionCoefficients, n: usize, variant: Variant) -> Result<JacobiSection> {
    if n == 0 || n > coeffs.depth() {
        return Err(Error::TooShort {
            needed: 2 * n.max(1) - 1,
            have: 2 * coeffs.depth() - 1,
        });
    }
    let sub = coeffs.truncate(n)?;
    let mut diag = sub.b.clone();
    let alpha = match variant {
        Variant::F => None,
        Variant::K => {
            let at0 = orthopoly::eval_monic(coeffs, &ComplexScalar::zero(), n)?;
            let prev = &at0.p_hat[n - 1].re;
            let last = &at0.p_hat[n].re;
            if prev.is_zero() {
                return Err(Error::KreinCornerUndefined { size: n, index: n - 1 });
            }
            if last.is_zero() {
                return Err(Error::KreinCornerUndefined { size: n, index: n });
            }
            let alpha = -(last / prev);
            verify_next_corner(coeffs, n, &alpha)?;
            diag[n - 1] = &diag[n - 1] - &alpha;
            Some(alpha)
        }
    };
    Ok(JacobiSection {
        n,
        variant,
        coeffs: sub,
        diag,
        alpha,
    })
}

/// `(b_N - alpha_N) alpha_{N-1} - a_{N-1}^2 = 0`, when `b_N` is known.
fn verify_next_corner(coeffs: &RecursionCoefficients, n: usize, alpha: &Scalar) -> Result<()> {
    if coeffs.depth() <= n || coeffs.a2.len() < n {
        return Ok(());
    }
    let at0 = orthopoly::eval_monic(coeffs, &ComplexScalar::zero(), n + 1)?;
    if at0.p_hat[n].re.is_zero() {
        return Ok(());
    }
    let alpha_next = -(&at0.p_hat[n + 1].re / &at0.p_hat[n].re);
    let residual = (&coeffs.b[n] - &alpha_next) * alpha - &coeffs.a2[n - 1];
    let scale = coeffs.a2[n - 1].clone();
    if tolerance::close(&residual, &Scalar::zero(), &scale, tolerance::PIPELINE_GUARD) {
        Ok(())
    } else {
        Err(Error::CrossCheckFailure(format!(
            "Krein corner relation at N = {n}: residual {}",
            residual.render(6)
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub variant: Variant,
    /// Increasing eigenvalues of the section.
    pub nodes: Vec<Scalar>,
    /// Residue weights `q(lambda)/p'(lambda)`.
    pub weights: Vec<Scalar>,
    /// Largest relative gap between residue and Christoffel weights.
    pub weight_discrepancy: Scalar,
}

impl Quadrature {
    /// `sum_i nu_i lambda_i^k`.
    pub fn moment(&self, k: u32) -> Scalar {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * &x.powi(k))
            .sum()
    }
}

/// Spectrum and weights by Sturm bisection, one guarded Newton step per node,
/// and a Christoffel cross-check of every weight.
pub fn eigensystem(sec: &JacobiSection, prec: u32) -> Result<Quadrature> {
    let prec = prec.max(sec.mode().precision().unwrap_or(prec));
    // Nodes spread over many decades evaluate the characteristic polynomial
    // with heavy cancellation, so work with guard bits and widen them until
    // residue and Christoffel weights agree at the requested precision.
    let target = Scalar::pow2_neg(prec + 8);
    let mut guard = 64;
    loop {
        let q = eigensystem_at(sec, prec + guard)?;
        if q.weight_discrepancy <= target || guard >= 4 * prec {
            if q.weight_discrepancy > tolerance::abort_slack(Mode::Float(prec)) {
                return Err(Error::CrossCheckFailure(format!(
                    "residue and Christoffel weights differ by {}",
                    q.weight_discrepancy.render(6)
                )));
            }
            let round = |v: &[Scalar]| v.iter().map(|x| x.round_to(prec)).collect::<Vec<_>>();
            return Ok(Quadrature {
                variant: q.variant,
                nodes: round(&q.nodes),
                weights: round(&q.weights),
                weight_discrepancy: q.weight_discrepancy.round_to(prec),
            });
        }
        guard *= 2;
    }
}

fn eigensystem_at(sec: &JacobiSection, prec: u32) -> Result<Quadrature> {
    let mode = Mode::Float(prec);
    let fsec = JacobiSection {
        n: sec.n,
        variant: sec.variant,
        coeffs: sec.coeffs.to_mode(mode),
        diag: sec.diag.iter().map(|x| x.to_mode(mode)).collect(),
        alpha: sec.alpha.as_ref().map(|a| a.to_mode(mode)),
    };
    let n = fsec.n;
    let off: Vec<Scalar> = fsec.offdiag2().iter().map(|a| a.sqrt(prec)).collect();
    let off_at = |i: isize| -> Scalar {
        if i < 0 || i as usize >= off.len() {
            Scalar::zero().to_mode(mode)
        } else {
            off[i as usize].clone()
        }
    };
    let mut lo = fsec.diag[0].clone();
    let mut hi = fsec.diag[0].clone();
    for i in 0..n {
        let r = off_at(i as isize) + off_at(i as isize - 1);
        let l = &fsec.diag[i] - &r;
        let h = &fsec.diag[i] + &r;
        if l < lo {
            lo = l;
        }
        if h > hi {
            hi = h;
        }
    }
    let scale = lo.abs().max(hi.abs()).max(Scalar::one());
    lo = lo - &scale * &Scalar::pow2_neg(20);
    hi = hi + &scale * &Scalar::pow2_neg(20);
    let rel = Scalar::pow2_neg(prec.saturating_sub(4));
    let abs_floor = &scale * &Scalar::pow2_neg(2 * prec);
    let half = Scalar::ratio(1, 2);

    let mut nodes = Vec::with_capacity(n);
    for k in 0..n {
        let (mut a, mut b) = (lo.clone(), hi.clone());
        for _ in 0..(4 * prec as usize + 256) {
            let width = &b - &a;
            let mag = a.abs().max(b.abs());
            if width <= &rel * &mag || width <= abs_floor {
                break;
            }
            let mid = (&a + &b) * &half;
            if mid == a || mid == b {
                break;
            }
            if fsec.count_below(&mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut x = (&a + &b) * &half;
        let (f, df) = fsec.char_poly(&x);
        if !df.is_zero() {
            let y = &x - &(f / df);
            if y >= a && y <= b {
                x = y;
            }
        }
        nodes.push(x);
    }
    for w in nodes.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::ConvergenceFailure(format!(
                "nodes not separated near {}",
                w[0].render(12)
            )));
        }
    }

    let norms = fsec.coeffs.norms();
    let mut weights = Vec::with_capacity(n);
    let mut worst = Scalar::zero().to_mode(mode);
    for x in &nodes {
        let z = ComplexScalar::real(x.clone());
        let (_, num) = fsec.second_kind(&z)?;
        let (_, df) = fsec.char_poly(x);
        if df.is_zero() {
            return Err(Error::ConvergenceFailure("double root".into()));
        }
        let w = &num.re / &df;
        let e = orthopoly::eval_monic(&fsec.coeffs, &z, n - 1)?;
        let sum: Scalar = (0..n).map(|j| e.p_hat[j].re.square() / &norms[j]).sum();
        let christoffel = sum.recip();
        let gap = ((&w - &christoffel) / &christoffel).abs();
        if !w.is_positive() {
            return Err(Error::ConvergenceFailure("nonpositive weight".into()));
        }
        worst = worst.max(gap);
        weights.push(w);
    }
    Ok(Quadrature {
        variant: fsec.variant,
        nodes,
        weights,
        weight_discrepancy: worst,
    })
}

/// `f^-_N(z) = -Q_N(z)/P_N(z)` for F, `f^+_N(z) = -N_N(z)/M_N(z)` for K.
pub fn resolvent(sec: &JacobiSection, z: &ComplexScalar) -> Result<ComplexScalar> {
    let (den, num) = sec.second_kind(z)?;
    if den.is_zero() {
        return Err(Error::PoleHit);
    }
    Ok(-(&num / &den))
}

/// Residual of the K-section applied to `(P_0(0), ..., P_{N-1}(0))`, relative
/// to the vector's size.
pub fn kernel_residual(sec: &JacobiSection, prec: u32) -> Result<Scalar> {
    let mode = Mode::Float(prec);
    let e = orthopoly::eval_monic(&sec.coeffs, &ComplexScalar::zero(), sec.n - 1)?;
    let u: Vec<Scalar> = (0..sec.n)
        .map(|j| (&e.p_hat[j].re / &e.norm2[j].sqrt(prec)).to_mode(mode))
        .collect();
    let off: Vec<Scalar> = sec.offdiag2().iter().map(|a| a.sqrt(prec).to_mode(mode)).collect();
    let mut worst = Scalar::zero().to_mode(mode);
    for i in 0..sec.n {
        let mut r = &sec.diag[i] * &u[i];
        if i >= 1 {
            r = r + &off[i - 1] * &u[i - 1];
        }
        if i + 1 < sec.n {
            r = r + &off[i] * &u[i + 1];
        }
        worst = worst.max(r.abs());
    }
    Ok(worst / tolerance::magnitude(&u))
}

/// Moments `gamma_0..=gamma_k` of the spectral measure of the Jacobi matrix
/// at `delta_0`, computed in the monic basis so exact data stays rational.
pub fn moments_from_jacobi(coeffs: &RecursionCoefficients, k: usize) -> Result<MomentSequence> {
    let depth = coeffs.depth();
    let limit = 2 * depth - 1 + usize::from(coeffs.a2.len() == depth);
    if k > limit {
        return Err(Error::TooShort { needed: k, have: limit });
    }
    let mode = coeffs.mode();
    let mut v = vec![Scalar::one().to_mode(mode)];
    let mut gamma = vec![v[0].clone()];
    for j in 0..k {
        let width = (j + 1).min(k - j - 1) + 1;
        let mut next = vec![Scalar::zero().to_mode(mode); width];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            if i + 1 < width {
                next[i + 1] = &next[i + 1] + vi;
            }
            if i < width {
                next[i] = &next[i] + &(&coeffs.b[i] * vi);
            }
            if i >= 1 && i - 1 < width {
                next[i - 1] = &next[i - 1] + &(&coeffs.a2[i - 1] * vi);
            }
        }
        v = next;
        gamma.push(v[0].clone());
    }
    Ok(MomentSequence::new(gamma, Kind::Unknown, "jacobi"))
}

/// Coefficients of the problem obtained by deleting the first row and column.
pub fn strip(coeffs: &RecursionCoefficients) -> Result<RecursionCoefficients> {
    if coeffs.depth() < 2 {
        return Err(Error::TooShort { needed: 3, have: 1 });
    }
    Ok(RecursionCoefficients::new(
        coeffs.b[1..].to_vec(),
        coeffs.a2[1..].to_vec(),
    ))
}
