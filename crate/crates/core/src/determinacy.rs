//! Numerical determinacy evidence: Carleman sums, the Stieltjes `L` and `M`
//! series with their Krein string parameters, a Krein density integral test,
//! and a classifier driven by an ordered list of criteria.

use std::fmt;

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::hankel;
use crate::moments::{Kind, MomentSequence};
use crate::orthopoly::{self, recursion_coeffs, same_index, RecursionCoefficients};
use crate::scalar::{Mode, Scalar};
use crate::tolerance;

/// Krein string parameters `l_n`, `m_n` (`n >= 1`) and their partial sums.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinParameters {
    pub ell: Vec<Scalar>,
    pub m: Vec<Scalar>,
    /// `m_1, l_1, m_2, l_2, ...`
    pub c: Vec<Scalar>,
    /// `L_N = sum_{n<=N} l_n = -Q_N(0)/P_N(0)`.
    pub l_partial: Vec<Scalar>,
    /// `M_N = sum_{n<=N} m_n = sum_{j<N} P_j(0)^2`.
    pub m_partial: Vec<Scalar>,
}

fn prefix_sums(xs: &[Scalar]) -> Vec<Scalar> {
    let mut acc = Scalar::zero();
    xs.iter()
        .map(|x| {
            acc = &acc + x;
            acc.clone()
        })
        .collect()
}

/// `m_n = P_{n-1}(0)^2` and `l_n = -1/(a_{n-1} P_n(0) P_{n-1}(0))` for
/// `n = 1..=N`, checked against the inverse relations
/// `a_n^2 = 1/(l_{n+1}^2 m_{n+1} m_{n+2})`, `b_n = (1/l_n + 1/l_{n+1})/m_{n+1}`.
pub fn krein_parameters(coeffs: &RecursionCoefficients, n: usize) -> Result<KreinParameters> {
    if n == 0 {
        return Err(Error::InvalidArgument("need N >= 1".into()));
    }
    let e = orthopoly::eval_monic(coeffs, &ComplexScalar::zero(), n)?;
    let norms = coeffs.norms();
    let p0: Vec<Scalar> = e.p_hat.iter().map(|p| p.re.clone()).collect();
    if let Some(j) = p0.iter().position(Scalar::is_zero) {
        return Err(Error::NotStieltjes(format!("P_{j}(0) = 0")));
    }
    let mut ell = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for k in 1..=n {
        let mk = p0[k - 1].square() / &norms[k - 1];
        let lk = -(&norms[k - 1] / &(&p0[k] * &p0[k - 1]));
        if !lk.is_positive() {
            return Err(Error::NotStieltjes(format!("l_{k} is not positive")));
        }
        m.push(mk);
        ell.push(lk);
    }
    verify_inverse_relations(coeffs, &ell, &m)?;
    let c = m
        .iter()
        .zip(&ell)
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    Ok(KreinParameters {
        l_partial: prefix_sums(&ell),
        m_partial: prefix_sums(&m),
        ell,
        m,
        c,
    })
}

fn verify_inverse_relations(coeffs: &RecursionCoefficients, ell: &[Scalar], m: &[Scalar]) -> Result<()> {
    let n = ell.len();
    let check = |got: Scalar, want: &Scalar, what: String| -> Result<()> {
        if tolerance::close(&got, want, want, tolerance::PIPELINE_GUARD) {
            Ok(())
        } else {
            Err(Error::CrossCheckFailure(format!(
                "{what}: {} from string parameters vs {}",
                got.render(12),
                want.render(12)
            )))
        }
    };
    // ell[k] is l_{k+1}, m[k] is m_{k+1}.
    check((&m[0] * &ell[0]).recip(), &coeffs.b[0], "b_0".into())?;
    for j in 1..n.min(coeffs.depth()) {
        let b = (ell[j - 1].recip() + ell[j].recip()) / &m[j];
        check(b, &coeffs.b[j], format!("b_{j}"))?;
    }
    for j in 0..n.saturating_sub(1) {
        let a2 = (ell[j].square() * &m[j] * &m[j + 1]).recip();
        check(a2, &coeffs.a2[j], format!("a_{j}^2"))?;
    }
    Ok(())
}

/// `(L_N, M_N)` partial sums for `N = 1..=n`.
pub fn stieltjes_lm(coeffs: &RecursionCoefficients, n: usize) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let k = krein_parameters(coeffs, n)?;
    Ok((k.l_partial, k.m_partial))
}

/// Compare `L_N` with `t_N / s_N` and `M_N` with `v_{N-1} / h_N` for `N = 1..=n`.
pub fn lm_crosscheck(seq: &MomentSequence, n: usize) -> Result<()> {
    let coeffs = recursion_coeffs(seq, n)?;
    let (l, m) = stieltjes_lm(&coeffs, n)?;
    let aux = hankel::aux_dets(seq, n)?;
    for big_n in 1..=n {
        let l_det = aux.l_partial(big_n);
        let m_det = aux.sum_p0_sq(big_n - 1);
        let ok = tolerance::close(&l[big_n - 1], &l_det, &l_det, tolerance::PIPELINE_GUARD)
            && tolerance::close(&m[big_n - 1], &m_det, &m_det, tolerance::PIPELINE_GUARD);
        if !ok {
            return Err(Error::CrossCheckFailure(format!(
                "L/M partial sums disagree with determinant forms at N = {big_n}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    Log,
    Sqrt,
}

impl Growth {
    fn g(self, n: f64) -> f64 {
        match self {
            Growth::Log => n.ln(),
            Growth::Sqrt => n.sqrt(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Growth::Log => "log",
            Growth::Sqrt => "sqrt",
        }
    }
}

/// Least-squares fit `S_n ~ c1 + c2 g(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrendFit {
    pub growth: Growth,
    pub c1: f64,
    pub c2: f64,
    pub rms: f64,
    pub divergent: bool,
}

fn fit(partials: &[f64], growth: Growth) -> TrendFit {
    let n = partials.len() as f64;
    let xs: Vec<f64> = (1..=partials.len()).map(|k| growth.g(k as f64)).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = partials.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(partials).map(|(x, y)| (x - mx) * (y - my)).sum();
    let c2 = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let c1 = my - c2 * mx;
    let rms = (xs
        .iter()
        .zip(partials)
        .map(|(x, y)| (y - c1 - c2 * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    TrendFit {
        growth,
        c1,
        c2,
        rms,
        divergent: c2 > tolerance::TREND_RATIO * rms,
    }
}

/// Better of the log and square-root fits (smaller residual).
pub fn trend(partials: &[f64]) -> TrendFit {
    let a = fit(partials, Growth::Log);
    let b = fit(partials, Growth::Sqrt);
    if b.rms < a.rms {
        b
    } else {
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CarlemanReport {
    /// `sum_{k<=n} gamma_{2k}^{-1/(2k)}` for `n = 1..`.
    pub hamburger: Vec<Scalar>,
    pub hamburger_trend: TrendFit,
    /// `sum_{k<=n} gamma_k^{-1/(2k)}`, for Stieltjes input.
    pub stieltjes: Option<Vec<Scalar>>,
    pub stieltjes_trend: Option<TrendFit>,
}

/// `gamma_index^{-1/(2k)}`.
fn carleman_term(g: &Scalar, index: usize, k: usize, prec: u32) -> Result<Scalar> {
    if !g.is_positive() {
        return Err(Error::IndefiniteSequence { index });
    }
    let e = Scalar::ratio(-1, 2 * k as i64);
    Ok((g.ln(prec) * e).exp(prec))
}

/// Carleman partial sums through `n` terms, with growth fits.
pub fn carleman(seq: &MomentSequence, n: usize, prec: u32) -> Result<CarlemanReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("Carleman fit needs at least 2 terms".into()));
    }
    seq.require(2 * n)?;
    let ham_terms = (1..=n)
        .map(|k| carleman_term(&seq.gamma[2 * k], 2 * k, k, prec))
        .collect::<Result<Vec<_>>>()?;
    let hamburger = prefix_sums(&ham_terms);
    let to_f64 = |xs: &[Scalar]| xs.iter().map(Scalar::to_f64).collect::<Vec<_>>();
    let hamburger_trend = trend(&to_f64(&hamburger));
    let (stieltjes, stieltjes_trend) = if seq.kind == Kind::Stieltjes {
        let terms = (1..=n)
            .map(|k| carleman_term(&seq.gamma[k], k, k, prec))
            .collect::<Result<Vec<_>>>()?;
        let partials = prefix_sums(&terms);
        let t = trend(&to_f64(&partials));
        (Some(partials), Some(t))
    } else {
        (None, None)
    };
    Ok(CarlemanReport {
        hamburger,
        hamburger_trend,
        stieltjes,
        stieltjes_trend,
    })
}

/// Largest increment over the last quarter is below `1e-4` of the final value.
pub fn numerically_cauchy(partials: &[Scalar]) -> bool {
    let n = partials.len();
    if n < 4 {
        return false;
    }
    let last = partials[n - 1].to_f64().abs();
    let start = n - n / 4;
    let worst = (start.max(1)..n)
        .map(|k| (partials[k].to_f64() - partials[k - 1].to_f64()).abs())
        .fold(0.0, f64::max);
    last.is_finite() && worst < tolerance::CAUCHY_REL * last
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    HamburgerDeterminate,
    StieltjesDeterminateHamburgerIndeterminate,
    Indeterminate,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HamburgerDeterminate => "hamburger_determinate",
            Verdict::StieltjesDeterminateHamburgerIndeterminate => {
                "stieltjes_determinate_hamburger_indeterminate"
            }
            Verdict::Indeterminate => "indeterminate",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything the criteria look at.
#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    pub kind: Kind,
    pub carleman: CarlemanReport,
    /// Stieltjes `L_N` partial sums, when `P_n(0)` alternates as it must.
    pub l_partials: Option<Vec<Scalar>>,
    /// `sum_{j<N} P_j(0)^2`.
    pub m_partials: Vec<Scalar>,
    /// `sum_{j<N} Q_j(0)^2`.
    pub q_partials: Vec<Scalar>,
}

pub trait Criterion: Send + Sync {
    fn name(&self) -> &'static str;
    /// A verdict and its justification, or `None` to defer to later criteria.
    fn decide(&self, ev: &Evidence) -> Option<(Verdict, String)>;
}

pub struct CarlemanCriterion;

impl Criterion for CarlemanCriterion {
    fn name(&self) -> &'static str {
        "carleman"
    }

    fn decide(&self, ev: &Evidence) -> Option<(Verdict, String)> {
        let t = &ev.carleman.hamburger_trend;
        t.divergent.then(|| {
            (
                Verdict::HamburgerDeterminate,
                format!(
                    "Carleman sum grows like {} (slope {:.4e}, residual {:.4e})",
                    t.growth.as_str(),
                    t.c2,
                    t.rms
                ),
            )
        })
    }
}

pub struct StieltjesLmCriterion;

impl Criterion for StieltjesLmCriterion {
    fn name(&self) -> &'static str {
        "stieltjes_lm"
    }

    fn decide(&self, ev: &Evidence) -> Option<(Verdict, String)> {
        if ev.kind != Kind::Stieltjes {
            return None;
        }
        let l = ev.l_partials.as_ref()?;
        let (lc, mc) = (numerically_cauchy(l), numerically_cauchy(&ev.m_partials));
        let last = |xs: &[Scalar]| xs.last().map(|x| x.render(10)).unwrap_or_default();
        match (lc, mc) {
            (true, true) => Some((
                Verdict::Indeterminate,
                format!("L and M partial sums settle near {} and {}", last(l), last(&ev.m_partials)),
            )),
            (false, true) => Some((
                Verdict::StieltjesDeterminateHamburgerIndeterminate,
                format!("M settles near {} while L keeps growing", last(&ev.m_partials)),
            )),
            _ => None,
        }
    }
}

/// Hamburger analogue: both `sum P_n(0)^2` and `sum Q_n(0)^2` settle.
pub struct PolynomialSumsCriterion;

impl Criterion for PolynomialSumsCriterion {
    fn name(&self) -> &'static str {
        "polynomial_sums"
    }

    fn decide(&self, ev: &Evidence) -> Option<(Verdict, String)> {
        (numerically_cauchy(&ev.m_partials) && numerically_cauchy(&ev.q_partials)).then(|| {
            (
                Verdict::Indeterminate,
                "sums of P_n(0)^2 and Q_n(0)^2 both settle".to_string(),
            )
        })
    }
}

/// Criteria tried in order; the first one to decide wins.
pub struct CriterionRegistry {
    criteria: Vec<Box<dyn Criterion>>,
}

impl CriterionRegistry {
    pub fn empty() -> Self {
        CriterionRegistry { criteria: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.push(Box::new(CarlemanCriterion));
        r.push(Box::new(StieltjesLmCriterion));
        r.push(Box::new(PolynomialSumsCriterion));
        r
    }

    pub fn push(&mut self, c: Box<dyn Criterion>) {
        self.criteria.push(c);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.criteria.iter().map(|c| c.name()).collect()
    }

    pub fn decide(&self, ev: &Evidence) -> (Verdict, Vec<String>) {
        let mut trail = Vec::new();
        for c in &self.criteria {
            match c.decide(ev) {
                Some((v, why)) => {
                    trail.push(format!("{}: {why}", c.name()));
                    return (v, trail);
                }
                None => trail.push(format!("{}: no decision", c.name())),
            }
        }
        (Verdict::Inconclusive, trail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminacyReport {
    pub depth: usize,
    pub precision: u32,
    pub evidence: Evidence,
    pub verdict: Verdict,
    pub trail: Vec<String>,
}

/// Gather evidence at depth `n` (needs `gamma_0..gamma_{2n}`) and run the
/// standard criteria.
pub fn classify(seq: &MomentSequence, n: usize, prec: u32) -> Result<DeterminacyReport> {
    classify_with(&CriterionRegistry::standard(), seq, n, prec)
}

pub fn classify_with(
    registry: &CriterionRegistry,
    seq: &MomentSequence,
    n: usize,
    prec: u32,
) -> Result<DeterminacyReport> {
    seq.require(2 * n)?;
    let fseq = seq.to_mode(Mode::Float(prec));
    let carleman = carleman(&fseq, n, prec)?;
    let coeffs = recursion_coeffs(&fseq, n)?;
    let e = orthopoly::eval_monic(&coeffs, &ComplexScalar::zero(), n - 1)?;
    let mut pp = Vec::with_capacity(n);
    let mut qq = Vec::with_capacity(n);
    for j in 0..n {
        pp.push(same_index(&e.p_hat[j], &e.p_hat[j], &e.norm2[j]).re);
        qq.push(same_index(&e.q_hat[j], &e.q_hat[j], &e.norm2[j]).re);
    }
    let l_partials = if seq.kind == Kind::Stieltjes {
        match stieltjes_lm(&coeffs, n) {
            Ok((l, _)) => Some(l),
            Err(Error::NotStieltjes(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let evidence = Evidence {
        kind: seq.kind,
        carleman,
        l_partials,
        m_partials: prefix_sums(&pp),
        q_partials: prefix_sums(&qq),
    };
    let (verdict, trail) = registry.decide(&evidence);
    Ok(DeterminacyReport {
        depth: n,
        precision: prec,
        evidence,
        verdict,
        trail,
    })
}

/// Density for the Krein integral test.
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    /// `F(x) = exp(-|x|^alpha)`.
    ExpPow(f64),
    /// Samples `(x, F(x))` sorted by `x`, interpolated linearly in `ln F`.
    Table(Vec<(f64, f64)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    Convergent,
    Divergent,
    Unknown,
}

impl Convergence {
    pub fn as_str(self) -> &'static str {
        match self {
            Convergence::Convergent => "convergent",
            Convergence::Divergent => "divergent",
            Convergence::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub integral_estimate: f64,
    /// `beta` in `integrand ~ x^-beta` near the cutoff.
    pub tail_exponent: Option<f64>,
    pub verdict: Convergence,
    pub warnings: Vec<String>,
}

impl Density {
    /// `-ln F(x)`; `None` outside a table's range.
    fn neg_log(&self, x: f64) -> Option<f64> {
        match self {
            Density::ExpPow(alpha) => Some(x.abs().powf(*alpha)),
            Density::Table(pts) => {
                let i = pts.partition_point(|p| p.0 <= x);
                if i == 0 || (i == pts.len() && x > pts[pts.len() - 1].0) {
                    return None;
                }
                let (x0, f0) = pts[i - 1];
                if i == pts.len() || x == x0 {
                    return Some(-f0.ln());
                }
                let (x1, f1) = pts[i];
                let t = (x - x0) / (x1 - x0);
                Some(-((1.0 - t) * f0.ln() + t * f1.ln()))
            }
        }
    }

    fn range(&self, half_line: bool, cutoff: f64) -> (f64, f64) {
        let lo = if half_line { 0.0 } else { -cutoff };
        match self {
            Density::ExpPow(_) => (lo, cutoff),
            Density::Table(pts) => (
                pts.first().map_or(0.0, |p| p.0).max(lo),
                pts.last().map_or(0.0, |p| p.0).min(cutoff),
            ),
        }
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Integral of `-ln F(x)/(1+x^2)` over `[-X, X]` (or of
/// `-ln F(x)/((1+x) sqrt x)` over `[0, X]`), with a power-law fit of the
/// integrand near `X` deciding convergence of the infinite integral.
pub fn krein_density_test(density: &Density, half_line: bool, cutoff: f64, tol: f64) -> Result<DensityReport> {
    if cutoff <= 1.0 {
        return Err(Error::InvalidArgument("cutoff must exceed 1".into()));
    }
    let mut warnings = Vec::new();
    if let Density::Table(pts) = density {
        if pts.len() < 2 || pts.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidDensity("table needs increasing x".into()));
        }
        if let Some(p) = pts.iter().find(|p| !(0.0..=1.0).contains(&p.1)) {
            return Err(Error::InvalidDensity(format!("F({}) = {} outside [0, 1]", p.0, p.1)));
        }
        if pts.iter().all(|p| p.1 == 1.0) {
            warnings.push("F is identically 1; not a probability density".into());
        }
    }
    let (lo, hi) = density.range(half_line, cutoff);
    let kernel = |x: f64| -> f64 {
        if half_line {
            1.0 / ((1.0 + x) * x.sqrt())
        } else {
            1.0 / (1.0 + x * x)
        }
    };
    let integrand = |x: f64| density.neg_log(x).map_or(0.0, |v| v * kernel(x));
    let integral_estimate = if half_line {
        // x = u^2 removes the 1/sqrt(x) singularity.
        let g = |u: f64| density.neg_log(u * u).map_or(0.0, |v| 2.0 * v / (1.0 + u * u));
        simpson(&g, lo.sqrt(), hi.sqrt(), tol)
    } else {
        simpson(&integrand, lo, 0.0_f64.max(lo), tol) + simpson(&integrand, 0.0_f64.max(lo), hi, tol)
    };
    if integral_estimate.is_infinite() || integral_estimate.is_nan() {
        return Ok(DensityReport {
            integral_estimate: f64::INFINITY,
            tail_exponent: None,
            verdict: Convergence::Divergent,
            warnings,
        });
    }
    // Fit log|integrand| against log x over the last decade before the cutoff.
    let (a, b) = ((hi / 10.0).max(1.0), hi);
    let samples: Vec<(f64, f64)> = (0..=16)
        .map(|k| a * (b / a).powf(k as f64 / 16.0))
        .filter_map(|x| {
            let v = integrand(x).abs().max(integrand(-x).abs());
            (v > 0.0 && v.is_finite()).then(|| (x.ln(), v.ln()))
        })
        .collect();
    let tail_exponent = (samples.len() >= 4 && b > a).then(|| {
        let n = samples.len() as f64;
        let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
        let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
        let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
        let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
        -sxy / sxx
    });
    let verdict = match tail_exponent {
        None => Convergence::Convergent,
        Some(beta) if beta > 1.05 => Convergence::Convergent,
        Some(beta) if beta <= 1.01 => Convergence::Divergent,
        Some(_) => Convergence::Unknown,
    };
    Ok(DensityReport {
        integral_estimate,
        tail_exponent,
        verdict,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate;

    fn coeffs(name: &str, depth: usize) -> RecursionCoefficients {
        recursion_coeffs(&generate(name, 2 * depth, 128).unwrap(), depth).unwrap()
    }

    #[test]
    fn laguerre_string_parameters() {
        let k = krein_parameters(&coeffs("laguerre", 6), 5).unwrap();
        assert_eq!(k.m[0], Scalar::one());
        assert_eq!(k.ell[0], Scalar::one());
        assert_eq!(k.m[1], Scalar::one());
        assert_eq!(k.c[..3], [Scalar::one(), Scalar::one(), Scalar::one()]);
        assert_eq!(k.l_partial[0], Scalar::one());
        assert!(k.l_partial.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn hermite_is_not_stieltjes() {
        assert!(matches!(
            krein_parameters(&coeffs("hermite", 4), 3),
            Err(Error::NotStieltjes(_))
        ));
    }

    #[test]
    fn trend_separates_sqrt_from_constant() {
        let grow: Vec<f64> = (1..=40).map(|n| (n as f64).sqrt() * 2.0 + 1.0).collect();
        assert!(trend(&grow).divergent);
        let flat: Vec<f64> = (1..=40).map(|n| 1.0 - (-(n as f64)).exp()).collect();
        assert!(!trend(&flat).divergent);
    }

    #[test]
    fn cauchy_test() {
        let settled: Vec<Scalar> = (1..=20).map(|n| Scalar::float(64, 2.0 - 0.5f64.powi(n))).collect();
        assert!(numerically_cauchy(&settled));
        let growing: Vec<Scalar> = (1..=20).map(Scalar::int).collect();
        assert!(!numerically_cauchy(&growing));
    }

    #[test]
    fn density_examples() {
        let r = krein_density_test(&Density::ExpPow(0.5), false, 1e6, 1e-10).unwrap();
        assert_eq!(r.verdict, Convergence::Convergent);
        let r = krein_density_test(&Density::ExpPow(1.0), false, 1e6, 1e-10).unwrap();
        assert_eq!(r.verdict, Convergence::Divergent);
        let ones = Density::Table(vec![(0.0, 1.0), (10.0, 1.0)]);
        let r = krein_density_test(&ones, true, 100.0, 1e-10).unwrap();
        assert_eq!((r.integral_estimate, r.verdict), (0.0, Convergence::Convergent));
        assert!(!r.warnings.is_empty());
        let bad = Density::Table(vec![(0.0, 1.5), (1.0, 0.5)]);
        assert!(matches!(krein_density_test(&bad, true, 10.0, 1e-8), Err(Error::InvalidDensity(_))));
    }
}
