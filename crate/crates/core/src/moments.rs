//! Moment sequences and the transforms that act on them.

use std::fmt;

use rug::Integer;

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{joint_mode, Mode, Scalar};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Hamburger,
    Stieltjes,
    Unknown,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Hamburger => "hamburger",
            Kind::Stieltjes => "stieltjes",
            Kind::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "hamburger" => Some(Kind::Hamburger),
            "stieltjes" => Some(Kind::Stieltjes),
            "unknown" => Some(Kind::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite moment prefix `gamma_0 ..= gamma_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    pub gamma: Vec<Scalar>,
    pub kind: Kind,
    pub label: String,
}

impl MomentSequence {
    /// Wraps raw values without rescaling. Use [`normalize`] for `gamma_0 = 1`.
    pub fn new(gamma: Vec<Scalar>, kind: Kind, label: impl Into<String>) -> Self {
        MomentSequence {
            gamma,
            kind,
            label: label.into(),
        }
    }

    /// Largest available moment index.
    pub fn k(&self) -> usize {
        self.gamma.len().saturating_sub(1)
    }

    pub fn mode(&self) -> Mode {
        joint_mode(&self.gamma)
    }

    pub fn is_exact(&self) -> bool {
        self.mode() == Mode::Exact
    }

    /// Moment `gamma_j`, or `TooShort`.
    pub fn get(&self, j: usize) -> Result<&Scalar> {
        self.gamma.get(j).ok_or(Error::TooShort {
            needed: j,
            have: self.k(),
        })
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if self.gamma.len() > needed {
            Ok(())
        } else {
            Err(Error::TooShort {
                needed,
                have: self.k(),
            })
        }
    }

    /// Same moments converted to `mode`.
    pub fn to_mode(&self, mode: Mode) -> Self {
        MomentSequence {
            gamma: self.gamma.iter().map(|g| g.to_mode(mode)).collect(),
            kind: self.kind,
            label: self.label.clone(),
        }
    }

    /// Apply the moment functional to a polynomial.
    pub fn expect(&self, p: &Poly) -> Result<Scalar> {
        if let Some(d) = p.degree() {
            self.require(d)?;
        }
        Ok(p.coeffs
            .iter()
            .zip(&self.gamma)
            .map(|(c, g)| c * g)
            .sum())
    }
}

/// Rescale so that `gamma_0 = 1`.
pub fn normalize(raw: &[Scalar], kind: Kind) -> Result<MomentSequence> {
    let g0 = raw.first().ok_or(Error::EmptyInput)?;
    if !g0.is_positive() {
        return Err(Error::NonpositiveMass);
    }
    let gamma = raw.iter().map(|g| g / g0).collect();
    Ok(MomentSequence::new(gamma, kind, ""))
}

/// Moments of the measure translated by `c`:
/// `gamma_n(c) = sum_j binom(n, j) c^j gamma_{n-j}`.
pub fn shift_moments(seq: &MomentSequence, c: &Scalar) -> MomentSequence {
    let k = seq.gamma.len();
    let mut powers = Vec::with_capacity(k);
    let mut p = Scalar::one();
    for _ in 0..k {
        powers.push(p.clone());
        p = &p * c;
    }
    let gamma = (0..k)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let binom = Scalar::from_integer(Integer::from(Integer::binomial_u(n as u32, j as u32)));
                    binom * &powers[j] * &seq.gamma[n - j]
                })
                .sum()
        })
        .collect();
    MomentSequence::new(gamma, Kind::Unknown, format!("{} shifted", seq.label).trim().to_string())
}

/// Index-shifted moments `gamma^(l)_j = gamma_{j+l} / gamma_l`.
pub fn index_shift(seq: &MomentSequence, ell: usize) -> Result<MomentSequence> {
    if ell == 0 {
        return Err(Error::InvalidArgument("index shift must be at least 1".into()));
    }
    if ell % 2 == 1 && seq.kind != Kind::Stieltjes {
        return Err(Error::OddShiftOnHamburger(ell));
    }
    seq.require(ell + 1)?;
    let g = &seq.gamma[ell];
    if g.is_zero() {
        return Err(Error::DegenerateSequence { index: ell });
    }
    let gamma = seq.gamma[ell..].iter().map(|x| x / g).collect();
    Ok(MomentSequence::new(gamma, seq.kind, seq.label.clone()))
}

/// Even embedding `Gamma_{2m} = gamma_m`, `Gamma_{2m+1} = 0`.
pub fn even_embed(seq: &MomentSequence) -> Result<MomentSequence> {
    if seq.kind != Kind::Stieltjes {
        return Err(Error::NotStieltjes("even embedding needs a Stieltjes sequence".into()));
    }
    let mode = seq.mode();
    let mut gamma = Vec::with_capacity(2 * seq.gamma.len());
    for (m, g) in seq.gamma.iter().enumerate() {
        if m > 0 {
            gamma.push(Scalar::zero().to_mode(mode));
        }
        gamma.push(g.clone());
    }
    Ok(MomentSequence::new(gamma, Kind::Hamburger, seq.label.clone()))
}

/// Moments of `prod |x - z_i|^-2 d rho(x)` for the solutions `rho` with
/// `int d rho / (x - z_i) = zeta_i`. The returned sequence is not rescaled.
pub fn modified_moments(
    seq: &MomentSequence,
    z: &[ComplexScalar],
    zeta: &[ComplexScalar],
) -> Result<MomentSequence> {
    let n = z.len();
    if zeta.len() != n {
        return Err(Error::InvalidArgument("z and zeta lengths differ".into()));
    }
    for (i, zi) in z.iter().enumerate() {
        if !zi.im.is_positive() {
            return Err(Error::LowerHalfPlanePoint(i));
        }
        if z[..i].iter().any(|zj| zj == zi) {
            return Err(Error::CoincidentPoints);
        }
    }
    if seq.k() < 2 * n {
        return Err(Error::TooShort {
            needed: 2 * n,
            have: seq.k(),
        });
    }
    if n == 0 {
        return Ok(seq.clone());
    }

    // L(x) = prod (x - z_i)(x - conj z_i), real and monic of degree 2n.
    let mut l = Poly::one();
    for zi in z {
        let quad = Poly::new(vec![zi.norm_sqr(), -(&zi.re + &zi.re), Scalar::one()]);
        l = &l * &quad;
    }

    // Residue prefactors 1 / ((z_i - conj z_i) prod_{j != i} (z_i - z_j)(z_i - conj z_j)).
    let pref: Vec<ComplexScalar> = z
        .iter()
        .enumerate()
        .map(|(i, zi)| {
            let mut d = zi - &zi.conj();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    d = &d * &(&(zi - zj) * &(zi - &zj.conj()));
                }
            }
            d.recip()
        })
        .collect();

    let mode = seq.mode().join(joint_mode(z.iter().chain(zeta).flat_map(|c| [&c.re, &c.im])));
    let top = seq.k() - 2 * n;
    let mut out = Vec::with_capacity(top + 1);
    let mut zpow: Vec<ComplexScalar> = vec![ComplexScalar::one(); n];
    for m in 0..=top {
        let quotient = poly_quotient_monomial(m, &l);
        let mut total = ComplexScalar::real(seq.expect(&quotient)?);
        for i in 0..n {
            let r = &zpow[i] * &pref[i];
            total = &total + &(&r * &zeta[i]);
            total = &total + &(&r.conj() * &zeta[i].conj());
        }
        let scale = tolerance::magnitude([&total.re]);
        if !tolerance::close(&total.im, &Scalar::zero(), &scale, tolerance::IDENTITY_GUARD) {
            return Err(Error::NonRealResult { index: m });
        }
        out.push(total.re.to_mode(mode));
        for i in 0..n {
            zpow[i] = &zpow[i] * &z[i];
        }
    }
    Ok(MomentSequence::new(out, Kind::Hamburger, seq.label.clone()))
}

/// Polynomial part of `x^m / l(x)` for a monic `l`.
fn poly_quotient_monomial(m: usize, l: &Poly) -> Poly {
    let d = l.degree().unwrap_or(0);
    if m < d {
        return Poly::zero();
    }
    let mut rem: Vec<Scalar> = vec![Scalar::zero(); m + 1];
    rem[m] = Scalar::one();
    let mut q = vec![Scalar::zero(); m - d + 1];
    for k in (d..=m).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        q[k - d] = c.clone();
        for (j, lj) in l.coeffs.iter().enumerate().take(d + 1) {
            rem[k - d + j] = &rem[k - d + j] - &(&c * lj);
        }
    }
    Poly::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    fn seq(v: &[i64], kind: Kind) -> MomentSequence {
        MomentSequence::new(ints(v), kind, "t")
    }

    #[test]
    fn normalize_scales_by_mass() {
        let s = normalize(&ints(&[2, 2, 4]), Kind::Unknown).unwrap();
        assert_eq!(s.gamma, ints(&[1, 1, 2]));
        let t = normalize(&s.gamma, Kind::Unknown).unwrap();
        assert_eq!(t.gamma, s.gamma);
        assert_eq!(normalize(&[], Kind::Unknown), Err(Error::EmptyInput));
        assert_eq!(normalize(&ints(&[0, 1]), Kind::Unknown), Err(Error::NonpositiveMass));
    }

    #[test]
    fn shift_examples() {
        let s = seq(&[1, 0, 1], Kind::Hamburger);
        let t = shift_moments(&s, &Scalar::one());
        assert_eq!(t.gamma, ints(&[1, 1, 2]));
        assert_eq!(t.kind, Kind::Unknown);
        let back = shift_moments(&t, &Scalar::int(-1));
        assert_eq!(back.gamma, s.gamma);
    }

    #[test]
    fn index_shift_rules() {
        let lag = seq(&[1, 1, 2, 6, 24], Kind::Stieltjes);
        assert_eq!(index_shift(&lag, 1).unwrap().gamma, ints(&[1, 2, 6, 24]));
        let her = seq(&[1, 0, 1, 0, 3, 0, 15], Kind::Hamburger);
        assert_eq!(index_shift(&her, 2).unwrap().gamma, ints(&[1, 0, 3, 0, 15]));
        assert_eq!(index_shift(&her, 1), Err(Error::OddShiftOnHamburger(1)));
        assert!(matches!(index_shift(&lag, 4), Err(Error::TooShort { .. })));
    }

    #[test]
    fn even_embedding() {
        let s = seq(&[1, 1, 2], Kind::Stieltjes);
        assert_eq!(even_embed(&s).unwrap().gamma, ints(&[1, 0, 1, 0, 2]));
        assert_eq!(even_embed(&seq(&[1], Kind::Stieltjes)).unwrap().gamma, ints(&[1]));
        assert!(even_embed(&seq(&[1, 0, 1], Kind::Hamburger)).is_err());
    }

    #[test]
    fn modified_moments_single_point() {
        let s = seq(&[1, 0, 1, 0, 3, 0, 15], Kind::Hamburger);
        let z = [ComplexScalar::i()];
        let zeta = [ComplexScalar::new(Scalar::ratio(1, 3), Scalar::ratio(1, 2))];
        let g = modified_moments(&s, &z, &zeta).unwrap();
        assert_eq!(g.gamma.len(), 5);
        assert_eq!(g.gamma[0], Scalar::ratio(1, 2));
        assert_eq!(g.gamma[2], Scalar::ratio(1, 2));
        let real = [ComplexScalar::real(Scalar::int(2))];
        assert_eq!(modified_moments(&s, &z, &real).unwrap().gamma[0], Scalar::zero());
        assert_eq!(
            modified_moments(&s, &[ComplexScalar::gauss(0, -1)], &zeta),
            Err(Error::LowerHalfPlanePoint(0))
        );
        assert_eq!(modified_moments(&s, &[], &[]).unwrap(), s);
    }

    #[test]
    fn quotient_of_monomial() {
        let l = Poly::new(ints(&[1, 0, 1]));
        assert_eq!(poly_quotient_monomial(2, &l), Poly::new(ints(&[1])));
        assert_eq!(poly_quotient_monomial(4, &l), Poly::new(ints(&[-1, 0, 1])));
        assert_eq!(poly_quotient_monomial(1, &l), Poly::zero());
    }
}
