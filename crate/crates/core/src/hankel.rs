//! Hankel determinants, the positivity test for solubility, and the auxiliary
//! determinants that serve as exact oracles for the recursion-based code.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::moments::{Kind, MomentSequence};
use crate::poly::Poly;
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    HamburgerOk,
    StieltjesOk,
    /// Some `h_j = 0`: the measure has finite support.
    Degenerate,
    /// Hankel determinants positive but some `s_j <= 0`.
    NotStieltjes,
    /// Some `h_j < 0`: no positive measure has these moments.
    NotHamburger,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HamburgerOk => "hamburger_ok",
            Verdict::StieltjesOk => "stieltjes_ok",
            Verdict::Degenerate => "degenerate",
            Verdict::NotStieltjes => "not_stieltjes",
            Verdict::NotHamburger => "not_hamburger",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HankelReport {
    /// `h[j] = h_j`, with the empty-determinant convention `h_0 = 1`.
    pub h: Vec<Scalar>,
    /// `s[j] = s_j`, with `s_0 = 1`.
    pub s: Vec<Scalar>,
    pub first_h_failure: Option<usize>,
    pub first_s_failure: Option<usize>,
    pub verdict: Verdict,
    /// Indices whose float determinant has fewer than ten trusted digits.
    pub low_confidence: Vec<usize>,
}

/// `gamma_{i+j+offset}` for `i, j < n`.
pub fn hankel_matrix(seq: &MomentSequence, n: usize, offset: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| seq.gamma[i + j + offset].clone()).collect())
        .collect()
}

fn minors(seq: &MomentSequence, n: usize, offset: usize, low: &mut Vec<usize>) -> Vec<Scalar> {
    let mut out = vec![Scalar::one()];
    if n == 0 {
        return out;
    }
    let full = hankel_matrix(seq, n, offset);
    match seq.mode() {
        Mode::Exact => out.extend(linalg::leading_minors(&full)),
        Mode::Float(_) => {
            for j in 1..=n {
                let sub: Matrix = full[..j].iter().map(|r| r[..j].to_vec()).collect();
                let d = linalg::determinant(&sub);
                if d.low_confidence() {
                    low.push(j);
                }
                out.push(d.value);
            }
        }
    }
    out
}

/// `h_1..h_N` and as many `s_j` as the prefix supports (up to `N`).
pub fn hankel_dets(seq: &MomentSequence, n: usize) -> Result<HankelReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("hankel_dets needs N >= 1".into()));
    }
    seq.require(2 * n - 2)?;
    let s_count = n.min(seq.gamma.len() / 2);
    let mut low = Vec::new();
    let h = minors(seq, n, 0, &mut low);
    let s = minors(seq, s_count, 1, &mut Vec::new());
    let first_h_failure = (1..h.len()).find(|&j| !h[j].is_positive());
    let first_s_failure = (1..s.len()).find(|&j| !s[j].is_positive());
    let verdict = match first_h_failure {
        Some(j) if h[j].is_zero() => Verdict::Degenerate,
        Some(_) => Verdict::NotHamburger,
        None if s_count > 0 && first_s_failure.is_none() => Verdict::StieltjesOk,
        None if seq.kind == Kind::Stieltjes => Verdict::NotStieltjes,
        None => Verdict::HamburgerOk,
    };
    Ok(HankelReport {
        h,
        s,
        first_h_failure,
        first_s_failure,
        verdict,
        low_confidence: low,
    })
}

/// Positivity test to the largest depth the prefix supports.
pub fn existence_check(seq: &MomentSequence) -> HankelReport {
    let n = seq.k() / 2 + 1;
    hankel_dets(seq, n).expect("depth chosen to fit the prefix")
}

/// Auxiliary determinants. Every list is indexed by the subscript it carries
/// in the determinant formulas; index 0 holds the empty-determinant value.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxDets {
    /// `h_0 ..= h_{n+1}`.
    pub h: Vec<Scalar>,
    /// `s_0 ..= s_n`.
    pub s: Vec<Scalar>,
    /// `h~_0 ..= h~_n`: `H_j` with its last column replaced by `gamma_j..gamma_{2j-1}`; `h~_0 = 0`.
    pub h_tilde: Vec<Scalar>,
    /// `t_0 ..= t_n`, with `-Q_j(0)/P_j(0) = t_j / s_j`; `t_0 = 0`.
    pub t: Vec<Scalar>,
    /// `v_0 ..= v_n`: `det(gamma_{i+j+2})`, `j x j`.
    pub v: Vec<Scalar>,
    /// `w_0 ..= w_{n+2}`: the `m x m` doubly bordered determinant.
    pub w: Vec<Scalar>,
    /// `y_0 ..= y_{n-1}`: `det(gamma_{i+j+4})`, `m x m`.
    pub y: Vec<Scalar>,
}

impl AuxDets {
    /// `sum_{j<=n} P_j(0)^2 = v_n / h_{n+1}`.
    pub fn sum_p0_sq(&self, n: usize) -> Scalar {
        &self.v[n] / &self.h[n + 1]
    }

    /// `sum_{j<=n} Q_j(0)^2 = -w_{n+2} / h_{n+1}`.
    pub fn sum_q0_sq(&self, n: usize) -> Scalar {
        -(&self.w[n + 2] / &self.h[n + 1])
    }

    /// `-Q_n(0)/P_n(0) = t_n / s_n`.
    pub fn l_partial(&self, n: usize) -> Scalar {
        &self.t[n] / &self.s[n]
    }

    /// `y_{n-1} / h_{n+1}`, which diverges iff the Hamburger problem is determinate.
    pub fn determinacy_ratio(&self, n: usize) -> Scalar {
        &self.y[n - 1] / &self.h[n + 1]
    }
}

fn det(m: Matrix) -> Scalar {
    linalg::determinant(&m).value
}

/// Auxiliary determinants through subscript `n` (needs `gamma_0..gamma_{2n}`).
pub fn aux_dets(seq: &MomentSequence, n: usize) -> Result<AuxDets> {
    if n == 0 {
        return Err(Error::InvalidArgument("aux_dets needs n >= 1".into()));
    }
    seq.require(2 * n)?;
    let g = |i: usize| seq.gamma[i].clone();
    let mode = seq.mode();
    let zero = || Scalar::zero().to_mode(mode);

    let mut low = Vec::new();
    let h = minors(seq, n + 1, 0, &mut low);
    let s = minors(seq, n, 1, &mut low);

    let mut h_tilde = vec![Scalar::zero()];
    let mut t = vec![Scalar::zero()];
    let mut v = vec![Scalar::one()];
    for j in 1..=n {
        h_tilde.push(det((0..j)
            .map(|r| {
                (0..j)
                    .map(|c| if c + 1 == j { g(r + j) } else { g(r + c) })
                    .collect()
            })
            .collect()));
        // Top row (0, gamma_0, ..., gamma_{j-1}) over rows (gamma_r, ..., gamma_{r+j}).
        let mut rows: Matrix = Vec::with_capacity(j + 1);
        rows.push(std::iter::once(zero()).chain((0..j).map(g)).collect());
        rows.extend((0..j).map(|r| (0..=j).map(|c| g(r + c)).collect()));
        t.push(-det(rows));
        v.push(det(hankel_matrix(seq, j, 2)));
    }

    // w_m: first row and column (0, 0, gamma_0, ..., gamma_{m-3}); inner block gamma_{r+c-2}.
    let mut w = vec![Scalar::one()];
    for m in 1..=n + 2 {
        let entry = |r: usize, c: usize| -> Scalar {
            match (r, c) {
                (0, 0) | (0, 1) | (1, 0) => zero(),
                (0, c) => g(c - 2),
                (r, 0) => g(r - 2),
                (r, c) => g(r + c - 2),
            }
        };
        w.push(det((0..m).map(|r| (0..m).map(|c| entry(r, c)).collect()).collect()));
    }

    let y = (0..n).map(|m| det(hankel_matrix(seq, m, 4))).collect();

    Ok(AuxDets {
        h,
        s,
        h_tilde,
        t,
        v,
        w,
        y,
    })
}

/// Cofactors of the last row of the bordered matrix whose first `n` rows are
/// `gamma_{r}..gamma_{r+n}`.
fn bordered_cofactors(seq: &MomentSequence, n: usize) -> Result<Vec<Scalar>> {
    if n > 0 {
        seq.require(2 * n - 1)?;
    }
    Ok((0..=n)
        .map(|c| {
            let minor: Matrix = (0..n)
                .map(|r| (0..=n).filter(|&k| k != c).map(|k| seq.gamma[r + k].clone()).collect())
                .collect();
            let d = det(minor);
            if (n + c) % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect())
}

/// `S_n(x)`: the bordered Hankel determinant with last row `1, x, ..., x^n`.
/// Equals `sqrt(h_n h_{n+1}) P_n(x)`.
pub fn bordered_p(seq: &MomentSequence, n: usize) -> Result<Poly> {
    Ok(Poly::new(bordered_cofactors(seq, n)?))
}

/// The same determinant with last row `R_{n,0}(x), ..., R_{n,n}(x)`, where
/// `R_{n,j}(x) = sum_{k<j} gamma_{j-1-k} x^k`. Equals `sqrt(h_n h_{n+1}) Q_n(x)`.
pub fn bordered_q(seq: &MomentSequence, n: usize) -> Result<Poly> {
    let cof = bordered_cofactors(seq, n)?;
    let mut out = Poly::zero();
    for (j, cj) in cof.iter().enumerate() {
        let r = Poly::new((0..j).map(|k| seq.gamma[j - 1 - k].clone()).collect());
        out = &out + &r.scale(cj);
    }
    Ok(out)
}
