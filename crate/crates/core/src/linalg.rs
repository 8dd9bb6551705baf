//! Dense determinants and kernels over [`Scalar`].

use crate::scalar::{joint_mode, Mode, Scalar};
use crate::tolerance;

pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq)]
pub struct Determinant {
    pub value: Scalar,
    /// Pivot growth `max|U| / max|A|` for float elimination.
    pub growth: Option<f64>,
    /// Estimated trustworthy significant digits (float mode only).
    pub digits: Option<f64>,
}

impl Determinant {
    /// True when the growth factor leaves fewer than ten significant digits.
    pub fn low_confidence(&self) -> bool {
        self.digits.is_some_and(|d| d < 10.0)
    }
}

/// Determinant of a square matrix: Bareiss fraction-free elimination for
/// exact entries, partially pivoted LU otherwise.
pub fn determinant(a: &[Vec<Scalar>]) -> Determinant {
    let n = a.len();
    if n == 0 {
        return Determinant {
            value: Scalar::one(),
            growth: None,
            digits: None,
        };
    }
    match joint_mode(a.iter().flatten()) {
        Mode::Exact => Determinant {
            value: bareiss(a.to_vec()),
            growth: None,
            digits: None,
        },
        Mode::Float(p) => lu_det(a.to_vec(), p),
    }
}

fn bareiss(mut m: Matrix) -> Scalar {
    let n = m.len();
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn lu_det(mut m: Matrix, prec: u32) -> Determinant {
    let n = m.len();
    let max_a = tolerance::magnitude(m.iter().flatten()).to_f64();
    let mut max_u = max_a;
    let mut det = Scalar::one().to_mode(Mode::Float(prec));
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&x, &y| {
                m[x][k]
                    .abs()
                    .partial_cmp(&m[y][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        if m[piv][k].is_zero() {
            return Determinant {
                value: Scalar::zero().to_mode(Mode::Float(prec)),
                growth: Some(max_u / max_a.max(f64::MIN_POSITIVE)),
                digits: Some(0.0),
            };
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = det * &pivot;
        for i in k + 1..n {
            let f = &m[i][k] / &pivot;
            for j in k + 1..n {
                let v = &m[i][j] - &(&f * &m[k][j]);
                max_u = max_u.max(v.abs().to_f64());
                m[i][j] = v;
            }
        }
    }
    let growth = if max_a > 0.0 { max_u / max_a } else { 1.0 };
    let digits = f64::from(prec) * std::f64::consts::LOG10_2 - (growth * n as f64).log10();
    Determinant {
        value: det,
        growth: Some(growth),
        digits: Some(digits),
    }
}

/// All leading principal minors `det a[..k][..k]` for `k = 1..=n` of an exact
/// matrix, from one fraction-free elimination pass. Minors past a zero pivot
/// are computed individually.
pub fn leading_minors(a: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = Scalar::one();
    for k in 0..n {
        out.push(m[k][k].clone());
        if m[k][k].is_zero() {
            for j in k + 2..=n {
                let sub: Matrix = a[..j].iter().map(|r| r[..j].to_vec()).collect();
                out.push(determinant(&sub).value);
            }
            return out;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    out
}

/// A nonzero vector `v` with `a v = 0` for a wide matrix (`rows < cols`), by
/// row reduction. Float pivots below `2^-(p/2)` times the largest entry are
/// treated as zero.
pub fn kernel_vector(a: &[Vec<Scalar>]) -> Vec<Scalar> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mode = joint_mode(a.iter().flatten());
    let eps = tolerance::abort_slack(mode) * tolerance::magnitude(a.iter().flatten());
    let mut m = a.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows).max_by(|&x, &y| {
            m[x][c]
                .abs()
                .partial_cmp(&m[y][c].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(best) = best else { break };
        if m[best][c].abs() <= eps || m[best][c].is_zero() {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &p;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = &m[i][j] - &(&f * &m[r][j]);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free = (0..cols)
        .find(|c| !pivot_cols.contains(c))
        .expect("wide matrix has a free column");
    let mut v = vec![Scalar::zero().to_mode(mode); cols];
    v[free] = Scalar::one().to_mode(mode);
    for (i, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = -&m[i][free];
    }
    v
}
