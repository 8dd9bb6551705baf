//! Transfer matrices at base point 0, the Nevanlinna matrix `A, B, C, D`,
//! the fractional linear parametrization, Weyl disks and Pick matrices.

use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::orthopoly::{self, same_index, RecursionCoefficients};
use crate::scalar::{Mode, Scalar};
use crate::tolerance;

/// A point of the Riemann sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum Extended {
    Finite(ComplexScalar),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<ComplexScalar> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }
}

impl From<ComplexScalar> for Extended {
    fn from(z: ComplexScalar) -> Self {
        Extended::Finite(z)
    }
}

type Mat2 = [[ComplexScalar; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn det2(m: &Mat2) -> ComplexScalar {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix {
    /// Index of the last factor; `-1` is the empty product.
    pub depth: isize,
    pub z: ComplexScalar,
    pub entries: Mat2,
    /// `|det - 1|`.
    pub det_residual: Scalar,
}

/// Left product of `1 + z S(j, 0)` for `j = 0..=n`, with
/// `S(j,0) = [[-Q_j P_j, -Q_j^2], [P_j^2, P_j Q_j]]` evaluated at 0.
pub fn transfer(coeffs: &RecursionCoefficients, n: isize, z: &ComplexScalar) -> Result<TransferMatrix> {
    let mode = coeffs.mode().join(z.mode());
    let one = ComplexScalar::one().to_mode(mode);
    let zero = ComplexScalar::zero().to_mode(mode);
    let mut t: Mat2 = [[one.clone(), zero.clone()], [zero, one.clone()]];
    if n >= 0 {
        let e = orthopoly::eval_pq(coeffs, &ComplexScalar::zero(), n as usize)?;
        for j in 0..=n as usize {
            let (p, q, nu2) = (&e.p_hat[j], &e.q_hat[j], &e.norm2[j]);
            let qp = same_index(q, p, nu2).re;
            let qq = same_index(q, q, nu2).re;
            let pp = same_index(p, p, nu2).re;
            let f: Mat2 = [
                [&one - &z.scale(&qp), -z.scale(&qq)],
                [z.scale(&pp), &one + &z.scale(&qp)],
            ];
            t = mat_mul(&f, &t);
        }
    }
    let det_residual = (&det2(&t) - &one).norm_sqr().sqrt(mode.precision().unwrap_or(64));
    Ok(TransferMatrix {
        depth: n,
        z: z.clone(),
        entries: t,
        det_residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NevanlinnaMatrix {
    pub z: ComplexScalar,
    pub depth: usize,
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c: ComplexScalar,
    pub d: ComplexScalar,
}

impl NevanlinnaMatrix {
    pub fn det(&self) -> ComplexScalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }
}

/// `A, B, C, D` truncated at depth `n`, read off the transfer product
/// `[[-B, -A], [D, C]]` and checked against the truncated sums
/// `A = z sum Q_k(0) Q_k(z)`, `B = -1 + z sum Q_k(0) P_k(z)`,
/// `C = 1 + z sum P_k(0) Q_k(z)`, `D = z sum P_k(0) P_k(z)`.
pub fn abcd(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize) -> Result<NevanlinnaMatrix> {
    let t = transfer(coeffs, n as isize, z)?;
    let m = NevanlinnaMatrix {
        z: z.clone(),
        depth: n,
        a: -t.entries[0][1].clone(),
        b: -t.entries[0][0].clone(),
        c: t.entries[1][1].clone(),
        d: t.entries[1][0].clone(),
    };
    let sums = abcd_sums(coeffs, z, n)?;
    let scale = tolerance::magnitude(
        [&m.a, &m.b, &m.c, &m.d]
            .iter()
            .flat_map(|w| [&w.re, &w.im]),
    );
    let pairs = [(&m.a, &sums.a, "A"), (&m.b, &sums.b, "B"), (&m.c, &sums.c, "C"), (&m.d, &sums.d, "D")];
    for (x, y, name) in pairs {
        if !tolerance::close_complex(x, y, &scale, tolerance::PIPELINE_GUARD) {
            return Err(Error::CrossCheckFailure(format!(
                "{name} from the transfer product disagrees with its series at depth {n}"
            )));
        }
    }
    Ok(m)
}

/// Truncated series forms of `A, B, C, D`.
pub fn abcd_sums(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize) -> Result<NevanlinnaMatrix> {
    let at0 = orthopoly::eval_pq(coeffs, &ComplexScalar::zero(), n)?;
    let atz = orthopoly::eval_pq(coeffs, z, n)?;
    let mode = coeffs.mode().join(z.mode());
    let zero = ComplexScalar::zero().to_mode(mode);
    let (mut qq, mut qp, mut pq, mut pp) = (zero.clone(), zero.clone(), zero.clone(), zero);
    for k in 0..=n {
        let nu2 = &at0.norm2[k];
        let (p0, q0) = (&at0.p_hat[k], &at0.q_hat[k]);
        let (pz, qz) = (&atz.p_hat[k], &atz.q_hat[k]);
        qq = &qq + &same_index(q0, qz, nu2);
        qp = &qp + &same_index(q0, pz, nu2);
        pq = &pq + &same_index(p0, qz, nu2);
        pp = &pp + &same_index(p0, pz, nu2);
    }
    let one = ComplexScalar::one();
    Ok(NevanlinnaMatrix {
        z: z.clone(),
        depth: n,
        a: z * &qq,
        b: &(z * &qp) - &one,
        c: &(z * &pq) + &one,
        d: z * &pp,
    })
}

/// `F(w) = -(C w + A) / (D w + B)`; `w = inf` maps to `-C/D`.
pub fn f_map(m: &NevanlinnaMatrix, w: &Extended) -> Extended {
    let (num, den) = match w {
        Extended::Finite(w) => (&(&m.c * w) + &m.a, &(&m.d * w) + &m.b),
        Extended::Infinity => (m.c.clone(), m.d.clone()),
    };
    if den.is_zero() {
        Extended::Infinity
    } else {
        Extended::Finite(-(&num / &den))
    }
}

/// Stieltjes transform `G(z) = int d mu_t / (x - z)` of the von Neumann
/// solution with parameter `t`, at truncation depth `n`.
pub fn vonneumann_g(coeffs: &RecursionCoefficients, t: &Extended, z: &ComplexScalar, n: usize) -> Result<ComplexScalar> {
    if let Extended::Finite(t) = t {
        if !t.is_real() {
            return Err(Error::InvalidArgument("von Neumann parameter must be real".into()));
        }
    }
    let m = abcd(coeffs, z, n)?;
    let g = f_map(&m, t).finite().ok_or(Error::PoleHit)?;
    if z.im.is_positive() && !g.im.is_positive() {
        return Err(Error::NonHerglotzOutput(format!(
            "Im G = {} at depth {n}",
            g.im.render(6)
        )));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylDisk {
    pub z: ComplexScalar,
    pub depth: usize,
    pub center: ComplexScalar,
    pub radius2: Scalar,
    pub radius: Scalar,
}

impl WeylDisk {
    /// `|w - center|^2 - radius^2`: negative inside, zero on the boundary.
    pub fn power(&self, w: &ComplexScalar) -> Scalar {
        (w - &self.center).norm_sqr() - &self.radius2
    }
}

/// Disk of `zeta` with `sum_{k<n} |Q_k(z) + zeta P_k(z)|^2 <= Im zeta / Im z`.
pub fn weyl_disk(coeffs: &RecursionCoefficients, z: &ComplexScalar, n: usize, prec: u32) -> Result<WeylDisk> {
    if !z.im.is_positive() {
        return Err(Error::InvalidArgument("Weyl disk needs Im z > 0".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("Weyl disk needs depth >= 1".into()));
    }
    let e = orthopoly::eval_pq(coeffs, z, n - 1)?;
    let mode = coeffs.mode().join(z.mode());
    let mut a = Scalar::zero().to_mode(mode);
    let mut c = a.clone();
    let mut beta = ComplexScalar::zero().to_mode(mode);
    for k in 0..n {
        let nu2 = &e.norm2[k];
        a = a + same_index(&e.p_hat[k], &e.p_hat[k].conj(), nu2).re;
        c = c + same_index(&e.q_hat[k], &e.q_hat[k].conj(), nu2).re;
        beta = &beta + &same_index(&e.p_hat[k], &e.q_hat[k].conj(), nu2);
    }
    let half = Scalar::ratio(1, 2);
    beta.im = &beta.im + &(half / &z.im);
    let center = -beta.conj().scale(&a.recip());
    let radius2 = beta.norm_sqr() / a.square() - c / &a;
    if !radius2.is_positive() {
        return Err(Error::NonpositiveRadicand);
    }
    let radius = radius2.sqrt(prec);
    Ok(WeylDisk {
        z: z.clone(),
        depth: n,
        center,
        radius2,
        radius,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PickReport {
    pub matrix: Vec<Vec<ComplexScalar>>,
    pub psd: bool,
    /// Product of the elimination pivots; reported as 0 once the remaining
    /// block falls below tolerance.
    pub det: Scalar,
    pub degenerate: bool,
    pub rank: usize,
}

/// `D_ij = (w_i - conj w_j) / (z_i - conj z_j)`.
pub fn pick_matrix(z: &[ComplexScalar], w: &[ComplexScalar]) -> Result<Vec<Vec<ComplexScalar>>> {
    if z.len() != w.len() {
        return Err(Error::InvalidArgument("z and w lengths differ".into()));
    }
    for (i, zi) in z.iter().enumerate() {
        if !zi.im.is_positive() {
            return Err(Error::LowerHalfPlanePoint(i));
        }
        if z[..i].contains(zi) {
            return Err(Error::CoincidentNodes);
        }
    }
    Ok((0..z.len())
        .map(|i| {
            (0..z.len())
                .map(|j| &(&w[i] - &w[j].conj()) / &(&z[i] - &z[j].conj()))
                .collect()
        })
        .collect())
}

/// Positive semidefiniteness of the Pick matrix by diagonally pivoted
/// Hermitian elimination, with pivot threshold `2^-(p/2) * trace` in float mode.
pub fn pick_test(z: &[ComplexScalar], w: &[ComplexScalar]) -> Result<PickReport> {
    let matrix = pick_matrix(z, w)?;
    let n = matrix.len();
    let mode = matrix
        .iter()
        .flatten()
        .fold(Mode::Exact, |m, x| m.join(x.mode()));
    let trace: Scalar = (0..n).map(|i| matrix[i][i].re.clone()).sum();
    let tol = tolerance::abort_slack(mode) * trace.abs();
    let mut m = matrix.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut det = Scalar::one().to_mode(mode);
    let mut psd = true;
    let mut rank = 0;
    while !active.is_empty() {
        let (pos, &piv) = active
            .iter()
            .enumerate()
            .max_by(|(_, &x), (_, &y)| {
                m[x][x]
                    .re
                    .partial_cmp(&m[y][y].re)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        let p = m[piv][piv].re.clone();
        if p <= tol {
            let tol2 = tol.square();
            for &i in &active {
                if m[i][i].re < -&tol {
                    psd = false;
                }
                for &j in &active {
                    if m[i][j].norm_sqr() > tol2 {
                        psd = false;
                    }
                }
            }
            det = Scalar::zero().to_mode(mode);
            break;
        }
        det = det * &p;
        rank += 1;
        active.remove(pos);
        let prow = m[piv].clone();
        for &i in &active {
            let f = &m[i][piv] / &ComplexScalar::real(p.clone());
            for &j in &active {
                m[i][j] = &m[i][j] - &(&f * &prow[j]);
            }
        }
    }
    Ok(PickReport {
        matrix,
        psd,
        det,
        degenerate: rank < n,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate;
    use crate::orthopoly::recursion_coeffs;

    fn coeffs(name: &str, depth: usize, prec: u32) -> RecursionCoefficients {
        recursion_coeffs(&generate(name, 2 * depth, prec).unwrap(), depth).unwrap()
    }

    #[test]
    fn transfer_small_depths() {
        let c = coeffs("laguerre", 4, 64);
        let z = ComplexScalar::gauss(2, 1);
        let id = transfer(&c, -1, &z).unwrap();
        assert_eq!(id.entries[0][1], ComplexScalar::zero());
        assert_eq!(id.entries[0][0], ComplexScalar::one());
        let t0 = transfer(&c, 0, &z).unwrap();
        assert_eq!(t0.entries[1][0], z);
        assert_eq!(t0.entries[0][1], ComplexScalar::zero());
        let t3 = transfer(&c, 3, &z).unwrap();
        assert!(t3.det_residual.is_zero());
    }

    #[test]
    fn abcd_at_zero_and_map() {
        let c = coeffs("hermite", 5, 64);
        let m = abcd(&c, &ComplexScalar::zero(), 4).unwrap();
        assert_eq!((m.a.clone(), m.b.clone()), (ComplexScalar::zero(), ComplexScalar::gauss(-1, 0)));
        assert_eq!((m.c.clone(), m.d.clone()), (ComplexScalar::one(), ComplexScalar::zero()));
        let w = ComplexScalar::gauss(3, 2);
        assert_eq!(f_map(&m, &Extended::Finite(w.clone())), Extended::Finite(w));
        assert_eq!(f_map(&m, &Extended::Infinity), Extended::Infinity);
        let m1 = abcd(&c, &ComplexScalar::gauss(1, 1), 4).unwrap();
        assert_eq!(m1.det(), ComplexScalar::one());
    }

    #[test]
    fn pick_examples() {
        let z = [ComplexScalar::gauss(0, 1), ComplexScalar::gauss(0, 2)];
        let r = pick_test(&z, &z).unwrap();
        assert!(r.psd && r.degenerate);
        assert_eq!(r.matrix[0][1], ComplexScalar::one());
        let w: Vec<_> = z.iter().map(|zi| zi + &ComplexScalar::i()).collect();
        let r = pick_test(&z, &w).unwrap();
        assert_eq!(r.matrix[0][1], ComplexScalar::new(Scalar::ratio(5, 3), Scalar::zero()));
        assert_eq!(r.det, Scalar::ratio(2, 9));
        assert!(r.psd && !r.degenerate);
        let w: Vec<_> = z.iter().map(|zi| -zi.recip()).collect();
        let r = pick_test(&z, &w).unwrap();
        assert!(r.psd && r.degenerate);
        assert_eq!(pick_test(&[z[0].clone(), z[0].clone()], &z), Err(Error::CoincidentNodes));
    }
}
