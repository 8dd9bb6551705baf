//! Independent oracles shared by the integration tests. None of these call
//! into the recurrence machinery they are used to check.

#![allow(dead_code)]

use moment_core::{MomentSequence, Scalar};
use rug::float::Constant;
use rug::Float;

/// `<p, q> = sum_ij p_i q_j gamma_{i+j}`.
fn inner(p: &[Scalar], q: &[Scalar], gamma: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            acc = acc + a * b * &gamma[i + j];
        }
    }
    acc
}

/// Monic orthogonal polynomials `p_0..=p_n` by Gram-Schmidt on monomials.
pub fn gram_schmidt_polys(seq: &MomentSequence, n: usize) -> Vec<Vec<Scalar>> {
    let mut ps: Vec<Vec<Scalar>> = Vec::new();
    let mut norms: Vec<Scalar> = Vec::new();
    for k in 0..=n {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = Scalar::one();
        let xk = v.clone();
        for (p, nn) in ps.iter().zip(&norms) {
            let c = inner(&xk, p, &seq.gamma) / nn;
            for (i, pi) in p.iter().enumerate() {
                v[i] = &v[i] - &(&c * pi);
            }
        }
        norms.push(inner(&v, &v, &seq.gamma));
        ps.push(v);
    }
    ps
}

/// `(b_0..=b_n, a_0^2..=a_n^2)` from Gram-Schmidt; needs `gamma_{2n+2}`.
pub fn gram_schmidt(seq: &MomentSequence, n: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let ps = gram_schmidt_polys(seq, n + 1);
    let norm = |p: &[Scalar]| inner(p, p, &seq.gamma);
    let mut b = Vec::new();
    let mut a2 = Vec::new();
    for k in 0..=n {
        let mut xp = vec![Scalar::zero()];
        xp.extend(ps[k].iter().cloned());
        b.push(inner(&xp, &ps[k], &seq.gamma) / norm(&ps[k]));
        a2.push(norm(&ps[k + 1]) / norm(&ps[k]));
    }
    (b, a2)
}

pub fn eval_real(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// `int_0^inf e^-t / (1 + t) dt` by exp-sinh quadrature
/// (`t = exp(pi/2 sinh s)`), halving the step until successive estimates
/// agree to `2^-(prec - 20)`.
pub fn exp_integral_oracle(prec: u32) -> Float {
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let f = |s: &Float| -> Float {
        let sh = Float::with_val(prec, s.sinh_ref());
        let ch = Float::with_val(prec, s.cosh_ref());
        let t = Float::with_val(prec, &half_pi * &sh).exp();
        if t.is_infinite() {
            return Float::new(prec);
        }
        let jac = Float::with_val(prec, &half_pi * &ch) * &t;
        let val = Float::with_val(prec, -&t).exp() / (Float::with_val(prec, 1u32) + &t);
        val * jac
    };
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 20)));
    let mut h = Float::with_val(prec, 0.5);
    let mut prev: Option<Float> = None;
    loop {
        let mut sum = f(&Float::new(prec));
        for sign in [1i32, -1] {
            let mut k = 1u32;
            loop {
                let s = Float::with_val(prec, &h * k) * sign;
                let term = f(&s);
                sum += &term;
                if term.is_zero() || Float::with_val(prec, term.abs_ref()) < Float::with_val(prec, &tol * 1e-10) {
                    break;
                }
                k += 1;
                if k > 100_000 {
                    break;
                }
            }
        }
        let est = sum * &h;
        if let Some(p) = prev {
            if Float::with_val(prec, &est - &p).abs() < tol {
                return est;
            }
        }
        prev = Some(est);
        h /= 2u32;
    }
}

/// Moments `sum_i w_i x_i^k` of a discrete measure, for `k = 0..=kmax`.
pub fn discrete_moments(points: &[(Scalar, Scalar)], kmax: usize) -> Vec<Scalar> {
    (0..=kmax)
        .map(|k| points.iter().map(|(x, w)| w * &x.powi(k as u32)).sum())
        .collect()
}
