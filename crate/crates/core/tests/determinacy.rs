mod common;

use common::discrete_moments;
use moment_core::determinacy::{krein_parameters, lm_crosscheck};
use moment_core::families::generate;
use moment_core::orthopoly::recursion_coeffs;
use moment_core::{Kind, MomentSequence, Scalar};
use proptest::prelude::*;

#[test]
fn laguerre_inverse_relations() {
    let seq = generate("laguerre", 44, 0).unwrap();
    let c = recursion_coeffs(&seq, 22).unwrap();
    let k = krein_parameters(&c, 22).unwrap();
    let (l, m) = (&k.ell, &k.m);
    let one = Scalar::one();
    for n in 0..20 {
        // l[j], m[j] hold l_{j+1}, m_{j+1}.
        let a2 = &one / &(l[n].square() * &m[n] * &m[n + 1]);
        assert_eq!(a2, c.a2[n], "a_{n}^2");
        if n >= 1 {
            let b = (&one / &l[n - 1] + &one / &l[n]) / &m[n];
            assert_eq!(b, c.b[n], "b_{n}");
        }
    }
    assert_eq!(k.m[0], one);
}

#[test]
fn laguerre_lm_matches_determinants() {
    let seq = generate("laguerre", 22, 0).unwrap();
    for n in 1..=10 {
        lm_crosscheck(&seq, n).unwrap();
    }
}

#[test]
fn hermite_is_not_stieltjes() {
    let seq = generate("hermite", 10, 0).unwrap();
    let c = recursion_coeffs(&seq, 5).unwrap();
    assert!(krein_parameters(&c, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn discrete_lm_matches_determinants(
        xs in prop::collection::btree_set(1i64..=15, 4..=8),
        ws in prop::collection::vec(1i64..=6, 8),
    ) {
        let points: Vec<(Scalar, Scalar)> = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| (Scalar::ratio(x, 3), Scalar::int(w)))
            .collect();
        let n = points.len() - 1;
        let raw = discrete_moments(&points, 2 * n + 1);
        let g0 = raw[0].clone();
        let seq = MomentSequence::new(raw.iter().map(|g| g / &g0).collect(), Kind::Stieltjes, "d");
        lm_crosscheck(&seq, n).unwrap();
        let k = krein_parameters(&recursion_coeffs(&seq, n).unwrap(), n).unwrap();
        prop_assert!(k.ell.iter().all(Scalar::is_positive));
        prop_assert!(k.m.iter().all(Scalar::is_positive));
    }
}
