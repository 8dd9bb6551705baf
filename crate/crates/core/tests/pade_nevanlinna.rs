mod common;

use common::discrete_moments;
use moment_core::families::generate;
use moment_core::nevanlinna::{pick_test, vonneumann_g, Extended};
use moment_core::orthopoly::recursion_coeffs;
use moment_core::pade::{pade_table, pade_value, taylor_match_check};
use moment_core::{ComplexScalar, Kind, MomentSequence, Scalar};
use proptest::prelude::*;

/// Distinct positive atoms `k/2` with positive integer weights.
fn positive_atoms(min: usize, max: usize) -> impl Strategy<Value = Vec<(Scalar, Scalar)>> {
    (prop::collection::btree_set(1i64..=12, min..=max), prop::collection::vec(1i64..=4, max))
        .prop_map(|(xs, ws)| {
            xs.into_iter()
                .zip(ws)
                .map(|(x, w)| (Scalar::ratio(x, 2), Scalar::int(w)))
                .collect()
        })
}

fn seq_of(points: &[(Scalar, Scalar)], kmax: usize) -> MomentSequence {
    let raw = discrete_moments(points, kmax);
    let g0 = raw[0].clone();
    MomentSequence::new(raw.iter().map(|g| g / &g0).collect(), Kind::Stieltjes, "discrete")
}

/// `sum w_i / (1 + x_i z)` for the normalized measure.
fn generating_function(points: &[(Scalar, Scalar)], z: &Scalar) -> Scalar {
    let total: Scalar = points.iter().map(|(_, w)| w.clone()).sum();
    points
        .iter()
        .map(|(x, w)| w / &total / &(Scalar::one() + x * z))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn diagonal_minus_one_is_exact_for_finite_support(points in positive_atoms(1, 6), num in 0i64..=20) {
        let n = points.len();
        let seq = seq_of(&points, 2 * n - 1);
        let x = Scalar::ratio(num, 4);
        let v = pade_value(&seq, n - 1, n, &ComplexScalar::real(x.clone())).unwrap();
        prop_assert_eq!(v.value.re, generating_function(&points, &x));
    }

    #[test]
    fn taylor_orders_match(points in positive_atoms(4, 8), ell in -2i64..=3, m in 1usize..=3) {
        let n_ = m as i64 + ell - 1;
        prop_assume!(n_ >= 0);
        let n = n_ as usize;
        let seq = seq_of(&points, 2 * points.len() + 2);
        prop_assume!(n + m < seq.k());
        match taylor_match_check(&seq, n, m) {
            Ok(order) => prop_assert!(order > n + m, "[{n},{m}] matched only through {order}"),
            Err(e) => prop_assert!(matches!(e, moment_core::Error::NotExists { .. }), "{e}"),
        }
    }

    #[test]
    fn pade_chains_are_monotone(points in positive_atoms(5, 9), idx in 0usize..3) {
        let x = [Scalar::ratio(1, 2), Scalar::one(), Scalar::int(3)][idx].clone();
        let n = points.len();
        let seq = seq_of(&points, 2 * n);
        let table = pade_table(&seq, &x, n - 1, &[0, 1]).unwrap();
        for row in &table.rows {
            prop_assert_eq!(row.monotone, Some(true), "row {}", row.ell);
        }
        let exact = generating_function(&points, &x);
        let (_, lo, hi) = table.bracket.unwrap();
        prop_assert!(lo <= exact && exact <= hi);
    }

    #[test]
    fn vonneumann_values_are_herglotz(t in -1i64..=1, re in -6i64..=6, im in 1i64..=5) {
        let seq = generate("laguerre", 24, 0).unwrap();
        let c = recursion_coeffs(&seq, 12).unwrap();
        let z = ComplexScalar::gauss(re, im);
        for n in [1usize, 4, 11] {
            let g = vonneumann_g(&c, &Extended::Finite(ComplexScalar::real(Scalar::int(t))), &z, n).unwrap();
            prop_assert!(g.im.is_positive());
        }
    }

    #[test]
    fn pick_matrices_of_nevanlinna_data(
        pts in prop::collection::btree_set((-4i64..=4, 1i64..=4), 2..=5),
        mix in 0i64..=4,
    ) {
        let seq = generate("hermite", 20, 0).unwrap();
        let c = recursion_coeffs(&seq, 10).unwrap();
        let z: Vec<ComplexScalar> = pts.iter().map(|&(a, b)| ComplexScalar::gauss(a, b)).collect();
        let lam = Scalar::ratio(mix, 4);
        // A convex combination of two von Neumann solutions is again a Nevanlinna function.
        let w: Vec<ComplexScalar> = z
            .iter()
            .map(|zi| {
                let g0 = vonneumann_g(&c, &Extended::Finite(ComplexScalar::zero()), zi, 9).unwrap();
                let g1 = vonneumann_g(&c, &Extended::Infinity, zi, 9).unwrap();
                g0.scale(&(Scalar::one() - &lam)) + g1.scale(&lam)
            })
            .collect();
        prop_assert!(pick_test(&z, &w).unwrap().psd);

        // Pushing one value below the real axis breaks positivity.
        let mut bad = w.clone();
        bad[0] = bad[0].clone() - ComplexScalar::gauss(0, 10);
        prop_assert!(!pick_test(&z, &bad).unwrap().psd);
    }
}

#[test]
fn lognormal_bracket_tightens() {
    let seq = generate("lognormal", 40, 256).unwrap();
    let x = Scalar::one();
    let mut prev: Option<(Scalar, Scalar)> = None;
    for n_max in [4usize, 8, 12, 16] {
        let table = pade_table(&seq, &x, n_max, &[0, 1]).unwrap();
        for row in &table.rows {
            assert_eq!(row.monotone, Some(true), "N <= {n_max}, row {}", row.ell);
        }
        let (_, lo, hi) = table.bracket.unwrap();
        assert!(lo < hi);
        if let Some((plo, phi)) = prev {
            assert!(plo <= lo && hi <= phi, "bracket widened at N = {n_max}");
        }
        prev = Some((lo, hi));
    }
}
