use mockq_core::lerch::{lerch_brute_force, lerch_expand, mu_formal, LerchSpec, MuArg};
use mockq_core::numeric::{mu_num, NumericScene};
use mockq_core::{Error, GRID};
use num_complex::Complex64;
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = LerchSpec> {
    (1i64..=3, -3i64..=3, -2i64..=2, 1i64..=3, -4i64..=4, 0i64..24, 0i64..24, any::<bool>()).prop_map(
        |(a, b, c, d, e, rho, root, alternating)| {
            let mut s = LerchSpec::new(12 * a, 12 * b, 24 * c, 12 * d, 12 * e).rho(2 * rho).denominator_root(root);
            s.alternating = alternating;
            s
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_matches_termwise_inversion(s in spec()) {
        let cap = 30 * GRID;
        match lerch_expand(&s, cap) {
            Ok(fast) => {
                let slow = lerch_brute_force(&s, cap, 16).unwrap();
                prop_assert!(fast.eq_to(&slow, cap).unwrap().is_equal(), "{}", s);
            }
            Err(Error::Pole { n }) => {
                prop_assert!(matches!(lerch_brute_force(&s, cap, 16), Err(Error::Pole { .. })), "pole at {n} missed by oracle");
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn reindexing_changes_nothing(s in spec(), k in -3i64..=3) {
        let cap = 25 * GRID;
        if let Ok(base) = lerch_expand(&s, cap) {
            prop_assert_eq!(lerch_expand(&s.shifted(k), cap).unwrap(), base);
        }
    }
}

#[test]
fn mu_is_symmetric() {
    let u = MuArg::new((1, 3), (1, 4));
    let v = MuArg::new((1, 6), (1, 12));
    let cap = 40 * GRID;
    let uv = mu_formal(&u, &v, 1, cap).unwrap();
    let vu = mu_formal(&v, &u, 1, cap).unwrap();
    assert!(uv.eq_to(&vu, cap).unwrap().is_equal());
}

#[test]
fn mu_series_matches_numeric_value() {
    let tau = Complex64::new(0.1, 0.9);
    let sc = NumericScene::new(tau).unwrap();
    for (u, v, m) in [
        (MuArg::new((1, 3), (1, 4)), MuArg::new((1, 6), (1, 12)), 1),
        (MuArg::new((1, 2), (1, 2)), MuArg::new((0, 1), (1, 3)), 2),
    ] {
        let series = mu_formal(&u, &v, m, 60 * GRID).unwrap().eval(tau);
        let mt = sc.at(tau * m as f64).unwrap();
        let z = |a: &MuArg| {
            let f = |r: &mockq_core::Rational| num_traits::ToPrimitive::to_f64(r).unwrap();
            f(&a.tau) * tau + f(&a.shift)
        };
        let direct = mu_num(z(&u), z(&v), &mt).unwrap();
        assert!((series - direct).norm() < 1e-10 * (1.0 + direct.norm()), "{u}, {v}: {series} vs {direct}");
    }
}
