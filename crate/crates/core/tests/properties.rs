use conformal_core::catalog::{hv, hv_lsc1, hv_rb_family1, hv_rb_family2, vir, G_PARAMS};
use conformal_core::coeff::{nth_products, window_checks, CoeffWindow};
use conformal_core::json::{algebra_from_json, algebra_to_json};
use conformal_core::operators::{check_rota_baxter, ModuleMap};
use conformal_core::reps::{semidirect, standard_rep, StandardRep};
use conformal_core::{ConformalAlgebra, Kind, Poly, Var};
use proptest::prelude::*;

fn int_map(v: &[i64]) -> ModuleMap {
    ModuleMap::new(
        vec![
            vec![Poly::int(v[0]), Poly::int(v[1])],
            vec![Poly::int(v[2]), Poly::int(v[3])],
        ],
        2,
    )
    .unwrap()
}

/// A Rota-Baxter operator from one of the HV families, or an arbitrary map.
fn operator() -> impl Strategy<Value = ModuleMap> {
    prop_oneof![
        (-3i64..=3).prop_map(|b| hv_rb_family1().subst_params(&[(Var::param("b"), Poly::int(b))])),
        proptest::collection::vec(-2i64..=2, 4).prop_map(|g| {
            let values: Vec<_> = G_PARAMS
                .iter()
                .zip(&g)
                .map(|(name, c)| (Var::param(name), Poly::int(*c)))
                .collect();
            hv_rb_family2().subst_params(&values)
        }),
        proptest::collection::vec(-1i64..=1, 4).prop_map(|v| int_map(&v)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lift_of_a_rota_baxter_operator_is_rota_baxter(t in operator(), shift in 0i64..=1) {
        let weight = Poly::zero();
        if check_rota_baxter(&hv(), &t, &weight).unwrap().ok() {
            let w = CoeffWindow::with_shifts(&hv(), 2, vec![shift, 0]).unwrap();
            let report = window_checks(&w, Some(&t), Some(&weight)).unwrap();
            prop_assert!(report.ok(), "{:?}", report);
        }
    }

    #[test]
    fn window_jacobi_on_rescaled_virasoro(c in -3i64..=3, n in 0i64..=3) {
        let entry = Poly::int(c) * (Poly::d() + Poly::int(2) * Poly::x());
        let a = ConformalAlgebra::from_entries(Kind::Lie, ["L"], &[], &[(0, 0, 0, entry)]).unwrap();
        prop_assert!(a.check_axioms().ok());
        let w = CoeffWindow::new(&a, n).unwrap();
        prop_assert!(window_checks(&w, None, None).unwrap().ok());
    }

    #[test]
    fn reconstruction_after_parameter_substitution(b in -4i64..=4) {
        let a = hv_lsc1().subst_params(&[(Var::param("b"), Poly::int(b))]);
        let table = nth_products(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(&table.reconstruct(i, j), a.sc(i, j));
            }
        }
    }

    #[test]
    fn dual_and_semidirect_of_substituted_regular_reps(b in -3i64..=3) {
        let a = hv_lsc1().subst_params(&[(Var::param("b"), Poly::int(b))]);
        for which in [StandardRep::RegularLeft, StandardRep::LeftMinusRight] {
            let rep = standard_rep(&a, which).unwrap();
            let dual = rep.dual().unwrap();
            prop_assert!(dual.check_rep().ok());
            prop_assert!(semidirect(&dual).unwrap().check_axioms().ok());
        }
    }
}

#[test]
fn json_round_trip_of_builtins() {
    for a in [vir(), hv(), hv_lsc1()] {
        assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
    }
}
