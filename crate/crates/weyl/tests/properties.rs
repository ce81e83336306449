use jacobi_core::chart::RealChart;
use jacobi_core::operators::d_operators_11;
use jacobi_core::sample;
use jacobi_core::testfn::random_test_function;
use jacobi_weyl::relations::build_d_operators;
use jacobi_weyl::{rat, Monomial, RationalPoly, Vars, WeylOperator};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_poly(vars: Vars) -> impl Strategy<Value = RationalPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..5, 1i64..4), 0..4).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(RationalPoly::zero(&vars), |acc, (e, a, b)| {
                    acc.add(&RationalPoly::monomial(&vars, Monomial(e), rat(a, b)))
                })
        },
    )
}

fn small_op() -> impl Strategy<Value = WeylOperator> {
    let vars = Vars::xyuv();
    prop::collection::vec(
        (small_poly(vars.clone()), prop::collection::vec(0u32..3, 4)),
        0..3,
    )
    .prop_map(move |terms| {
        terms
            .into_iter()
            .fold(WeylOperator::zero(&vars), |acc, (p, a)| {
                acc.add(&WeylOperator::term(&p, &a))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in small_op(), b in small_op(), c in small_op()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_acts_as_composition(a in small_op(), b in small_op(), f in small_poly(Vars::xyuv())) {
        let lhs = a.mul(&b).apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent(a in small_op(), b in small_op()) {
        let p = a.mul(&b).sub(&b);
        prop_assert_eq!(p.normalize(), p.clone());
        prop_assert!(p.terms().values().all(|c| !c.is_zero()));
    }

    #[test]
    fn commutator_is_antisymmetric(a in small_op(), b in small_op()) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
    }
}

#[test]
fn d_operators_agree_with_jet_operators() {
    let chart = RealChart::new(1, 1).unwrap();
    let exact = build_d_operators();
    let numeric = d_operators_11();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let f = random_test_function(&chart, &mut rng);
        let p = sample::random_siegel_jacobi_point(1, 1, &mut rng).unwrap();
        let point = chart.pack(p.omega(), p.z()).unwrap();
        for (w, d) in exact.iter().zip(&numeric) {
            let a = w.evaluate(&point, &f).unwrap();
            let b = d.evaluate(&point, &f).unwrap();
            let r = (a - b).norm() / (1.0 + b.norm());
            assert!(r < 1e-11, "{}: {r:e}", d.name());
        }
    }
}
