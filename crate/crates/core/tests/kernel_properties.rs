use fmanifold::algebroid::{differential, hm_defect, koszul_bracket, lie_bracket, PoissonBivector, VectorField};
use fmanifold::fiber_algebra::FiberAlgebra;
use fmanifold::poly::{rat, rf_equal, RationalFunction};
use fmanifold::{MultiPoly, Rational};
use proptest::prelude::*;

const N: usize = 3;

fn poly_strategy(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_exp, N)), 0..=max_terms).prop_map(|terms| {
        MultiPoly::from_terms(N, terms.into_iter().map(|(c, e)| (rat(c, 1), e))).unwrap()
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly_strategy(3, 2).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), N)
}

fn field() -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly_strategy(2, 2), N).prop_map(VectorField::new)
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 512, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(a in poly_strategy(4, 3), b in poly_strategy(4, 3), c in poly_strategy(4, 3)) {
        let zero = MultiPoly::zero(N);
        let one = MultiPoly::one(N);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), zero);
    }

    #[test]
    fn mixed_partials_commute(p in poly_strategy(5, 4), i in 0..N, j in 0..N) {
        let dij = p.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let dji = p.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(dij, dji);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(4, 3), b in poly_strategy(4, 3), pt in point()) {
        let ea = a.evaluate(&pt).unwrap();
        let eb = b.evaluate(&pt).unwrap();
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &ea * &eb);
        prop_assert_eq!(MultiPoly::one(N).evaluate(&pt).unwrap(), rat(1, 1));
    }

    #[test]
    fn rf_equal_is_an_equivalence(
        p in poly_strategy(3, 2),
        q in nonzero_poly(),
        r in nonzero_poly(),
        s in nonzero_poly(),
        u in poly_strategy(3, 2),
        v in nonzero_poly(),
    ) {
        let x = RationalFunction::new(p.clone(), q.clone()).unwrap();
        let y = RationalFunction::new(&p * &r, &q * &r).unwrap();
        let z = RationalFunction::new(&(&p * &r) * &s, &(&q * &r) * &s).unwrap();
        let w = RationalFunction::new(u, v).unwrap();
        prop_assert!(rf_equal(&x, &x));
        prop_assert!(rf_equal(&x, &y) && rf_equal(&y, &x));
        prop_assert!(rf_equal(&y, &z) && rf_equal(&x, &z));
        prop_assert_eq!(rf_equal(&x, &w), rf_equal(&w, &x));
        if rf_equal(&x, &w) {
            prop_assert!(rf_equal(&y, &w));
        }
    }

    #[test]
    fn rf_quotient_rule_matches_polynomial_derivative(p in poly_strategy(3, 2), q in nonzero_poly(), i in 0..N) {
        // d(p q / q) = dp
        let x = RationalFunction::new(&p * &q, q).unwrap();
        let d = x.partial_derivative(i).unwrap();
        prop_assert!(rf_equal(&d, &RationalFunction::from_poly(p.partial_derivative(i).unwrap())));
    }

    #[test]
    fn lie_bracket_antisymmetric(x in field(), y in field()) {
        let a = lie_bracket(&x, &y).unwrap();
        let b = lie_bracket(&y, &x).unwrap();
        prop_assert!(a.plus(&b).is_zero());
    }

    #[test]
    fn koszul_on_exact_forms(f in poly_strategy(3, 2), g in poly_strategy(3, 2), a in poly_strategy(2, 1), b in poly_strategy(2, 1)) {
        let pi = PoissonBivector::from_upper(N, &[((0, 1), a), ((1, 2), b)]).unwrap();
        let lhs = koszul_bracket(&pi, &differential(&f), &differential(&g)).unwrap();
        prop_assert_eq!(lhs, differential(&pi.poisson_bracket(&f, &g)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn hm_defect_symmetric_in_last_two(x in field(), y in field(), z in field()) {
        let c: Vec<Vec<Vec<MultiPoly>>> = (0..N)
            .map(|i| (0..N).map(|j| (0..N).map(|k| if k == (i + j) % N { MultiPoly::var(N, (i + j + k) % N) } else { MultiPoly::zero(N) }).collect()).collect())
            .collect();
        let prod = fmanifold::algebroid::StructureConstants::new(c).unwrap();
        prop_assert_eq!(hm_defect(&prod, &x, &y, &z).unwrap(), hm_defect(&prod, &x, &z, &y).unwrap());
    }

    #[test]
    fn invert_is_an_involution(d in prop::collection::vec(1i64..=9, N), x in prop::collection::vec(1i64..=9, N)) {
        // product of fields with unit (1, ..., 1) and a diagonal twist
        let c = (0..N)
            .map(|i| (0..N).map(|j| (0..N).map(|k| if i == j && j == k { rat(d[i], 1) } else { rat(0, 1) }).collect()).collect())
            .collect();
        let unit = (0..N).map(|i| rat(1, d[i])).collect();
        let a = FiberAlgebra::new(c, unit).unwrap();
        let x: Vec<Rational> = x.into_iter().map(|v| rat(v, 1)).collect();
        let u = a.invert(&x).unwrap();
        prop_assert_eq!(a.multiply(&x, &u).unwrap(), a.unit().to_vec());
        prop_assert_eq!(a.invert(&u).unwrap(), x);
    }
}
