mod common;

use common::*;
use fmanifold::algebroid::{
    check_f_algebroid, check_lie_algebroid, coordinate_bracket_evaluator, default_test_functions, differential,
    koszul_bracket, lie_algebroid_reports, lie_bracket, poisson_bracket_evaluator, Anchor, PoissonBivector,
};
use fmanifold::duality::build_cotangent_frobenius;
use fmanifold::poly::int;
use fmanifold::sampling::{random_one_form, random_poly, random_vector_field, rng};
use fmanifold::MultiPoly;

fn t(i: usize) -> MultiPoly {
    MultiPoly::var(3, i)
}

fn so3() -> PoissonBivector {
    PoissonBivector::from_upper(3, &[((0, 1), t(2)), ((1, 2), t(0)), ((0, 2), -t(1))]).unwrap()
}

fn non_poisson() -> PoissonBivector {
    PoissonBivector::from_upper(3, &[((0, 1), &t(0) * &t(1)), ((1, 2), t(0))]).unwrap()
}

#[test]
fn so3_is_a_lie_algebroid() {
    let pi = so3();
    let br = poisson_bracket_evaluator(&pi);
    let mut g = rng(1);
    let sections: Vec<Vec<MultiPoly>> = (0..3).map(|_| random_one_form(&mut g, 3, 2).into_components()).collect();
    let r = check_lie_algebroid(3, &br, &pi.anchor(), &sections, &default_test_functions(3)).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn koszul_bracket_of_exact_forms() {
    for pi in [so3(), non_poisson()] {
        let mut g = rng(2);
        for _ in 0..20 {
            let f = random_poly(&mut g, 3, 2, 3);
            let h = random_poly(&mut g, 3, 2, 3);
            let lhs = koszul_bracket(&pi, &differential(&f), &differential(&h)).unwrap();
            assert_eq!(lhs, differential(&pi.poisson_bracket(&f, &h)));
        }
    }
}

#[test]
fn non_poisson_bivector_reports() {
    let pi = non_poisson();
    let br = poisson_bracket_evaluator(&pi);
    let reports = lie_algebroid_reports(3, &br, &pi.anchor(), &[], &default_test_functions(3)).unwrap();
    let by_name = |n: &str| reports.iter().find(|r| r.name == n).unwrap();
    assert!(by_name("antisymmetry").pass);
    assert!(by_name("leibniz").pass);
    let j = by_name("jacobi").witness.clone().expect("jacobi fails");
    assert_eq!(j.indices, vec![1, 2, 3]);
    assert_ne!(j.residual, "[0, 0, 0]");
    // the anchor defect is the Schouten bracket, which vanishes iff Jacobi holds
    assert!(!by_name("anchor_homomorphism").pass);
}

#[test]
fn tangent_lie_algebroid() {
    let br = coordinate_bracket_evaluator();
    let mut g = rng(4);
    let sections: Vec<Vec<MultiPoly>> = (0..3).map(|_| random_vector_field(&mut g, 3, 2).into_components()).collect();
    assert!(check_lie_algebroid(3, &br, &Anchor::identity(3), &sections, &default_test_functions(3)).unwrap().pass);
}

#[test]
fn lie_bracket_identities() {
    let mut g = rng(5);
    for _ in 0..20 {
        let x = random_vector_field(&mut g, 3, 2);
        let y = random_vector_field(&mut g, 3, 2);
        let z = random_vector_field(&mut g, 3, 2);
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
        let j = lie_bracket(&x, &lie_bracket(&y, &z).unwrap())
            .unwrap()
            .plus(&lie_bracket(&y, &lie_bracket(&z, &x).unwrap()).unwrap())
            .plus(&lie_bracket(&z, &lie_bracket(&x, &y).unwrap()).unwrap());
        assert!(j.is_zero());
    }
}

#[test]
fn cotangent_frobenius_f_algebroid() {
    for s in [n2_spec(), a3_spec()] {
        let c = tensor(&s);
        let cf = build_cotangent_frobenius(&s, &c);
        for r in cf.reports(&c) {
            assert!(r.pass, "{r}");
        }
        let spec = cf.f_algebroid(s.n());
        let r = check_f_algebroid(&spec, &c.product(), &[], &default_test_functions(s.n())).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn scaled_anchor_fails_multiplicativity_first() {
    let s = n2_spec();
    let c = tensor(&s);
    let mut spec = fmanifold::algebroid::tangent_f_algebroid(&s, &c);
    spec.anchor = spec.anchor.scaled(&int(2));
    let r = check_f_algebroid(&spec, &c.product(), &[], &default_test_functions(2)).unwrap();
    assert!(r.witness.unwrap().condition.starts_with("(b)"));
}
