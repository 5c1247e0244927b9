use std::path::PathBuf;
use std::process::{Command, Output};

use fmanifold::algebroid::PoissonBivector;
use fmanifold::duality::AffineField;
use fmanifold::frobenius::FrobeniusSpec;
use fmanifold::poly::rat;
use fmanifold::{MultiPoly, Rational};
use fmanifold_cli::{parse_spec, run_chain, run_dualize, run_verify, RunError, RunOptions, SpecError, SpecFile};
use proptest::prelude::*;

fn spec_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn load(name: &str) -> SpecFile {
    parse_spec(&std::fs::read_to_string(spec_path(name)).unwrap()).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmanifold")).args(args).output().unwrap()
}

fn file(name: &str) -> String {
    spec_path(name).to_str().unwrap().to_string()
}

fn quick() -> RunOptions {
    RunOptions { points: 10, ..RunOptions::default() }
}

#[test]
fn every_shipped_spec_round_trips() {
    for entry in std::fs::read_dir(spec_path("")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let s = parse_spec(&text).unwrap();
        assert_eq!(parse_spec(&s.to_json()).unwrap(), s);
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", &file("n2.json")]).status.code(), Some(0));
    assert_eq!(run(&["verify", &file("n1.json")]).status.code(), Some(0));
    let bad = run(&["verify", &file("a3_perturbed.json"), "--format", "machine"]);
    assert_eq!(bad.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    let wdvv = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "wdvv").unwrap();
    assert_eq!(wdvv["pass"], false);
    assert_eq!(wdvv["witness"]["indices"], serde_json::json!([2, 2, 3, 3]));
    assert_eq!(wdvv["witness"]["residual"], "-14*t3^2");
    assert_eq!(json["pass"], false);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["verify", &file("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["chain", &file("n2_unit_chain.json"), "--depth", "4"]).status.code(), Some(2));
    assert_eq!(run(&["chain", &file("n2.json")]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["dualize", &file("n2.json"), "--at", "1/0,1"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("fmanifold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("zero.json");
    let text = std::fs::read_to_string(spec_path("n2.json")).unwrap().replace("\"1/2\"", "\"1/0\"");
    std::fs::write(&p, text).unwrap();
    let out = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero denominator"));
}

#[test]
fn machine_reports_are_byte_stable() {
    let args = ["verify", &file("a3_so3.json"), "--format", "machine", "--points", "20", "--seed", "3"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let other = run(&["verify", &file("a3_so3.json"), "--format", "machine", "--points", "20", "--seed", "4"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn perturbed_potential_fails_wdvv_and_hm() {
    let r = run_verify(&load("a3_perturbed.json"), &quick()).unwrap();
    assert!(!r.pass);
    assert!(r.check("wdvv").unwrap().witness.is_some());
    assert!(!r.check("hertling_manin").unwrap().pass);
}

#[test]
fn non_poisson_bivector_fails_jacobi() {
    let r = run_verify(&load("a3_nonpoisson.json"), &quick()).unwrap();
    let j = r.check("poisson_jacobi").unwrap();
    assert_eq!(j.witness.as_ref().unwrap().indices, vec![1, 2, 3]);
    assert!(r.check("poisson_leibniz").unwrap().pass);
    assert!(r.check("poisson_koszul_exact").unwrap().pass);
    assert!(run_verify(&load("a3_so3.json"), &quick()).unwrap().pass);
}

#[test]
fn unit_euler_dualizes_to_identity() {
    let r = run_dualize(&load("n2_unit_euler.json"), &quick()).unwrap();
    assert!(r.pass);
    assert!(r.check("theorem1").unwrap().notes.iter().any(|n| n == "D = identity at every point"));
}

#[test]
fn discriminant_point_is_skipped() {
    let opts = RunOptions { at: vec![vec![rat(6, 1), rat(3, 2)], vec![rat(1, 1), rat(1, 1)]], ..quick() };
    let r = run_dualize(&load("n2.json"), &opts).unwrap();
    assert!(r.pass);
    let skipped = r.check("theorem1 at [6, 3/2]").unwrap();
    assert!(skipped.skipped);
    assert!(skipped.notes[0].contains("discriminant"));
    assert!(r.check("theorem1 at [1, 1]").unwrap().pass);
}

#[test]
fn emitted_dual_structure_has_full_shape() {
    let r = run_dualize(&load("n2.json"), &RunOptions { emit_dual: true, ..quick() }).unwrap();
    let d = r.dual.unwrap();
    assert_eq!(d.star.len(), 2);
    assert!(d.star.iter().all(|row| row.len() == 2 && row.iter().all(|v| v.len() == 2)));
    assert_eq!(d.intersection_form.len(), 2);
}

#[test]
fn vanishing_discriminant_is_an_input_error() {
    let s = load("n2.json");
    let zero = vec![vec![rat(0, 1); 2]; 2];
    let f = FrobeniusSpec::new(s.frobenius.potential().clone(), s.frobenius.metric().clone(), zero, vec![rat(0, 1); 2], rat(0, 1)).unwrap();
    let spec = SpecFile { frobenius: f, ..s };
    assert!(matches!(run_dualize(&spec, &quick()), Err(RunError::Input(_))));
}

#[test]
fn chain_runs() {
    let r = run_chain(&load("n2_unit_chain.json"), &RunOptions { depth: Some(3), ..quick() }).unwrap();
    assert!(r.pass);
    assert!(r.check("chain_stages").unwrap().notes.iter().any(|n| n == "all stages identical"));
    let r = run_chain(&load("n2_chain.json"), &RunOptions { at: vec![vec![rat(6, 1), rat(3, 2)]], ..quick() }).unwrap();
    assert!(r.pass);
    assert_eq!(r.check("chain at [6, 3/2]").unwrap().notes, vec!["not invertible at stage 0".to_string()]);
    let r = run_chain(&load("n2_chain.json"), &RunOptions { depth: Some(1), ..quick() }).unwrap();
    assert!(r.check("prop1").unwrap().skipped && r.check("prop2").unwrap().skipped);
    let err = run_chain(&load("n2_chain.json"), &RunOptions { depth: Some(4), ..quick() }).unwrap_err();
    assert_eq!(err, RunError::Input("chain depth 4 exceeds the 3 supplied identities".into()));
}

#[test]
fn semantic_errors_name_the_invariant() {
    let text = std::fs::read_to_string(spec_path("a3_so3.json")).unwrap().replacen("\"-1\"", "\"1\"", 1);
    match parse_spec(&text).unwrap_err() {
        SpecError::Semantic { message, .. } => assert_eq!(message, "bivector not antisymmetric"),
        e => panic!("{e}"),
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((rational(), prop::collection::vec(0u32..=4, n)), 0..5)
        .prop_map(move |t| MultiPoly::from_terms(n, t).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), n)
}

fn spec_file() -> impl Strategy<Value = SpecFile> {
    (1usize..=3).prop_flat_map(|n| {
        (
            poly(n),
            prop::collection::vec(rational().prop_filter("nonzero", |q| *q != rat(0, 1)), n),
            matrix(n),
            prop::collection::vec(rational(), n),
            rational(),
            prop::collection::vec((matrix(n), prop::collection::vec(rational(), n)), 0..3),
            prop::option::of(prop::collection::vec(poly(n), n * (n - 1) / 2)),
        )
            .prop_map(move |(f, diag, a, b, d, chain, upper)| {
                let eta = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { rat(0, 1) }).collect()).collect();
                let poisson = upper.map(|u| {
                    let pairs: Vec<((usize, usize), MultiPoly)> =
                        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).zip(u).collect();
                    PoissonBivector::from_upper(n, &pairs).unwrap()
                });
                SpecFile {
                    frobenius: FrobeniusSpec::new(f, eta, a, b, d).unwrap(),
                    chain: chain.into_iter().map(|(a, b)| AffineField { a, b }).collect(),
                    poisson,
                }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn serialize_then_parse_is_identity(s in spec_file()) {
        let text = s.to_json();
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json(), text);
    }
}
