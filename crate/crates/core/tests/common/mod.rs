#![allow(dead_code)]

use fmanifold::frobenius::{structure_constants, FrobeniusSpec, StructureTensor};
use fmanifold::poly::{int, rat};
use fmanifold::{MultiPoly, Rational};

pub fn poly(n: usize, terms: &[(Rational, &[u32])]) -> MultiPoly {
    MultiPoly::from_terms(n, terms.iter().map(|(c, e)| (c.clone(), e.to_vec()))).unwrap()
}

pub fn matrix(rows: &[&[Rational]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn diag(w: &[Rational]) -> Vec<Vec<Rational>> {
    let n = w.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { w[i].clone() } else { int(0) }).collect()).collect()
}

pub fn a3_potential() -> MultiPoly {
    poly(
        3,
        &[
            (rat(1, 2), &[2, 0, 1]),
            (rat(1, 2), &[1, 2, 0]),
            (rat(-1, 16), &[0, 2, 2]),
            (rat(1, 960), &[0, 0, 5]),
        ],
    )
}

/// `F = t1^2 t3 / 2 + t1 t2^2 / 2 - t2^2 t3^2 / 16 + t3^5 / 960`, antidiagonal
/// metric, `E = t1 d1 + 3/4 t2 d2 + 1/2 t3 d3`, `d = 1/2`.
pub fn a3_spec() -> FrobeniusSpec {
    let eta = matrix(&[&[int(0), int(0), int(1)], &[int(0), int(1), int(0)], &[int(1), int(0), int(0)]]);
    FrobeniusSpec::new(a3_potential(), eta, diag(&[int(1), rat(3, 4), rat(1, 2)]), vec![int(0); 3], rat(1, 2)).unwrap()
}

/// `F = t1^2 t2 / 2 + t2^4`, `E = t1 d1 + 2/3 t2 d2`, `d = 1/3`.
pub fn n2_spec() -> FrobeniusSpec {
    let f = poly(2, &[(rat(1, 2), &[2, 1]), (int(1), &[0, 4])]);
    let eta = matrix(&[&[int(0), int(1)], &[int(1), int(0)]]);
    FrobeniusSpec::new(f, eta, diag(&[int(1), rat(2, 3)]), vec![int(0); 2], rat(1, 3)).unwrap()
}

/// The n = 2 potential with `E = e`.
pub fn n2_unit_euler_spec() -> FrobeniusSpec {
    let s = n2_spec();
    FrobeniusSpec::new(s.potential().clone(), s.metric().clone(), diag(&[int(0), int(0)]), vec![int(1), int(0)], int(0))
        .unwrap()
}

pub fn tensor(spec: &FrobeniusSpec) -> StructureTensor {
    structure_constants(spec).unwrap()
}

/// Adds `delta` to the coefficient of `exps`.
pub fn perturb(f: &MultiPoly, exps: &[u32], delta: Rational) -> MultiPoly {
    f + &poly(f.nvars(), &[(delta, exps)])
}
