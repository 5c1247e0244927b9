//! Exact dense linear algebra over the rationals, plus cofactor determinants
//! and adjugates for small matrices over any [`DiffRing`].

use num_traits::{One, Zero};

use crate::poly::{DiffRing, Rational, UniPoly};

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(Rational::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}

pub fn is_square(m: &Matrix) -> bool {
    m.iter().all(|row| row.len() == m.len())
}

/// First `(i, j)` with `m[i][j] != m[j][i]`.
pub fn asymmetry(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.len())
        .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
        .find(|&(i, j)| m[i][j] != m[j][i])
}

/// Row-reduces `[a | b]`; returns the solution columns, or `None` when `a` is
/// singular.
fn gauss_jordan(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let w = b.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).cloned().collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..n + w {
                    let delta = &f * &aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    gauss_jordan(m, &identity(m.len()))
}

/// Unique solution of `a x = b`, `None` when `a` is singular.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rhs: Matrix = b.iter().map(|v| vec![v.clone()]).collect();
    gauss_jordan(a, &rhs).map(|cols| cols.into_iter().map(|mut r| r.remove(0)).collect())
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Characteristic polynomial `det(x I - m)` by the Faddeev–LeVerrier
/// recurrence.
pub fn characteristic_polynomial(m: &Matrix) -> UniPoly {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / Rational::from_integer((k as i64).into());
    }
    UniPoly::new(coeffs)
}

/// Cofactor-expansion determinant over any commutative ring.
pub fn ring_determinant<T: DiffRing>(m: &[Vec<T>], nvars: usize) -> T {
    match m.len() {
        0 => T::one(nvars),
        1 => m[0][0].clone(),
        2 => m[0][0].times(&m[1][1]).minus(&m[0][1].times(&m[1][0])),
        n => {
            let mut acc = T::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor = minor(m, 0, j);
                let term = m[0][j].times(&ring_determinant(&minor, nvars));
                acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
            }
            acc
        }
    }
}

/// Adjugate: `adj(m) m = m adj(m) = det(m) I`.
pub fn ring_adjugate<T: DiffRing>(m: &[Vec<T>], nvars: usize) -> Vec<Vec<T>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![T::one(nvars)]];
    }
    let mut adj = vec![vec![T::zero(nvars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = ring_determinant(&minor(m, i, j), nvars);
            // adj[j][i] = (-1)^(i+j) M_ij
            adj[j][i] = if (i + j) % 2 == 0 { c } else { c.negate() };
        }
    }
    adj
}

fn minor<T: Clone>(m: &[Vec<T>], row: usize, col: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, MultiPoly};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
        assert_eq!(determinant(&a), int(18));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn solve_system() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(solve(&a, &[int(3), rat(1, 2)]).unwrap(), vec![rat(1, 2), int(3)]);
    }

    #[test]
    fn charpoly_matches_determinant() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let chi = characteristic_polynomial(&a);
        // chi(0) = det(-A) = -det(A) for n = 3
        assert_eq!(chi.evaluate(&int(0)), -determinant(&a));
        let shifted: Matrix = (0..3)
            .map(|i| (0..3).map(|j| if i == j { int(5) - &a[i][j] } else { -a[i][j].clone() }).collect())
            .collect();
        assert_eq!(chi.evaluate(&int(5)), determinant(&shifted));
    }

    #[test]
    fn ring_det_and_adjugate() {
        let t = |i| MultiPoly::var(2, i);
        let one = MultiPoly::one(2);
        let a = vec![vec![t(0), t(1), one.clone()], vec![one.clone(), t(0), t(1)], vec![t(1), one.clone(), t(0)]];
        let det = ring_determinant(&a, 2);
        let adj = ring_adjugate(&a, 2);
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(MultiPoly::zero(2), |acc, k| &acc + &(&a[i][k] * &adj[k][j]));
                let expect = if i == j { det.clone() } else { MultiPoly::zero(2) };
                assert_eq!(s, expect);
            }
        }
    }
}
