//! The commutative unital algebra on a single tangent space.

use num_traits::Zero;

use crate::algebroid::StructureConstants;
use crate::check::{CheckReport, Witness};
use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusSpec, StructureTensor};
use crate::linalg::{self, Matrix};
use crate::poly::{int, MultiPoly, Rational};
use crate::sampling;

/// Structure constants at a point: `x * y = sum c[i][j][k] x^i y^j e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberAlgebra {
    c: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl FiberAlgebra {
    pub fn new(c: Vec<Vec<Vec<Rational>>>, unit: Vec<Rational>) -> Result<Self> {
        let n = c.len();
        check_len(n, unit.len())?;
        for plane in &c {
            check_len(n, plane.len())?;
            for row in plane {
                check_len(n, row.len())?;
            }
        }
        Ok(FiberAlgebra { c, unit })
    }

    /// Evaluates polynomial structure constants at `pt`.
    pub fn from_product(product: &StructureConstants, unit: Vec<Rational>, pt: &[Rational]) -> Result<Self> {
        let c = product
            .raw()
            .iter()
            .map(|plane| {
                plane.iter().map(|row| row.iter().map(|p| p.evaluate(pt)).collect::<Result<Vec<_>>>()).collect()
            })
            .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
        Self::new(c, unit)
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        &self.c
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        (0..self.n()).map(|k| if k == i { int(1) } else { int(0) }).collect()
    }

    /// `x * y`.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.n(), x.len())?;
        check_len(self.n(), y.len())?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.n();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        *o += c * &w;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `u -> x * u`: `(M_x)[k][j] = sum_i c[i][j][k] x^i`.
    pub fn mult_operator(&self, x: &[Rational]) -> Matrix {
        let n = self.n();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |acc, i| acc + &self.c[i][j][k] * &x[i]))
                    .collect()
            })
            .collect()
    }

    /// The `u` with `x * u = unit`.
    pub fn invert(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self.n(), x.len())?;
        linalg::solve(&self.mult_operator(x), &self.unit).ok_or(Error::NotInvertible { stage: None })
    }

    /// The algebra with product `x *' y = x * y * w` and unit `w^{-1}`.
    pub fn twisted(&self, w: &[Rational]) -> Result<Self> {
        let n = self.n();
        let unit = self.invert(w)?;
        let c = (0..n)
            .map(|i| (0..n).map(|j| self.mul(&self.mul(&self.basis(i), &self.basis(j)), w)).collect())
            .collect();
        Ok(FiberAlgebra { c, unit })
    }

    /// True when some sampled element has a squarefree characteristic
    /// polynomial. For `n <= 2` a negative sampled answer is confirmed by an
    /// exact test over basis elements.
    pub fn is_semisimple(&self, trials: usize, seed: u64) -> bool {
        let n = self.n();
        let mut rng = sampling::rng(seed);
        for _ in 0..trials {
            let z = sampling::random_element(&mut rng, n);
            if linalg::characteristic_polynomial(&self.mult_operator(&z)).is_squarefree() {
                return true;
            }
        }
        match n {
            0 => true,
            1 => !self.c[0][0][0].is_zero(),
            2 => (0..2).any(|i| linalg::characteristic_polynomial(&self.mult_operator(&self.basis(i))).is_squarefree()),
            _ => false,
        }
    }

    /// Commutativity, associativity and unit axiom on basis elements.
    pub fn algebra_reports(&self) -> Vec<CheckReport> {
        let n = self.n();
        let mut comm = None;
        'c: for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if self.c[i][j][k] != self.c[j][i][k] {
                        let d = &self.c[i][j][k] - &self.c[j][i][k];
                        comm = Some(Witness::new("commutativity", vec![i + 1, j + 1, k + 1], crate::poly::format_rational(&d)));
                        break 'c;
                    }
                }
            }
        }
        let mut assoc = None;
        'a: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if lhs != rhs {
                        let d: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                        assoc = Some(Witness::new("associativity", vec![i + 1, j + 1, k + 1], rational_vec(&d)));
                        break 'a;
                    }
                }
            }
        }
        let unit = (0..n).find_map(|i| {
            let b = self.basis(i);
            let l = self.mul(&self.unit, &b);
            let r = self.mul(&b, &self.unit);
            (l != b || r != b).then(|| {
                let d: Vec<Rational> = l.iter().zip(&b).map(|(a, b)| a - b).collect();
                Witness::new("unit", vec![i + 1], rational_vec(&d))
            })
        });
        vec![
            CheckReport::from_witness("commutativity", comm),
            CheckReport::from_witness("associativity", assoc),
            CheckReport::from_witness("unit", unit),
        ]
    }

    /// Algebra axioms plus invariance `g(x * y, z) = g(x, y * z)` on basis
    /// triples.
    pub fn check_frobenius_algebra(&self, g: &Matrix) -> CheckReport {
        let n = self.n();
        let mut parts = self.algebra_reports();
        let pair = |x: &[Rational], y: &[Rational]| -> Rational {
            (0..n).fold(Rational::zero(), |acc, i| {
                (0..n).fold(acc, |acc, j| acc + &x[i] * &g[i][j] * &y[j])
            })
        };
        let mut inv = None;
        'g: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let d = pair(&self.mul(&x, &y), &z) - pair(&x, &self.mul(&y, &z));
                    if !d.is_zero() {
                        inv = Some(Witness::new("invariance", vec![i + 1, j + 1, k + 1], crate::poly::format_rational(&d)));
                        break 'g;
                    }
                }
            }
        }
        parts.push(CheckReport::from_witness("invariance", inv));
        CheckReport::combine("frobenius_algebra", &parts)
    }
}

pub(crate) fn rational_vec(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(crate::poly::format_rational).collect();
    format!("[{}]", s.join(", "))
}

/// Fiber algebra of the tangent product at `pt`, with unit `e_1`.
pub fn algebra_at(tensor: &StructureTensor, pt: &[Rational]) -> Result<FiberAlgebra> {
    check_len(tensor.n(), pt.len())?;
    let n = tensor.n();
    let unit = (0..n).map(|k| if k == 0 { int(1) } else { int(0) }).collect();
    FiberAlgebra::from_product(&tensor.product(), unit, pt)
}

/// Matrix of multiplication by a polynomial vector field:
/// `(M_x)[k][j] = sum_i c[i][j][k] x^i`.
pub fn poly_mult_operator(product: &StructureConstants, x: &[MultiPoly]) -> Vec<Vec<MultiPoly>> {
    let r = product.rank();
    let nvars = x.first().map_or(0, MultiPoly::nvars);
    (0..r)
        .map(|k| {
            (0..r)
                .map(|j| {
                    x.iter()
                        .enumerate()
                        .filter(|(_, xi)| !xi.is_zero())
                        .fold(MultiPoly::zero(nvars), |acc, (i, xi)| &acc + &(product.get(i, j, k) * xi))
                })
                .collect()
        })
        .collect()
}

/// `det M_{E(t)}`; the discriminant is its zero set.
pub fn discriminant_det(tensor: &StructureTensor, spec: &FrobeniusSpec) -> MultiPoly {
    let e = spec.euler_field();
    linalg::ring_determinant(&poly_mult_operator(&tensor.product(), e.components()), spec.n())
}
