use super::{Anchor, OneForm, PolyVectorField, VectorField};
use crate::error::{Error, Result};
use crate::poly::{DiffRing, MultiPoly};

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// `X(f) = sum_i X^i d_i f`.
pub fn apply_to_function<T: DiffRing>(x: &VectorField<T>, f: &T) -> T {
    x.components()
        .iter()
        .enumerate()
        .filter(|(_, xi)| !xi.is_zero())
        .fold(T::zero(f.nvars()), |acc, (i, xi)| acc.plus(&xi.times(&f.derivative(i))))
}

/// Coordinate Lie bracket `[X, Y]^j = sum_i (X^i d_i Y^j - Y^i d_i X^j)`.
pub fn lie_bracket<T: DiffRing>(x: &VectorField<T>, y: &VectorField<T>) -> Result<VectorField<T>> {
    same_dim(x.dim(), y.dim())?;
    Ok(VectorField::new(
        x.components()
            .iter()
            .zip(y.components())
            .map(|(xj, yj)| apply_to_function(x, yj).minus(&apply_to_function(y, xj)))
            .collect(),
    ))
}

/// `(L_X b)_j = sum_i (X^i d_i b_j + b_i d_j X^i)`.
pub fn lie_derivative_one_form<T: DiffRing>(x: &VectorField<T>, b: &OneForm<T>) -> Result<OneForm<T>> {
    same_dim(x.dim(), b.dim())?;
    let n = x.dim();
    Ok(OneForm::new(
        (0..n)
            .map(|j| {
                let transport = apply_to_function(x, &b.components()[j]);
                b.components()
                    .iter()
                    .zip(x.components())
                    .filter(|(bi, _)| !bi.is_zero())
                    .fold(transport, |acc, (bi, xi)| acc.plus(&bi.times(&xi.derivative(j))))
            })
            .collect(),
    ))
}

/// Antisymmetric bivector `Pi^{ij}(t)`. The Jacobi (Schouten) condition is
/// not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonBivector {
    components: Vec<Vec<MultiPoly>>,
}

impl PoissonBivector {
    pub fn new(components: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let n = components.len();
        for row in &components {
            same_dim(n, row.len())?;
        }
        for i in 0..n {
            for j in i..n {
                if components[i][j] != -&components[j][i] {
                    return Err(Error::NotAntisymmetric { row: i, col: j });
                }
            }
        }
        Ok(PoissonBivector { components })
    }

    /// Builds the bivector from its strictly upper-triangular entries.
    pub fn from_upper(n: usize, entries: &[((usize, usize), MultiPoly)]) -> Result<Self> {
        let mut c = vec![vec![MultiPoly::zero(n); n]; n];
        for ((i, j), p) in entries {
            c[*i][*j] = p.clone();
            c[*j][*i] = -p;
        }
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<MultiPoly>] {
        &self.components
    }

    /// `Pi#(a)^j = sum_i a_i Pi^{ij}`.
    pub fn sharp(&self, a: &OneForm) -> PolyVectorField {
        let n = self.dim();
        VectorField::new(
            (0..n)
                .map(|j| {
                    a.components()
                        .iter()
                        .enumerate()
                        .fold(MultiPoly::zero(n), |acc, (i, ai)| &acc + &(ai * &self.components[i][j]))
                })
                .collect(),
        )
    }

    /// `Pi(a, b) = sum_{i,j} a_i Pi^{ij} b_j`.
    pub fn pairing(&self, a: &OneForm, b: &OneForm) -> MultiPoly {
        let s = self.sharp(a);
        s.components()
            .iter()
            .zip(b.components())
            .fold(MultiPoly::zero(self.dim()), |acc, (x, y)| &acc + &(x * y))
    }

    /// `{f, g} = sum_{i,j} Pi^{ij} d_i f d_j g`.
    pub fn poisson_bracket(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        self.pairing(&differential(f), &differential(g))
    }

    /// The anchor `Pi#` as an `n x n` matrix acting on one-forms.
    pub fn anchor(&self) -> Anchor {
        let n = self.dim();
        Anchor::new((0..n).map(|j| (0..n).map(|i| self.components[i][j].clone()).collect()).collect())
            .expect("square")
    }
}

/// `df = (d_1 f, ..., d_n f)`.
pub fn differential(f: &MultiPoly) -> OneForm {
    OneForm::new((0..f.nvars()).map(|i| f.derivative(i)).collect())
}

/// Bracket of one-forms on a Poisson manifold:
/// `[a, b] = L_{Pi# a} b - L_{Pi# b} a - d Pi(a, b)`.
///
/// With `Pi(a, b) = <Pi# a, b>` this is the sign for which `[df, dg] = d{f, g}`
/// and `Pi#` is a bracket homomorphism when `Pi` is Poisson.
pub fn koszul_bracket(pi: &PoissonBivector, a: &OneForm, b: &OneForm) -> Result<OneForm> {
    same_dim(pi.dim(), a.dim())?;
    same_dim(pi.dim(), b.dim())?;
    let lab = lie_derivative_one_form(&pi.sharp(a), b)?;
    let lba = lie_derivative_one_form(&pi.sharp(b), a)?;
    let dpair = differential(&pi.pairing(a, b));
    Ok(lab.minus(&lba).minus(&dpair))
}
