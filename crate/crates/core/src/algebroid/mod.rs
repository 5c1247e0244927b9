//! Vector fields, one-forms, brackets and the axiom checkers for F-algebroids
//! and Lie algebroids.
//!
//! All objects are generic over the coefficient ring so the same code checks
//! polynomial structures and the rational-function structures of the dual
//! product.

mod bracket;
mod checks;
mod defect;

pub use bracket::{
    apply_to_function, differential, koszul_bracket, lie_bracket, lie_derivative_one_form, PoissonBivector,
};
pub use checks::{
    check_f_algebroid, check_lie_algebroid, coordinate_bracket_evaluator, default_test_functions,
    f_algebroid_reports, lie_algebroid_reports, poisson_bracket_evaluator, pullback_bracket, tangent_f_algebroid,
    BracketRule, FAlgebroidSpec, SectionBracket,
};
pub use defect::{check_hertling_manin, defect_identity_witness, hm_defect, hm_identity_residual, product_defect};

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{DiffRing, MultiPoly};

/// Components `X^i(t)` of a vector field in the coordinate basis.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<T = MultiPoly> {
    components: Vec<T>,
}

/// Components `alpha_i(t)` of a one-form in the basis `dt^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<T = MultiPoly> {
    components: Vec<T>,
}

pub type PolyVectorField = VectorField<MultiPoly>;
pub type PolyOneForm = OneForm<MultiPoly>;

macro_rules! component_vector {
    ($ty:ident) => {
        impl<T: DiffRing> $ty<T> {
            pub fn new(components: Vec<T>) -> Self {
                $ty { components }
            }

            /// The `i`-th basis element (zero-based) in `n` variables.
            pub fn basis(n: usize, i: usize) -> Self {
                $ty::new((0..n).map(|k| if k == i { T::one(n) } else { T::zero(n) }).collect())
            }

            pub fn zero(n: usize) -> Self {
                $ty::new(vec![T::zero(n); n])
            }

            pub fn dim(&self) -> usize {
                self.components.len()
            }

            pub fn components(&self) -> &[T] {
                &self.components
            }

            pub fn into_components(self) -> Vec<T> {
                self.components
            }

            pub fn is_zero(&self) -> bool {
                self.components.iter().all(DiffRing::is_zero)
            }

            pub fn plus(&self, other: &Self) -> Self {
                $ty::new(zip_with(&self.components, &other.components, T::plus))
            }

            pub fn minus(&self, other: &Self) -> Self {
                $ty::new(zip_with(&self.components, &other.components, T::minus))
            }

            /// Pointwise multiplication by a function.
            pub fn times_fn(&self, f: &T) -> Self {
                $ty::new(self.components.iter().map(|c| c.times(f)).collect())
            }
        }

        impl<T: DiffRing> fmt::Display for $ty<T> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_components(&self.components, f)
            }
        }
    };
}

component_vector!(VectorField);
component_vector!(OneForm);

pub(crate) fn zip_with<T>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

pub(crate) fn fmt_components<T: fmt::Display>(c: &[T], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[")?;
    for (k, v) in c.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "]")
}

pub(crate) fn components_to_string<T: fmt::Display>(c: &[T]) -> String {
    struct Show<'a, T>(&'a [T]);
    impl<T: fmt::Display> fmt::Display for Show<'_, T> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_components(self.0, f)
        }
    }
    Show(c).to_string()
}

pub(crate) fn basis_section<T: DiffRing>(rank: usize, nvars: usize, i: usize) -> Vec<T> {
    (0..rank).map(|k| if k == i { T::one(nvars) } else { T::zero(nvars) }).collect()
}

/// Structure constants of a commutative multiplication on sections of a rank
/// `r` bundle: `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<T = MultiPoly> {
    c: Vec<Vec<Vec<T>>>,
}

impl<T: DiffRing> StructureConstants<T> {
    pub fn new(c: Vec<Vec<Vec<T>>>) -> Result<Self> {
        let r = c.len();
        for plane in &c {
            if plane.len() != r {
                return Err(Error::DimensionMismatch { expected: r, found: plane.len() });
            }
            for row in plane {
                if row.len() != r {
                    return Err(Error::DimensionMismatch { expected: r, found: row.len() });
                }
            }
        }
        Ok(StructureConstants { c })
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[i][j][k]
    }

    pub fn raw(&self) -> &Vec<Vec<Vec<T>>> {
        &self.c
    }

    /// `(x * y)^k = sum_{i,j} c[i][j][k] x^i y^j`.
    pub fn multiply(&self, x: &[T], y: &[T]) -> Vec<T> {
        let r = self.rank();
        let nvars = x.first().map_or(0, T::nvars);
        let mut out = vec![T::zero(nvars); r];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi.times(yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        *o = o.plus(&c.times(&w));
                    }
                }
            }
        }
        out
    }

    pub fn multiply_fields(&self, x: &VectorField<T>, y: &VectorField<T>) -> VectorField<T> {
        VectorField::new(self.multiply(x.components(), y.components()))
    }

    /// First `(i, j, k)` with `c[i][j][k] != c[j][i][k]`.
    pub fn asymmetry(&self) -> Option<(usize, usize, usize)> {
        let r = self.rank();
        for i in 0..r {
            for j in i + 1..r {
                for k in 0..r {
                    if self.c[i][j][k] != self.c[j][i][k] {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Bundle map to the tangent bundle: `rho(alpha)^i = sum_j matrix[i][j] alpha_j`
/// for an `n x r` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Anchor {
    matrix: Vec<Vec<MultiPoly>>,
}

impl Anchor {
    pub fn new(matrix: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = matrix.first().map_or(0, Vec::len);
        if let Some(row) = matrix.iter().find(|row| row.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, found: row.len() });
        }
        Ok(Anchor { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Anchor { matrix: (0..n).map(|i| basis_section(n, n, i)).collect() }
    }

    pub fn matrix(&self) -> &[Vec<MultiPoly>] {
        &self.matrix
    }

    /// Base dimension `n`.
    pub fn base_dim(&self) -> usize {
        self.matrix.len()
    }

    /// Bundle rank `r`.
    pub fn rank(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, section: &[MultiPoly]) -> PolyVectorField {
        let nvars = self.base_dim();
        VectorField::new(
            self.matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(section)
                        .fold(MultiPoly::zero(nvars), |acc, (m, a)| &acc + &(m * a))
                })
                .collect(),
        )
    }

    pub fn scaled(&self, c: &crate::poly::Rational) -> Self {
        Anchor { matrix: self.matrix.iter().map(|row| row.iter().map(|m| m.scale(c)).collect()).collect() }
    }
}
