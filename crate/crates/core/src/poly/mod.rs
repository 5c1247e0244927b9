//! Exact arithmetic kernel.
//!
//! Coefficients are arbitrary-precision rationals. Polynomials are sparse maps
//! from exponent vectors to nonzero coefficients, kept in a deterministic
//! (lexicographic) order so that printing and iteration are reproducible.
//! Quotients of polynomials are kept unreduced; equality is decided by
//! cross-multiplication.

mod multipoly;
mod ratfunc;
mod rational;
mod univariate;

pub use multipoly::{ArithKind, Monomial, MultiPoly, poly_arith};
pub use ratfunc::{RationalFunction, rf_arith, rf_equal};
pub use rational::{format_rational, int, parse_rational, rat, Rational, RationalPoint};
pub use univariate::UniPoly;

use std::fmt;

/// A commutative ring of functions of `nvars` variables with formal partial
/// derivatives. Implemented by [`MultiPoly`] and [`RationalFunction`] so that
/// vector fields, brackets and algebroid checks can run over either.
pub trait DiffRing: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero(nvars: usize) -> Self;
    fn one(nvars: usize) -> Self;
    fn from_poly(p: &MultiPoly) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Partial derivative with respect to the zero-based variable `i`.
    ///
    /// Panics if `i` is out of range.
    fn derivative(&self, i: usize) -> Self;

    fn scale(&self, c: &Rational) -> Self {
        self.times(&Self::from_poly(&MultiPoly::constant(self.nvars(), c.clone())))
    }
}

impl DiffRing for MultiPoly {
    fn zero(nvars: usize) -> Self {
        MultiPoly::zero(nvars)
    }
    fn one(nvars: usize) -> Self {
        MultiPoly::one(nvars)
    }
    fn from_poly(p: &MultiPoly) -> Self {
        p.clone()
    }
    fn nvars(&self) -> usize {
        MultiPoly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn derivative(&self, i: usize) -> Self {
        self.partial_derivative(i).expect("variable index in range")
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
}

impl DiffRing for RationalFunction {
    fn zero(nvars: usize) -> Self {
        RationalFunction::from_poly(MultiPoly::zero(nvars))
    }
    fn one(nvars: usize) -> Self {
        RationalFunction::from_poly(MultiPoly::one(nvars))
    }
    fn from_poly(p: &MultiPoly) -> Self {
        RationalFunction::from_poly(p.clone())
    }
    fn nvars(&self) -> usize {
        RationalFunction::nvars(self)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn derivative(&self, i: usize) -> Self {
        self.partial_derivative(i).expect("variable index in range")
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFunction::scale(self, c)
    }
}
