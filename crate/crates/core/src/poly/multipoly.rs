use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals in `t1..tn`.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality. Terms iterate in lexicographic exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, kind: ArithKind) -> Result<MultiPoly> {
    a.check_same(b)?;
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
    })
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `t_{i+1}` (zero-based index).
    ///
    /// Panics if `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(exps, Rational::one())
    }

    /// `c * t^exps`.
    pub fn monomial(exps: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging like
    /// terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let mut p = Self::zero(nvars);
        for (c, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in the single variable `i`, `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Largest term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Sum of the terms of total degree at most `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    fn add_term(&mut self, exps: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to the zero-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.terms.insert(e2, c * Rational::from_integer(e[i].into()));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, pt: &[Rational]) -> Result<Rational> {
        if pt.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: pt.len() });
        }
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.nvars];
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &pt[i];
                    cache.push(next);
                }
                term *= &cache[k as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Scales so that the leading coefficient is one. Returns the polynomial
    /// and the removed leading coefficient. The zero polynomial is returned
    /// unchanged with coefficient one.
    pub fn monic(&self) -> (Self, Rational) {
        match self.leading_term() {
            None => (self.clone(), Rational::one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                (self.scale(&lc.recip()), lc)
            }
        }
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    ///
    /// Uses multivariate division with respect to lexicographic order; when
    /// `divisor` divides `self` the leading terms always divide, so a failed
    /// leading-term division proves non-divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        let (dexp, dcoef) = divisor.leading_term()?;
        let (dexp, dcoef) = (dexp.clone(), dcoef.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rexp, rcoef)) = rem.leading_term() {
            if rexp.iter().zip(&dexp).any(|(r, d)| r < d) {
                return None;
            }
            let qexp: Monomial = rexp.iter().zip(&dexp).map(|(r, d)| r - d).collect();
            let qterm = Self::monomial(qexp, rcoef / &dcoef);
            rem = &rem - &(&qterm * divisor);
            quot = &quot + &qterm;
        }
        Some(quot)
    }

    /// Substitutes each variable `t_i` by `subs[i]` (all in a common ring of
    /// `nvars_out` variables).
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: subs.len() });
        }
        let nout = subs.first().map_or(0, |s| s.nvars);
        let mut acc = Self::zero(nout);
        for (e, c) in &self.terms {
            let mut term = Self::constant(nout, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                term = &term * &s.pow(k);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let c = if negate_other { -c } else { c.clone() };
            out.add_term(e.clone(), c);
        }
        out
    }

    fn product(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $body(self, rhs)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                $body(&self, rhs)
            }
        }
    };
}

// Operators panic on a variable-count mismatch; use `poly_arith` for the
// checked form.
forward_binop!(Add, add, |a: &MultiPoly, b: &MultiPoly| a.combine(b, false));
forward_binop!(Sub, sub, |a: &MultiPoly, b: &MultiPoly| a.combine(b, true));
forward_binop!(Mul, mul, |a: &MultiPoly, b: &MultiPoly| a.product(b));

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
