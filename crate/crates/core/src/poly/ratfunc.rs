use std::fmt;

use num_traits::{One, Zero};

use super::multipoly::{ArithKind, MultiPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Formal quotient of polynomials.
///
/// No gcd is ever taken. The denominator is stored as a product of monic,
/// non-constant factors with multiplicities, exactly as they were introduced;
/// sums use the factor-wise lcm of the two denominators, which keeps the
/// quotients built from a single discriminant polynomial in the form
/// `p / D^k` instead of letting denominators square on every addition.
///
/// Equality (`==`, [`rf_equal`]) is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: MultiPoly,
    // sorted by factor, factors distinct, exponents positive
    den: Vec<(MultiPoly, u32)>,
}

/// `x == y` as rational functions.
pub fn rf_equal(x: &RationalFunction, y: &RationalFunction) -> bool {
    x == y
}

/// Field operation on quotients.
pub fn rf_arith(x: &RationalFunction, y: &RationalFunction, kind: ArithKind) -> RationalFunction {
    match kind {
        ArithKind::Add => x.add(y),
        ArithKind::Sub => x.sub(y),
        ArithKind::Mul => x.mul(y),
    }
}

impl RationalFunction {
    /// `num / den`; fails when `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::VariableCountMismatch { left: num.nvars(), right: den.nvars() });
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (monic, lc) = den.monic();
        let num = num.scale(&lc.recip());
        if monic.is_constant() {
            return Ok(RationalFunction { num, den: Vec::new() });
        }
        Ok(RationalFunction { num, den: vec![(monic, 1)] })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    /// The denominator as a single expanded polynomial.
    pub fn denominator(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::one(self.nvars()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// The denominator as `(factor, multiplicity)` pairs.
    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this quotient equals, when the denominator is trivial or
    /// divides the numerator exactly.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let mut num = self.num.clone();
        for (f, e) in &self.den {
            for _ in 0..*e {
                num = num.exact_div(f)?;
            }
        }
        Some(num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.num * &other.num;
        if num.is_zero() {
            return RationalFunction::from_poly(num);
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            match den.binary_search_by(|(g, _)| g.cmp(f)) {
                Ok(pos) => den[pos].1 += e,
                Err(pos) => den.insert(pos, (f.clone(), *e)),
            }
        }
        RationalFunction { num, den }
    }

    /// Quotient-rule derivative with respect to the zero-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        let dnum = self.num.partial_derivative(i)?;
        if self.den.is_empty() {
            return Ok(RationalFunction::from_poly(dnum));
        }
        // d(p / prod f_k^e_k) = (p' prod f_k - p sum_k e_k f_k' prod_{j!=k} f_j) / prod f_k^(e_k+1)
        let one = MultiPoly::one(self.nvars());
        let radical = self.den.iter().fold(one.clone(), |acc, (f, _)| &acc * f);
        let mut num = &dnum * &radical;
        for (k, (f, e)) in self.den.iter().enumerate() {
            let df = f.partial_derivative(i)?;
            if df.is_zero() {
                continue;
            }
            let others = self
                .den
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(one.clone(), |acc, (_, (g, _))| &acc * g);
            let term = &(&self.num * &df) * &others;
            num = &num - &term.scale(&Rational::from_integer((*e).into()));
        }
        let den = self.den.iter().map(|(f, e)| (f.clone(), e + 1)).collect();
        Ok(RationalFunction { num, den })
    }

    /// Exact evaluation; fails if the denominator vanishes at `pt`.
    pub fn evaluate(&self, pt: &[Rational]) -> Result<Rational> {
        let mut d = Rational::one();
        for (f, e) in &self.den {
            let v = f.evaluate(pt)?;
            if v.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            for _ in 0..*e {
                d *= &v;
            }
        }
        Ok(self.num.evaluate(pt)? / d)
    }

    /// Divides out denominator factors that divide the numerator exactly.
    pub fn cancel_factors(mut self) -> Self {
        let mut k = 0;
        while k < self.den.len() {
            while self.den[k].1 > 0 {
                match self.num.exact_div(&self.den[k].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[k].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[k].1 == 0 {
                self.den.remove(k);
            } else {
                k += 1;
            }
        }
        self
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        let (lcm, ca, cb) = lcm_cofactors(&self.den, &other.den, self.nvars());
        let a = &self.num * &ca;
        let b = &other.num * &cb;
        let num = if negate_other { &a - &b } else { &a + &b };
        if num.is_zero() {
            return RationalFunction::from_poly(num);
        }
        RationalFunction { num, den: lcm }
    }
}

/// lcm of two factored denominators and the cofactors `lcm / a`, `lcm / b`.
fn lcm_cofactors(
    a: &[(MultiPoly, u32)],
    b: &[(MultiPoly, u32)],
    nvars: usize,
) -> (Vec<(MultiPoly, u32)>, MultiPoly, MultiPoly) {
    let mut lcm = Vec::with_capacity(a.len() + b.len());
    let mut ca = MultiPoly::one(nvars);
    let mut cb = MultiPoly::one(nvars);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some((f, _)), Some((g, _))) => f.cmp(g),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                let (f, e) = &a[i];
                cb = &cb * &f.pow(*e);
                lcm.push((f.clone(), *e));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let (g, e) = &b[j];
                ca = &ca * &g.pow(*e);
                lcm.push((g.clone(), *e));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let (f, ea) = &a[i];
                let eb = b[j].1;
                let m = (*ea).max(eb);
                if m > *ea {
                    ca = &ca * &f.pow(m - ea);
                }
                if m > eb {
                    cb = &cb * &f.pow(m - eb);
                }
                lcm.push((f.clone(), m));
                i += 1;
                j += 1;
            }
        }
    }
    (lcm, ca, cb)
}

impl PartialEq for RationalFunction {
    /// Cross-multiplication: `p/q == r/s` iff `p*s - r*q == 0`, with the
    /// common part of `q` and `s` divided out first.
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, ca, cb) = lcm_cofactors(&self.den, &other.den, self.nvars());
        (&self.num * &ca) == (&other.num * &cb)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (g, e)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn t(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    fn rf(n: MultiPoly, d: MultiPoly) -> RationalFunction {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn common_factor_equality() {
        let a = rf(t(0), t(1));
        let b = rf(&t(0) * &t(0), &t(0) * &t(1));
        assert!(rf_equal(&a, &b));
        assert!(!rf_equal(&rf(t(0), MultiPoly::one(2)), &rf(t(1), MultiPoly::one(2))));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(t(0), MultiPoly::zero(2)).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn sum_of_reciprocals() {
        let x = rf(MultiPoly::one(2), t(0));
        let s = rf_arith(&x, &x, ArithKind::Add);
        assert!(rf_equal(&s, &rf(MultiPoly::constant(2, int(2)), t(0))));
        assert!(rf_equal(&s, &rf(t(0).scale(&int(2)), &t(0) * &t(0))));
    }

    #[test]
    fn constant_denominator_folds() {
        let x = rf(t(0), MultiPoly::constant(2, int(4)));
        assert!(x.denominator_factors().is_empty());
        assert_eq!(x.numerator(), &t(0).scale(&crate::poly::rat(1, 4)));
    }

    #[test]
    fn quotient_rule() {
        // d/dt1 (1 / t1) = -1 / t1^2
        let x = rf(MultiPoly::one(2), t(0));
        let d = x.partial_derivative(0).unwrap();
        assert!(rf_equal(&d, &rf(MultiPoly::constant(2, int(-1)), &t(0) * &t(0))));
        // d/dt1 (t1 / t1) = 0
        let y = rf(t(0), t(0));
        assert!(y.partial_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn evaluate_and_pole() {
        let x = rf(t(1), &t(0) - &t(1));
        assert_eq!(x.evaluate(&[int(3), int(1)]).unwrap(), crate::poly::rat(1, 2));
        assert_eq!(x.evaluate(&[int(2), int(2)]), Err(Error::ZeroDenominator));
    }

    #[test]
    fn as_poly_cancels() {
        let p = &t(0) + &t(1);
        let q = &t(0) - &t(1);
        assert_eq!(rf(&p * &q, q.clone()).as_poly(), Some(p));
        assert_eq!(rf(MultiPoly::one(2), q).as_poly(), None);
    }
}
