use num_traits::Zero;

use super::rational::Rational;

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. Only what the squarefree test needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                for (k, c) in divisor.coeffs.iter().enumerate() {
                    r[top - dd + k] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last().cloned() {
            Some(lc) => UniPoly::new(a.coeffs.iter().map(|c| c / &lc).collect()),
            None => a,
        }
    }

    /// No repeated roots over an algebraic closure: `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn squarefree_detection() {
        // (x-1)(x-2)
        assert!(p(&[2, -3, 1]).is_squarefree());
        // (x-1)^2
        assert!(!p(&[1, -2, 1]).is_squarefree());
        // x^2 + 1 has no rational roots but is squarefree
        assert!(p(&[1, 0, 1]).is_squarefree());
        assert!(!p(&[0, 0, 1]).is_squarefree());
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[2, -3, 1]); // (x-1)(x-2)
        let b = p(&[-3, 4, -1]); // -(x-1)(x-3)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.evaluate(&int(2)), int(0));
    }
}
