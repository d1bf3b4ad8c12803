//! Univariate polynomials in `x` with rational coefficients.
//!
//! Only what the series engine needs is provided: ring operations, scaling
//! by a rational, evaluation and substitution. There is no polynomial
//! division.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense polynomial, coefficient `i` multiplies `x^i`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Horner evaluation with the argument in any ring that contains the
    /// rationals. Evaluating at [`Polynomial::x`] returns `self`; evaluating
    /// at `x + a` shifts the argument.
    pub fn eval_in<C: crate::series::Coefficient>(&self, at: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| {
            let mut next = acc.mul_ref(at);
            next += &C::from_rational(c.clone());
            next
        })
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        self.eval_in(&(Self::x() + Self::constant(a.clone())))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Renders like `x^2 - 1/6`, highest power first.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}*x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        let trimmed = core::mem::take(&mut self.coeffs);
        *self = Self::new(trimmed);
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        let trimmed = core::mem::take(&mut self.coeffs);
        *self = Self::new(trimmed);
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::string::ToString;

    #[test]
    fn canonical_trimming() {
        let p = Polynomial::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Polynomial::new(vec![int(0)]), Polynomial::zero());
        let q = Polynomial::x() - Polynomial::x();
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = Polynomial::x();
        let p = &x * &x - Polynomial::constant(rat(1, 6));
        assert_eq!(p.eval(&int(0)), rat(-1, 6));
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 12));
        assert_eq!(p.to_string(), "x^2 - 1/6");
        assert_eq!((-p.clone()).to_string(), "-x^2 + 1/6");
        assert_eq!(p.eval_in(&x), p);
    }

    #[test]
    fn shift_by_one() {
        // (x+1)^2 - 2(x+1) + 5/6 = x^2 - 1/6
        let p = Polynomial::new(vec![rat(5, 6), int(-2), int(1)]);
        assert_eq!(
            p.shift(&int(1)),
            Polynomial::new(vec![rat(-1, 6), int(0), int(1)])
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::constant(rat(-3, 4)).to_string(), "-3/4");
        let p = Polynomial::new(vec![int(0), int(-6), int(11), int(-6), int(1)]);
        assert_eq!(p.to_string(), "x^4 - 6*x^3 + 11*x^2 - 6*x");
    }
}
