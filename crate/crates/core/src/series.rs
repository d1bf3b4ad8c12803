//! Truncated formal power series with exact coefficients.
//!
//! A [`TruncatedSeries`] of order `N` holds `c_0..c_N` and stands for
//! `sum c_j t^j + O(t^(N+1))`. Every binary operation requires both operands
//! to have the same order; a mismatch is reported, never silently
//! re-truncated. The coefficient ring is a type parameter, so mixing a
//! rational series with a polynomial one is rejected at compile time.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{AddAssign, Neg, SubAssign};

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::{factorial, from_usize, Rational};

/// A commutative ring containing the rationals, usable as series
/// coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn scale(&self, by: &Rational) -> Self;

    /// Multiplicative inverse, if this element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_rational(r: Rational) -> Self;
}

impl Coefficient for Rational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, by: &Rational) -> Self {
        self * by
    }

    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Coefficient for Polynomial {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, by: &Rational) -> Self {
        Polynomial::scale(self, by)
    }

    /// Only nonzero constants are units in `Q[x]`.
    fn unit_inverse(&self) -> Option<Self> {
        self.as_constant()
            .filter(|c| !c.is_zero())
            .map(|c| Polynomial::constant(c.recip()))
    }

    fn from_rational(r: Rational) -> Self {
        Polynomial::constant(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    CoefficientCount { order: usize, found: usize },
    OrderMismatch { left: usize, right: usize },
    NotAUnit,
    /// `numerator` tells which operand broke the valuation precondition.
    Valuation { index: usize, numerator: bool },
    ValuationExceedsOrder { valuation: usize, order: usize },
    NonzeroConstantTerm,
    IndexOutOfRange { index: usize, order: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::CoefficientCount { order, found } => write!(
                f,
                "coefficient count must equal order+1 (order {order}, got {found} coefficients)"
            ),
            SeriesError::OrderMismatch { left, right } => {
                write!(f, "series order mismatch: {left} vs {right}")
            }
            SeriesError::NotAUnit => {
                f.write_str("denominator not a unit; use series_div_valuation")
            }
            SeriesError::Valuation { index, numerator: true } => write!(
                f,
                "valuation precondition violated: numerator coefficient {index} is nonzero"
            ),
            SeriesError::Valuation { index, numerator: false } => write!(
                f,
                "valuation precondition violated: denominator coefficient {index} is not a unit"
            ),
            SeriesError::ValuationExceedsOrder { valuation, order } => {
                write!(f, "valuation {valuation} exceeds series order {order}")
            }
            SeriesError::NonzeroConstantTerm => {
                f.write_str("composition requires inner series with zero constant term")
            }
            SeriesError::IndexOutOfRange { index, order } => {
                write!(f, "coefficient index {index} out of range for order {order}")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// `c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn from_coeffs(coeffs: Vec<C>, order: usize) -> Result<Self, SeriesError> {
        if coeffs.len() != order + 1 {
            return Err(SeriesError::CoefficientCount {
                order,
                found: coeffs.len(),
            });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(C::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    /// The series `t` (just `0` at order zero).
    pub fn variable(order: usize) -> Self {
        Self::from_fn(order, |j| if j == 1 { C::one() } else { C::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Panics if `j > order`.
    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    /// Index of the first nonzero coefficient, `None` if all retained
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops every coefficient above `order`. Panics if `order` exceeds the
    /// current order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise truncation order");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &a.mul_ref(b);
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().cloned().map(Neg::neg).collect(),
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(by)).collect(),
        }
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self / den` for a denominator whose constant term is a unit, by
    /// forward substitution `q_j = (num_j - sum_{i<j} q_i den_{j-i}) / den_0`.
    pub fn div_unit(&self, den: &Self) -> Result<Self, SeriesError> {
        self.check_order(den)?;
        let inv = den.coeffs[0].unit_inverse().ok_or(SeriesError::NotAUnit)?;
        let mut q: Vec<C> = Vec::with_capacity(self.coeffs.len());
        for j in 0..self.coeffs.len() {
            let mut acc = self.coeffs[j].clone();
            for (i, qi) in q.iter().enumerate() {
                let d = &den.coeffs[j - i];
                if !d.is_zero() {
                    acc -= &qi.mul_ref(d);
                }
            }
            q.push(acc.mul_ref(&inv));
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Quotient of two series that both vanish to order `v`: both are
    /// shifted down by `v` and divided as units. The result has order
    /// `N - v`.
    pub fn div_valuation(&self, den: &Self, v: usize) -> Result<Self, SeriesError> {
        self.check_order(den)?;
        let order = self.order();
        if v > order {
            return Err(SeriesError::ValuationExceedsOrder { valuation: v, order });
        }
        if let Some(index) = (0..v).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(SeriesError::Valuation { index, numerator: true });
        }
        if let Some(index) = (0..v).find(|&i| !den.coeffs[i].is_zero()) {
            return Err(SeriesError::Valuation { index, numerator: false });
        }
        if den.coeffs[v].unit_inverse().is_none() {
            return Err(SeriesError::Valuation { index: v, numerator: false });
        }
        let num = self.shift_down(v);
        let den = den.shift_down(v);
        num.div_unit(&den)
    }

    fn shift_down(&self, v: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[v..].to_vec(),
        }
    }

    /// `self(inner(t))` by Horner's scheme over truncated series.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `n! c_n`, the coefficient read under the exponential convention
    /// `sum a_n t^n / n!`.
    pub fn egf_coefficient(&self, n: usize) -> Result<C, SeriesError> {
        let c = self.coeffs.get(n).ok_or(SeriesError::IndexOutOfRange {
            index: n,
            order: self.order(),
        })?;
        Ok(c.scale(&factorial(n)))
    }

    /// All exponential-convention coefficients `0! c_0 .. N! c_N`.
    pub fn egf_coefficients(&self) -> Vec<C> {
        let mut fact = Rational::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= from_usize(n);
                }
                c.scale(&fact)
            })
            .collect()
    }
}

impl TruncatedSeries<Rational> {
    /// Embeds a rational series into another coefficient ring.
    pub fn lift<C: Coefficient>(&self) -> TruncatedSeries<C> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().cloned().map(C::from_rational).collect(),
        }
    }
}

/// `e^(a t)`: coefficients `a^j / j!`.
pub fn exp_at<C: Coefficient>(a: &C, order: usize) -> TruncatedSeries<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = C::one();
    for j in 0..=order {
        if j > 0 {
            term = term.mul_ref(a).scale(&from_usize(j).recip());
        }
        coeffs.push(term.clone());
    }
    TruncatedSeries { coeffs }
}

/// `log(1 + t)`: coefficients `(-1)^(j+1) / j` for `j >= 1`.
pub fn log1p<C: Coefficient>(order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::from_fn(order, |j| {
        if j == 0 {
            C::zero()
        } else {
            let c = from_usize(j).recip();
            C::from_rational(if j % 2 == 1 { c } else { -c })
        }
    })
}

/// `(1 + t)^x`: coefficients `(x)_j / j!` with `(x)_j` the falling
/// factorial. Pass [`Polynomial::x`] for the symbolic expansion.
pub fn pow1p<C: Coefficient>(x: &C, order: usize) -> TruncatedSeries<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = C::one();
    for j in 0..=order {
        if j > 0 {
            let mut factor = x.clone();
            factor -= &C::from_rational(from_usize(j - 1));
            term = term.mul_ref(&factor).scale(&from_usize(j).recip());
        }
        coeffs.push(term.clone());
    }
    TruncatedSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::string::ToString;

    fn series(coeffs: &[(i64, i64)]) -> TruncatedSeries<Rational> {
        let v: Vec<_> = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
        let order = v.len() - 1;
        TruncatedSeries::from_coeffs(v, order).unwrap()
    }

    fn expm1(order: usize) -> TruncatedSeries<Rational> {
        exp_at(&int(1), order)
            .checked_sub(&TruncatedSeries::one(order))
            .unwrap()
    }

    #[test]
    fn from_coeffs_checks_length() {
        let err = TruncatedSeries::from_coeffs(vec![int(1), int(0)], 2).unwrap_err();
        assert_eq!(err, SeriesError::CoefficientCount { order: 2, found: 2 });
        assert!(err.to_string().starts_with("coefficient count must equal order+1"));
        let one = TruncatedSeries::from_coeffs(vec![int(1), int(0), int(0)], 2).unwrap();
        assert_eq!(one, TruncatedSeries::one(2));
        let t = TruncatedSeries::from_coeffs(vec![int(0), int(1)], 1).unwrap();
        assert_eq!(t, TruncatedSeries::variable(1));
    }

    #[test]
    fn add_examples() {
        let a = series(&[(1, 1), (1, 1)]);
        let b = series(&[(1, 1), (-1, 1)]);
        assert_eq!(a.checked_add(&b).unwrap(), TruncatedSeries::constant(int(2), 1));
        assert_eq!(a.checked_add(&TruncatedSeries::zero(1)).unwrap(), a);
        let sum = log1p::<Rational>(3)
            .checked_add(&TruncatedSeries::variable(3).neg())
            .unwrap();
        assert_eq!(sum, series(&[(0, 1), (0, 1), (-1, 2), (1, 3)]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedSeries::<Rational>::one(2);
        let b = TruncatedSeries::<Rational>::one(3);
        let err = SeriesError::OrderMismatch { left: 2, right: 3 };
        assert_eq!(a.checked_add(&b).unwrap_err(), err);
        assert_eq!(a.checked_mul(&b).unwrap_err(), err);
        assert_eq!(a.div_unit(&b).unwrap_err(), err);
        assert_eq!(a.compose(&b).unwrap_err(), err);
    }

    #[test]
    fn mul_examples() {
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.checked_mul(&b).unwrap(), series(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(a.checked_mul(&TruncatedSeries::one(2)).unwrap(), a);
    }

    #[test]
    fn gregory_series_times_inverse_is_one() {
        let order = 6;
        let log_over_t = log1p::<Rational>(order + 1)
            .div_valuation(&TruncatedSeries::variable(order + 1), 1)
            .unwrap();
        let t_over_log = TruncatedSeries::one(order).div_unit(&log_over_t).unwrap();
        assert_eq!(
            t_over_log.checked_mul(&log_over_t).unwrap(),
            TruncatedSeries::one(order)
        );
        assert_eq!(
            t_over_log.truncated(2),
            series(&[(1, 1), (1, 2), (-1, 12)])
        );
    }

    #[test]
    fn div_unit_examples() {
        let geom = TruncatedSeries::one(3)
            .div_unit(&series(&[(1, 1), (-1, 1), (0, 1), (0, 1)]))
            .unwrap();
        assert_eq!(geom, series(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
        let s = series(&[(3, 1), (1, 7), (-2, 5)]);
        assert_eq!(s.div_unit(&TruncatedSeries::one(2)).unwrap(), s);
        let q = series(&[(1, 1), (-1, 4), (1, 36)])
            .div_unit(&series(&[(1, 1), (-1, 2), (1, 3)]))
            .unwrap();
        assert_eq!(q, series(&[(1, 1), (1, 4), (-13, 72)]));
    }

    #[test]
    fn div_unit_rejects_non_units() {
        let err = TruncatedSeries::<Rational>::one(2)
            .div_unit(&TruncatedSeries::variable(2))
            .unwrap_err();
        assert_eq!(err, SeriesError::NotAUnit);
        assert_eq!(
            err.to_string(),
            "denominator not a unit; use series_div_valuation"
        );
        // x is not a unit of Q[x]
        let den = TruncatedSeries::constant(Polynomial::x(), 1);
        assert_eq!(
            TruncatedSeries::<Polynomial>::one(1).div_unit(&den).unwrap_err(),
            SeriesError::NotAUnit
        );
    }

    #[test]
    fn div_valuation_examples() {
        let t = TruncatedSeries::<Rational>::variable(4);
        assert_eq!(t.div_valuation(&t, 1).unwrap(), TruncatedSeries::one(3));

        // Li_2(1 - e^{-t}) through t^3 is [0, 1, -1/4, 1/36].
        let li2 = series(&[(0, 1), (1, 1), (-1, 4), (1, 36)]);
        let q = li2.div_valuation(&log1p(3), 1).unwrap();
        assert_eq!(q, series(&[(1, 1), (1, 4), (-13, 72)]));
    }

    #[test]
    fn div_valuation_names_offending_index() {
        let num = series(&[(0, 1), (1, 1), (1, 1)]);
        let den = series(&[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(
            num.div_valuation(&den, 2).unwrap_err(),
            SeriesError::Valuation { index: 1, numerator: true }
        );
        assert_eq!(
            den.div_valuation(&num, 2).unwrap_err(),
            SeriesError::Valuation { index: 1, numerator: false }
        );
        assert_eq!(
            den.div_valuation(&den, 3).unwrap_err(),
            SeriesError::ValuationExceedsOrder { valuation: 3, order: 2 }
        );
    }

    #[test]
    fn compose_examples() {
        let order = 5;
        let id = log1p::<Rational>(order).compose(&expm1(order)).unwrap();
        assert_eq!(id, TruncatedSeries::variable(order));

        let outer = series(&[(2, 1), (3, 5), (-1, 7), (4, 1)]);
        assert_eq!(outer.compose(&TruncatedSeries::variable(3)).unwrap(), outer);

        // sum_{n>=1} t^n / n^2 composed with 1 - e^{-t}
        let li2 = series(&[(0, 1), (1, 1), (1, 4), (1, 9)]);
        let inner = TruncatedSeries::one(3)
            .checked_sub(&exp_at(&int(-1), 3))
            .unwrap();
        assert_eq!(
            li2.compose(&inner).unwrap(),
            series(&[(0, 1), (1, 1), (-1, 4), (1, 36)])
        );

        assert_eq!(
            outer.compose(&TruncatedSeries::one(3)).unwrap_err(),
            SeriesError::NonzeroConstantTerm
        );
    }

    #[test]
    fn elementary_series() {
        assert_eq!(exp_at(&int(0), 3), TruncatedSeries::one(3));
        assert_eq!(exp_at(&int(-1), 3), series(&[(1, 1), (-1, 1), (1, 2), (-1, 6)]));
        assert_eq!(exp_at(&int(2), 2), series(&[(1, 1), (2, 1), (2, 1)]));
        assert_eq!(log1p::<Rational>(0), series(&[(0, 1)]));
        assert_eq!(log1p::<Rational>(3), series(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
        assert_eq!(pow1p(&int(0), 4), TruncatedSeries::one(4));
        assert_eq!(pow1p(&rat(1, 2), 2), series(&[(1, 1), (1, 2), (-1, 8)]));
        let sym = pow1p(&Polynomial::x(), 2);
        assert_eq!(
            sym.coeffs(),
            &[
                Polynomial::one(),
                Polynomial::x(),
                Polynomial::new(vec![int(0), rat(-1, 2), rat(1, 2)]),
            ]
        );
    }

    #[test]
    fn egf_extraction() {
        let t_over_log = TruncatedSeries::<Rational>::variable(4)
            .div_valuation(&log1p(4), 1)
            .unwrap();
        assert_eq!(t_over_log.egf_coefficient(0).unwrap(), int(1));
        assert_eq!(t_over_log.egf_coefficient(1).unwrap(), rat(1, 2));
        assert_eq!(t_over_log.egf_coefficient(2).unwrap(), rat(-1, 6));
        assert_eq!(
            t_over_log.egf_coefficient(4).unwrap_err(),
            SeriesError::IndexOutOfRange { index: 4, order: 3 }
        );
        assert_eq!(
            t_over_log.egf_coefficients(),
            vec![int(1), rat(1, 2), rat(-1, 6), rat(1, 4)]
        );
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let s = series(&[(1, 1), (-1, 2), (1, 12), (0, 1), (-1, 720)]);
        let mut acc = TruncatedSeries::one(4);
        for e in 0..7 {
            assert_eq!(s.pow(e), acc);
            acc = acc.checked_mul(&s).unwrap();
        }
    }
}
