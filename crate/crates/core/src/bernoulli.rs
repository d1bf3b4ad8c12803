//! Classical Bernoulli numbers, higher-order Bernoulli polynomials and the
//! Bernoulli numbers and polynomials of the second kind.
//!
//! Values use the exponential convention: `b_n` is `n!` times the
//! coefficient of `t^n` in `t / log(1 + t)`. The raw coefficients (Gregory
//! coefficients) are available from [`gregory_coefficients`].

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::combinatorics::{binomial, falling_factorial_poly};
use crate::poly::Polynomial;
use crate::rational::{int, Rational};
use crate::series::{exp_at, log1p, pow1p, Coefficient, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BernoulliError {
    NegativeOrder(i64),
}

impl fmt::Display for BernoulliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliError::NegativeOrder(alpha) => {
                write!(f, "negative order unsupported (alpha = {alpha})")
            }
        }
    }
}

impl core::error::Error for BernoulliError {}

/// `t / (e^t - 1)` through `t^order`.
pub fn bernoulli_series(order: usize) -> TruncatedSeries<Rational> {
    let expm1 = exp_at(&int(1), order + 1)
        .checked_sub(&TruncatedSeries::one(order + 1))
        .expect("same order");
    let expm1_over_t = expm1
        .div_valuation(&TruncatedSeries::variable(order + 1), 1)
        .expect("e^t - 1 has valuation one");
    TruncatedSeries::one(order)
        .div_unit(&expm1_over_t)
        .expect("constant term is one")
}

/// `t / log(1 + t)` through `t^order`.
pub fn gregory_series(order: usize) -> TruncatedSeries<Rational> {
    TruncatedSeries::variable(order + 1)
        .div_valuation(&log1p(order + 1), 1)
        .expect("log(1+t) has valuation one")
}

/// `B_0..B_{n_max}` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    bernoulli_series(n_max).egf_coefficients()
}

/// Raw coefficients of `t / log(1 + t)`: `1, 1/2, -1/12, 1/24, ...`.
pub fn gregory_coefficients(n_max: usize) -> Vec<Rational> {
    gregory_series(n_max).into_coeffs()
}

/// `b_0..b_{n_max}` under the exponential convention.
pub fn bernoulli2nd_numbers(n_max: usize) -> Vec<Rational> {
    gregory_series(n_max).egf_coefficients()
}

/// `b_n(x) = sum_l C(n, l) b_l (x)_{n-l}`.
pub fn bernoulli2nd_poly(n: usize) -> Polynomial {
    let b = bernoulli2nd_numbers(n);
    poly_from_numbers(n, &b)
}

fn poly_from_numbers(n: usize, b: &[Rational]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (l, bl) in b.iter().enumerate().take(n + 1) {
        acc += &falling_factorial_poly(n - l).scale(&(binomial(n, l) * bl));
    }
    acc
}

/// `b_0(x)..b_{n_max}(x)` read straight off `t / log(1 + t) (1 + t)^x`.
/// This is the generating-function route; [`bernoulli2nd_poly`] is the
/// closed form.
pub fn bernoulli2nd_gf<C: Coefficient>(n_max: usize, x: &C) -> Vec<C> {
    gregory_series(n_max)
        .lift::<C>()
        .checked_mul(&pow1p(x, n_max))
        .expect("same order")
        .egf_coefficients()
}

/// `B_n^(alpha)(x)`, the `t^n / n!` coefficient of
/// `(t / (e^t - 1))^alpha e^(x t)`, for integer `alpha >= 0`.
pub fn higher_order_bernoulli<C: Coefficient>(
    n: usize,
    alpha: i64,
    x: &C,
) -> Result<C, BernoulliError> {
    let alpha = u64::try_from(alpha).map_err(|_| BernoulliError::NegativeOrder(alpha))?;
    let powered = bernoulli_series(n).pow(alpha).lift::<C>();
    let series = powered.checked_mul(&exp_at(x, n)).expect("same order");
    Ok(series.egf_coefficient(n).expect("n within order"))
}

pub fn higher_order_bernoulli_poly(n: usize, alpha: i64) -> Result<Polynomial, BernoulliError> {
    higher_order_bernoulli(n, alpha, &Polynomial::x())
}

/// Checks `b_n(x) = B_n^(n)(x + 1)` as an exact polynomial identity.
pub fn check_b_equals_higher_order(n: usize) -> bool {
    let (lhs, rhs) = b_and_shifted_higher_order(n);
    lhs == rhs
}

/// Both sides of `b_n(x) = B_n^(n)(x + 1)`.
pub fn b_and_shifted_higher_order(n: usize) -> (Polynomial, Polynomial) {
    let shifted = Polynomial::x() + Polynomial::constant(int(1));
    let alpha = i64::try_from(n).expect("index fits in i64");
    let rhs = higher_order_bernoulli(n, alpha, &shifted).expect("order is non-negative");
    (bernoulli2nd_poly(n), rhs)
}

/// Memoized `B_n`, `b_n` and `b_n(x)`. Growing the cache keeps every
/// existing entry.
#[derive(Debug, Clone, Default)]
pub struct BernoulliCache {
    classical: Vec<Rational>,
    second_kind: Vec<Rational>,
    second_kind_polys: Vec<Polynomial>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ensure(&mut self, n_max: usize) {
        if self.classical.len() <= n_max {
            // recompute at a doubled size so repeated growth stays cheap
            let target = n_max.max(2 * self.classical.len());
            self.classical = bernoulli_numbers(target);
            self.second_kind = bernoulli2nd_numbers(target);
        }
    }

    pub fn classical(&mut self, n: usize) -> Rational {
        self.ensure(n);
        self.classical[n].clone()
    }

    pub fn second_kind(&mut self, n: usize) -> Rational {
        self.ensure(n);
        self.second_kind[n].clone()
    }

    pub fn second_kind_poly(&mut self, n: usize) -> &Polynomial {
        self.ensure(n);
        while self.second_kind_polys.len() <= n {
            let m = self.second_kind_polys.len();
            let p = poly_from_numbers(m, &self.second_kind);
            self.second_kind_polys.push(p);
        }
        &self.second_kind_polys[n]
    }
}
