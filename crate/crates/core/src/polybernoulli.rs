//! Poly-Bernoulli numbers and polynomials of the second kind,
//! `b_n^(k)(x)`, defined as the `t^n / n!` coefficients of
//!
//! ```text
//! Li_k(1 - e^(-t)) / log(1 + t) * (1 + t)^x
//! ```
//!
//! for any integer `k`. [`poly_b2nd_gf`] expands this generating function
//! directly and serves as the oracle. The closed forms in [`Context`] are
//! computed from Bernoulli and Stirling numbers only and never touch the
//! generating function, so the two routes check each other:
//!
//! * `k = 2`: `b_n^(2)(x) = sum_l C(n,l) B_l b_{n-l}(x) / (l+1)`
//! * any `k`: `b_n^(k)(x) = sum_l C(n,l) w(l,k) b_{n-l}(x)` where
//!   `w(l,k) = sum_{p=1}^{l+1} (-1)^(p+l+1) p! S_2(l+1,p) / (p^k (l+1))`
//! * forward difference: `b_n^(k)(x+1) - b_n^(k)(x) =
//!   sum_{p=1}^n sum_{m=1}^p C(n,p) (-1)^(m+p) m! S_2(p,m) b_{n-p}(x) / m^k`
//! * addition: `b_n^(k)(x+y) = sum_l C(n,l) b_{n-l}^(k)(x) (y)_l`

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::bernoulli::BernoulliCache;
use crate::combinatorics::{binomial, falling_factorial, StirlingKind, StirlingTriangle};
use crate::rational::{factorial, from_usize, polylog_weight, sign_pow, Rational};
use crate::series::{exp_at, log1p, pow1p, Coefficient, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    GfOracle,
    Theorem1,
    Theorem2,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::GfOracle => "gf-oracle",
            Route::Theorem1 => "theorem1",
            Route::Theorem2 => "theorem2",
        })
    }
}

/// One value `b_n^(k)(x)` and the route that produced it. `C` is
/// [`Rational`] for a numeric point and [`crate::Polynomial`] for symbolic `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyBernoulliResult<C> {
    pub n: usize,
    pub k: i64,
    pub value: C,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyBernoulliError {
    DifferenceAtZero,
}

impl fmt::Display for PolyBernoulliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyBernoulliError::DifferenceAtZero => {
                f.write_str("forward-difference identity is stated for n >= 1")
            }
        }
    }
}

impl core::error::Error for PolyBernoulliError {}

/// `1 - e^(-t)`.
pub fn one_minus_exp_neg<C: Coefficient>(order: usize) -> TruncatedSeries<C> {
    TruncatedSeries::one(order)
        .checked_sub(&exp_at(&-C::one(), order))
        .expect("same order")
}

/// `Li_k(inner) = sum_{m>=1} inner^m / m^k` truncated at the order of
/// `inner`. Only `m <= order` contribute because `inner` must vanish at 0.
pub fn polylog_series<C: Coefficient>(
    k: i64,
    inner: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>, SeriesError> {
    let outer = TruncatedSeries::from_fn(inner.order(), |m| {
        if m == 0 {
            C::zero()
        } else {
            C::from_rational(polylog_weight(m, k))
        }
    });
    outer.compose(inner)
}

/// `Li_k(1 - e^(-t)) / log(1 + t)` through `t^n_max`, built at order
/// `n_max + 1` and divided with valuation one.
pub fn poly_b2nd_quotient(n_max: usize, k: i64) -> TruncatedSeries<Rational> {
    let order = n_max + 1;
    let li = polylog_series(k, &one_minus_exp_neg::<Rational>(order))
        .expect("1 - e^(-t) vanishes at zero");
    li.div_valuation(&log1p(order), 1)
        .expect("both series have valuation one")
}

/// `b_0^(k)(x) .. b_{n_max}^(k)(x)` from the generating function.
pub fn poly_b2nd_gf<C: Coefficient>(
    n_max: usize,
    k: i64,
    x: &C,
) -> Vec<PolyBernoulliResult<C>> {
    let quotient = poly_b2nd_quotient(n_max, k);
    gf_values(&quotient, x)
        .into_iter()
        .enumerate()
        .map(|(n, value)| PolyBernoulliResult {
            n,
            k,
            value,
            route: Route::GfOracle,
        })
        .collect()
}

fn gf_values<C: Coefficient>(quotient: &TruncatedSeries<Rational>, x: &C) -> Vec<C> {
    quotient
        .lift::<C>()
        .checked_mul(&pow1p(x, quotient.order()))
        .expect("same order")
        .egf_coefficients()
}

/// Memo tables for the closed forms. Each context owns its tables; share
/// values between threads by giving each thread its own context.
#[derive(Debug, Clone)]
pub struct Context {
    bernoulli: BernoulliCache,
    stirling2: StirlingTriangle,
    stirling_weights: BTreeMap<(usize, i64), Rational>,
    difference_weights: BTreeMap<(usize, i64), Rational>,
    quotients: BTreeMap<i64, TruncatedSeries<Rational>>,
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}

impl Context {
    pub fn new() -> Self {
        Context {
            bernoulli: BernoulliCache::new(),
            stirling2: StirlingTriangle::new(StirlingKind::Second),
            stirling_weights: BTreeMap::new(),
            difference_weights: BTreeMap::new(),
            quotients: BTreeMap::new(),
        }
    }

    pub fn bernoulli(&mut self) -> &mut BernoulliCache {
        &mut self.bernoulli
    }

    pub fn stirling2(&mut self, n: usize, l: usize) -> Rational {
        self.stirling2.get(n, l)
    }

    /// `b_m(x)` at a point of any coefficient ring.
    pub fn second_kind_at<C: Coefficient>(&mut self, m: usize, x: &C) -> C {
        self.bernoulli.second_kind_poly(m).eval_in(x)
    }

    /// Generating-function values `b_0^(k)(x)..b_{n_max}^(k)(x)`. The
    /// `x`-independent quotient is cached per `k`.
    pub fn gf_values<C: Coefficient>(&mut self, n_max: usize, k: i64, x: &C) -> Vec<C> {
        let q = self.quotient(n_max, k).truncated(n_max);
        gf_values(&q, x)
    }

    /// Single value `b_n^(k)(x)`: only coefficient `n` of the product with
    /// `(1 + t)^x` is formed.
    pub fn gf_value<C: Coefficient>(&mut self, n: usize, k: i64, x: &C) -> C {
        let q = self.quotient(n, k);
        let binom = pow1p(x, n);
        let mut acc = C::zero();
        for (i, qi) in q.coeffs()[..=n].iter().enumerate() {
            if !qi.is_zero() {
                acc += &binom.coeff(n - i).scale(qi);
            }
        }
        acc.scale(&factorial(n))
    }

    fn quotient(&mut self, n_max: usize, k: i64) -> &TruncatedSeries<Rational> {
        // grow geometrically so an ascending sweep over n stays cheap
        let rebuild = match self.quotients.get(&k) {
            Some(q) if q.order() >= n_max => None,
            Some(q) => Some(n_max.max(2 * q.order())),
            None => Some(n_max),
        };
        if let Some(order) = rebuild {
            self.quotients.insert(k, poly_b2nd_quotient(order, k));
        }
        &self.quotients[&k]
    }

    /// `k = 2` closed form: `sum_l C(n,l) B_l b_{n-l}(x) / (l+1)`.
    pub fn poly_b2nd_k2_sum<C: Coefficient>(&mut self, n: usize, x: &C) -> PolyBernoulliResult<C> {
        let mut acc = C::zero();
        for l in 0..=n {
            let weight = binomial(n, l) * self.bernoulli.classical(l) / from_usize(l + 1);
            if weight.is_zero() {
                continue;
            }
            acc += &self.second_kind_at(n - l, x).scale(&weight);
        }
        PolyBernoulliResult {
            n,
            k: 2,
            value: acc,
            route: Route::Theorem1,
        }
    }

    /// `w(l, k) = sum_{p=1}^{l+1} (-1)^(p+l+1) p! S_2(l+1, p) / (p^k (l+1))`,
    /// the `t^l / l!` coefficient of `Li_k(1 - e^(-t)) / t`.
    pub fn stirling_weight(&mut self, l: usize, k: i64) -> Rational {
        if let Some(w) = self.stirling_weights.get(&(l, k)) {
            return w.clone();
        }
        let mut acc = Rational::zero();
        for p in 1..=l + 1 {
            let term = sign_pow(p + l + 1)
                * factorial(p)
                * self.stirling2.get(l + 1, p)
                * polylog_weight(p, k);
            acc += term;
        }
        acc /= from_usize(l + 1);
        self.stirling_weights.insert((l, k), acc.clone());
        acc
    }

    /// General-`k` closed form `sum_l C(n,l) w(l,k) b_{n-l}(x)`.
    pub fn poly_b2nd_stirling_sum<C: Coefficient>(
        &mut self,
        n: usize,
        k: i64,
        x: &C,
    ) -> PolyBernoulliResult<C> {
        let mut acc = C::zero();
        for l in 0..=n {
            let weight = binomial(n, l) * self.stirling_weight(l, k);
            if weight.is_zero() {
                continue;
            }
            acc += &self.second_kind_at(n - l, x).scale(&weight);
        }
        PolyBernoulliResult {
            n,
            k,
            value: acc,
            route: Route::Theorem2,
        }
    }

    /// `sum_{m=1}^p (-1)^(m+p) m! S_2(p,m) / m^k`, the `t^p / p!`
    /// coefficient of `Li_k(1 - e^(-t))`.
    pub fn difference_weight(&mut self, p: usize, k: i64) -> Rational {
        if let Some(w) = self.difference_weights.get(&(p, k)) {
            return w.clone();
        }
        let mut acc = Rational::zero();
        for m in 1..=p {
            acc += sign_pow(m + p) * factorial(m) * self.stirling2.get(p, m) * polylog_weight(m, k);
        }
        self.difference_weights.insert((p, k), acc.clone());
        acc
    }

    /// Right-hand side of the forward difference
    /// `b_n^(k)(x+1) - b_n^(k)(x)`, defined for `n >= 1`.
    pub fn difference_rhs<C: Coefficient>(
        &mut self,
        n: usize,
        k: i64,
        x: &C,
    ) -> Result<C, PolyBernoulliError> {
        if n == 0 {
            return Err(PolyBernoulliError::DifferenceAtZero);
        }
        let mut acc = C::zero();
        for p in 1..=n {
            let weight = binomial(n, p) * self.difference_weight(p, k);
            if weight.is_zero() {
                continue;
            }
            acc += &self.second_kind_at(n - p, x).scale(&weight);
        }
        Ok(acc)
    }

    /// Right-hand side of the addition formula
    /// `sum_l C(n,l) b_{n-l}^(k)(x) (y)_l`, with the `b^(k)` values taken
    /// from the generating function.
    pub fn addition_rhs<C: Coefficient>(&mut self, n: usize, k: i64, x: &C, y: &Rational) -> C {
        let at_x = self.gf_values(n, k, x);
        let mut acc = C::zero();
        for (l, value) in at_x.iter().rev().enumerate() {
            let weight = binomial(n, l) * falling_factorial(y, l);
            if !weight.is_zero() {
                acc += &value.scale(&weight);
            }
        }
        acc
    }
}

/// [`Context::poly_b2nd_k2_sum`] with a throwaway context.
pub fn poly_b2nd_theorem1<C: Coefficient>(n: usize, x: &C) -> PolyBernoulliResult<C> {
    Context::new().poly_b2nd_k2_sum(n, x)
}

/// [`Context::poly_b2nd_stirling_sum`] with a throwaway context.
pub fn poly_b2nd_theorem2<C: Coefficient>(n: usize, k: i64, x: &C) -> PolyBernoulliResult<C> {
    Context::new().poly_b2nd_stirling_sum(n, k, x)
}

pub fn theorem3_rhs(n: usize, k: i64, x: &Rational) -> Result<Rational, PolyBernoulliError> {
    Context::new().difference_rhs(n, k, x)
}

pub fn theorem4_rhs(n: usize, k: i64, x: &Rational, y: &Rational) -> Rational {
    Context::new().addition_rhs(n, k, x, y)
}
