//! Scalar helpers on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// `numer / denom` in canonical form. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_usize(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// `(-1)^e` as a rational.
pub fn sign_pow(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The polylogarithm weight `1 / m^k`, which is `m^|k|` for `k <= 0`.
pub fn polylog_weight(m: usize, k: i64) -> Rational {
    let power = from_usize(m).pow(k.unsigned_abs() as i32);
    if k > 0 {
        power.recip()
    } else {
        power
    }
}

/// True when `r` is in lowest terms with a positive denominator.
///
/// `Ratio` normalises on construction, but values assembled with
/// `new_raw` can escape that; this is the audit used by the tests.
pub fn is_canonical(r: &Rational) -> bool {
    let (n, d) = (r.numer(), r.denom());
    if !d.is_positive() {
        return false;
    }
    if n.is_zero() {
        return d.is_one();
    }
    n.abs().gcd(d).is_one()
}
