//! Binomials, falling factorials, Stirling numbers and the conversion
//! between the monomial basis `x^n` and the falling-factorial basis `(x)_n`.
//!
//! Stirling numbers of the first kind are signed throughout: `S_1(n, l)` is
//! the coefficient of `x^l` in `(x)_n`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::{from_usize, Rational};
use crate::series::Coefficient;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// `x (x - 1) ... (x - n + 1)` in any coefficient ring; `(x)_0 = 1`.
pub fn falling_factorial<C: Coefficient>(x: &C, n: usize) -> C {
    (0..n).fold(C::one(), |acc, i| {
        let mut factor = x.clone();
        factor -= &C::from_rational(from_usize(i));
        acc.mul_ref(&factor)
    })
}

pub fn falling_factorial_poly(n: usize) -> Polynomial {
    falling_factorial(&Polynomial::x(), n)
}

pub fn falling_factorial_at(x: &Rational, n: usize) -> Rational {
    falling_factorial(x, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// Signed, `(x)_n = sum_l S_1(n, l) x^l`.
    FirstSigned,
    /// `x^n = sum_l S_2(n, l) (x)_l`.
    Second,
}

/// Row-memoized Stirling triangle. Rows only ever get appended, so an
/// entry never changes once computed.
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    rows: Vec<Vec<Rational>>,
}

impl StirlingTriangle {
    pub fn new(kind: StirlingKind) -> Self {
        StirlingTriangle {
            kind,
            rows: vec![vec![Rational::one()]],
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Largest row currently stored.
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len();
            let prev = &self.rows[n - 1];
            let at = |l: usize| prev.get(l).cloned().unwrap_or_else(Rational::zero);
            let row = (0..=n)
                .map(|l| {
                    let left = if l == 0 { Rational::zero() } else { at(l - 1) };
                    match self.kind {
                        // S_2(n,l) = l S_2(n-1,l) + S_2(n-1,l-1)
                        StirlingKind::Second => left + at(l) * from_usize(l),
                        // S_1(n,l) = S_1(n-1,l-1) - (n-1) S_1(n-1,l)
                        StirlingKind::FirstSigned => left - at(l) * from_usize(n - 1),
                    }
                })
                .collect();
            self.rows.push(row);
        }
    }

    /// Entry `(n, l)`, zero for `l > n`. Extends the table as needed.
    pub fn get(&mut self, n: usize, l: usize) -> Rational {
        self.extend_to(n);
        self.rows[n].get(l).cloned().unwrap_or_else(Rational::zero)
    }

    /// Row `n`, entries `l = 0..=n`.
    pub fn row(&mut self, n: usize) -> &[Rational] {
        self.extend_to(n);
        &self.rows[n]
    }
}

pub fn stirling2(n: usize, l: usize) -> Rational {
    StirlingTriangle::new(StirlingKind::Second).get(n, l)
}

pub fn stirling1(n: usize, l: usize) -> Rational {
    StirlingTriangle::new(StirlingKind::FirstSigned).get(n, l)
}

/// Coefficients `d_l` with `p(x) = sum_l d_l (x)_l`, one per power up to
/// the degree. The zero polynomial gives an empty list.
pub fn to_falling_basis(p: &Polynomial) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut s2 = StirlingTriangle::new(StirlingKind::Second);
    let mut out = vec![Rational::zero(); deg + 1];
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (l, s) in s2.row(n).iter().enumerate() {
            out[l] += c * s;
        }
    }
    out
}

/// Expands `sum_l d_l (x)_l` into monomials.
pub fn to_monomial_basis(d: &[Rational]) -> Polynomial {
    let mut s1 = StirlingTriangle::new(StirlingKind::FirstSigned);
    let mut out = vec![Rational::zero(); d.len()];
    for (n, c) in d.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (l, s) in s1.row(n).iter().enumerate() {
            out[l] += c * s;
        }
    }
    Polynomial::new(out)
}
