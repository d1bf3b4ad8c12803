//! Exact computation of poly-Bernoulli numbers and polynomials of the second
//! kind, together with the sequences they are built from: classical and
//! higher-order Bernoulli numbers, Bernoulli numbers of the second kind,
//! Stirling numbers of both kinds and polylogarithm series.
//!
//! Everything is exact. Scalars are arbitrary-precision rationals, symbolic
//! values are univariate polynomials in `x` over the rationals, and every
//! generating function is a [`TruncatedSeries`] with a fixed truncation order.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bernoulli;
pub mod combinatorics;
pub mod poly;
pub mod polybernoulli;
pub mod rational;
pub mod series;
pub mod verify;

pub use self::bernoulli::BernoulliCache;
pub use self::combinatorics::{StirlingKind, StirlingTriangle};
pub use self::poly::Polynomial;
pub use self::polybernoulli::{Context, PolyBernoulliResult, Route};
pub use self::rational::Rational;
pub use self::series::{Coefficient, SeriesError, TruncatedSeries};
pub use self::verify::{EvalPoint, Identity, RangeSpec, VerificationReport};
