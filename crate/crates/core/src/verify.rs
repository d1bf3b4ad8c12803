//! Exact verification of the identities over finite parameter ranges.
//!
//! Every comparison is exact equality, either of rationals at a numeric
//! point or of polynomials in `x` coefficient by coefficient. Points are
//! visited in lexicographic `(n, k, x, y)` order so reports are
//! reproducible.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::bernoulli::{b_and_shifted_higher_order, bernoulli2nd_gf};
use crate::combinatorics::{binomial, StirlingKind, StirlingTriangle};
use crate::poly::Polynomial;
use crate::polybernoulli::Context;
use crate::rational::{factorial, from_usize, int, rat, Rational};
use crate::series::Coefficient;

/// The identities the verifier knows, with their command-line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `thm1`: the `k = 2` closed form against the generating function.
    K2ClosedForm,
    /// `thm2`: the Stirling closed form against the generating function.
    StirlingClosedForm,
    /// `thm3`: forward difference `b_n^(k)(x+1) - b_n^(k)(x)`.
    ForwardDifference,
    /// `thm4`: addition formula in `x + y`.
    Addition,
    /// `eq9`: `k = 1` reduces to `b_n(x)`.
    FirstOrderReduction,
    /// `eq2`: the falling-factorial expansion of `b_n(x)`.
    BasisExpansion,
    /// `b-equals-higher-order`: `b_n(x) = B_n^(n)(x + 1)`.
    HigherOrderBridge,
    /// `stirling-inversion`: `sum_l S_2(n,l) S_1(l,m) = [n = m]`.
    StirlingInversion,
    /// `thm2-ogf`: the Stirling closed form fed with ordinary-convention
    /// values `b_m(x) / m!`. Deliberately wrong; fails from `n = 2` on and is
    /// kept as a negative control.
    OrdinaryConventionControl,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::K2ClosedForm,
        Identity::StirlingClosedForm,
        Identity::ForwardDifference,
        Identity::Addition,
        Identity::FirstOrderReduction,
        Identity::BasisExpansion,
        Identity::HigherOrderBridge,
        Identity::StirlingInversion,
        Identity::OrdinaryConventionControl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::K2ClosedForm => "thm1",
            Identity::StirlingClosedForm => "thm2",
            Identity::ForwardDifference => "thm3",
            Identity::Addition => "thm4",
            Identity::FirstOrderReduction => "eq9",
            Identity::BasisExpansion => "eq2",
            Identity::HigherOrderBridge => "b-equals-higher-order",
            Identity::StirlingInversion => "stirling-inversion",
            Identity::OrdinaryConventionControl => "thm2-ogf",
        }
    }

    pub fn uses_k(self) -> bool {
        matches!(
            self,
            Identity::StirlingClosedForm
                | Identity::ForwardDifference
                | Identity::Addition
                | Identity::OrdinaryConventionControl
        )
    }

    pub fn uses_x(self) -> bool {
        !matches!(self, Identity::HigherOrderBridge | Identity::StirlingInversion)
    }

    pub fn default_ks(self) -> Vec<i64> {
        match self {
            Identity::StirlingClosedForm | Identity::ForwardDifference => (-3..=3).collect(),
            Identity::Addition => (-2..=3).collect(),
            Identity::OrdinaryConventionControl => alloc::vec![2],
            _ => Vec::new(),
        }
    }

    /// Empty for the addition formula, whose default is a per-`n` grid.
    pub fn default_xs(self) -> Vec<EvalPoint> {
        use EvalPoint::{Symbolic, Value};
        match self {
            Identity::K2ClosedForm | Identity::StirlingClosedForm => {
                alloc::vec![Value(int(0)), Value(int(1)), Value(int(-1)), Value(rat(1, 2))]
            }
            Identity::ForwardDifference => {
                alloc::vec![Value(int(0)), Value(rat(1, 2)), Value(int(-2))]
            }
            Identity::OrdinaryConventionControl => alloc::vec![Value(int(0))],
            Identity::FirstOrderReduction | Identity::BasisExpansion => alloc::vec![Symbolic],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownIdentity(pub String);

impl fmt::Display for UnknownIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown identity '{}'", self.0)
    }
}

impl core::error::Error for UnknownIdentity {}

impl FromStr for Identity {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

/// Where `x` is evaluated: a rational point or the indeterminate itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum EvalPoint {
    Value(Rational),
    Symbolic,
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalPoint::Value(r) => write!(f, "{r}"),
            EvalPoint::Symbolic => f.write_str("x"),
        }
    }
}

/// Parameter ranges. Empty `ks` or `xs` select the identity's defaults.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RangeSpec {
    pub n_max: usize,
    pub ks: Vec<i64>,
    pub xs: Vec<EvalPoint>,
}

impl RangeSpec {
    pub fn new(n_max: usize) -> Self {
        RangeSpec {
            n_max,
            ..Default::default()
        }
    }

    pub fn with_ks(mut self, ks: impl IntoIterator<Item = i64>) -> Self {
        self.ks = ks.into_iter().collect();
        self
    }

    pub fn with_xs(mut self, xs: impl IntoIterator<Item = EvalPoint>) -> Self {
        self.xs = xs.into_iter().collect();
        self
    }

    fn resolved(&self, identity: Identity) -> RangeSpec {
        let mut ks = if !identity.uses_k() {
            Vec::new()
        } else if self.ks.is_empty() {
            identity.default_ks()
        } else {
            self.ks.clone()
        };
        let mut xs = if !identity.uses_x() {
            Vec::new()
        } else if self.xs.is_empty() {
            identity.default_xs()
        } else {
            self.xs.clone()
        };
        ks.sort_unstable();
        ks.dedup();
        xs.sort();
        xs.dedup();
        RangeSpec {
            n_max: self.n_max,
            ks,
            xs,
        }
    }
}

/// Parameters of one checked point.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Point {
    pub n: usize,
    pub m: Option<usize>,
    pub k: Option<i64>,
    pub x: Option<EvalPoint>,
    pub y: Option<Rational>,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(m) = self.m {
            write!(f, ", m={m}")?;
        }
        if let Some(k) = self.k {
            write!(f, ", k={k}")?;
        }
        if let Some(x) = &self.x {
            write!(f, ", x={x}")?;
        }
        if let Some(y) = &self.y {
            write!(f, ", y={y}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointResult {
    pub point: Point,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub point: Point,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub range: RangeSpec,
    pub points: Vec<PointResult>,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn total_points(&self) -> usize {
        self.points.len()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

struct Recorder {
    points: Vec<PointResult>,
    failures: Vec<Failure>,
}

impl Recorder {
    fn check<C: Coefficient>(&mut self, point: Point, (lhs, rhs): (C, C)) {
        let passed = lhs == rhs;
        if !passed {
            self.failures.push(Failure {
                point: point.clone(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        self.points.push(PointResult { point, passed });
    }
}

/// Runs `$body` with `$v` bound to the point as a rational or as the
/// indeterminate, and records the resulting `(lhs, rhs)` pair.
macro_rules! at_point {
    ($rec:expr, $point:expr, $x:expr, |$v:ident| $body:expr) => {
        match $x {
            EvalPoint::Value(r) => {
                let $v: &Rational = r;
                $rec.check($point, $body)
            }
            EvalPoint::Symbolic => {
                let $v: &Polynomial = &Polynomial::x();
                $rec.check($point, $body)
            }
        }
    };
}

/// `x + a` in the point's own ring.
fn shifted<C: Coefficient>(x: &C, a: &Rational) -> C {
    let mut out = x.clone();
    out += &C::from_rational(a.clone());
    out
}

/// Distinct evaluation points `-1, -1/2, 0, 1/2, ...` for `x` ...
fn grid_x(len: usize) -> Vec<Rational> {
    (0..len).map(|i| rat(i as i64, 2) - int(1)).collect()
}

/// ... and `1/3, 1, 5/3, ...` for `y`.
fn grid_y(len: usize) -> Vec<Rational> {
    (0..len).map(|j| rat(2 * j as i64 + 1, 3)).collect()
}

fn ogf_control<C: Coefficient>(ctx: &mut Context, n: usize, k: i64, x: &C) -> (C, C) {
    let mut acc = C::zero();
    for l in 0..=n {
        let weight = binomial(n, l) * ctx.stirling_weight(l, k) / factorial(n - l);
        acc += &ctx.second_kind_at(n - l, x).scale(&weight);
    }
    (acc, ctx.gf_value(n, k, x))
}

/// Checks `identity` at every point of `range`.
pub fn verify_identity(identity: Identity, range: &RangeSpec) -> VerificationReport {
    let range = range.resolved(identity);
    let mut ctx = Context::new();
    let mut rec = Recorder {
        points: Vec::new(),
        failures: Vec::new(),
    };
    let n_max = range.n_max;

    match identity {
        Identity::K2ClosedForm => {
            for n in 0..=n_max {
                for x in &range.xs {
                    let point = Point { n, k: Some(2), x: Some(x.clone()), ..Default::default() };
                    at_point!(rec, point, x, |v| (
                        ctx.poly_b2nd_k2_sum(n, v).value,
                        ctx.gf_value(n, 2, v)
                    ));
                }
            }
        }
        Identity::StirlingClosedForm => {
            for n in 0..=n_max {
                for &k in &range.ks {
                    for x in &range.xs {
                        let point = Point { n, k: Some(k), x: Some(x.clone()), ..Default::default() };
                        at_point!(rec, point, x, |v| (
                            ctx.poly_b2nd_stirling_sum(n, k, v).value,
                            ctx.gf_value(n, k, v)
                        ));
                    }
                }
            }
        }
        Identity::ForwardDifference => {
            for n in 1..=n_max {
                for &k in &range.ks {
                    for x in &range.xs {
                        let point = Point { n, k: Some(k), x: Some(x.clone()), ..Default::default() };
                        at_point!(rec, point, x, |v| {
                            let mut lhs = ctx.gf_value(n, k, &shifted(v, &int(1)));
                            lhs -= &ctx.gf_value(n, k, v);
                            let rhs = ctx.difference_rhs(n, k, v).expect("n >= 1");
                            (lhs, rhs)
                        });
                    }
                }
            }
        }
        Identity::Addition => {
            for n in 0..=n_max {
                let xs: Vec<EvalPoint> = if range.xs.is_empty() {
                    grid_x(n + 1).into_iter().map(EvalPoint::Value).collect()
                } else {
                    range.xs.clone()
                };
                for &k in &range.ks {
                    for x in &xs {
                        for y in grid_y(n + 1) {
                            let point = Point {
                                n,
                                k: Some(k),
                                x: Some(x.clone()),
                                y: Some(y.clone()),
                                ..Default::default()
                            };
                            at_point!(rec, point, x, |v| {
                                (ctx.gf_value(n, k, &shifted(v, &y)), ctx.addition_rhs(n, k, v, &y))
                            });
                        }
                    }
                }
            }
        }
        Identity::FirstOrderReduction => {
            for n in 0..=n_max {
                for x in &range.xs {
                    let point = Point { n, k: Some(1), x: Some(x.clone()), ..Default::default() };
                    at_point!(rec, point, x, |v| (ctx.gf_value(n, 1, v), ctx.second_kind_at(n, v)));
                }
            }
        }
        Identity::BasisExpansion => {
            for n in 0..=n_max {
                for x in &range.xs {
                    let point = Point { n, x: Some(x.clone()), ..Default::default() };
                    at_point!(rec, point, x, |v| (
                        ctx.second_kind_at(n, v),
                        bernoulli2nd_gf(n, v).swap_remove(n)
                    ));
                }
            }
        }
        Identity::HigherOrderBridge => {
            for n in 0..=n_max {
                rec.check(Point { n, ..Default::default() }, b_and_shifted_higher_order(n));
            }
        }
        Identity::StirlingInversion => {
            let mut s1 = StirlingTriangle::new(StirlingKind::FirstSigned);
            let mut s2 = StirlingTriangle::new(StirlingKind::Second);
            for n in 0..=n_max {
                for m in 0..=n {
                    let sum = (m..=n)
                        .fold(Rational::zero(), |acc, l| acc + s2.get(n, l) * s1.get(l, m));
                    let delta = from_usize(usize::from(n == m));
                    rec.check(Point { n, m: Some(m), ..Default::default() }, (sum, delta));
                }
            }
        }
        Identity::OrdinaryConventionControl => {
            for n in 0..=n_max {
                for &k in &range.ks {
                    for x in &range.xs {
                        let point = Point { n, k: Some(k), x: Some(x.clone()), ..Default::default() };
                        at_point!(rec, point, x, |v| ogf_control(&mut ctx, n, k, v));
                    }
                }
            }
        }
    }

    VerificationReport {
        identity,
        range,
        points: rec.points,
        failures: rec.failures,
    }
}
