//! A small language for writing generating functions in `t`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' nonneg-int)? | '-' factor
//! atom   := rational-literal | 't' | '(' expr ')' | func
//! func   := ('exp'|'log1p') '(' expr ')'
//!         | 'Li' '(' int-literal ',' expr ')'
//!         | 'pow1p' '(' signed-rational-literal ')'
//! ```
//!
//! `a/b` with both sides integer literals is a single rational literal, so
//! `2/3^2` is `(2/3)^2`. `pow1p(a)` is `(1 + t)^a`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use polybern_core::polybernoulli::polylog_series;
use polybern_core::series::{exp_at, log1p, pow1p};
use polybern_core::{Rational, SeriesError, TruncatedSeries};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
    Log1p(Box<Expr>),
    Li(i64, Box<Expr>),
    Pow1p(Rational),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(r) => write!(f, "{r}"),
            Expr::Var => f.write_str("t"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            // `(3) / 0` keeps a constant numerator from re-lexing as `3/0`
            Expr::Div(a, b) if matches!(**a, Expr::Const(_)) => write!(f, "(({a}) / {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Log1p(a) => write!(f, "log1p({a})"),
            Expr::Li(k, a) => write!(f, "Li({k}, {a})"),
            Expr::Pow1p(x) => write!(f, "pow1p({x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            column,
            message: message.into(),
        }
    }
}

/// Bound on `^` exponents and `Li` orders; beyond it a single constant can
/// grow without limit.
pub const MAX_LITERAL_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse().expect("ascii digits");
            out.push(Token { tok: Tok::Int(value), column });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(name), column });
        } else if "+-*/^(),".contains(c) {
            out.push(Token { tok: Tok::Sym(c), column });
            i += 1;
        } else {
            return Err(ParseError::new(column, format!("unexpected character '{c}'")));
        }
    }
    out.push(Token {
        tok: Tok::End,
        column: chars.len() + 1,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        };
        ParseError::new(t.column, format!("{wanted}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let t = self.bump();
            let exponent = match t.tok {
                Tok::Int(n) => u32::try_from(n)
                    .ok()
                    .filter(|&e| e <= MAX_LITERAL_EXPONENT)
                    .ok_or_else(|| ParseError::new(t.column, "pow exponent too large"))?,
                _ => {
                    return Err(ParseError::new(
                        t.column,
                        "pow exponent must be a non-negative integer literal",
                    ))
                }
            };
            return Ok(Expr::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    /// `int` or `int/posint`.
    fn rational_literal(&mut self) -> Result<Option<Rational>, ParseError> {
        let Tok::Int(numer) = self.peek().tok.clone() else {
            return Ok(None);
        };
        self.bump();
        if self.peek().tok == Tok::Sym('/') {
            if let Tok::Int(denom) = self.peek_at(1).clone() {
                self.bump();
                let column = self.bump().column;
                if denom.is_zero() {
                    return Err(ParseError::new(column, "zero denominator in rational literal"));
                }
                return Ok(Some(Rational::new(numer, denom)));
            }
        }
        Ok(Some(Rational::from_integer(numer)))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        if let Some(r) = self.rational_literal()? {
            return Ok(Expr::Const(r));
        }
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let Token { tok, column } = self.peek().clone();
        let Tok::Ident(name) = tok else {
            return Err(self.unexpected("expected an expression"));
        };
        self.bump();
        if name == "t" {
            return Ok(Expr::Var);
        }
        if self.peek().tok != Tok::Sym('(') {
            return Err(ParseError::new(column, format!("unknown identifier '{name}'")));
        }
        match name.as_str() {
            "exp" | "log1p" => {
                self.expect('(')?;
                let arg = Box::new(self.expr()?);
                self.expect(')')?;
                Ok(if name == "exp" { Expr::Exp(arg) } else { Expr::Log1p(arg) })
            }
            "Li" => {
                self.expect('(')?;
                let order_col = self.peek().column;
                let order = self
                    .signed_integer()
                    .filter(|_| self.peek().tok == Tok::Sym(','))
                    .ok_or_else(|| ParseError::new(order_col, "Li order must be an integer literal"))?;
                self.expect(',')?;
                let arg = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Li(order, Box::new(arg)))
            }
            "pow1p" => {
                self.expect('(')?;
                let col = self.peek().column;
                let negative = self.eat('-');
                let value = self
                    .rational_literal()?
                    .filter(|_| self.peek().tok == Tok::Sym(')'))
                    .ok_or_else(|| ParseError::new(col, "pow1p argument must be a rational literal"))?;
                self.expect(')')?;
                Ok(Expr::Pow1p(if negative { -value } else { value }))
            }
            _ => Err(ParseError::new(column, format!("unknown function '{name}'"))),
        }
    }

    fn signed_integer(&mut self) -> Option<i64> {
        let negative = self.peek().tok == Tok::Sym('-');
        let offset = usize::from(negative);
        let Tok::Int(n) = self.peek_at(offset).clone() else {
            return None;
        };
        let value = i64::try_from(n).ok().filter(|v| v.unsigned_abs() <= u64::from(MAX_LITERAL_EXPONENT))?;
        for _ in 0..=offset {
            self.bump();
        }
        Some(if negative { -value } else { value })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    if parser.peek().tok != Tok::End {
        return Err(parser.unexpected("expected an operator or end of input"));
    }
    Ok(expr)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("series quotient not a power series")]
    NotPowerSeries,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("could not reach order {0}: leading coefficients keep cancelling")]
    PrecisionExhausted(usize),
}

/// Evaluates `expr` as a power series in `t` through `t^order`.
///
/// A quotient whose operands both vanish at `t = 0` is divided after
/// cancelling the common power of `t`, which costs precision. When that
/// happens, or when a denominator vanishes through the working order, the
/// expression is re-evaluated at a higher working order. A denominator
/// that is still zero at the cap is reported as not a power series.
pub fn eval_expr(expr: &Expr, order: usize) -> Result<TruncatedSeries<Rational>, EvalError> {
    let limit = 4 * order + 64;
    let mut working = order;
    loop {
        match eval_at(expr, working) {
            Ok(s) if s.order() >= order => return Ok(s.truncated(order)),
            Ok(s) => working += order - s.order(),
            Err(Failure::Eval(e)) => return Err(e),
            Err(Failure::ZeroDenominator) if working >= limit => {
                return Err(EvalError::NotPowerSeries)
            }
            Err(Failure::ZeroDenominator) => working = (2 * working + 1).min(limit),
        }
        if working > limit {
            return Err(EvalError::PrecisionExhausted(order));
        }
    }
}

enum Failure {
    Eval(EvalError),
    /// Every retained denominator coefficient is zero; more terms may help.
    ZeroDenominator,
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::Eval(e.into())
    }
}

fn common_order(
    a: TruncatedSeries<Rational>,
    b: TruncatedSeries<Rational>,
) -> (TruncatedSeries<Rational>, TruncatedSeries<Rational>) {
    let order = a.order().min(b.order());
    (a.truncated(order), b.truncated(order))
}

fn eval_at(expr: &Expr, order: usize) -> Result<TruncatedSeries<Rational>, Failure> {
    Ok(match expr {
        Expr::Const(c) => TruncatedSeries::constant(c.clone(), order),
        Expr::Var => TruncatedSeries::variable(order),
        Expr::Add(a, b) => {
            let (a, b) = common_order(eval_at(a, order)?, eval_at(b, order)?);
            a.checked_add(&b)?
        }
        Expr::Sub(a, b) => {
            let (a, b) = common_order(eval_at(a, order)?, eval_at(b, order)?);
            a.checked_sub(&b)?
        }
        Expr::Mul(a, b) => {
            let (a, b) = common_order(eval_at(a, order)?, eval_at(b, order)?);
            a.checked_mul(&b)?
        }
        Expr::Div(a, b) => {
            let (num, den) = common_order(eval_at(a, order)?, eval_at(b, order)?);
            let den_val = den.valuation().ok_or(Failure::ZeroDenominator)?;
            if num.valuation().is_some_and(|v| v < den_val) {
                return Err(Failure::Eval(EvalError::NotPowerSeries));
            }
            if den_val == 0 {
                num.div_unit(&den)?
            } else {
                num.div_valuation(&den, den_val)?
            }
        }
        Expr::Neg(a) => eval_at(a, order)?.neg(),
        Expr::Pow(a, e) => eval_at(a, order)?.pow(u64::from(*e)),
        Expr::Exp(a) => {
            let inner = eval_at(a, order)?;
            exp_at(&Rational::one(), inner.order()).compose(&inner)?
        }
        Expr::Log1p(a) => {
            let inner = eval_at(a, order)?;
            log1p(inner.order()).compose(&inner)?
        }
        Expr::Li(k, a) => polylog_series(*k, &eval_at(a, order)?)?,
        Expr::Pow1p(x) => pow1p(x, order),
    })
}
