//! Parser for polynomial expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | name | 'sqrt' '(' integer ')' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Division is only allowed by nonzero constants.
//! `sqrt(n)` is reduced to `k·sqrt(m)` with `m` square-free, and the
//! coefficient field is `ℚ(sqrt(m))` for the single `m > 1` that occurs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use singclass_core::exactmath::{Field, Poly, Scalar, Vars};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    pub fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Name(s) => write!(f, "name {s:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Open => f.write_str("'('"),
            Tok::Close => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String, usize),
    /// `k·sqrt(m)`, `m` square-free.
    Sqrt(BigInt, u64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let (at, got) = self.bump();
        if got == want {
            Ok(())
        } else {
            Err(ParseError::new(at, format!("expected {want}, found {got}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let at = self.bump().0;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (at, tok) = self.bump();
        let Tok::Num(n) = tok else {
            return Err(ParseError::new(at, format!("expected exponent, found {tok}")));
        };
        match u32::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(Expr::Pow(Box::new(base), e)),
            _ => Err(ParseError::new(at, format!("exponent {n} exceeds {MAX_EXPONENT}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (at, tok) = self.bump();
        match tok {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Name(name) if name == "sqrt" => {
                self.expect(Tok::Open)?;
                let arg_at = self.offset();
                let (_, arg) = self.bump();
                let Tok::Num(n) = arg else {
                    return Err(ParseError::new(arg_at, "sqrt takes a nonnegative integer literal"));
                };
                self.expect(Tok::Close)?;
                let n = u64::try_from(&n).map_err(|_| ParseError::new(arg_at, "radicand too large"))?;
                let (k, m) = split_square(n);
                Ok(Expr::Sqrt(BigInt::from(k), m))
            }
            Tok::Name(name) => Ok(Expr::Var(name, at)),
            Tok::Open => {
                let e = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(e)
            }
            other => Err(ParseError::new(at, format!("unexpected {other}"))),
        }
    }
}

/// `n = k²·m` with `m` square-free.
fn split_square(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (mut k, mut m) = (1u64, n);
    let mut p = 2u64;
    while p <= m.sqrt() {
        while m % (p * p) == 0 {
            m /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, m)
}

fn collect(e: &Expr, vars: &mut Vec<String>, radicands: &mut Vec<u64>) {
    match e {
        Expr::Num(_) => {}
        Expr::Var(v, _) => {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        Expr::Sqrt(_, m) => {
            if *m > 1 && !radicands.contains(m) {
                radicands.push(*m);
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            collect(a, vars, radicands);
            collect(b, vars, radicands);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => collect(a, vars, radicands),
    }
}

fn core_err(at: usize) -> impl Fn(singclass_core::Error) -> ParseError {
    move |e| ParseError::new(at, e.to_string())
}

fn eval(e: &Expr, field: Field, ring: &Vars) -> Result<Poly, ParseError> {
    Ok(match e {
        Expr::Num(n) => Poly::constant(field, ring.clone(), Scalar::from_int(field, n.clone())).map_err(core_err(0))?,
        Expr::Var(v, at) => Poly::var_named(field, ring.clone(), v).map_err(|_| {
            let known = ring.join(", ");
            ParseError::new(*at, format!("unknown variable {v:?} (ring has {known})"))
        })?,
        Expr::Sqrt(k, m) => {
            let c = if *m == 1 {
                Scalar::from_int(field, k.clone())
            } else {
                Scalar::sqrt_times(field, k.clone()).map_err(core_err(0))?
            };
            Poly::constant(field, ring.clone(), c).map_err(core_err(0))?
        }
        Expr::Add(a, b) => &eval(a, field, ring)? + &eval(b, field, ring)?,
        Expr::Sub(a, b) => &eval(a, field, ring)? - &eval(b, field, ring)?,
        Expr::Mul(a, b) => &eval(a, field, ring)? * &eval(b, field, ring)?,
        Expr::Neg(a) => -&eval(a, field, ring)?,
        Expr::Pow(a, k) => eval(a, field, ring)?.pow(*k).map_err(core_err(0))?,
        Expr::Div(a, b, at) => {
            let d = eval(b, field, ring)?;
            if !d.is_constant() || d.is_zero() {
                return Err(ParseError::new(*at, "division is only allowed by a nonzero constant"));
            }
            let inv = d.constant_term().inv().map_err(core_err(*at))?;
            eval(a, field, ring)?.scale(&inv).map_err(core_err(*at))?
        }
    })
}

/// Parsed expression together with the variables and field it needs.
pub struct Parsed {
    expr: Expr,
    pub vars: Vec<String>,
    pub field: Field,
}

pub fn parse_expr(src: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    if *p.peek() == Tok::End {
        return Err(ParseError::new(0, "empty expression"));
    }
    let expr = p.expr()?;
    if *p.peek() != Tok::End {
        let at = p.offset();
        return Err(ParseError::new(at, format!("unexpected {}", p.peek())));
    }
    let mut vars = Vec::new();
    let mut radicands = Vec::new();
    collect(&expr, &mut vars, &mut radicands);
    let field = match radicands.as_slice() {
        [] => Field::Rational,
        [m] => Field::quadratic(*m).expect("square-free"),
        _ => {
            let list: Vec<String> = radicands.iter().map(u64::to_string).collect();
            return Err(ParseError::new(0, format!("more than one square root field: {}", list.join(", "))));
        }
    };
    Ok(Parsed { expr, vars, field })
}

impl Parsed {
    /// Evaluates in `ring` over `field`, which must contain this expression's
    /// field.
    pub fn to_poly(&self, field: Field, ring: &Vars) -> Result<Poly, ParseError> {
        field
            .join(self.field)
            .ok()
            .filter(|&f| f == field)
            .ok_or_else(|| ParseError::new(0, format!("coefficients do not fit in {field}")))?;
        eval(&self.expr, field, ring)
    }
}

/// Parses over the expression's own field. With `ring = None` the variables
/// are taken in order of first appearance, falling back to `default_var`
/// for constants.
pub fn parse_poly(src: &str, ring: Option<&Vars>, default_var: &str) -> Result<Poly, ParseError> {
    let parsed = parse_expr(src)?;
    let ring: Vars = match ring {
        Some(r) => r.clone(),
        None if parsed.vars.is_empty() => [default_var.to_string()].into_iter().collect(),
        None => parsed.vars.iter().cloned().collect(),
    };
    parsed.to_poly(parsed.field, &ring)
}

/// A constant expression such as `3`, `-1/2` or `1 + 2*sqrt(3)`.
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let parsed = parse_expr(src)?;
    if let Some(v) = parsed.vars.first() {
        return Err(ParseError::new(0, format!("expected a constant, found variable {v:?}")));
    }
    let ring: Vars = Vars::from([]);
    Ok(parsed.to_poly(parsed.field, &ring)?.constant_term())
}

/// Comma-separated constants; offsets in errors refer to the whole string.
pub fn parse_scalar_list(src: &str) -> Result<Vec<Scalar>, ParseError> {
    let mut out = Vec::new();
    let mut base = 0;
    for piece in src.split(',') {
        out.push(parse_scalar(piece).map_err(|e| e.shifted(base))?);
        base += piece.len() + 1;
    }
    Ok(out)
}

/// Embeds everything into one common field.
pub fn common_field(fields: impl IntoIterator<Item = Field>) -> Result<Field, ParseError> {
    fields.into_iter().try_fold(Field::Rational, |acc, f| {
        acc.join(f)
            .map_err(|_| ParseError::new(0, format!("cannot combine {acc} and {f}")))
    })
}
