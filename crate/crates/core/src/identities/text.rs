//! Text form of expressions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | '(' expr ')' | 'i' | 'sqrt' '(' 2|3 ')' | 'zeta' '(' int ',' int ')'
//!         | 'theta' '[' rat ',' rat ']' '(' arg ')' | 'dtheta' '[' rat ',' rat ']' '(' arg ')'
//!         | 'eta' '(' arg ')' | 'Theta3' '(' arg ')'
//!         | 'divsum' '[' variant ',' filter ',' weight ',' twist ',' rat ']' '(' arg ')'
//!         | 'wsum' '[' '-4' | '-2' ']' '(' arg ')'
//! arg    := (rat '*')? 'tau' ('/' int)?
//! ```
//!
//! `divsum[...](s*tau)` puts the coefficient of index N at q^{sN/2}; `wsum[k](s*tau)` is
//! Σ n·(k/n)·q^{s·n²}.

use super::expr::Expr;
use crate::eta::KroneckerKind;
use crate::exactnum::{int, CycNum, Rational};
use crate::theta::Characteristic;
use crate::weight1::DivisorSeriesSpec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based column of the offending character.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[],".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.col(), message: msg.into() })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{c}', found {}", Self::describe(self.peek())))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            t => self.err(format!("expected an integer, found {}", Self::describe(&t))),
        }
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let col = self.col();
        let n = self.int()?;
        let v: i64 = n.try_into().map_err(|_| ParseError { column: col, message: "integer too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat('-');
        let n = self.int()?;
        let mut r = Rational::from_integer(n);
        if self.eat('/') {
            let col = self.col();
            let d = self.int()?;
            if d.is_zero() {
                return Err(ParseError { column: col, message: "zero denominator".into() });
            }
            r /= Rational::from_integer(d);
        }
        Ok(if neg { -r } else { r })
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", Self::describe(&t))),
        }
    }

    /// (rat '*')? 'tau' ('/' int)?
    fn arg(&mut self) -> Result<Rational, ParseError> {
        let col = self.col();
        let mut s = Rational::one();
        if !matches!(self.peek(), Tok::Ident(_)) {
            s = self.rational()?;
            self.expect('*')?;
        }
        match self.ident()? {
            t if t == "tau" => {}
            other => return Err(ParseError { column: col, message: format!("expected 'tau', found '{other}'") }),
        }
        if self.eat('/') {
            let dcol = self.col();
            let d = self.int()?;
            if d.is_zero() {
                return Err(ParseError { column: dcol, message: "zero denominator".into() });
            }
            s /= Rational::from_integer(d);
        }
        if !s.is_positive() {
            return Err(ParseError { column: col, message: format!("scale must be positive, got {s}") });
        }
        Ok(s)
    }

    fn paren_arg(&mut self) -> Result<Rational, ParseError> {
        self.expect('(')?;
        let s = self.arg()?;
        self.expect(')')?;
        Ok(s)
    }

    fn characteristic(&mut self) -> Result<Characteristic, ParseError> {
        self.expect('[')?;
        let e = self.rational()?;
        self.expect(',')?;
        let d = self.rational()?;
        self.expect(']')?;
        Ok(Characteristic::new(e, d))
    }

    fn named<T: std::str::FromStr<Err = String>>(&mut self) -> Result<T, ParseError> {
        let col = self.col();
        let s = self.ident()?;
        s.parse().map_err(|m| ParseError { column: col, message: m })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.next() {
            Tok::Int(n) => Ok(Expr::Scalar(CycNum::from_bigint(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(Expr::Scalar(CycNum::i())),
                "tau" => {
                    Err(ParseError { column: col, message: "'tau' may only appear as a function argument".into() })
                }
                "sqrt" => {
                    self.expect('(')?;
                    let c = self.col();
                    let n = self.small_int()?;
                    self.expect(')')?;
                    match n {
                        2 => Ok(Expr::Scalar(CycNum::sqrt2())),
                        3 => Ok(Expr::Scalar(CycNum::sqrt3())),
                        _ => Err(ParseError {
                            column: c,
                            message: format!("only sqrt(2) and sqrt(3) are available, got sqrt({n})"),
                        }),
                    }
                }
                "zeta" => {
                    self.expect('(')?;
                    let c = self.col();
                    let n = self.small_int()?;
                    self.expect(',')?;
                    let k = self.small_int()?;
                    self.expect(')')?;
                    if n <= 0 || n > u32::MAX as i64 {
                        return Err(ParseError {
                            column: c,
                            message: format!("root of unity order must be positive, got {n}"),
                        });
                    }
                    Ok(Expr::Scalar(CycNum::zeta(n as u32, k)))
                }
                "theta" => {
                    let ch = self.characteristic()?;
                    Ok(Expr::ThetaConst(ch, self.paren_arg()?))
                }
                "dtheta" => {
                    let ch = self.characteristic()?;
                    Ok(Expr::ThetaDerivReduced(ch, self.paren_arg()?))
                }
                "eta" => Ok(Expr::Eta(self.paren_arg()?)),
                "Theta3" => Ok(Expr::Theta3(self.paren_arg()?)),
                "divsum" => {
                    self.expect('[')?;
                    let variant = self.named()?;
                    self.expect(',')?;
                    let filter = self.named()?;
                    self.expect(',')?;
                    let weight = self.named()?;
                    self.expect(',')?;
                    let twist = self.named()?;
                    self.expect(',')?;
                    let constant = self.rational()?;
                    self.expect(']')?;
                    let s = self.paren_arg()?;
                    let spec = DivisorSeriesSpec { variant, filter, weight, twist, exp_scale: s / int(2), constant };
                    Ok(Expr::DivisorSeries(spec))
                }
                "wsum" => {
                    self.expect('[')?;
                    let c = self.col();
                    let k = self.small_int()?;
                    let kind = match k {
                        -4 => KroneckerKind::Minus4,
                        -2 => KroneckerKind::Minus2,
                        _ => return Err(ParseError { column: c, message: format!("wsum takes -4 or -2, got {k}") }),
                    };
                    self.expect(']')?;
                    Ok(Expr::ExplicitSum(kind, self.paren_arg()?))
                }
                other => Err(ParseError { column: col, message: format!("unknown name '{other}'") }),
            },
            t => Err(ParseError { column: col, message: format!("unexpected {}", Self::describe(&t)) }),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.small_int()?;
            return Ok(fold_pow(base, k));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(fold(Expr::Scalar(CycNum::from_int(-1)), inner, Op::Mul));
        }
        self.power()
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = fold(e, self.unary()?, Op::Mul);
            } else if self.eat('/') {
                e = fold(e, self.unary()?, Op::Div);
            } else {
                return Ok(e);
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = fold(e, self.term()?, Op::Add);
            } else if self.eat('-') {
                e = fold(e, self.term()?, Op::Sub);
            } else {
                return Ok(e);
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Builds a binary node, collapsing it to a scalar when both sides are scalars.
fn fold(a: Expr, b: Expr, op: Op) -> Expr {
    if let (Expr::Scalar(x), Expr::Scalar(y)) = (&a, &b) {
        let v = match op {
            Op::Add => Some(x + y),
            Op::Sub => Some(x - y),
            Op::Mul => Some(x * y),
            Op::Div => x.checked_div(y).ok(),
        };
        if let Some(v) = v {
            return Expr::Scalar(v);
        }
    }
    match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => a / b,
    }
}

fn fold_pow(a: Expr, k: i64) -> Expr {
    if let Expr::Scalar(x) = &a {
        if let Ok(v) = x.pow(k) {
            return Expr::Scalar(v);
        }
    }
    a.pow(k)
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut lx = Lexer { toks: lex(src)?, pos: 0 };
    let e = lx.expr()?;
    if *lx.peek() != Tok::End {
        let t = lx.peek().clone();
        return lx.err(format!("unexpected {} after expression", Lexer::describe(&t)));
    }
    Ok(e)
}

fn arg_text(s: &Rational) -> String {
    if s.is_one() {
        "tau".to_string()
    } else {
        format!("{s}*tau")
    }
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn scalar_text(c: &CycNum) -> (String, u8) {
    match c.as_rational() {
        Some(r) if r.is_integer() && !r.is_negative() => (r.to_string(), ATOM),
        Some(r) if r.is_integer() => (r.to_string(), UNARY),
        Some(r) => (r.to_string(), PRODUCT),
        None => (format!("({c})"), ATOM),
    }
}

fn is_minus_one(e: &Expr) -> bool {
    matches!(e, Expr::Scalar(c) if *c == CycNum::from_int(-1))
}

/// Text and binding strength; a child is parenthesized when it binds more loosely than
/// its slot requires. Right operands need one level more, since the operators associate left.
fn render(e: &Expr) -> (String, u8) {
    let wrap = |(s, p): (String, u8), need: u8| if p < need { format!("({s})") } else { s };
    match e {
        Expr::ThetaConst(ch, s) => (format!("theta[{},{}]({})", ch.eps, ch.delta, arg_text(s)), ATOM),
        Expr::ThetaDerivReduced(ch, s) => (format!("dtheta[{},{}]({})", ch.eps, ch.delta, arg_text(s)), ATOM),
        Expr::Eta(s) => (format!("eta({})", arg_text(s)), ATOM),
        Expr::Theta3(s) => (format!("Theta3({})", arg_text(s)), ATOM),
        Expr::DivisorSeries(sp) => (
            format!(
                "divsum[{},{},{},{},{}]({})",
                sp.variant,
                sp.filter,
                sp.weight,
                sp.twist,
                sp.constant,
                arg_text(&(&sp.exp_scale * int(2)))
            ),
            ATOM,
        ),
        Expr::ExplicitSum(k, s) => (format!("wsum[{k}]({})", arg_text(s)), ATOM),
        Expr::Scalar(c) => scalar_text(c),
        Expr::Add(a, b) => (format!("{} + {}", wrap(render(a), SUM), wrap(render(b), PRODUCT)), SUM),
        Expr::Sub(a, b) => (format!("{} - {}", wrap(render(a), SUM), wrap(render(b), PRODUCT)), SUM),
        Expr::Mul(a, b) if is_minus_one(a) && !matches!(**b, Expr::Scalar(_)) => {
            (format!("-{}", wrap(render(b), UNARY)), UNARY)
        }
        Expr::Mul(a, b) => (format!("{}*{}", wrap(render(a), PRODUCT), wrap(render(b), UNARY)), PRODUCT),
        Expr::Div(a, b) => (format!("{}/{}", wrap(render(a), PRODUCT), wrap(render(b), UNARY)), PRODUCT),
        Expr::IntPow(a, k) => (format!("{}^{k}", wrap(render(a), ATOM)), POWER),
    }
}

/// Prints an expression in the grammar accepted by `parse_expr`.
pub fn to_text(e: &Expr) -> String {
    render(e).0
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}
