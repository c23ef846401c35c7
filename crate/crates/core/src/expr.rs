//! A small expression language for the forcing term F(x, u).
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | 'x' | 'u' | 'pi' | 'e'
//!          | func '(' expr ')' | '(' expr ')'
//! func    := ln | exp | sqrt | sin | cos | abs
//! ```
//!
//! Unary minus binds looser than `^`, so `-2^2` is `-4`. There is no
//! implicit multiplication.

use std::fmt;

use thiserror::Error;

use crate::error::Error as CoreError;
use crate::solver::Forcing;

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Exp,
    Sqrt,
    Sin,
    Cos,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "ln" => Func::Ln,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// Byte offset into the source.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("cannot evaluate `{subexpression}`: {reason} (operand {operand})")]
pub struct EvalError {
    pub subexpression: String,
    pub operand: f64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err<T>(position: usize, expected: &[&str], found: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.into(),
    })
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Tok::Op(c as char), start));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, start));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, start));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only when digits follow, so `2e` stays a number then `e`
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                match text.parse::<f64>() {
                    Ok(v) if v.is_finite() => out.push((Tok::Num(v), start)),
                    Ok(_) => return err(start, &["finite number"], format!("`{text}`")),
                    Err(_) => return err(start, &["number"], format!("`{text}`")),
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return err(
                    start,
                    &["number", "identifier", "operator", "parenthesis"],
                    format!("`{ch}`"),
                );
            }
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return err(
                self.offset(),
                &["shallower nesting"],
                "nesting deeper than 200 levels",
            );
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.descend()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Op('-') = self.peek() {
            self.bump();
            self.descend()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            self.descend()?;
            let exponent = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        const PRIMARY: &[&str] = &["number", "x", "u", "pi", "e", "function", "`(`"];
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var(Var::X)),
                "u" => Ok(Expr::Var(Var::U)),
                "pi" => Ok(Expr::Const(std::f64::consts::PI)),
                "e" => Ok(Expr::Const(std::f64::consts::E)),
                other => match Func::from_name(other) {
                    Some(f) => {
                        if *self.peek() != Tok::LParen {
                            return err(self.offset(), &["`(`"], self.peek().describe());
                        }
                        self.bump();
                        let arg = self.expr()?;
                        self.expect_rparen()?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    }
                    None => err(at, PRIMARY, format!("unknown identifier `{other}`")),
                },
            },
            other => err(at, PRIMARY, other.describe()),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            err(self.offset(), &["`)`", "operator"], self.peek().describe())
        }
    }
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr, ParseError> {
        let toks = tokenize(source)?;
        let mut p = Parser {
            toks,
            pos: 0,
            depth: 0,
        };
        let e = p.expr()?;
        if *p.peek() != Tok::End {
            return err(
                p.offset(),
                &["operator", "end of input"],
                p.peek().describe(),
            );
        }
        Ok(e)
    }

    pub fn eval(&self, x: f64, u: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Const(v) => *v,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::U) => u,
            Expr::Neg(inner) => -inner.eval(x, u)?,
            Expr::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x, u)?;
                let r = rhs.eval(x, u)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l / r,
                    BinOp::Pow => self.power(l, r)?,
                }
            }
            Expr::Call(f, arg) => {
                let v = arg.eval(x, u)?;
                match f {
                    Func::Ln if v <= 0.0 => {
                        return Err(self.eval_error(v, "logarithm of a non-positive number"))
                    }
                    Func::Ln => v.ln(),
                    Func::Exp => v.exp(),
                    Func::Sqrt if v < 0.0 => {
                        return Err(self.eval_error(v, "square root of a negative number"))
                    }
                    Func::Sqrt => v.sqrt(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Abs => v.abs(),
                }
            }
        })
    }

    fn power(&self, base: f64, exponent: f64) -> Result<f64, EvalError> {
        if exponent == exponent.trunc() && exponent.abs() <= 16.0 {
            let n = exponent.abs() as u32;
            let mut acc = 1.0;
            for _ in 0..n {
                acc *= base;
            }
            return Ok(if exponent < 0.0 { 1.0 / acc } else { acc });
        }
        if base < 0.0 && exponent != exponent.trunc() {
            return Err(self.eval_error(base, "non-integer power of a negative number"));
        }
        Ok(base.powf(exponent))
    }

    fn eval_error(&self, operand: f64, reason: &'static str) -> EvalError {
        EvalError {
            subexpression: self.to_string(),
            operand,
            reason,
        }
    }

    /// Whether the expression mentions `u`.
    pub fn depends_on_u(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == Var::U,
            Expr::Neg(e) | Expr::Call(_, e) => e.depends_on_u(),
            Expr::Binary(_, l, r) => l.depends_on_u() || r.depends_on_u(),
        }
    }
}

/// Canonical form with every compound subexpression parenthesized.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v:?}"),
            Expr::Var(Var::X) => f.write_str("x"),
            Expr::Var(Var::U) => f.write_str("u"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({l} {sym} {r})")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

impl Forcing for Expr {
    fn eval(&self, x: f64, u: f64) -> crate::error::Result<f64> {
        Expr::eval(self, x, u).map_err(|e| CoreError::Evaluation {
            x,
            u,
            message: e.to_string(),
        })
    }
}
