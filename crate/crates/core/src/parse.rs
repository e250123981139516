//! The series and matrix input language.
//!
//! ```text
//! matrix := '[' row (',' row)* ']'          row := '[' sum (',' sum)* ']'
//! sum    := ['-'] product (('+' | '-') product)*
//! product:= power (('*' | '/') power)*
//! power  := atom ['^' int]   |   't' ['^' exponent]   |   'O' '(' ('1' | 't' ['^' exponent]) ')'
//! atom   := integer | 'a' | 'e' | '(' sum ')' | '-' power
//! exponent := ['-'] int ['/' int] | '(' ['-'] int ['/' int] ')'
//! ```
//! Division is only by constants. `t^p/q` reads as the exponent p/q.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::SeriesMatrix;
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::series::{Exp, Series};

/// Largest matrix the tools accept.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Sym(char),
    Ident(String),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Num(digits.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if "+-*/^()[],".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a, S: Scalar> {
    toks: Vec<Token>,
    pos: usize,
    ctx: &'a S::Ctx,
}

impl<'a, S: Scalar> Parser<'a, S> {
    fn new(src: &str, ctx: &'a S::Ctx) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0, ctx })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Series<S>>>> {
        self.expect('[')?;
        let mut rows = vec![self.row()?];
        while self.eat(',') {
            rows.push(self.row()?);
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<Series<S>>> {
        self.expect('[')?;
        let mut row = vec![self.sum()?];
        while self.eat(',') {
            row.push(self.sum()?);
        }
        self.expect(']')?;
        Ok(row)
    }

    fn sum(&mut self) -> Result<Series<S>> {
        let mut acc = if self.eat('-') { self.product()?.neg() } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.product()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Series<S>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.pos;
                self.bump();
                let d = self.power()?;
                let inv = self.constant_inverse(&d).map_err(|msg| {
                    let t = &self.toks[at];
                    Error::Syntax { line: t.line, col: t.col, msg }
                })?;
                acc = acc.mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn constant_inverse(&self, d: &Series<S>) -> std::result::Result<Series<S>, String> {
        let mut terms = d.terms();
        let c = match (terms.next(), terms.next()) {
            (Some((e, c)), None) if e.is_zero() && d.is_exact() => c.as_constant(),
            _ => None,
        };
        let c = c.ok_or_else(|| format!("can only divide by a constant, not {d}"))?;
        let inv = c.inv().map_err(|e| e.to_string())?;
        Ok(Series::scalar(inv))
    }

    fn small_int(&mut self) -> Result<i64> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let v = n.to_i64().filter(|v| v.abs() < 1 << 20);
                match v {
                    Some(v) => {
                        self.bump();
                        Ok(v)
                    }
                    None => self.error(format!("exponent {n} is too large")),
                }
            }
            _ => self.error(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn exponent(&mut self) -> Result<Exp> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let num = self.small_int()?;
        let den = if self.eat('/') { self.small_int()? } else { 1 };
        if den == 0 {
            return self.error("zero denominator in exponent");
        }
        if paren {
            self.expect(')')?;
        }
        let e = Exp::new(num, den);
        Ok(if neg { -e } else { e })
    }

    fn int_power(&mut self) -> Result<Option<u64>> {
        if !self.eat('^') {
            return Ok(None);
        }
        if *self.peek() == Tok::Sym('-') {
            return self.error("only t may carry a negative exponent");
        }
        Ok(Some(self.small_int()? as u64))
    }

    fn power(&mut self) -> Result<Series<S>> {
        let tok = self.peek().clone();
        match tok {
            Tok::Ident(ref s) if s == "t" => {
                self.bump();
                let e = if self.eat('^') { self.exponent()? } else { Exp::one() };
                Ok(Series::t_pow(self.ctx, e))
            }
            Tok::Ident(ref s) if s == "O" => {
                self.bump();
                self.expect('(')?;
                let e = match self.peek().clone() {
                    Tok::Num(n) if n.is_one() => {
                        self.bump();
                        Exp::zero()
                    }
                    Tok::Ident(ref s) if s == "t" => {
                        self.bump();
                        if self.eat('^') {
                            self.exponent()?
                        } else {
                            Exp::one()
                        }
                    }
                    _ => return self.error(format!("expected t^k inside O(...), found {}", self.describe())),
                };
                self.expect(')')?;
                Ok(Series::big_o(self.ctx, e))
            }
            _ => {
                let base = self.atom()?;
                Ok(match self.int_power()? {
                    Some(k) => Ring::pow(&base, k),
                    None => base,
                })
            }
        }
    }

    fn atom(&mut self) -> Result<Series<S>> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Series::scalar(S::from_int(self.ctx, &n)))
            }
            Tok::Ident(s) if s == "a" => match S::transcendental(self.ctx) {
                Some(a) => {
                    self.bump();
                    Ok(Series::scalar(a))
                }
                None => self.error(format!("`a` is not available in {}", S::descriptor(self.ctx))),
            },
            Tok::Ident(s) if s == "e" => match S::epsilon(self.ctx) {
                Some(e) => {
                    self.bump();
                    Ok(Series::scalar(e))
                }
                None => self.error(format!("`e` is not available in {}", S::descriptor(self.ctx))),
            },
            Tok::Ident(s) => self.error(format!("unknown symbol `{s}`")),
            Tok::Sym('(') => {
                self.bump();
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Sym('-') => {
                self.bump();
                Ok(self.power()?.neg())
            }
            _ => self.error(format!("expected a term, found {}", self.describe())),
        }
    }
}

pub fn parse_series<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<Series<S>> {
    let mut p = Parser::<S>::new(src, ctx)?;
    let s = p.sum()?;
    p.finish()?;
    Ok(s)
}

/// Parses a square matrix of size at most [`MAX_DIM`]; the group is
/// inferred from the determinant.
pub fn parse_matrix<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<SeriesMatrix<S>> {
    let mut p = Parser::<S>::new(src, ctx)?;
    let rows = p.matrix()?;
    p.finish()?;
    let n = rows.len();
    if n > MAX_DIM {
        return Err(Error::DimensionError(format!("{n}x{n} exceeds the {MAX_DIM}x{MAX_DIM} limit")));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionError(format!("row of length {} in a matrix with {n} rows", r.len())));
    }
    SeriesMatrix::infer(rows)
}

/// A single exponent such as `12` or `5/2`.
pub fn parse_exponent(src: &str) -> Result<Exp> {
    let mut p = Parser::<crate::scalar::Rational>::new(src, &())?;
    let e = p.exponent()?;
    p.finish()?;
    Ok(e)
}

/// Constant polynomial coefficient of a parsed scalar expression.
pub fn parse_scalar<S: Scalar>(src: &str, ctx: &S::Ctx) -> Result<S> {
    let s = parse_series::<S>(src, ctx)?;
    let mut terms = s.terms();
    match (terms.next(), terms.next()) {
        (None, _) if s.is_exact() => Ok(S::zero(ctx)),
        (Some((e, c)), None) if e.is_zero() && s.is_exact() => {
            c.as_constant().ok_or_else(|| Error::Syntax { line: 1, col: 1, msg: "not a scalar".into() })
        }
        _ => Err(Error::Syntax { line: 1, col: 1, msg: format!("`{src}` is not a scalar") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Group;
    use crate::scalar::{Dual, Fp, PrimeModulus, RatFunc, Rational};

    #[test]
    fn series_literals() {
        let s = parse_series::<Rational>("t^-2 + 3*t + 1/2*t^3", &()).unwrap();
        assert_eq!(s.to_string(), "t^-2 + 3*t + 1/2*t^3");
        let s = parse_series::<Rational>("1 + 2*t^1/2 + t^(1/2) + O(t^2)", &()).unwrap();
        assert_eq!(s.to_string(), "1 + 3*t^(1/2) + O(t^2)");
        assert_eq!(parse_series::<Rational>("-(1 + t)^2", &()).unwrap().to_string(), "-1 - 2*t - t^2");
        assert_eq!(parse_series::<Rational>("t^-1/2", &()).unwrap().to_string(), "t^(-1/2)");
    }

    #[test]
    fn ring_symbols() {
        let ctx = PrimeModulus::new(3).unwrap();
        let s = parse_series::<RatFunc<Fp>>("1/(1 + a)*t + a^2", &ctx).unwrap();
        assert_eq!(parse_series::<RatFunc<Fp>>(&s.to_string(), &ctx).unwrap(), s);
        let d = parse_series::<Dual<Rational>>("1/2 - 3*e + e*t^-1", &()).unwrap();
        assert_eq!(parse_series::<Dual<Rational>>(&d.to_string(), &()).unwrap(), d);
        assert!(matches!(parse_series::<Rational>("a*t", &()), Err(Error::Syntax { line: 1, col: 1, .. })));
    }

    #[test]
    fn matrices() {
        let g = parse_matrix::<Rational>("[[t^-1, 1],[0, t]]", &()).unwrap();
        assert_eq!(g.group(), Group::SL);
        let back = parse_matrix::<Rational>(&g.to_string(), &()).unwrap();
        assert_eq!(back.rows(), g.rows());
        let h = parse_matrix::<Rational>("[[t, 1], [0, t]]", &()).unwrap();
        assert_eq!(h.group(), Group::GL);
        let u = parse_matrix::<Dual<Rational>>("[[1, e*t^-1],[0,1]]", &()).unwrap();
        assert_eq!(u.entry(0, 1).to_string(), "e*t^-1");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_matrix::<Rational>("[[1, 0],\n [0, 1 +]]", &()) {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 9)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_matrix::<Rational>("[[1, 0], [0]]", &()), Err(Error::DimensionError(_))));
        let big = format!("[{}]", ["[1,0,0,0,0]"; 5].join(","));
        assert!(matches!(parse_matrix::<Rational>(&big, &()), Err(Error::DimensionError(_))));
        assert!(matches!(parse_series::<Rational>("1/t", &()), Err(Error::Syntax { col: 2, .. })));
        assert!(matches!(parse_series::<Rational>("1 # 2", &()), Err(Error::Syntax { col: 3, .. })));
    }

    #[test]
    fn exponents() {
        assert_eq!(parse_exponent("5/2").unwrap(), Exp::new(5, 2));
        assert_eq!(parse_exponent("12").unwrap(), Exp::from_integer(12));
    }
}
