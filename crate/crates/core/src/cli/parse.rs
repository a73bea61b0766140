//! Recursive-descent parser for rational functions in `t` and differential
//! polynomials in `x` / `x1..x9`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := postfix ('^' exponent)?
//! postfix := atom | xvar ("'" | "''" | "^(" INT ")")?
//! atom    := INT | 't' | '(' expr ')'
//! exponent:= INT | '(' INT ')'
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::basefield::{Poly, RatFunc, Rational};
use crate::diffpoly::{DerivVar, DiffPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    T,
    /// `x` (None) or `x1..x9` (Some(index from 0)).
    X(Option<usize>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(z) => format!("number `{z}`"),
        Tok::T => "`t`".into(),
        Tok::X(None) => "`x`".into(),
        Tok::X(Some(i)) => format!("`x{}`", i + 1),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Prime => "`'`".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            't' => out.push((Tok::T, col)),
            'x' => {
                if i + 1 < chars.len() && ('1'..='9').contains(&chars[i + 1]) {
                    if i + 2 < chars.len() && chars[i + 2].is_ascii_digit() {
                        return Err(syntax(col, "indeterminate index must be 1..9"));
                    }
                    let idx = chars[i + 1].to_digit(10).unwrap() as usize - 1;
                    out.push((Tok::X(Some(idx)), col));
                    i += 2;
                    continue;
                }
                out.push((Tok::X(None), col));
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '/' => out.push((Tok::Slash, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            '\'' => out.push((Tok::Prime, col)),
            other => return Err(syntax(col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    /// Number of indeterminates of the ring being parsed into.
    arity: usize,
    allow_x: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> Error {
        syntax(self.col(), format!("unexpected {}", describe(self.peek())))
    }

    fn constant(&self, c: RatFunc) -> DiffPoly {
        DiffPoly::constant(c, self.arity)
    }

    fn expr(&mut self) -> Result<DiffPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    let col = self.col();
                    self.bump();
                    let divisor = self.unary()?;
                    let Some(d) = divisor.as_base_field() else {
                        return Err(syntax(col, "division by an expression containing an indeterminate"));
                    };
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = acc.scale(&d.recip()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DiffPoly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<u32> {
        let parenthesised = *self.peek() == Tok::LParen;
        if parenthesised {
            self.bump();
        }
        let col = self.col();
        let e = match self.bump() {
            (Tok::Int(z), _) => z.to_u32().ok_or_else(|| syntax(col, "exponent too large"))?,
            (t, c) => return Err(syntax(c, format!("expected an exponent, found {}", describe(&t)))),
        };
        if parenthesised {
            self.expect_rparen()?;
        }
        Ok(e)
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(())
            }
            _ => Err(syntax(self.col(), format!("expected `)`, found {}", describe(self.peek())))),
        }
    }

    fn power(&mut self) -> Result<DiffPoly> {
        let base = self.postfix()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<DiffPoly> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(z) => Ok(self.constant(RatFunc::from_poly(Poly::constant(Rational::from_integer(z))))),
            Tok::T => Ok(self.constant(RatFunc::t())),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::X(idx) => {
                if !self.allow_x {
                    return Err(syntax(col, "indeterminates are not allowed here"));
                }
                let index = idx.unwrap_or(0);
                let mut order = 0usize;
                while *self.peek() == Tok::Prime {
                    let pcol = self.col();
                    self.bump();
                    order += 1;
                    if order > 2 {
                        return Err(syntax(pcol, "use x^(k) for derivatives beyond the second"));
                    }
                }
                if order == 0
                    && *self.peek() == Tok::Caret
                    && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LParen)
                {
                    self.bump();
                    self.bump();
                    let kcol = self.col();
                    order = match self.bump() {
                        (Tok::Int(z), _) => z.to_usize().ok_or_else(|| syntax(kcol, "order too large"))?,
                        (t, c) => {
                            return Err(syntax(c, format!("expected a derivative order, found {}", describe(&t))))
                        }
                    };
                    self.expect_rparen()?;
                }
                Ok(DiffPoly::var(DerivVar::new(index, order), self.arity))
            }
            _ => Err(syntax(col, format!("unexpected {}", describe(&tok)))),
        }
    }
}

fn run(text: &str, allow_x: bool) -> Result<DiffPoly> {
    let toks = tokenize(text)?;
    let plain = toks.iter().any(|(t, _)| *t == Tok::X(None));
    let indexed = toks.iter().filter_map(|(t, _)| match t {
        Tok::X(Some(i)) => Some(*i),
        _ => None,
    });
    let max_index = indexed.max();
    if plain && max_index.is_some() {
        return Err(Error::MixedArity);
    }
    let arity = max_index.map_or(1, |i| i + 1);
    let mut parser = Parser { toks, pos: 0, arity, allow_x };
    let value = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected());
    }
    Ok(value.with_indeterminates(arity))
}

/// Parses a rational function in `t`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let p = run(text, false)?;
    Ok(p.as_base_field().expect("no indeterminates were accepted").in_rational_functions())
}

/// Parses a differential polynomial.
pub fn parse_diffpoly(text: &str) -> Result<DiffPoly> {
    run(text, true)
}

/// Parses a rational number such as `3`, `-2/7`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let f = parse_ratfunc(text)?;
    f.as_constant().ok_or_else(|| syntax(1, "expected a rational constant"))
}

/// Parses a matrix literal `[[a,b],[c,d]]` of rational entries.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rational>>> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(1, "matrix must look like [[a,b],[c,d]]"))?;
    let offset = text.len() - text.trim_start().len() + 2;
    let mut rows = Vec::new();
    let mut depth = 0;
    let mut start = None;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => {
                if depth == 0 {
                    start = Some(i + 1);
                }
                depth += 1;
            }
            ']' => {
                depth -= 1;
                if depth == 0 {
                    let s = start.take().unwrap();
                    let row = inner[s..i]
                        .split(',')
                        .map(|e| {
                            parse_rational(e).map_err(|err| match err {
                                Error::Syntax { column, message } => Error::Syntax {
                                    column: column + offset + s - 1,
                                    message,
                                },
                                other => other,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
            }
            ',' | ' ' if depth == 0 => {}
            _ if depth == 0 => return Err(syntax(offset + i, format!("unexpected character `{c}`"))),
            _ => {}
        }
    }
    if depth != 0 || rows.is_empty() {
        return Err(syntax(text.len().max(1), "unbalanced matrix brackets"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::rat;

    #[test]
    fn ratfunc_examples() {
        let f = parse_ratfunc("(t^2+1)/(t-1)").unwrap();
        assert_eq!(f.num(), &Poly::from_ints(&[1, 0, 1]));
        assert_eq!(f.den(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(parse_ratfunc("2/4").unwrap(), RatFunc::constant(rat(1, 2)));
        assert_eq!(
            parse_ratfunc("t++1"),
            Err(Error::Syntax { column: 3, message: "unexpected `+`".into() })
        );
        assert_eq!(parse_ratfunc("1/0"), Err(Error::DivisionByZero));
        assert_eq!(parse_ratfunc("1/(t-t)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn diffpoly_examples() {
        let p = parse_diffpoly("(x')^2 - 2*x").unwrap();
        let x = |j| DiffPoly::x(0, j, 1);
        let two = DiffPoly::constant(RatFunc::from_int(2), 1);
        assert_eq!(p, x(1).pow(2).sub(&two.mul(&x(0))));
        let q = parse_diffpoly("x^(3) + t*x").unwrap();
        assert_eq!(q, x(3).add(&x(0).scale(&RatFunc::t())));
        let w = parse_diffpoly("x1'*x2 - x2'*x1").unwrap();
        assert_eq!(w.num_indeterminates(), 2);
        assert_eq!(w.len(), 2);
        assert_eq!(parse_diffpoly("x*x1"), Err(Error::MixedArity));
    }

    #[test]
    fn derivative_and_power_notation() {
        let x = |j| DiffPoly::x(0, j, 1);
        assert_eq!(parse_diffpoly("x^(2)").unwrap(), x(2));
        assert_eq!(parse_diffpoly("x''").unwrap(), x(2));
        assert_eq!(parse_diffpoly("x'^2").unwrap(), x(1).pow(2));
        assert_eq!(parse_diffpoly("x^(3)^2").unwrap(), x(3).pow(2));
        assert_eq!(parse_diffpoly("x^2").unwrap(), x(0).pow(2));
        assert_eq!(parse_diffpoly("(x)^(2)").unwrap(), x(0).pow(2));
        assert!(matches!(parse_diffpoly("x'''"), Err(Error::Syntax { column: 4, .. })));
    }

    #[test]
    fn syntax_errors_report_columns() {
        assert!(matches!(parse_ratfunc("2t"), Err(Error::Syntax { column: 2, .. })));
        assert!(matches!(parse_ratfunc("(t+1"), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!(parse_ratfunc("x+1"), Err(Error::Syntax { column: 1, .. })));
        assert!(matches!(parse_diffpoly("1/x"), Err(Error::Syntax { column: 2, .. })));
        assert!(matches!(parse_ratfunc(""), Err(Error::Syntax { column: 1, .. })));
        assert!(matches!(parse_ratfunc("t & 1"), Err(Error::Syntax { column: 3, .. })));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[1,1],[0,-1/2]]").unwrap();
        assert_eq!(m, vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(-1, 2)]]);
        assert!(parse_matrix("[1,2]").is_err());
        assert!(parse_matrix("[[1,2]").is_err());
    }
}
