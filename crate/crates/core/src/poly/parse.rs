//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Variables are `x0, x1, ...` in the primal ring and `d0, d1, ...` in the
//! dual ring, unless an explicit name list is supplied.

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::mpoly::{MPoly, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact::Field;

#[derive(Debug)]
enum Expr {
    Num(BigInt, BigInt, (usize, usize)),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

enum Names<'a> {
    Indexed(char),
    Named(&'a [String]),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: Names<'a>,
    max_var: Option<usize>,
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> AlgebraError {
        let (line, column) = self.location(pos);
        AlgebraError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error_at(start, "expected an exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error_at(start, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error_at(self.pos, "unexpected end of input")),
        };
        let c = self.chars[start];
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.error_at(self.pos, "expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digits");
            let mut den = BigInt::from(1);
            if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let ds = self.pos;
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.error_at(ds, "expected a denominator"));
                }
                den = d.parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(self.error_at(ds, "zero denominator"));
                }
            }
            return Ok(Expr::Num(num, den, self.location(start)));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            if matches!(self.names, Names::Indexed(_)) {
                // `x0x1` is two variables
                self.pos += 1;
                self.digits();
            } else {
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
            }
            let ident: String = self.chars[start..self.pos].iter().collect();
            let idx = self.resolve(&ident, start)?;
            self.max_var = Some(self.max_var.map_or(idx, |m| m.max(idx)));
            return Ok(Expr::Var(idx));
        }
        Err(self.error_at(start, format!("unexpected character '{c}'")))
    }

    fn resolve(&self, ident: &str, at: usize) -> Result<usize> {
        match &self.names {
            Names::Named(names) => names
                .iter()
                .position(|n| n == ident)
                .ok_or_else(|| self.error_at(at, format!("unknown variable '{ident}'"))),
            Names::Indexed(prefix) => {
                let rest = ident
                    .strip_prefix(*prefix)
                    .filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
                    .ok_or_else(|| {
                        self.error_at(at, format!("expected variable {prefix}<index>, found '{ident}'"))
                    })?;
                rest.parse()
                    .map_err(|_| self.error_at(at, format!("bad variable index in '{ident}'")))
            }
        }
    }
}

fn eval(e: &Expr, ring: RingKind, field: Field, n: usize) -> Result<MPoly> {
    Ok(match e {
        Expr::Num(a, b, (line, column)) => {
            let c = field.from_ratio(a, b).map_err(|_| AlgebraError::Parse {
                line: *line,
                column: *column,
                message: format!("denominator vanishes in {field}"),
            })?;
            MPoly::constant(ring, field, n, c)
        }
        Expr::Var(i) => MPoly::monomial(ring, field, n, Monomial::var(n, *i), field.one()),
        Expr::Add(a, b) => eval(a, ring, field, n)? + eval(b, ring, field, n)?,
        Expr::Sub(a, b) => eval(a, ring, field, n)? - eval(b, ring, field, n)?,
        Expr::Mul(a, b) => eval(a, ring, field, n)? * eval(b, ring, field, n)?,
        Expr::Neg(a) => -eval(a, ring, field, n)?,
        Expr::Pow(a, k) => eval(a, ring, field, n)?.pow(*k),
    })
}

fn run(text: &str, field: Field, ring: RingKind, names: Names, nvars: Option<usize>) -> Result<MPoly> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        names,
        max_var: None,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(p.error_at(p.pos, format!("unexpected character '{c}'")));
    }
    let needed = p.max_var.map_or(0, |m| m + 1);
    let n = match nvars {
        Some(n) if n < needed => {
            return Err(AlgebraError::VariableCountMismatch {
                left: n,
                right: needed,
            })
        }
        Some(n) => n,
        None => needed.max(1),
    };
    eval(&e, ring, field, n)
}

/// Parses with indexed variables (`x<i>` or `d<i>` depending on `ring`).
/// Without `nvars` the count is one more than the largest index seen.
pub fn parse_poly(text: &str, field: Field, ring: RingKind, nvars: Option<usize>) -> Result<MPoly> {
    run(text, field, ring, Names::Indexed(ring.var_prefix()), nvars)
}

/// Parses with an explicit list of variable names.
pub fn parse_named(text: &str, field: Field, ring: RingKind, names: &[String]) -> Result<MPoly> {
    run(text, field, ring, Names::Named(names), Some(names.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn round_trip_display() {
        let f = parse_poly("3*x0^2*x1 - x2", q(), RingKind::Primal, None).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.to_string(), "3*x0^2*x1 - x2");
    }

    #[test]
    fn implicit_products_and_powers() {
        let a = parse_poly("x0^5+x1^5+ (x0+x1)^5", q(), RingKind::Primal, None).unwrap();
        let b = parse_poly(
            "2x0^5 + 5x0^4x1 + 10x0^3x1^2 + 10x0^2x1^3 + 5x0x1^4 + 2x1^5",
            q(),
            RingKind::Primal,
            None,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_coefficients() {
        let f = parse_poly("1/2 d0 - 3/4*d1", q(), RingKind::Dual, Some(3)).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.to_string(), "1/2*d0 - 3/4*d1");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x0 +\n  x1 $", q(), RingKind::Primal, None) {
            Err(AlgebraError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("d0", q(), RingKind::Primal, None).is_err());
        assert!(parse_poly("x0^", q(), RingKind::Primal, None).is_err());
        assert!(parse_poly("1/0", q(), RingKind::Primal, None).is_err());
        assert!(parse_poly("1/7", Field::Prime(7), RingKind::Primal, None).is_err());
        assert!(parse_poly("x3", q(), RingKind::Primal, Some(2)).is_err());
    }

    #[test]
    fn named_variables() {
        let names: Vec<String> = ["h", "b3"].iter().map(|s| s.to_string()).collect();
        let f = parse_named("b3^2 + 8b3*h^3 + 8h^6", q(), RingKind::Primal, &names).unwrap();
        assert_eq!(f.display_with(&names), "8*h^6 + 8*h^3*b3 + b3^2");
    }
}
