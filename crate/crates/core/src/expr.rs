//! Expression grammar shared by scalar strings, config files and the CLI.
//!
//! ```text
//! expr   := wedge (('+' | '-') wedge)*
//! wedge  := term ('/\' term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'q' | 'X' | 't[a,b]' | 'w[a,b]'
//!         | ('d' | 'del' | 'dlt') '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// The three exterior differentials a parsed expression can apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffOp {
    /// The inner differential `d`.
    D,
    /// The outer part `del` (∂).
    Del,
    /// The one-dimensional part `dlt` (δ).
    Dlt,
}

impl DiffOp {
    pub fn name(self) -> &'static str {
        match self {
            DiffOp::D => "d",
            DiffOp::Del => "del",
            DiffOp::Dlt => "dlt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Q,
    /// Generator `t[a,b]`, 1-based indices as written.
    Gen(usize, usize),
    /// Left-invariant one-form `w[a,b]`.
    Form(usize, usize),
    /// The canonical element.
    X,
    Apply(DiffOp, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
}

impl Expr {
    /// Evaluates an expression built only from numbers, `q` and field
    /// operations.
    pub fn to_scalar(&self) -> Result<Scalar> {
        Ok(match self {
            Expr::Num(n) => Scalar::from_rational(Rational::from_integer(n.clone())),
            Expr::Q => Scalar::q(),
            Expr::Add(a, b) => a.to_scalar()? + b.to_scalar()?,
            Expr::Sub(a, b) => a.to_scalar()? - b.to_scalar()?,
            Expr::Mul(a, b) => a.to_scalar()? * b.to_scalar()?,
            Expr::Div(a, b) => a.to_scalar()?.checked_div(&b.to_scalar()?)?,
            Expr::Pow(a, e) => a.to_scalar()?.pow(*e)?,
            Expr::Neg(a) => -a.to_scalar()?,
            other => return Err(Error::Type(format!("`{}` is not a scalar", other))),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Wedge(..) => 2,
            Expr::Mul(..) | Expr::Div(..) => 3,
            Expr::Neg(..) => 4,
            Expr::Pow(..) => 5,
            _ => 6,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({})", e)
    } else {
        write!(f, "{}", e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            write_child(f, a, p)?;
            write!(f, " {} ", op)?;
            write_child(f, b, p + 1)
        };
        match self {
            Expr::Num(n) => write!(f, "{}", n),
            Expr::Q => write!(f, "q"),
            Expr::Gen(a, b) => write!(f, "t[{},{}]", a, b),
            Expr::Form(a, b) => write!(f, "w[{},{}]", a, b),
            Expr::X => write!(f, "X"),
            Expr::Apply(op, e) => write!(f, "{}({})", op.name(), e),
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Wedge(a, b) => binary(f, a, "/\\", b, 2),
            Expr::Mul(a, b) => {
                write_child(f, a, 3)?;
                write!(f, "*")?;
                write_child(f, b, 4)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 3)?;
                write!(f, "/")?;
                write_child(f, b, 4)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 4)
            }
            Expr::Pow(a, e) => {
                write_child(f, a, 6)?;
                write!(f, "^{}", e)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => {
                if bytes.get(i + 1) == Some(&'\\') {
                    i += 1;
                    Tok::Wedge
                } else {
                    Tok::Slash
                }
            }
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {}", what))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.wedge()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.wedge()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.wedge()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn wedge(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Wedge) {
            self.pos += 1;
            lhs = Expr::Wedge(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e: i32 = n.try_into().or_else(|_| self.err("exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn index_pair(&mut self) -> Result<(usize, usize)> {
        self.expect(Tok::LBracket, "`[`")?;
        let a = self.small_int()?;
        self.expect(Tok::Comma, "`,`")?;
        let b = self.small_int()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok((a, b))
    }

    fn small_int(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.try_into().or_else(|_| self.err("index out of range"))
            }
            _ => self.err("expected index"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "q" => Ok(Expr::Q),
                    "X" => Ok(Expr::X),
                    "t" => {
                        let (a, b) = self.index_pair()?;
                        Ok(Expr::Gen(a, b))
                    }
                    "w" => {
                        let (a, b) = self.index_pair()?;
                        Ok(Expr::Form(a, b))
                    }
                    "d" | "del" | "dlt" => {
                        let op = match name.as_str() {
                            "d" => DiffOp::D,
                            "del" => DiffOp::Del,
                            _ => DiffOp::Dlt,
                        };
                        self.expect(Tok::LParen, "`(` after differential")?;
                        let e = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Apply(op, Box::new(e)))
                    }
                    _ => Err(Error::UnknownSymbol(name)),
                }
            }
            Some(_) => Err(Error::Syntax {
                pos: start,
                msg: "unexpected token".into(),
            }),
            None => Err(Error::Syntax {
                pos: start,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses a complete expression.
pub fn parse(input: &str) -> Result<Expr> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.chars().count(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A scalar as an expression tree whose rendering equals `Scalar`'s
/// `Display` output.
pub fn scalar_expr(s: &Scalar) -> Result<Expr> {
    parse(&s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn differential_of_product() {
        let e = parse("d(t[1,1]*t[1,2])").unwrap();
        assert_eq!(
            e,
            Expr::Apply(DiffOp::D, Box::new(Expr::Mul(Box::new(Expr::Gen(1, 1)), Box::new(Expr::Gen(1, 2)))))
        );
    }

    #[test]
    fn scaled_wedge_precedence() {
        let e = parse("(q - q^-1) * w[1,1] /\\ w[2,2]").unwrap();
        let lam = Expr::Sub(Box::new(Expr::Q), Box::new(Expr::Pow(Box::new(Expr::Q), -1)));
        assert_eq!(
            e,
            Expr::Wedge(
                Box::new(Expr::Mul(Box::new(lam), Box::new(Expr::Form(1, 1)))),
                Box::new(Expr::Form(2, 2))
            )
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("t[1,1] * ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{:?}", other),
        }
        match parse("q + $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{:?}", other),
        }
        assert_eq!(parse("foo + 1"), Err(Error::UnknownSymbol("foo".into())));
    }

    #[test]
    fn scalar_grammar() {
        let s: Scalar = "(q - q^-1)/(q^2 + 1)".parse().unwrap();
        assert_eq!(s.to_string(), "(q - q^-1)/(q^2 + 1)");
        let r: Scalar = "3/2*q^-2 - 1".parse().unwrap();
        assert_eq!(r.to_string(), "-1 + 3/2*q^-2");
        assert!("t[1,1]".parse::<Scalar>().is_err());
        assert_eq!("1/0".parse::<Scalar>(), Err(Error::DivisionByZero));
    }

    #[test]
    fn left_associativity() {
        assert_eq!(parse("1 - 2 - 3").unwrap().to_scalar().unwrap(), Scalar::from_int(-4));
        assert_eq!(parse("8/2/2").unwrap().to_scalar().unwrap(), Scalar::from_int(2));
        assert_eq!(parse("-q^2").unwrap().to_scalar().unwrap(), -Scalar::q_pow(2));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..20).prop_map(|n| Expr::Num(n.into())),
            Just(Expr::Q),
            Just(Expr::X),
            (1usize..3, 1usize..3).prop_map(|(a, b)| Expr::Gen(a, b)),
            (1usize..3, 1usize..3).prop_map(|(a, b)| Expr::Form(a, b)),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Wedge(Box::new(a), Box::new(b))),
                (inner.clone(), -3i32..4).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                inner.prop_map(|a| Expr::Apply(DiffOp::Dlt, Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e);
        }
    }
}
