//! Polynomial expression language and `.sid` ideal description files.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := ["-"] term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := atom ("^" NAT)?
//! atom     := RATIONAL | VAR | "(" expr ")"
//! RATIONAL := INT ("/" INT)?      INT := ["-"] [0-9]+
//! ```
//!
//! There is no implicit multiplication (`2x` is rejected) and exponents
//! apply to atoms only (`x^2^3` is rejected).

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring, RingRef, RingSpec};

const MAX_EXPONENT: u64 = (1 << 31) - 1;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((col, Tok::Int(src[start..i].parse().unwrap())));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(src[start..i].to_string())));
            }
            b'*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    return Err(Error::Lex {
                        col,
                        msg: "`**` is not an operator; use `^`".into(),
                    });
                }
                out.push((col, Tok::Star));
                i += 1;
            }
            b'+' | b'-' | b'^' | b'/' | b'(' | b')' => {
                out.push((
                    col,
                    match c {
                        b'+' => Tok::Plus,
                        b'-' => Tok::Minus,
                        b'^' => Tok::Caret,
                        b'/' => Tok::Slash,
                        b'(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::Lex {
                    col,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Lit(BigRational),
    Var(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    pub fn eval(&self, ring: &RingRef) -> Polynomial {
        match self {
            ExprAst::Lit(c) => Polynomial::constant(ring, c.clone()),
            ExprAst::Var(i) => Polynomial::var(ring, *i),
            ExprAst::Add(a, b) => a.eval(ring) + b.eval(ring),
            ExprAst::Sub(a, b) => a.eval(ring) - b.eval(ring),
            ExprAst::Neg(a) => -a.eval(ring),
            ExprAst::Mul(a, b) => a.eval(ring) * b.eval(ring),
            ExprAst::Pow(a, k) => a.eval(ring).pow(*k),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    spec: &'a RingSpec,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            ExprAst::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let k = match self.bump() {
            Some(Tok::Int(k)) => k,
            _ => {
                self.pos -= 1;
                return self.err("expected a nonnegative integer exponent");
            }
        };
        let k = match u64::try_from(&k) {
            Ok(k) if k <= MAX_EXPONENT => k as u32,
            _ => return Err(Error::ExponentOverflow(k.to_string())),
        };
        if self.peek() == Some(&Tok::Caret) {
            return self.err("chained exponents need parentheses");
        }
        Ok(ExprAst::Pow(Box::new(base), k))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if neg { -v } else { v }),
            _ => {
                self.pos -= 1;
                self.err("expected an integer")
            }
        }
    }

    fn atom(&mut self) -> Result<ExprAst> {
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Minus) => {
                let num = self.int()?;
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let den = self.int()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    return Ok(ExprAst::Lit(BigRational::new(num, den)));
                }
                Ok(ExprAst::Lit(BigRational::from_integer(num)))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                match self.spec.index_of(&name) {
                    Some(i) => {
                        self.bump();
                        Ok(ExprAst::Var(i))
                    }
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` into an expression tree over the variables of `spec`.
pub fn parse_expr(src: &str, spec: &RingSpec) -> Result<ExprAst> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut p = Parser {
        toks,
        pos: 0,
        spec,
        end_col: src.len() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses and expands `src` into a normalized polynomial of `ring`.
pub fn parse_poly(src: &str, ring: &RingRef) -> Result<Polynomial> {
    Ok(parse_expr(src, ring.spec())?.eval(ring))
}

fn write_rational(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

/// Canonical text: terms in descending order, signs folded into the
/// separators, coefficients as reduced fractions, `0` for zero.
pub fn print_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (k, t) in p.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = t.coeff.abs();
        let mut factors = Vec::new();
        if !abs.is_one() || t.mono.is_one() {
            let mut s = String::new();
            write_rational(&mut s, &abs);
            factors.push(s);
        }
        for i in 0..ring.nvars() {
            match t.mono.exp(i) {
                0 => {}
                1 => factors.push(ring.var_name(i).to_string()),
                e => factors.push(format!("{}^{}", ring.var_name(i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_poly(self))
    }
}

/// Ring declaration and generators read from a `.sid` file.
#[derive(Clone, Debug)]
pub struct IdealFile {
    pub ring: RingRef,
    pub gens: Vec<Polynomial>,
}

/// Parses `.sid` text: a `ring v1 v2 ...` header, then `gen <expr>` lines.
/// `#` starts a comment line; blank lines are ignored.
pub fn parse_sid(text: &str) -> Result<IdealFile> {
    let mut ring: Option<RingRef> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &ring {
            None => {
                let rest = line
                    .strip_prefix("ring")
                    .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
                    .ok_or(Error::MissingRingHeader)?;
                let vars: Vec<&str> = rest.split_whitespace().collect();
                let spec = RingSpec::new(&vars).map_err(|e| e.at_line(line_no))?;
                ring = Some(Ring::new(spec, Default::default()));
            }
            Some(r) => {
                let body = line
                    .strip_prefix("gen")
                    .filter(|b| b.starts_with(char::is_whitespace))
                    .ok_or_else(|| {
                        Error::Syntax {
                            col: 1,
                            msg: "expected `gen <expr>`".into(),
                        }
                        .at_line(line_no)
                    })?;
                gens.push(parse_poly(body, r).map_err(|e| e.at_line(line_no))?);
            }
        }
    }
    let ring = ring.ok_or(Error::MissingRingHeader)?;
    Ok(IdealFile { ring, gens })
}

pub fn load_ideal_file(path: impl AsRef<Path>) -> Result<IdealFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_sid(&text)
}

/// Canonical `.sid` serialization.
pub fn to_sid(ring: &RingRef, gens: &[Polynomial]) -> String {
    let mut out = format!("ring {}\n", ring.spec().vars().join(" "));
    for g in gens {
        writeln!(out, "gen {}", print_poly(g)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, Monomial};

    fn ring(vars: &[&str]) -> RingRef {
        Ring::grevlex(vars).unwrap()
    }

    #[test]
    fn cancellation_gives_zero() {
        let r = ring(&["x", "y"]);
        assert!(parse_poly("x - x", &r).unwrap().is_zero());
        assert_eq!(print_poly(&parse_poly("x - x", &r).unwrap()), "0");
    }

    #[test]
    fn expands_fermat_like_generator() {
        let r = ring(&["x", "y", "z", "w"]);
        let p = parse_poly("(x^3-y^3)*(z^3-w^3)*x*y", &r).unwrap();
        // brute expansion by hand: x^4yz^3 - x^4yw^3 - xy^4z^3 + xy^4w^3
        let expect = Polynomial::from_terms(
            &r,
            vec![
                (rat(1), Monomial::from_exps(&[4, 1, 3, 0])),
                (rat(-1), Monomial::from_exps(&[4, 1, 0, 3])),
                (rat(-1), Monomial::from_exps(&[1, 4, 3, 0])),
                (rat(1), Monomial::from_exps(&[1, 4, 0, 3])),
            ],
        );
        assert_eq!(p, expect);
        assert_eq!(p.degree(), Some(8));
    }

    #[test]
    fn grammar_rejections() {
        let r = ring(&["x", "y"]);
        assert!(matches!(parse_poly("x**2", &r), Err(Error::Lex { .. })));
        assert!(matches!(parse_poly("2x", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^2^3", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("q + x", &r), Err(Error::UnknownVariable(v)) if v == "q"));
        assert!(matches!(parse_poly("   ", &r), Err(Error::EmptyInput)));
        assert!(matches!(parse_poly("x^2147483648", &r), Err(Error::ExponentOverflow(_))));
        assert!(matches!(parse_poly("1/0", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x $ y", &r), Err(Error::Lex { .. })));
        assert!(matches!(parse_poly("(x + y", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rationals_and_negative_literals() {
        let r = ring(&["x", "y"]);
        let p = parse_poly("-2/4*x + y*-3 - (x)^2", &r).unwrap();
        assert_eq!(print_poly(&p), "-x^2 - 1/2*x - 3*y");
        assert_eq!(print_poly(&parse_poly("y + x", &r).unwrap()), "x + y");
        assert_eq!(print_poly(&parse_poly("-7/3", &r).unwrap()), "-7/3");
    }

    #[test]
    fn sid_files() {
        let f = parse_sid("# comment\nring x y\n\ngen x^2\n").unwrap();
        assert_eq!(f.ring.spec().vars(), ["x", "y"]);
        assert_eq!(print_poly(&f.gens[0]), "x^2");
        assert!(matches!(parse_sid("gen x\n"), Err(Error::MissingRingHeader)));
        assert!(matches!(parse_sid(""), Err(Error::MissingRingHeader)));
        match parse_sid("ring x y\ngen x\ngen q\n") {
            Err(Error::Parse { line, source }) => {
                assert_eq!(line, 3);
                assert!(matches!(*source, Error::UnknownVariable(_)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = to_sid(&f.ring, &f.gens);
        assert_eq!(text, "ring x y\ngen x^2\n");
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_ideal_file("/definitely/not/here.sid"),
            Err(Error::Io { .. })
        ));
    }
}
