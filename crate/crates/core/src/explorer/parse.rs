//! Ideal files: a header `ring QQ[x, y]` or `ring F7[x, y]`, then one
//! polynomial per line. `#` starts a comment; blank lines are skipped.
//! Expressions use `+ - * ^`, parentheses, integer literals and `a/b`
//! rational literals. Multiplication must be written out.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{FieldSpec, Polynomial, Ring, RingContext};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 10_000;

/// Parsed ideal file. Unlike [`Ideal`], the generator list keeps zero
/// lines, since tuple commands care about them.
#[derive(Clone, Debug)]
pub struct IdealFile {
    pub ring: Ring,
    pub polynomials: Vec<Polynomial>,
}

impl IdealFile {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polynomials.clone()).expect("parsed in one ring")
    }
}

pub fn parse_ideal_file(text: &str) -> Result<Ideal> {
    Ok(parse_file(text, None)?.ideal())
}

/// Parses a file; `field` replaces the field named in the header.
pub fn parse_file(text: &str, field: Option<FieldSpec>) -> Result<IdealFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(1, 1, "missing ring header"))?;
    let mut ring = parse_header(header, header_line)?;
    if let Some(f) = field {
        if f != ring.field() {
            ring = RingContext::new(f, ring.var_names().to_vec())?;
        }
    }
    let mut polynomials = Vec::new();
    let mut last_line = header_line;
    for (no, line) in lines {
        last_line = no;
        if line.trim().is_empty() {
            continue;
        }
        polynomials.push(parse_expression(&ring, line, no)?);
    }
    if polynomials.is_empty() {
        return Err(Error::parse(last_line + 1, 1, "empty body: expected at least one polynomial"));
    }
    Ok(IdealFile { ring, polynomials })
}

/// Parses one expression in the given ring.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    parse_expression(ring, strip_comment(text), 1)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_header(text: &str, line: usize) -> Result<Ring> {
    let mut lx = Lexer::new(text, line);
    let tok = lx.next()?;
    match &tok.kind {
        Tok::Ident(w) if w == "ring" => {}
        _ => return Err(tok.error("expected `ring`")),
    }
    let ftok = lx.next()?;
    let field = match &ftok.kind {
        Tok::Ident(w) if w == "QQ" => FieldSpec::Rationals,
        Tok::Ident(w) if w.starts_with('F') && w.len() > 1 && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
            let p: u32 = w[1..]
                .parse()
                .map_err(|_| ftok.error("characteristic out of range"))?;
            FieldSpec::prime(p).map_err(|e| ftok.error(&e.to_string()))?
        }
        _ => return Err(ftok.error("expected a field: QQ or F<p> for an odd prime p")),
    };
    lx.expect(&Tok::LBracket, "expected `[`")?;
    let mut names = Vec::new();
    loop {
        let t = lx.next()?;
        match &t.kind {
            Tok::Ident(name) => {
                if names.contains(name) {
                    return Err(t.error(&format!("variable `{name}` declared twice")));
                }
                names.push(name.clone());
            }
            _ => return Err(t.error("expected a variable name")),
        }
        let sep = lx.next()?;
        match sep.kind {
            Tok::Comma => continue,
            Tok::RBracket => break,
            _ => return Err(sep.error("expected `,` or `]`")),
        }
    }
    let end = lx.next()?;
    if end.kind != Tok::End {
        return Err(end.error("unexpected text after the ring header"));
    }
    RingContext::new(field, names).map_err(|e| Error::parse(line, 1, e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    line: usize,
    column: usize,
}

impl Token {
    fn error(&self, msg: &str) -> Error {
        Error::parse(self.line, self.column, msg)
    }
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    peeked: Option<Token>,
}

impl Lexer {
    fn new(text: &str, line: usize) -> Self {
        Lexer {
            chars: text.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            pos: 0,
            line,
            peeked: None,
        }
    }

    fn peek(&mut self) -> Result<&Token> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn next(&mut self) -> Result<Token> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn expect(&mut self, kind: &Tok, msg: &str) -> Result<Token> {
        let t = self.next()?;
        if &t.kind == kind {
            Ok(t)
        } else {
            Err(t.error(msg))
        }
    }

    fn lex(&mut self) -> Result<Token> {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
        let column = self.chars.get(self.pos).map_or(self.chars.len() + 1, |c| c.0);
        let line = self.line;
        let tok = |kind| Token { kind, line, column };
        let Some(&(_, c)) = self.chars.get(self.pos) else {
            return Ok(tok(Tok::End));
        };
        self.pos += 1;
        let kind = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                let mut s = String::from(d);
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    s.push(c);
                    self.pos += 1;
                }
                Tok::Int(s.parse().expect("digits"))
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::from(a);
                while let Some(&(_, c)) = self.chars.get(self.pos) {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    s.push(c);
                    self.pos += 1;
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::parse(self.line, column, format!("unexpected character `{other}`")));
            }
        };
        Ok(tok(kind))
    }
}

fn parse_expression(ring: &Ring, text: &str, line: usize) -> Result<Polynomial> {
    let mut p = Parser {
        ring,
        lx: Lexer::new(text, line),
    };
    let e = p.sum()?;
    let t = p.lx.next()?;
    match t.kind {
        Tok::End => Ok(e),
        Tok::Int(_) | Tok::Ident(_) | Tok::LParen => Err(t.error("implicit multiplication is not allowed; write `*`")),
        Tok::RParen => Err(t.error("unbalanced `)`")),
        Tok::Slash => Err(t.error("`/` is only allowed inside a rational literal `a/b`")),
        _ => Err(t.error("unexpected token")),
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    lx: Lexer,
}

impl<'a> Parser<'a> {
    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = self.product()?;
        loop {
            match self.lx.peek()?.kind {
                Tok::Plus => {
                    self.lx.next()?;
                    acc = &acc + &self.product()?;
                }
                Tok::Minus => {
                    self.lx.next()?;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.lx.peek()?.kind == Tok::Star {
            self.lx.next()?;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.lx.peek()?.kind {
            Tok::Minus => {
                self.lx.next()?;
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.lx.next()?;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.lx.peek()?.kind != Tok::Caret {
            return Ok(base);
        }
        self.lx.next()?;
        let t = self.lx.next()?;
        let Tok::Int(e) = &t.kind else {
            return Err(t.error("expected a non-negative integer exponent"));
        };
        let e: u32 = e
            .try_into()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| t.error(&format!("exponent larger than {MAX_EXPONENT}")))?;
        if self.lx.peek()?.kind == Tok::Caret {
            let t = self.lx.next()?;
            return Err(t.error("chained `^` is ambiguous; use parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.lx.next()?;
        let field = self.ring.field();
        match &t.kind {
            Tok::Int(n) => {
                if self.lx.peek()?.kind != Tok::Slash {
                    return Ok(Polynomial::constant(self.ring, field.from_bigint(n)));
                }
                let slash = self.lx.next()?;
                let d = self.lx.next()?;
                let Tok::Int(den) = &d.kind else {
                    return Err(slash.error("`/` is only allowed inside a rational literal `a/b`"));
                };
                let c = field
                    .from_ratio(n, den)
                    .map_err(|_| d.error("zero denominator in this field"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => match self.ring.var_index(name) {
                Some(i) => Polynomial::var(self.ring, i),
                None => Err(t.error(&format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let e = self.sum()?;
                let close = self.lx.next()?;
                if close.kind != Tok::RParen {
                    return Err(close.error("expected `)`"));
                }
                Ok(e)
            }
            Tok::End => Err(t.error("unexpected end of expression")),
            _ => Err(t.error("expected a number, a variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_monomial_file() {
        let i = parse_ideal_file("ring QQ[x1,x2]\nx1^2\nx1*x2").unwrap();
        assert_eq!(i.generators().len(), 2);
        assert_eq!(i.to_string(), "(x1^2, x1*x2)");
    }

    #[test]
    fn quadric_over_f3() {
        let i = parse_ideal_file("ring F3[x,y]\nx^2 + 2*y^2").unwrap();
        assert_eq!(i.ring().field(), FieldSpec::Prime(3));
        assert_eq!(i.generators()[0].to_string(), "x^2 + 2*y^2");
    }

    #[test]
    fn double_caret_points_at_second() {
        let e = parse_ideal_file("ring QQ[x]\nx^^2").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 3,
                message: "expected a non-negative integer exponent".into()
            }
        );
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("ring QQ[x]\nx*y", 2, 3),
            ("ring QQ[x]\n2x", 2, 2),
            ("ring F2[x]\nx", 1, 6),
            ("ring QQ[x]\n# nothing\n", 3, 1),
            ("ring QQ[x]\n1/0*x", 2, 3),
            ("ring QQ[x]\nx/2", 2, 2),
            ("ring QQ[x]\n(x+1", 2, 5),
            ("ring QQ[x,x]\nx", 1, 11),
        ];
        for (text, line, column) in cases {
            match parse_ideal_file(text) {
                Err(Error::Parse { line: l, column: c, .. }) => assert_eq!((l, c), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn rationals_comments_and_signs() {
        let f = parse_file("# header next\nring QQ[a, b]  # two vars\n-3/6*a^2 - -b + (a - b)^2 # tail\n\n0\n", None).unwrap();
        assert_eq!(f.polynomials.len(), 2);
        assert!(f.polynomials[1].is_zero());
        assert_eq!(f.polynomials[0].to_string(), "1/2*a^2 - 2*a*b + b^2 + b");
        assert_eq!(f.ideal().generators().len(), 1);
    }

    #[test]
    fn field_override() {
        let f = parse_file("ring QQ[x]\n1/2*x", Some(FieldSpec::Prime(5))).unwrap();
        assert_eq!(f.polynomials[0].to_string(), "3*x");
    }

    #[test]
    fn display_round_trips() {
        let r = RingContext::standard(FieldSpec::Rationals, 3).unwrap();
        let f = parse_polynomial(&r, "-(x1 - 2/3*x2)^3 + x3*x1 - 7").unwrap();
        assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
    }
}
