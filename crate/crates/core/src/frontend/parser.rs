//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Coefficients are exact; there are no floating-point literals.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{default_vars, Poly, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
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
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// Splits `text` into tokens tagged with their character offset.
fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E')
                && (chars[i] == '.' || chars.get(i + 1).is_some_and(|c| c.is_ascii_digit() || *c == '-')) {
                    return Err(syntax(i, "floating-point literals are not supported; use p/q"));
                }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => return Err(syntax(i, "floating-point literals are not supported; use p/q")),
            other => return Err(syntax(i, format!("unexpected character '{other}'"))),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        syntax(self.pos(), format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = match self.bump() {
            Tok::Int(v) => v,
            _ => return Err(syntax(pos, "exponent must be a positive integer literal")),
        };
        if e.is_zero() {
            return Err(syntax(pos, "exponent must be a positive integer"));
        }
        let e = u32::try_from(&e)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if *self.peek() == Tok::Caret {
            return Err(syntax(self.pos(), "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let mut value = Rational::from_integer(num);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    let den = match self.bump() {
                        Tok::Int(d) => d,
                        _ => {
                            return Err(syntax(dpos, "a denominator must be an integer literal"))
                        }
                    };
                    if den.is_zero() {
                        return Err(Error::ZeroDenominator { pos: dpos });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Poly::constant(n, value))
            }
            Tok::Ident(name) => {
                self.bump();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(Error::UnknownIdentifier { name, pos })?;
                Ok(Poly::var(n, i))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Slash => Err(syntax(pos, "'/' is only allowed between integer literals")),
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }
}

/// An expression together with the variables it is read over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySource {
    pub text: String,
    pub variables: Vec<String>,
}

impl PolySource {
    pub fn new(text: impl Into<String>, variables: Vec<String>) -> Self {
        PolySource {
            text: text.into(),
            variables,
        }
    }

    /// Reads `text` over the default names for `n` variables.
    pub fn with_nvars(text: impl Into<String>, n: usize) -> Self {
        Self::new(text, default_vars(n))
    }

    /// Reads `text` over the smallest default variable list covering it.
    pub fn inferred(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        let variables = infer_variables(&[&text])?;
        Ok(Self::new(text, variables))
    }
}

fn indexed(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Smallest default variable list (`x,y,z,w` or `x1..xn`) containing every
/// identifier in `texts`.
pub fn infer_variables(texts: &[&str]) -> Result<Vec<String>> {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    let mut idents = Vec::new();
    for text in texts {
        for (pos, tok) in tokenize(text)? {
            if let Tok::Ident(name) = tok {
                idents.push((name, pos));
            }
        }
    }
    let Some((first, _)) = idents.first() else {
        return Ok(default_vars(1));
    };
    if indexed(first).is_some() {
        let mut n = 0;
        for (name, pos) in &idents {
            let i = indexed(name).ok_or_else(|| Error::UnknownIdentifier {
                name: name.clone(),
                pos: *pos,
            })?;
            n = n.max(i);
        }
        return Ok((1..=n).map(|i| format!("x{i}")).collect());
    }
    let mut n = 0;
    for (name, pos) in &idents {
        let i = LETTERS.iter().position(|l| l == name).ok_or_else(|| {
            Error::UnknownIdentifier {
                name: name.clone(),
                pos: *pos,
            }
        })?;
        n = n.max(i + 1);
    }
    Ok(LETTERS[..n].iter().map(|s| s.to_string()).collect())
}

pub fn parse_poly(src: &PolySource) -> Result<Poly> {
    let mut p = Parser {
        toks: tokenize(&src.text)?,
        at: 0,
        vars: &src.variables,
    };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

/// Parses a constant expression such as `-1/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p = parse_poly(&PolySource::new(text, Vec::new()))?;
    Ok(p.constant_term())
}
