//! Text grammar for free polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] product (('+'|'-') product)*
//! product := factor (['*'] factor)*
//! factor  := atom ['^' integer]
//! atom    := number | 'i' | letter | '(' expr ')'
//! number  := digits ['/' digits] ['i']
//! letter  := ('x'|'y'|'z'|'w'|'h'|'k') digits
//! ```
//!
//! Whitespace is insignificant. `(x)` and `⊗` are reserved for the tensor
//! separator of bipartite polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::map::FreePolyMap;
use super::poly::FreePoly;
use super::word::{Kind, Letter};
use crate::coeff::Coefficient;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(Coefficient),
    Letter(Letter),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Tensor,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, column: tc });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        match c {
            '+' => push(&mut out, Tok::Plus),
            '-' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            '^' => push(&mut out, Tok::Caret),
            ')' => push(&mut out, Tok::RParen),
            '⊗' => push(&mut out, Tok::Tensor),
            '(' => {
                // `(x)` with no index is the tensor separator
                let rest: String = chars[i..].iter().take(8).filter(|c| !c.is_whitespace()).collect();
                if rest.starts_with("(x)") {
                    let mut j = i + 1;
                    while chars[j] != ')' {
                        j += 1;
                    }
                    col += j - i;
                    i = j;
                    push(&mut out, Tok::Tensor);
                } else {
                    push(&mut out, Tok::LParen);
                }
            }
            'i' => push(&mut out, Tok::Num(Coefficient::i())),
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let num: BigInt = chars[i..j].iter().collect::<String>().parse().expect("digits");
                let mut value = BigRational::from_integer(num);
                if j < chars.len() && chars[j] == '/' {
                    let k0 = j + 1;
                    let mut k = k0;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == k0 {
                        return Err(ParseError::new("expected denominator after `/`", tl, tc + (j - i) + 1));
                    }
                    let den: BigInt = chars[k0..k].iter().collect::<String>().parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError::new("zero denominator", tl, tc));
                    }
                    value /= BigRational::from_integer(den);
                    j = k;
                }
                let coeff = if j < chars.len() && chars[j] == 'i' {
                    j += 1;
                    Coefficient::new(BigRational::zero(), value)
                } else {
                    Coefficient::from_rational(value)
                };
                push(&mut out, Tok::Num(coeff));
                col += j - i - 1;
                i = j - 1;
            }
            k if Kind::from_symbol(k).is_some() => {
                let kind = Kind::from_symbol(k).expect("checked");
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(ParseError::new(format!("letter `{k}` needs an index"), tl, tc));
                }
                let idx: usize = chars[i + 1..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ParseError::new("letter index too large", tl, tc))?;
                if idx == 0 {
                    return Err(ParseError::new(format!("letter indices start at 1 (`{k}0`)"), tl, tc));
                }
                push(&mut out, Tok::Letter(Letter::new(kind, idx)));
                col += j - i - 1;
                i = j - 1;
            }
            other => return Err(ParseError::new(format!("unexpected character `{other}`"), tl, tc)),
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        let toks = tokenize(src)?;
        let lines: Vec<&str> = src.split('\n').collect();
        let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Ok(Parser { toks, pos: 0, end })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn error_here(&self, msg: impl Into<String>) -> ParseError {
        match self.toks.get(self.pos) {
            Some(t) => ParseError::new(msg, t.line, t.column),
            None => ParseError::new(msg, self.end.0, self.end.1),
        }
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error_here("unexpected trailing input"))
        }
    }

    /// Optional leading sign; returns `true` for `-`.
    pub(crate) fn sign(&mut self) -> bool {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    pub(crate) fn expr(&mut self) -> Result<FreePoly, ParseError> {
        let neg = self.sign();
        let first = self.product()?;
        let mut acc = if neg { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    pub(crate) fn product(&mut self) -> Result<FreePoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Num(_) | Tok::Letter(_) | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FreePoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exponent = match self.bump() {
                Some(Tok::Num(c)) if c.is_real() && c.re().is_integer() => c.re().to_integer().to_u32(),
                _ => None,
            };
            return match exponent {
                Some(k) => Ok(base.pow(k)),
                None => Err(self.error_prev("expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn error_prev(&self, msg: &str) -> ParseError {
        match self.toks.get(self.pos.saturating_sub(1)) {
            Some(t) => ParseError::new(msg, t.line, t.column),
            None => ParseError::new(msg, self.end.0, self.end.1),
        }
    }

    fn atom(&mut self) -> Result<FreePoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                Ok(FreePoly::constant(c))
            }
            Some(Tok::Letter(l)) => {
                self.pos += 1;
                Ok(FreePoly::letter(l))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.error_prev("expected `)`")),
                }
            }
            Some(_) => Err(self.error_here("expected a number, letter or `(`")),
            None => Err(self.error_here("unexpected end of input")),
        }
    }
}

/// Parses one polynomial.
pub fn parse_poly(src: &str) -> Result<FreePoly, ParseError> {
    let mut p = Parser::new(src)?;
    if p.at_end() {
        return Err(p.error_here("empty polynomial"));
    }
    let poly = p.expr()?;
    p.expect_end()?;
    Ok(poly)
}

/// Parses a tuple of polynomials given one string per component.
pub fn parse_map<S: AsRef<str>>(components: &[S]) -> Result<FreePolyMap, ParseError> {
    components
        .iter()
        .map(|s| parse_poly(s.as_ref()))
        .collect::<Result<Vec<_>, _>>()
        .map(FreePolyMap::new)
}

impl std::str::FromStr for FreePoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}
