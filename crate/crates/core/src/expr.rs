//! Text form of operator polynomials.
//!
//! Grammar (whitespace insignificant, ASCII only):
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := scalar | atom | '(' expr ')'
//! atom   := ('a' | 'ad') '[' pol ',' mode ']'
//! scalar := NUMBER ('/' NUMBER)? 'i'?  |  'i'
//! NUMBER := digits ('.' digits)?
//! ```
//!
//! `a[r,m]` is the plain ladder symbol with polarization `r` (0..=3) and
//! mode index `m`; `ad[r,m]` is its conjugate. Decimal literals convert to
//! exact rationals by place value. [`format()`] emits canonical text that
//! parses back to the identical polynomial; a Unicode dagger display form is
//! available but never accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{LadderSymbol, OperatorPoly};
use crate::scalar::Scalar;

/// Inputs larger than this are rejected before lexing.
pub const MAX_INPUT_BYTES: usize = 64 * 1024;

#[derive(Debug, Error, PartialEq)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: (usize, usize), message: impl Into<String>) -> Self {
        ParseError {
            line: pos.0,
            col: pos.1,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Syntax tree of one expression.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Sum(Vec<(Sign, ExprAst)>),
    Product(Vec<ExprAst>),
    Scalar(Scalar),
    Atom(LadderSymbol),
}

impl ExprAst {
    /// Lower to a polynomial, preserving symbol order within each product.
    pub fn lower(&self) -> OperatorPoly {
        match self {
            ExprAst::Sum(terms) => {
                let mut acc = OperatorPoly::zero();
                for (sign, t) in terms {
                    let p = t.lower();
                    acc = match sign {
                        Sign::Plus => &acc + &p,
                        Sign::Minus => &acc - &p,
                    };
                }
                acc
            }
            ExprAst::Product(factors) => {
                let mut acc = OperatorPoly::identity();
                for f in factors {
                    acc = acc.multiply(&f.lower());
                }
                acc
            }
            ExprAst::Scalar(s) => OperatorPoly::scalar(s.clone()),
            ExprAst::Atom(sym) => OperatorPoly::from_symbol(*sym),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Number(String),
    Ident(String),
}

struct Lexer {
    tokens: Vec<(Token, (usize, usize))>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let pos = (line, col);
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '/' | '(' | ')' | '[' | ']' | ',' => {
                chars.next();
                col += 1;
                tokens.push((
                    match ch {
                        '+' => Token::Plus,
                        '-' => Token::Minus,
                        '*' => Token::Star,
                        '/' => Token::Slash,
                        '(' => Token::LParen,
                        ')' => Token::RParen,
                        '[' => Token::LBracket,
                        ']' => Token::RBracket,
                        _ => Token::Comma,
                    },
                    pos,
                ));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                let mut seen_dot = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                    } else if c == '.' && !seen_dot {
                        seen_dot = true;
                        s.push(c);
                    } else {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
                if s.ends_with('.') {
                    return Err(ParseError::new(pos, "digits required after decimal point"));
                }
                tokens.push((Token::Number(s), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Ident(s), pos));
            }
            c => {
                return Err(ParseError::new(pos, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(Lexer {
        tokens,
        end: (line, col),
    })
}

struct Parser {
    tokens: Vec<(Token, (usize, usize))>,
    end: (usize, usize),
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> (usize, usize) {
        self.tokens
            .get(self.at)
            .map(|&(_, p)| p)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError::new(
                pos,
                format!("expected {what}, found {t:?}"),
            )),
            None => Err(ParseError::new(
                pos,
                format!("expected {what}, found end of input"),
            )),
        }
    }

    fn parse_expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut terms = Vec::new();
        let first_sign = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                Sign::Minus
            }
            Some(Token::Plus) => {
                self.next();
                Sign::Plus
            }
            _ => Sign::Plus,
        };
        terms.push((first_sign, self.parse_term()?));
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    terms.push((Sign::Plus, self.parse_term()?));
                }
                Some(Token::Minus) => {
                    self.next();
                    terms.push((Sign::Minus, self.parse_term()?));
                }
                _ => break,
            }
        }
        Ok(ExprAst::Sum(terms))
    }

    fn parse_term(&mut self) -> Result<ExprAst, ParseError> {
        let mut factors = vec![self.parse_factor()?];
        while self.peek() == Some(&Token::Star) {
            self.next();
            factors.push(self.parse_factor()?);
        }
        Ok(ExprAst::Product(factors))
    }

    fn parse_factor(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Token::Number(n)) => self.finish_scalar(n, pos),
            Some(Token::Ident(id)) => match id.as_str() {
                "a" | "ad" => self.parse_atom(id == "ad", pos),
                "i" => Ok(ExprAst::Scalar(Scalar::i())),
                other => Err(ParseError::new(
                    pos,
                    format!("unknown identifier '{other}' (expected a, ad, i, or a number)"),
                )),
            },
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::new(pos, format!("unexpected token {t:?}"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }

    /// NUMBER ('/' NUMBER)? 'i'?
    fn finish_scalar(&mut self, first: String, pos: (usize, usize)) -> Result<ExprAst, ParseError> {
        let mut value = number_to_rational(&first, pos)?;
        if self.peek() == Some(&Token::Slash) {
            self.next();
            let dpos = self.pos();
            match self.next() {
                Some(Token::Number(d)) => {
                    let denom = number_to_rational(&d, dpos)?;
                    if denom.is_zero() {
                        return Err(ParseError::new(dpos, "zero denominator"));
                    }
                    value /= denom;
                }
                _ => return Err(ParseError::new(dpos, "expected a number after '/'")),
            }
        }
        let imaginary = matches!(self.peek(), Some(Token::Ident(id)) if id == "i");
        if imaginary {
            self.next();
            Ok(ExprAst::Scalar(Scalar::imaginary(value)))
        } else {
            Ok(ExprAst::Scalar(Scalar::real(value)))
        }
    }

    /// '[' pol ',' mode ']' after `a` or `ad`.
    fn parse_atom(&mut self, dagger: bool, pos: (usize, usize)) -> Result<ExprAst, ParseError> {
        self.expect(Token::LBracket, "'[' after ladder symbol")?;
        let pol_pos = self.pos();
        let pol = self.parse_index(pol_pos)?;
        if pol > 3 {
            return Err(ParseError::new(
                pol_pos,
                format!("polarization index must be 0..=3, got {pol}"),
            ));
        }
        self.expect(Token::Comma, "','")?;
        let mode_pos = self.pos();
        let mode = self.parse_index(mode_pos)?;
        if mode > u32::MAX as u64 {
            return Err(ParseError::new(mode_pos, "mode index too large"));
        }
        self.expect(Token::RBracket, "']'")?;
        let _ = pos;
        Ok(ExprAst::Atom(LadderSymbol::new(
            pol as u8,
            mode as u32,
            dagger,
        )))
    }

    fn parse_index(&mut self, pos: (usize, usize)) -> Result<u64, ParseError> {
        match self.next() {
            Some(Token::Number(n)) if !n.contains('.') => n
                .parse::<u64>()
                .map_err(|_| ParseError::new(pos, "index out of range")),
            _ => Err(ParseError::new(pos, "expected a nonnegative integer index")),
        }
    }
}

/// Exact rational from a digit string with optional decimal point.
fn number_to_rational(s: &str, pos: (usize, usize)) -> Result<BigRational, ParseError> {
    let bad = |_| ParseError::new(pos, format!("malformed number '{s}'"));
    match s.split_once('.') {
        None => {
            let n: BigInt = s.parse().map_err(bad)?;
            Ok(BigRational::from_integer(n))
        }
        Some((int, frac)) => {
            let int_part: BigInt = if int.is_empty() {
                BigInt::zero()
            } else {
                int.parse().map_err(bad)?
            };
            let frac_num: BigInt = frac.parse().map_err(bad)?;
            let denom = BigInt::from(10u32).pow(frac.len() as u32);
            Ok(BigRational::from_integer(int_part) + BigRational::new(frac_num, denom))
        }
    }
}

/// Parse text into its syntax tree.
pub fn parse_ast(text: &str) -> Result<ExprAst, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError::new(
            (1, 1),
            format!(
                "input of {} bytes exceeds the {MAX_INPUT_BYTES}-byte limit",
                text.len()
            ),
        ));
    }
    let lexer = lex(text)?;
    if lexer.tokens.is_empty() {
        return Err(ParseError::new((1, 1), "empty expression"));
    }
    let mut parser = Parser {
        tokens: lexer.tokens,
        end: lexer.end,
        at: 0,
    };
    let ast = parser.parse_expr()?;
    if parser.at != parser.tokens.len() {
        let pos = parser.pos();
        return Err(ParseError::new(pos, "trailing input after expression"));
    }
    Ok(ast)
}

/// Parse text directly into a polynomial.
pub fn parse(text: &str) -> Result<OperatorPoly, ParseError> {
    Ok(parse_ast(text)?.lower())
}

fn rational_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Split a coefficient into a leading sign and a magnitude rendering.
/// Mixed complex coefficients render parenthesized with a positive sign.
fn sign_and_magnitude(c: &Scalar) -> (bool, String) {
    if c.is_real() {
        (c.re().is_negative(), rational_str(&c.re().abs()))
    } else if c.re().is_zero() {
        let mag = c.im().abs();
        let body = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}i", rational_str(&mag))
        };
        (c.im().is_negative(), body)
    } else {
        (false, c.to_string())
    }
}

fn format_word(word: &[LadderSymbol], dagger_text: &str) -> String {
    word.iter()
        .map(|s| {
            format!(
                "{}[{},{}]",
                if s.dagger { dagger_text } else { "a" },
                s.pol,
                s.mode
            )
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn format_with(p: &OperatorPoly, dagger_text: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (word, coeff)) in p.terms().enumerate() {
        let (negative, mag) = sign_and_magnitude(coeff);
        let body = if word.is_empty() {
            mag
        } else if mag == "1" {
            format_word(word, dagger_text)
        } else {
            format!("{}*{}", mag, format_word(word, dagger_text))
        };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Canonical text: terms sorted by word, exact scalars. `parse(format(p))`
/// recovers `p` exactly.
pub fn format(p: &OperatorPoly) -> String {
    format_with(p, "ad")
}

/// Display-only variant with Unicode daggers; not accepted by [`parse`].
pub fn format_unicode(p: &OperatorPoly) -> String {
    format_with(p, "a\u{2020}")
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            write!(f, "{}", format_unicode(self))
        } else {
            write!(f, "{}", format(self))
        }
    }
}
