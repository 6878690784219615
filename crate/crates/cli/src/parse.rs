//! Value parsers for command-line arguments.
//!
//! Scalars are small arithmetic expressions over decimal literals and `pi`:
//! `0.05`, `-1`, `pi`, `pi/2`, `0.5pi`, `2*pi`, `pi*(1-1e-8)`.
//! Juxtaposition multiplies, so `3pi/4` reads as `(3·π)/4`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty value")]
    Empty,
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("unexpected end of `{0}`")]
    UnexpectedEnd(String),
    #[error("`{0}` is not a number")]
    BadNumber(String),
    #[error("parentheses nested deeper than {MAX_DEPTH}")]
    TooDeep,
    #[error("`{0}` does not evaluate to a finite number")]
    NotFinite(String),
    #[error("range `{0}` must have the form `start..end`")]
    BadRange(String),
}

const MAX_DEPTH: usize = 32;

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            depth: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn unexpected(&self) -> ParseError {
        match self.chars.get(self.pos) {
            Some(&(offset, found)) => ParseError::Unexpected { found, offset },
            None => ParseError::UnexpectedEnd(self.src.to_owned()),
        }
    }

    fn expr(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    acc /= self.unary()?;
                }
                Some('p' | 'π' | '(') => acc *= self.atom()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<f64, ParseError> {
        let mut sign = 1.0;
        while let Some(c @ ('-' | '+')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        Ok(sign * self.atom()?)
    }

    fn atom(&mut self) -> Result<f64, ParseError> {
        match self.peek() {
            Some('π') => {
                self.pos += 1;
                Ok(std::f64::consts::PI)
            }
            Some('p') => {
                if self.chars.get(self.pos + 1).map(|&(_, c)| c) == Some('i') {
                    self.pos += 2;
                    Ok(std::f64::consts::PI)
                } else {
                    Err(self.unexpected())
                }
            }
            Some('(') => {
                if self.depth == MAX_DEPTH {
                    return Err(ParseError::TooDeep);
                }
                self.depth += 1;
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            _ => Err(self.unexpected()),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
        };
        digits(self);
        if self.peek() == Some('.') {
            self.pos += 1;
            digits(self);
        }
        if let Some('e' | 'E') = self.peek() {
            let save = self.pos;
            self.pos += 1;
            if let Some('+' | '-') = self.peek() {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                digits(self);
            } else {
                self.pos = save;
            }
        }
        let text: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        text.parse().map_err(|_| ParseError::BadNumber(text))
    }
}

/// Evaluates a scalar expression.
pub fn parse_scalar(text: &str) -> Result<f64, ParseError> {
    let mut p = Parser::new(text);
    if p.chars.is_empty() {
        return Err(ParseError::Empty);
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.unexpected());
    }
    if !v.is_finite() {
        return Err(ParseError::NotFinite(text.to_owned()));
    }
    Ok(v)
}

/// Comma-separated scalars, e.g. `1,0,-1`.
pub fn parse_list(text: &str) -> Result<Vec<f64>, ParseError> {
    text.split(',').map(parse_scalar).collect()
}

/// `start..end` with both ends scalars; a single scalar is the degenerate
/// range `x..x`.
pub fn parse_range(text: &str) -> Result<(f64, f64), ParseError> {
    match text.split_once("..") {
        Some((a, b)) => {
            if a.trim().is_empty() || b.trim().is_empty() {
                return Err(ParseError::BadRange(text.to_owned()));
            }
            Ok((parse_scalar(a)?, parse_scalar(b)?))
        }
        None => {
            let v = parse_scalar(text)?;
            Ok((v, v))
        }
    }
}
