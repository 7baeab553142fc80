// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

//! Small grammar for real-valued parameters and parameter grids.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*     juxtaposition multiplies: `3pi/8`
//! unary  := ('+' | '-') unary | atom
//! atom   := number | 'pi' | 'π' | '(' expr ')'
//! grid   := expr ':' expr ':' count               inclusive, evenly spaced
//!         | expr (',' expr)*
//! ```

use crate::error::{Error, Result};

const MAX_DEPTH: usize = 32;
const MAX_GRID_POINTS: usize = 100_000;
const MAX_INPUT_LEN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Num(f64),
    Pi,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            'π' => {
                out.push(Token::Pi);
                i += 1;
            }
            'p' | 'P' => {
                if matches!(chars.get(i + 1), Some('i') | Some('I')) {
                    out.push(Token::Pi);
                    i += 2;
                } else {
                    return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
                }
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // Optional exponent, only when followed by a digit (after an optional sign).
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let v: f64 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number `{text}`")))?;
                out.push(Token::Num(v));
            }
            other => return Err(Error::Parse(format!("unexpected `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse("expression nested too deeply".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<f64> {
        self.enter()?;
        let mut acc = self.term()?;
        while let Some(t @ (Token::Plus | Token::Minus)) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if t == Token::Plus { acc + rhs } else { acc - rhs };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc *= self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc /= self.unary()?;
                }
                Some(Token::Pi | Token::LParen | Token::Num(_)) => acc *= self.atom()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                self.enter()?;
                let v = -self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            Some(Token::Plus) => {
                self.bump();
                self.enter()?;
                let v = self.unary()?;
                self.depth -= 1;
                Ok(v)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64> {
        match self.bump() {
            Some(Token::Num(v)) => Ok(v),
            Some(Token::Pi) => Ok(std::f64::consts::PI),
            Some(Token::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(v),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Evaluates a real expression such as `3pi/8`, `0.7`, or `-(pi - 0.5)`.
pub fn parse_real(s: &str) -> Result<f64> {
    if s.len() > MAX_INPUT_LEN {
        return Err(Error::Parse("expression too long".into()));
    }
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    if !v.is_finite() {
        return Err(Error::Parse(format!("`{s}` is not a finite number")));
    }
    Ok(v)
}

/// Evenly spaced inclusive grid, `count` points from `start` to `stop`.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|k| if k + 1 == count { stop } else { start + step * k as f64 })
                .collect()
        }
    }
}

/// Parses `start:stop:count` or a comma-separated list of expressions.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    if s.len() > MAX_INPUT_LEN {
        return Err(Error::Parse("grid specification too long".into()));
    }
    let s = s.trim();
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "range grid must be start:stop:count, got `{s}`"
            )));
        }
        let start = parse_real(parts[0])?;
        let stop = parse_real(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad grid count `{}`", parts[2])))?;
        if count == 0 || count > MAX_GRID_POINTS {
            return Err(Error::Parse(format!(
                "grid count must be between 1 and {MAX_GRID_POINTS}"
            )));
        }
        Ok(linspace(start, stop, count))
    } else {
        let values = s.split(',').map(parse_real).collect::<Result<Vec<_>>>()?;
        if values.len() > MAX_GRID_POINTS {
            return Err(Error::Parse("too many grid points".into()));
        }
        Ok(values)
    }
}
