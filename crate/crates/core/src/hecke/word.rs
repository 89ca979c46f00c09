use std::fmt;

use super::basis::HeckeGen;
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeckeLetter {
    Gen(HeckeGen),
    Inv(HeckeGen),
}

impl HeckeLetter {
    pub fn generator(self) -> HeckeGen {
        match self {
            HeckeLetter::Gen(x) | HeckeLetter::Inv(x) => x,
        }
    }

    pub fn inverse(self) -> HeckeLetter {
        match self {
            HeckeLetter::Gen(x) => HeckeLetter::Inv(x),
            HeckeLetter::Inv(x) => HeckeLetter::Gen(x),
        }
    }
}

impl fmt::Display for HeckeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeLetter::Gen(x) => write!(f, "{x}"),
            HeckeLetter::Inv(x) => write!(f, "{x}^-1"),
        }
    }
}

/// Parses words such as `σ1 τ σ1^-1`, `s2 t^3`, `(τ σ₁)^-1` or `1`.
/// `τ`/`t` and `σ`/`s` are interchangeable, indices may be subscripts, and
/// separators are whitespace, `·`, `*` or `.`.
pub fn parse_hecke_word(input: &str) -> Result<Vec<HeckeLetter>> {
    let mut p = Parser {
        chars: input.char_indices().collect(),
        pos: 0,
        len: input.len(),
    };
    let word = p.word()?;
    p.skip_separators();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(word)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(self.len)
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || matches!(c, '·' | '*' | '.')) {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Vec<HeckeLetter>> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(')') => return Ok(out),
                _ => out.extend(self.item()?),
            }
        }
    }

    fn item(&mut self) -> Result<Vec<HeckeLetter>> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some('1') => {
                self.pos += 1;
                Vec::new()
            }
            Some('t' | 'τ' | 'T') => {
                self.pos += 1;
                vec![HeckeLetter::Gen(HeckeGen::Tau)]
            }
            Some('s' | 'σ' | 'S') => {
                self.pos += 1;
                let i = self.index()?;
                vec![HeckeLetter::Gen(HeckeGen::Sigma(i))]
            }
            _ => return Err(self.error("expected a generator")),
        };
        let exp = self.exponent()?;
        let unit: Vec<HeckeLetter> = if exp < 0 {
            base.iter().rev().map(|l| l.inverse()).collect()
        } else {
            base
        };
        Ok(unit.repeat(exp.unsigned_abs() as usize))
    }

    fn index(&mut self) -> Result<usize> {
        self.pos += usize::from(self.peek() == Some('_'));
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            let d = match c {
                '0'..='9' => c,
                '₀'..='₉' => char::from(b'0' + (c as u32 - '₀' as u32) as u8),
                _ => break,
            };
            digits.push(d);
            self.pos += 1;
        }
        digits.parse().map_err(|_| self.error("expected an index"))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        self.pos += usize::from(neg);
        let mut digits = String::new();
        while let Some(c @ '0'..='9') = self.peek() {
            digits.push(c);
            self.pos += 1;
        }
        let k: i64 = digits.parse().map_err(|_| self.error("expected an exponent"))?;
        Ok(if neg { -k } else { k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use HeckeGen::*;
    use HeckeLetter::*;

    #[test]
    fn parses_mixed_spellings() {
        assert_eq!(
            parse_hecke_word("σ₁ τ s1^-1").unwrap(),
            vec![Gen(Sigma(1)), Gen(Tau), Inv(Sigma(1))]
        );
        assert_eq!(parse_hecke_word("1").unwrap(), vec![]);
        assert_eq!(parse_hecke_word("t^2").unwrap(), vec![Gen(Tau), Gen(Tau)]);
    }

    #[test]
    fn inverts_groups() {
        assert_eq!(
            parse_hecke_word("(τ σ2)^-1").unwrap(),
            vec![Inv(Sigma(2)), Inv(Tau)]
        );
    }

    #[test]
    fn reports_position() {
        match parse_hecke_word("σ1 x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_hecke_word("(σ1").is_err());
        assert!(parse_hecke_word("σ").is_err());
    }
}
