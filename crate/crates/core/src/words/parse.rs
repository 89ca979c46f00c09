use crate::error::{Error, Result};
use crate::group::{GroupParams, Letter};

use super::word::GeneratorWord;

#[derive(Debug)]
enum Item {
    T(i64),
    S(usize),
    Group(Vec<Item>, bool),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() || matches!(c, '·' | '*' | '.') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let Some(digits) = self.digits() else {
            return self.error("expected an integer");
        };
        match digits.parse::<i64>() {
            Ok(v) => Ok(if negative { -v } else { v }),
            Err(_) => Err(Error::Parse {
                position: start,
                message: "integer out of range".into(),
            }),
        }
    }

    fn word(&mut self, depth: usize) -> Result<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None if depth > 0 => return self.error("unclosed '('"),
                None => return Ok(items),
                Some(')') if depth == 0 => return self.error("unmatched ')'"),
                Some(')') => return Ok(items),
                Some('t') => {
                    self.bump();
                    let k = if self.peek() == Some('^') {
                        self.bump();
                        self.integer()?
                    } else {
                        1
                    };
                    items.push(Item::T(k));
                }
                Some('s') => {
                    self.bump();
                    let start = self.pos;
                    let Some(digits) = self.digits() else {
                        return self.error("expected a generator index after 's'");
                    };
                    let i = digits.parse::<usize>().map_err(|_| Error::Parse {
                        position: start,
                        message: "index out of range".into(),
                    })?;
                    items.push(Item::S(i));
                }
                Some('1') => {
                    self.bump();
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        return self.error("unexpected digit");
                    }
                }
                Some('(') => {
                    self.bump();
                    let inner = self.word(depth + 1)?;
                    self.bump(); // ')'
                    let inverse = if self.src[self.pos..].starts_with("^-1") {
                        self.pos += 3;
                        true
                    } else if self.peek() == Some('^') {
                        return self.error("only '^-1' may follow a parenthesized word");
                    } else {
                        false
                    };
                    items.push(Item::Group(inner, inverse));
                }
                Some(c) => return self.error(format!("unexpected character '{c}'")),
            }
        }
    }
}

fn expand(items: &[Item], params: GroupParams, out: &mut Vec<Letter>) -> Result<()> {
    let m = params.m() as i64;
    let n = params.n();
    for item in items {
        match *item {
            Item::T(k) => {
                if n == 0 {
                    return Err(Error::IndexOutOfRange {
                        name: "t",
                        index: 1,
                        max: 0,
                    });
                }
                let r = k.rem_euclid(m);
                if r != 0 {
                    out.push(Letter::t(r as usize));
                }
            }
            Item::S(i) => {
                if i == 0 || i >= n {
                    return Err(Error::IndexOutOfRange {
                        name: "s",
                        index: i,
                        max: n.saturating_sub(1),
                    });
                }
                out.push(Letter::s(i));
            }
            Item::Group(ref inner, inverse) => {
                let mut sub = Vec::new();
                expand(inner, params, &mut sub)?;
                if inverse {
                    out.extend(sub.iter().rev().map(|l| l.inverse(params.m())));
                } else {
                    out.extend(sub);
                }
            }
        }
    }
    Ok(())
}

/// Parses `word := item*` with `item := "t" ["^" int] | "s" int | "(" word ")" ["^-1"]`.
///
/// Items are separated by whitespace or by `·`, `*`, `.`; a lone `1` is the
/// empty word. Powers of `t` are reduced mod `m` and inverses are expanded.
pub fn parse(text: &str, params: GroupParams) -> Result<GeneratorWord> {
    let mut parser = Parser { src: text, pos: 0 };
    let items = parser.word(0)?;
    let mut letters = Vec::new();
    expand(&items, params, &mut letters)?;
    Ok(GeneratorWord::from_letters_unchecked(params, letters))
}
