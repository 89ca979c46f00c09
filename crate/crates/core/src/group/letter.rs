use std::fmt;

use super::element::{Generator, GroupElement};
use super::params::GroupParams;

/// A letter of a generator word: `t^k` with `1 ≤ k < m`, or `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    T(u8),
    S(u8),
}

impl Letter {
    pub fn s(i: usize) -> Letter {
        Letter::S(i as u8)
    }

    pub fn t(k: usize) -> Letter {
        Letter::T(k as u8)
    }

    pub fn inverse(self, m: usize) -> Letter {
        match self {
            Letter::T(k) => Letter::T(((m - k as usize % m) % m) as u8),
            s => s,
        }
    }

    /// Highest generator index the letter involves; `t` counts as level 0.
    pub fn index(self) -> usize {
        match self {
            Letter::T(_) => 0,
            Letter::S(i) => i as usize,
        }
    }

    /// Group element of the letter. Indices must already be in range.
    pub fn to_element(self, params: GroupParams) -> GroupElement {
        match self {
            Letter::T(k) => GroupElement::t_power(params, k as usize),
            Letter::S(i) => GroupElement::generator(params, Generator::S(i as usize)),
        }
        .expect("letter index checked on construction")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::T(1) => write!(f, "t"),
            Letter::T(k) => write!(f, "t^{k}"),
            Letter::S(i) => write!(f, "s{i}"),
        }
    }
}

/// Left-to-right product of the letters.
pub fn evaluate_letters(params: GroupParams, letters: &[Letter]) -> GroupElement {
    letters
        .iter()
        .fold(GroupElement::identity(params), |acc, l| {
            acc.compose(&l.to_element(params))
        })
}

/// Space separated letters, `1` for the empty word.
pub fn format_letters(letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
