use std::fmt;

use crate::error::{Error, Result};
use crate::group::{evaluate_letters, format_letters, GroupElement, GroupParams, Letter, Level};

/// A word in the generators `t, s_1, …, s_{n−1}` of `G(m,1,n)`.
///
/// Letters are stored reduced: every `t`-power lies in `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    params: GroupParams,
    letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn empty(params: GroupParams) -> Self {
        GeneratorWord {
            params,
            letters: Vec::new(),
        }
    }

    /// Validates indices and reduces `t`-powers; `t^0` letters are dropped.
    pub fn from_letters(params: GroupParams, letters: &[Letter]) -> Result<Self> {
        let m = params.m();
        let n = params.n();
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            match l {
                Letter::T(_) if n == 0 => {
                    return Err(Error::IndexOutOfRange {
                        name: "t",
                        index: 1,
                        max: 0,
                    })
                }
                Letter::T(k) => {
                    let k = k as usize % m;
                    if k != 0 {
                        out.push(Letter::t(k));
                    }
                }
                Letter::S(i) if i == 0 || i as usize >= n => {
                    return Err(Error::IndexOutOfRange {
                        name: "s",
                        index: i as usize,
                        max: n.saturating_sub(1),
                    })
                }
                s => out.push(s),
            }
        }
        Ok(GeneratorWord {
            params,
            letters: out,
        })
    }

    pub(crate) fn from_letters_unchecked(params: GroupParams, letters: Vec<Letter>) -> Self {
        GeneratorWord { params, letters }
    }

    pub fn parse(text: &str, params: GroupParams) -> Result<Self> {
        super::parse(text, params)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> GroupElement {
        evaluate_letters(self.params, &self.letters)
    }

    pub fn inverse(&self) -> GeneratorWord {
        let m = self.params.m();
        GeneratorWord {
            params: self.params,
            letters: self.letters.iter().rev().map(|l| l.inverse(m)).collect(),
        }
    }

    pub fn concat(&self, other: &GeneratorWord) -> Result<GeneratorWord> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch {
                left: self.params.to_string(),
                right: other.params.to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GeneratorWord {
            params: self.params,
            letters,
        })
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// `ψ_{kj}^{(a)} = s_a⋯s_1 t^k s_1⋯s_j`, the top tail of `G(m,1,a+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PsiWord {
    pub a: usize,
    pub k: usize,
    pub j: usize,
}

impl PsiWord {
    pub fn new(params: GroupParams, a: usize, k: usize, j: usize) -> Result<Self> {
        if a + 1 > params.n() {
            return Err(Error::IndexOutOfRange {
                name: "a",
                index: a,
                max: params.n().saturating_sub(1),
            });
        }
        if k >= params.m() {
            return Err(Error::IndexOutOfRange {
                name: "k",
                index: k,
                max: params.m() - 1,
            });
        }
        if j > a {
            return Err(Error::IndexOutOfRange {
                name: "j",
                index: j,
                max: a,
            });
        }
        Ok(PsiWord { a, k, j })
    }

    /// The literal letters, `t^0` omitted but `s_1 s_1` kept.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = (1..=self.a).rev().map(Letter::s).collect();
        if self.k > 0 {
            out.push(Letter::t(self.k));
        }
        out.extend((1..=self.j).map(Letter::s));
        out
    }

    /// The normal-form level this word reduces to (level `a+1`).
    /// The normal-form level this word reduces to (level `a+1`).
    pub fn level(&self) -> Level {
        Level {
            alpha: self.k as u8,
            j: self.j as u8,
        }
    }
}
