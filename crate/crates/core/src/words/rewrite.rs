use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::group::{format_letters, GroupParams, Letter, NormalForm};

use super::rules::RuleTable;
use super::word::GeneratorWord;

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Which redex to rewrite next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost redex. At most one rule matches at a position, so this is
    /// also leftmost-longest and lowest level first.
    Leftmost,
    Rightmost,
    /// Uniform choice among all redexes, from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewritten {
    pub word: GeneratorWord,
    pub steps: usize,
}

/// Rewrites words of one `G(m,1,n)` with a shared rule table.
#[derive(Clone, Debug)]
pub struct Rewriter {
    table: Arc<RuleTable>,
    budget: usize,
}

/// Length of the rule left-hand side starting at `p`, if any.
///
/// Matches, in one pass: a descending run `s_a⋯s_b`, then (when `b = 1`) an
/// optional `t^α` followed by an ascending run `s_1⋯s_j`, then the letter
/// that decides which family applies.
fn redex_at(w: &[Letter], p: usize) -> Option<usize> {
    let next = w.get(p + 1).copied();
    match w[p] {
        Letter::T(_) => matches!(next, Some(Letter::T(_))).then_some(2),
        Letter::S(top) => {
            let a = top as usize;
            match next {
                Some(Letter::S(b)) if b == top || a >= b as usize + 2 => return Some(2),
                Some(Letter::T(_)) if a >= 2 => return Some(2),
                _ => {}
            }
            let mut q = p;
            let mut low = a;
            while low >= 2 && w.get(q + 1) == Some(&Letter::s(low - 1)) {
                q += 1;
                low -= 1;
            }
            if q > p && w.get(q + 1) == Some(&Letter::s(a)) {
                return Some(q + 2 - p);
            }
            if low != 1 || !matches!(w.get(q + 1), Some(Letter::T(_))) {
                return None;
            }
            let mut r = q + 2;
            let mut j = 0;
            while w.get(r) == Some(&Letter::s(j + 1)) {
                r += 1;
                j += 1;
            }
            if a == 1 {
                return (j == 1 && matches!(w.get(r), Some(Letter::T(_)))).then_some(4);
            }
            match w.get(r) {
                Some(&Letter::S(i)) if j <= a => {
                    let i = i as usize;
                    (i == a && j + 2 <= a || i < j).then_some(r + 1 - p)
                }
                _ => None,
            }
        }
    }
}

impl Rewriter {
    pub fn new(params: GroupParams) -> Result<Self> {
        Ok(Rewriter {
            table: RuleTable::shared(params)?,
            budget: DEFAULT_STEP_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn params(&self) -> GroupParams {
        self.table.params()
    }

    pub fn table(&self) -> &RuleTable {
        &self.table
    }

    /// Every `(position, length)` where a rule applies.
    pub fn redexes(&self, letters: &[Letter]) -> Vec<(usize, usize)> {
        (0..letters.len())
            .filter_map(|p| redex_at(letters, p).map(|len| (p, len)))
            .collect()
    }

    fn apply(&self, w: &mut Vec<Letter>, p: usize, len: usize) {
        let (_, rule) = self
            .table
            .lookup(&w[p..p + len])
            .unwrap_or_else(|| panic!("matched `{}` is not a registered rule", format_letters(&w[p..p + len])));
        w.splice(p..p + len, rule.rhs.iter().copied());
    }

    pub fn rewrite(&self, word: &GeneratorWord) -> Result<GeneratorWord> {
        self.rewrite_with(word, Strategy::Leftmost).map(|r| r.word)
    }

    pub fn rewrite_with(&self, word: &GeneratorWord, strategy: Strategy) -> Result<Rewritten> {
        if word.params() != self.params() {
            return Err(Error::ParamsMismatch {
                left: word.params().to_string(),
                right: self.params().to_string(),
            });
        }
        let mut w = word.letters().to_vec();
        let mut steps = 0;
        // no left-hand side is longer than this, so after a rewrite at `p`
        // nothing left of `p − reach` can have changed
        let reach = 2 * self.params().n() + 2;
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha20Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut start = 0;
        loop {
            let found = match strategy {
                Strategy::Leftmost => (start..w.len()).find_map(|p| redex_at(&w, p).map(|l| (p, l))),
                Strategy::Rightmost => (0..w.len()).rev().find_map(|p| redex_at(&w, p).map(|l| (p, l))),
                Strategy::Random(_) => {
                    let all = self.redexes(&w);
                    if all.is_empty() {
                        None
                    } else {
                        let rng = rng.as_mut().expect("seeded");
                        Some(all[rng.random_range(0..all.len())])
                    }
                }
            };
            let Some((p, len)) = found else { break };
            if steps == self.budget {
                return Err(Error::RewriteBudget {
                    steps,
                    word: word.to_string(),
                });
            }
            self.apply(&mut w, p, len);
            steps += 1;
            start = p.saturating_sub(reach);
        }
        Ok(Rewritten {
            word: GeneratorWord::from_letters_unchecked(self.params(), w),
            steps,
        })
    }

    /// Rewrites and reads the irreducible word back as a normal form.
    pub fn normal_form(&self, word: &GeneratorWord) -> Result<NormalForm> {
        let out = self.rewrite(word)?;
        NormalForm::from_letters(self.params(), out.letters()).ok_or_else(|| {
            Error::RouteMismatch(format!("irreducible word `{out}` is not in normal shape"))
        })
    }
}

/// Rewrites `word` to its irreducible form with the leftmost strategy.
pub fn rewrite_to_normal(word: &GeneratorWord) -> Result<GeneratorWord> {
    Rewriter::new(word.params())?.rewrite(word)
}
