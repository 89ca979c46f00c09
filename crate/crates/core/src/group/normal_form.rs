use std::fmt;

use serde::Serialize;

use super::element::GroupElement;
use super::letter::{evaluate_letters, format_letters, Letter};
use super::params::GroupParams;

/// One level of the tail normal form.
///
/// At level `r` the pair `(alpha, j)` stands for the tail word
/// `s_{r−1}⋯s_1 t^alpha s_1⋯s_j` when `alpha > 0`, and for its free reduction
/// `s_{r−1}⋯s_{j+1}` when `alpha = 0`. Level 1 only carries `alpha` (`j = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Level {
    pub alpha: u8,
    pub j: u8,
}

impl Level {
    /// The empty tail at level `r`.
    pub fn empty(r: usize) -> Level {
        Level {
            alpha: 0,
            j: (r - 1) as u8,
        }
    }
}

/// Letters of the tail `(alpha, j)` at level `r`.
pub fn tail_letters(r: usize, level: Level) -> Vec<Letter> {
    let j = level.j as usize;
    if level.alpha == 0 {
        ((j + 1)..r).rev().map(Letter::s).collect()
    } else {
        let mut out: Vec<Letter> = (1..r).rev().map(Letter::s).collect();
        out.push(Letter::T(level.alpha));
        out.extend((1..=j).map(Letter::s));
        out
    }
}

/// The unique factorization `x = T_1 T_2 ⋯ T_n` of a group element into
/// level tails, `T_r` being a tail at level `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    params: GroupParams,
    levels: Vec<Level>,
}

impl NormalForm {
    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// `levels()[r-1]` is level `r`.
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, r: usize) -> Level {
        self.levels[r - 1]
    }

    pub fn to_letters(&self) -> Vec<Letter> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, &level)| tail_letters(i + 1, level))
            .collect()
    }

    pub fn evaluate(&self) -> GroupElement {
        evaluate_letters(self.params, &self.to_letters())
    }

    /// Reads a word that already has normal shape back into levels; `None`
    /// when the word is not a concatenation of level tails.
    pub fn from_letters(params: GroupParams, letters: &[Letter]) -> Option<NormalForm> {
        let n = params.n();
        let mut levels = vec![Level { alpha: 0, j: 0 }; n];
        let mut rest = letters;
        for r in (2..=n).rev() {
            let top = Letter::s(r - 1);
            match rest.iter().position(|&l| l == top) {
                None => levels[r - 1] = Level::empty(r),
                Some(start) => {
                    levels[r - 1] = parse_tail(r, &rest[start..], params.m())?;
                    rest = &rest[..start];
                }
            }
        }
        if n == 0 {
            return rest.is_empty().then_some(NormalForm { params, levels });
        }
        levels[0] = match rest {
            [] => Level { alpha: 0, j: 0 },
            [Letter::T(k)] if (1..params.m()).contains(&(*k as usize)) => Level { alpha: *k, j: 0 },
            _ => return None,
        };
        Some(NormalForm { params, levels })
    }
}

fn parse_tail(r: usize, tail: &[Letter], m: usize) -> Option<Level> {
    let mut pos = 0;
    let mut expect = r - 1;
    // descending run s_{r-1} … s_b
    while pos < tail.len() && expect >= 1 && tail[pos] == Letter::s(expect) {
        pos += 1;
        expect -= 1;
    }
    let lowest = expect + 1;
    if pos == tail.len() {
        return Some(Level {
            alpha: 0,
            j: (lowest - 1) as u8,
        });
    }
    if lowest != 1 {
        return None;
    }
    let alpha = match tail[pos] {
        Letter::T(k) if (1..m).contains(&(k as usize)) => k,
        _ => return None,
    };
    pos += 1;
    let mut j = 0;
    while pos < tail.len() && j + 1 < r && tail[pos] == Letter::s(j + 1) {
        pos += 1;
        j += 1;
    }
    (pos == tail.len()).then_some(Level { alpha, j: j as u8 })
}

/// Levels separated by ` · `; empty levels are skipped and the identity
/// prints as `1`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, &level)| tail_letters(i + 1, level))
            .filter(|t| !t.is_empty())
            .map(|t| format_letters(&t))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" · "))
        }
    }
}

/// Per-level lookup from the coset invariant to the tail that realizes it.
#[derive(Clone, Debug)]
pub struct NormalFormer {
    params: GroupParams,
    // tables[r-1][pos * m + rot] = (level, inverse of the tail element)
    tables: Vec<Vec<Option<(Level, GroupElement)>>>,
}

impl NormalFormer {
    pub fn new(params: GroupParams) -> Self {
        let m = params.m();
        let n = params.n();
        let mut tables = Vec::with_capacity(n);
        for r in 1..=n {
            let mut table = vec![None; r * m];
            for alpha in 0..m {
                for j in 0..r {
                    let level = Level {
                        alpha: alpha as u8,
                        j: j as u8,
                    };
                    let tail = evaluate_letters(params, &tail_letters(r, level));
                    let pos = tail.position_of(r - 1);
                    let rot = tail.rotations()[pos] as usize;
                    let slot = &mut table[pos * m + rot];
                    assert!(slot.is_none(), "two tails share a coset at level {r}");
                    *slot = Some((level, tail.inverse()));
                }
            }
            tables.push(table);
        }
        NormalFormer { params, tables }
    }

    /// Peels one tail per level: the position of card `r` and its rotation are
    /// unchanged by left multiplication with `G(m,1,r−1)`, so they pick the
    /// tail; dividing it off on the right leaves an element of `G(m,1,r−1)`.
    pub fn normal_form(&self, g: &GroupElement) -> NormalForm {
        assert_eq!(g.params(), self.params, "element from another group");
        let m = self.params.m();
        let n = self.params.n();
        let mut levels = vec![Level { alpha: 0, j: 0 }; n];
        let mut w = g.clone();
        for r in (1..=n).rev() {
            let pos = w.position_of(r - 1);
            let rot = w.rotations()[pos] as usize;
            let (level, tail_inv) = self.tables[r - 1][pos * m + rot]
                .as_ref()
                .expect("every coset has a tail");
            levels[r - 1] = *level;
            w = w.compose(tail_inv);
            debug_assert!(w.images()[r - 1] as usize == r - 1 && w.rotations()[r - 1] == 0);
        }
        debug_assert!(w.is_identity());
        NormalForm {
            params: self.params,
            levels,
        }
    }
}

pub fn normal_form(g: &GroupElement) -> NormalForm {
    NormalFormer::new(g.params()).normal_form(g)
}
