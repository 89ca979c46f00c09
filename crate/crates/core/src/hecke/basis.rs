use std::collections::BTreeMap;
use std::fmt;

use crate::group::{evaluate_letters, tail_letters, GroupElement, GroupParams, Letter, Level};

/// A generator of `H(2,1,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeckeGen {
    Tau,
    Sigma(usize),
}

impl HeckeGen {
    pub(crate) fn slot(self) -> usize {
        match self {
            HeckeGen::Tau => 0,
            HeckeGen::Sigma(i) => i,
        }
    }
}

impl fmt::Display for HeckeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeGen::Tau => write!(f, "τ"),
            HeckeGen::Sigma(i) => write!(f, "σ{i}"),
        }
    }
}

/// The normal-form basis of `H(2,1,n)`: one word `T_1 T_2 ⋯ T_n` per element
/// of `G(2,1,n)`, level `r` contributing `σ_{r−1}⋯σ_{j+1}` or
/// `σ_{r−1}⋯σ_1 τ σ_1⋯σ_j`.
///
/// Index order is mixed radix: level `r` has digit `α·r + j` in base `2r`,
/// level 1 being the least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeBasis {
    n: usize,
    strides: Vec<usize>,
    dim: usize,
}

impl HeckeBasis {
    pub fn new(n: usize) -> Self {
        let mut strides = Vec::with_capacity(n);
        let mut dim = 1;
        for r in 1..=n {
            strides.push(dim);
            dim *= 2 * r;
        }
        HeckeBasis { n, strides, dim }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n·n!`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stride of level `r` in the index.
    pub fn stride(&self, r: usize) -> usize {
        self.strides[r - 1]
    }

    pub fn index(&self, levels: &[Level]) -> usize {
        levels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.alpha as usize * (i + 1) + l.j as usize) * self.strides[i])
            .sum()
    }

    pub fn levels(&self, mut index: usize) -> Vec<Level> {
        let mut out = Vec::with_capacity(self.n);
        for r in 1..=self.n {
            let d = index % (2 * r);
            index /= 2 * r;
            out.push(Level {
                alpha: (d / r) as u8,
                j: (d % r) as u8,
            });
        }
        out
    }

    /// Index of the empty word.
    pub fn one(&self) -> usize {
        self.index(&(1..=self.n).map(Level::empty).collect::<Vec<_>>())
    }

    /// Generator letters of basis word `index`.
    pub fn word(&self, index: usize) -> Vec<HeckeGen> {
        self.levels(index)
            .into_iter()
            .enumerate()
            .flat_map(|(i, l)| tail_gens(i + 1, l))
            .collect()
    }

    /// The group element the word becomes at `q = p = 1`.
    pub fn to_group_element(&self, index: usize) -> GroupElement {
        let params = GroupParams::new(2, self.n).expect("n fits");
        let letters: Vec<Letter> = self
            .levels(index)
            .into_iter()
            .enumerate()
            .flat_map(|(i, l)| tail_letters(i + 1, l))
            .collect();
        evaluate_letters(params, &letters)
    }

    pub fn format_word(&self, index: usize) -> String {
        let w = self.word(index);
        if w.is_empty() {
            "1".into()
        } else {
            w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
        }
    }
}

pub(crate) fn tail_gens(r: usize, level: Level) -> Vec<HeckeGen> {
    tail_letters(r, level)
        .into_iter()
        .map(|l| match l {
            Letter::T(_) => HeckeGen::Tau,
            Letter::S(i) => HeckeGen::Sigma(i as usize),
        })
        .collect()
}

/// `c·Q^qe·P^pe` with `Q = q − q⁻¹`, `P = p − p⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i64,
    pub q_exp: u8,
    pub p_exp: u8,
}

impl Monomial {
    const ONE: Monomial = Monomial {
        coeff: 1,
        q_exp: 0,
        p_exp: 0,
    };
    const Q: Monomial = Monomial {
        coeff: 1,
        q_exp: 1,
        p_exp: 0,
    };
    const P: Monomial = Monomial {
        coeff: 1,
        q_exp: 0,
        p_exp: 1,
    };

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            coeff: self.coeff * other.coeff,
            q_exp: self.q_exp + other.q_exp,
            p_exp: self.p_exp + other.p_exp,
        }
    }
}

type Levels = Vec<(u8, u8)>;

/// `levels · x` as a combination of level tuples, by the tail table.
///
/// Only the top tail is inspected; whatever must pass through it is pushed
/// into the lower levels recursively.
fn right_gen(levels: &[(u8, u8)], x: HeckeGen) -> Vec<(Levels, Monomial)> {
    let r = levels.len();
    let (alpha, j) = levels[r - 1];
    let lower = &levels[..r - 1];
    let mut out = Vec::new();
    let mut push = |y: Option<HeckeGen>, tail: (u8, u8), c: Monomial| match y {
        None => {
            let mut k = lower.to_vec();
            k.push(tail);
            out.push((k, c));
        }
        Some(y) => {
            for (mut k, c2) in right_gen(lower, y) {
                k.push(tail);
                out.push((k, c2.times(c)));
            }
        }
    };
    let one = Monomial::ONE;
    match x {
        HeckeGen::Tau => {
            if j != 0 {
                push(Some(HeckeGen::Tau), (alpha, j), one);
            } else if alpha == 0 {
                push(None, (1, 0), one);
            } else {
                // τ² = Pτ + 1
                push(None, (1, 0), Monomial::P);
                push(None, (0, 0), one);
            }
        }
        HeckeGen::Sigma(i) => {
            assert!(i >= 1 && i < r, "σ{i} acts on level {r}");
            let i = i as u8;
            if alpha == 0 {
                if i < j {
                    push(Some(HeckeGen::Sigma(i as usize)), (0, j), one);
                } else if i == j {
                    push(None, (0, j - 1), one);
                } else if i == j + 1 {
                    // σ² = Qσ + 1
                    push(None, (0, j), Monomial::Q);
                    push(None, (0, j + 1), one);
                } else {
                    push(Some(HeckeGen::Sigma(i as usize - 1)), (0, j), one);
                }
            } else if i < j {
                push(Some(HeckeGen::Sigma(i as usize)), (1, j), one);
            } else if i == j {
                push(None, (1, j), Monomial::Q);
                push(None, (1, j - 1), one);
            } else if i == j + 1 {
                push(None, (1, j + 1), one);
            } else {
                push(Some(HeckeGen::Sigma(i as usize - 1)), (1, j), one);
            }
        }
    }
    out
}

/// Right multiplication of every basis word by every generator, as integer
/// combinations of `Q^a P^b` times basis words. Independent of `(q, p)`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    basis: HeckeBasis,
    // entries[b * n + slot(x)]
    entries: Vec<Vec<(usize, Monomial)>>,
}

impl StructureTable {
    pub fn new(n: usize) -> Self {
        let basis = HeckeBasis::new(n);
        let mut entries = Vec::with_capacity(basis.dim() * n);
        for b in 0..basis.dim() {
            let levels: Levels = basis.levels(b).iter().map(|l| (l.alpha, l.j)).collect();
            for slot in 0..n {
                let x = if slot == 0 { HeckeGen::Tau } else { HeckeGen::Sigma(slot) };
                let mut merged: BTreeMap<(usize, u8, u8), i64> = BTreeMap::new();
                for (k, mono) in right_gen(&levels, x) {
                    let idx = basis.index(
                        &k.iter()
                            .map(|&(alpha, j)| Level { alpha, j })
                            .collect::<Vec<_>>(),
                    );
                    *merged.entry((idx, mono.q_exp, mono.p_exp)).or_default() += mono.coeff;
                }
                entries.push(
                    merged
                        .into_iter()
                        .filter(|&(_, c)| c != 0)
                        .map(|((idx, q_exp, p_exp), coeff)| (idx, Monomial { coeff, q_exp, p_exp }))
                        .collect(),
                );
            }
        }
        StructureTable { basis, entries }
    }

    pub fn basis(&self) -> &HeckeBasis {
        &self.basis
    }

    /// `b · x`.
    pub fn product(&self, b: usize, x: HeckeGen) -> &[(usize, Monomial)] {
        &self.entries[b * self.basis.n() + x.slot()]
    }

    pub fn max_exponent(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .map(|(_, m)| m.q_exp.max(m.p_exp) as usize)
            .max()
            .unwrap_or(0)
    }
}
