use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::{evaluate_letters, format_letters, GroupParams, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    /// `s_i s_i → 1`
    FreeS,
    /// `t^a t^b → t^{a+b}`
    MergeT,
    /// `s_a s_b → s_b s_a` for `a ≥ b+2`
    CommuteS,
    /// `s_i t^k → t^k s_i` for `i ≥ 2`
    CommuteT,
    /// `s_a⋯s_b s_a → s_{a−1} s_a⋯s_b`
    Descend,
    /// `s_1 t^α s_1 t^β → t^β s_1 t^α s_1`
    Base,
    /// `ψ_{αj}^{(a)} s_a → s_{a−1} ψ_{αj}^{(a)}` for `j ≤ a−2`
    Psi,
    /// `ψ_{αj}^{(a)} s_i → s_i ψ_{αj}^{(a)}` for `i < j`
    PsiLower,
}

/// One oriented relation `lhs → rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub family: RuleFamily,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
    /// Smallest `n` for which the rule involves only generators of `G(m,1,n)`.
    pub level: usize,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}",
            format_letters(&self.lhs),
            format_letters(&self.rhs)
        )
    }
}

/// `T < s_1 < s_2 < …`, then by `t`-power: shortlex on this order strictly
/// drops along every rule.
pub(crate) fn shortlex_less(a: &[Letter], b: &[Letter]) -> bool {
    a.len() < b.len() || a.len() == b.len() && a < b
}

/// All rule instances for one `(m, n)`, keyed by left-hand side.
#[derive(Debug)]
pub struct RuleTable {
    params: GroupParams,
    rules: Vec<RewriteRule>,
    index: HashMap<Vec<Letter>, usize>,
}

fn down(a: usize, b: usize) -> Vec<Letter> {
    (b..=a).rev().map(Letter::s).collect()
}

fn up(j: usize) -> Vec<Letter> {
    (1..=j).map(Letter::s).collect()
}

fn psi(a: usize, alpha: usize, j: usize) -> Vec<Letter> {
    let mut w = down(a, 1);
    w.push(Letter::t(alpha));
    w.extend(up(j));
    w
}

fn cat(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    a.iter().chain(b).copied().collect()
}

impl RuleTable {
    pub fn new(params: GroupParams) -> Result<Self> {
        let m = params.m();
        let n = params.n();
        let mut table = RuleTable {
            params,
            rules: Vec::new(),
            index: HashMap::new(),
        };
        let s = Letter::s;
        let t = Letter::t;
        for i in 1..n {
            table.register(RuleFamily::FreeS, vec![s(i), s(i)], vec![], i + 1)?;
        }
        if n >= 1 {
            for a in 1..m {
                for b in 1..m {
                    let rhs = if (a + b) % m == 0 {
                        vec![]
                    } else {
                        vec![t((a + b) % m)]
                    };
                    table.register(RuleFamily::MergeT, vec![t(a), t(b)], rhs, 1)?;
                }
            }
        }
        for a in 3..n {
            for b in 1..=a - 2 {
                table.register(RuleFamily::CommuteS, vec![s(a), s(b)], vec![s(b), s(a)], a + 1)?;
            }
        }
        for i in 2..n {
            for k in 1..m {
                table.register(RuleFamily::CommuteT, vec![s(i), t(k)], vec![t(k), s(i)], i + 1)?;
            }
        }
        for a in 2..n {
            for b in 1..a {
                let run = down(a, b);
                table.register(
                    RuleFamily::Descend,
                    cat(&run, &[s(a)]),
                    cat(&[s(a - 1)], &run),
                    a + 1,
                )?;
            }
        }
        if n >= 2 {
            for alpha in 1..m {
                for beta in 1..m {
                    table.register(
                        RuleFamily::Base,
                        vec![s(1), t(alpha), s(1), t(beta)],
                        vec![t(beta), s(1), t(alpha), s(1)],
                        2,
                    )?;
                }
            }
        }
        for a in 1..n {
            for alpha in 1..m {
                let ps: Vec<Vec<Letter>> = (0..=a).map(|j| psi(a, alpha, j)).collect();
                for j in 0..=a {
                    if a >= 2 && j + 2 <= a {
                        table.register(
                            RuleFamily::Psi,
                            cat(&ps[j], &[s(a)]),
                            cat(&[s(a - 1)], &ps[j]),
                            a + 1,
                        )?;
                    }
                    for i in 1..j {
                        table.register(
                            RuleFamily::PsiLower,
                            cat(&ps[j], &[s(i)]),
                            cat(&[s(i)], &ps[j]),
                            a + 1,
                        )?;
                    }
                }
            }
        }
        Ok(table)
    }

    /// Table for `params`, built on first use and then shared.
    pub fn shared(params: GroupParams) -> Result<Arc<RuleTable>> {
        static CACHE: OnceLock<Mutex<HashMap<GroupParams, Arc<RuleTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("rule cache poisoned").get(&params) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(RuleTable::new(params)?);
        cache
            .lock()
            .expect("rule cache poisoned")
            .insert(params, Arc::clone(&table));
        Ok(table)
    }

    /// Adds a rule after checking that both sides evaluate to the same group
    /// element and that the rule decreases shortlex order.
    pub fn register(
        &mut self,
        family: RuleFamily,
        lhs: Vec<Letter>,
        rhs: Vec<Letter>,
        level: usize,
    ) -> Result<()> {
        let rule = RewriteRule {
            family,
            lhs,
            rhs,
            level,
        };
        if evaluate_letters(self.params, &rule.lhs) != evaluate_letters(self.params, &rule.rhs)
            || !shortlex_less(&rule.rhs, &rule.lhs)
            || self.index.contains_key(&rule.lhs)
        {
            return Err(Error::UnsoundRule {
                rule: rule.to_string(),
            });
        }
        self.index.insert(rule.lhs.clone(), self.rules.len());
        self.rules.push(rule);
        Ok(())
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn lookup(&self, lhs: &[Letter]) -> Option<(usize, &RewriteRule)> {
        self.index.get(lhs).map(|&i| (i, &self.rules[i]))
    }
}
