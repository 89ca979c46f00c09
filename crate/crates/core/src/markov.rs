//! The top-to-random `m`-card shuffle as a random walk on `G(m,1,n)`.
//!
//! One step draws one of the `nm` terms of the 1-shuffle uniformly and
//! multiplies the current deck by it on the left. `P[x][y]` is the
//! probability of moving from `x` to `y`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{closed_form_multiplicities, shuffle_1};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupParams};
use crate::linalg::Matrix;

/// Curves are computed in exact rationals up to this many group elements.
pub const EXACT_LIMIT: usize = 10_000;

/// Sparse form of `P = (1/nm)·L_Ш`, transposed so rows are starting states.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    group: Group,
    moves: Vec<GroupElement>,
    // succ[x * nm + j] = index of moves[j]·x
    succ: Vec<u32>,
}

impl TransitionMatrix {
    pub fn new(params: GroupParams, cap: u128) -> Result<Self> {
        let group = Group::new(params, cap)?;
        let moves: Vec<GroupElement> = shuffle_1(params).terms().keys().cloned().collect();
        let mut succ = Vec::with_capacity(group.len() * moves.len());
        for x in group.elements() {
            for h in &moves {
                succ.push(group.index_of(&h.compose(x)) as u32);
            }
        }
        Ok(TransitionMatrix { group, moves, succ })
    }

    pub fn params(&self) -> GroupParams {
        self.group.params()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.len()
    }

    /// The `nm` elements one step can multiply by.
    pub fn moves(&self) -> &[GroupElement] {
        &self.moves
    }

    pub fn degree(&self) -> usize {
        self.moves.len()
    }

    pub fn successors(&self, x: usize) -> &[u32] {
        let d = self.degree();
        &self.succ[x * d..(x + 1) * d]
    }

    pub fn entry(&self, x: usize, y: usize) -> BigRational {
        let hits = self.successors(x).iter().filter(|&&s| s as usize == y).count();
        BigRational::new(BigInt::from(hits), BigInt::from(self.degree()))
    }

    pub fn to_dense(&self) -> Matrix<BigRational> {
        let size = self.size();
        let step = BigRational::new(BigInt::one(), BigInt::from(self.degree()));
        let mut out = Matrix::zeros(size, size);
        for x in 0..size {
            for &y in self.successors(x) {
                let v = out.get(x, y as usize) + &step;
                out.set(x, y as usize, v);
            }
        }
        out
    }

    /// Every row and every column sums to exactly 1.
    pub fn is_doubly_stochastic(&self) -> bool {
        let mut in_degree = vec![0usize; self.size()];
        for &y in &self.succ {
            in_degree[y as usize] += 1;
        }
        // rows have nm entries of 1/nm by construction
        in_degree.iter().all(|&d| d == self.degree())
    }
}

pub fn transition_matrix(params: GroupParams, cap: u128) -> Result<TransitionMatrix> {
    TransitionMatrix::new(params, cap)
}

/// The distinct eigenvalues `i/n` of `P` with their multiplicities.
pub fn eigenvalues(params: GroupParams) -> Vec<(BigRational, BigInt)> {
    let n = params.n();
    closed_form_multiplicities(params)
        .into_iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(i, k)| {
            let v = if n == 0 {
                BigRational::one()
            } else {
                BigRational::new(BigInt::from(i), BigInt::from(n))
            };
            (v, k)
        })
        .collect()
}

fn subdominant(params: GroupParams) -> Option<BigRational> {
    let n = params.n();
    let mult = closed_form_multiplicities(params);
    (0..n)
        .rev()
        .find(|&i| !mult[i].is_zero())
        .map(|i| BigRational::new(BigInt::from(i), BigInt::from(n)))
}

/// `λ₂ = i/n` for the largest `i < n` with non-zero multiplicity:
/// `(n−1)/n` when `m > 1`, `(n−2)/n` when `m = 1`.
pub fn second_eigenvalue(params: GroupParams) -> Result<BigRational> {
    if params.n() < 2 {
        return Err(Error::InvalidParams("the second eigenvalue needs n ≥ 2".into()));
    }
    Ok(subdominant(params).expect("i = 0 has multiplicity d_{m,n} > 0 for n ≥ 2"))
}

/// A number that is either exact or a float. Exact values print as `a/b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Approx(f64),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Quantity::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(x) => write!(f, "{x}"),
            Quantity::Approx(x) => write!(f, "{x:e}"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Exact(x) => s.serialize_str(&x.to_string()),
            Quantity::Approx(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingPoint {
    pub k: usize,
    /// `½ Σ_g |P^k(start,g) − 1/|G||`
    pub tv: Quantity,
    /// `max_g |P^k(start,g) − 1/|G||`
    pub max_deviation: Quantity,
    /// `α*·λ₂^k`
    pub bound: Option<Quantity>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingCurve {
    pub m: usize,
    pub n: usize,
    pub start: usize,
    pub exact: bool,
    #[serde(serialize_with = "ser_opt_rat")]
    pub lambda2: Option<BigRational>,
    /// `max_k deviation(k)/λ₂^k` over the computed range; `None` when the
    /// ratio is unbounded or `λ₂` is undefined.
    pub alpha_star: Option<Quantity>,
    /// The same constant fitted to the total variation curve.
    pub alpha_star_tv: Option<Quantity>,
    pub points: Vec<MixingPoint>,
}

fn ser_opt_rat<S: Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

impl MixingCurve {
    pub fn is_monotone(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| match (&w[0].tv, &w[1].tv) {
                (Quantity::Exact(a), Quantity::Exact(b)) => b <= a,
                (a, b) => b.to_f64() <= a.to_f64() * (1.0 + 1e-12) + 1e-15,
            })
    }

    /// `deviation(k) ≤ α*·λ₂^k` at every computed step.
    pub fn deviation_bounded(&self) -> bool {
        self.points.iter().all(|p| match (&p.bound, &p.max_deviation) {
            (Some(Quantity::Exact(b)), Quantity::Exact(d)) => d <= b,
            (Some(b), d) => d.to_f64() <= b.to_f64() * (1.0 + 1e-9),
            (None, _) => false,
        })
    }
}

fn fit_alpha(values: &[BigRational], lambda: &BigRational) -> Option<BigRational> {
    let mut best = BigRational::zero();
    let mut power = BigRational::one();
    for v in values {
        power *= lambda;
        if power.is_zero() {
            if !v.is_zero() {
                return None;
            }
        } else {
            let r = v / &power;
            if r > best {
                best = r;
            }
        }
    }
    Some(best)
}

/// Law of the walk after `k` steps from `start`, exactly.
pub fn exact_distribution(
    chain: &TransitionMatrix,
    k: usize,
    start: &GroupElement,
) -> Vec<BigRational> {
    let counts = walk_counts(chain, start, k).pop().expect("k+1 rows");
    let total = num_traits::pow(BigInt::from(chain.degree()), k);
    counts
        .into_iter()
        .map(|c| BigRational::new(c, total.clone()))
        .collect()
}

/// Path counts `c_k(g)`, so that `P^k(start, g) = c_k(g)/(nm)^k`, for
/// `k = 0..=steps`.
fn walk_counts(chain: &TransitionMatrix, start: &GroupElement, steps: usize) -> Vec<Vec<BigInt>> {
    let size = chain.size();
    let mut current = vec![BigInt::zero(); size];
    current[chain.group.index_of(start)] = BigInt::one();
    let mut out = vec![current.clone()];
    for _ in 0..steps {
        let mut next = vec![BigInt::zero(); size];
        for (x, c) in current.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &y in chain.successors(x) {
                next[y as usize] += c;
            }
        }
        current = next;
        out.push(current.clone());
    }
    out
}

fn float_walk(chain: &TransitionMatrix, start: &GroupElement, steps: usize) -> Vec<Vec<f64>> {
    let size = chain.size();
    let w = 1.0 / chain.degree() as f64;
    let mut current = vec![0.0; size];
    current[chain.group.index_of(start)] = 1.0;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut next = vec![0.0; size];
        for (x, &c) in current.iter().enumerate() {
            if c != 0.0 {
                for &y in chain.successors(x) {
                    next[y as usize] += c * w;
                }
            }
        }
        current = next;
        out.push(current.clone());
    }
    out
}

/// Total variation and entrywise distance to uniform for `k = 1..=k_max`,
/// iterating `δ_start·P`. Exact when the group has at most
/// [`EXACT_LIMIT`] elements.
pub fn tv_curve(params: GroupParams, k_max: usize, start: &GroupElement, cap: u128) -> Result<MixingCurve> {
    let chain = TransitionMatrix::new(params, cap)?;
    tv_curve_for(&chain, k_max, start)
}

pub fn tv_curve_for(chain: &TransitionMatrix, k_max: usize, start: &GroupElement) -> Result<MixingCurve> {
    let params = chain.params();
    if start.params() != params {
        return Err(Error::ParamsMismatch {
            left: start.params().to_string(),
            right: params.to_string(),
        });
    }
    let size = chain.size();
    let lambda2 = subdominant(params);
    let exact = size <= EXACT_LIMIT;
    let mut tvs = Vec::with_capacity(k_max);
    let mut devs = Vec::with_capacity(k_max);
    if exact {
        let order = BigInt::from(size);
        let counts = walk_counts(chain, start, k_max);
        let mut total = BigInt::one();
        for row in counts.iter().skip(1) {
            total *= BigInt::from(chain.degree());
            // |c/T − 1/|G|| = |c·|G| − T| / (T·|G|)
            let den = &total * &order;
            let mut sum = BigInt::zero();
            let mut max = BigInt::zero();
            for c in row {
                let d = (c * &order - &total).abs();
                if d > max {
                    max = d.clone();
                }
                sum += d;
            }
            tvs.push(BigRational::new(sum, &den * BigInt::from(2)));
            devs.push(BigRational::new(max, den));
        }
    }
    let (tv_q, dev_q, alpha, alpha_tv): (Vec<Quantity>, Vec<Quantity>, _, _) = if exact {
        let fit = |v: &[BigRational]| lambda2.as_ref().and_then(|l| fit_alpha(v, l));
        let alpha = fit(&devs).map(Quantity::Exact);
        let alpha_tv = fit(&tvs).map(Quantity::Exact);
        (
            tvs.into_iter().map(Quantity::Exact).collect(),
            devs.into_iter().map(Quantity::Exact).collect(),
            alpha,
            alpha_tv,
        )
    } else {
        let u = 1.0 / size as f64;
        let mut tv_f = Vec::new();
        let mut dev_f = Vec::new();
        for row in float_walk(chain, start, k_max) {
            tv_f.push(0.5 * row.iter().map(|p| (p - u).abs()).sum::<f64>());
            dev_f.push(row.iter().map(|p| (p - u).abs()).fold(0.0, f64::max));
        }
        let fit = |v: &[f64]| {
            lambda2.as_ref().and_then(|l| {
                let l = l.to_f64().unwrap_or(0.0);
                let mut best: f64 = 0.0;
                for (k, x) in v.iter().enumerate() {
                    let pw = l.powi(k as i32 + 1);
                    if pw == 0.0 {
                        if *x > 1e-15 {
                            return None;
                        }
                    } else {
                        best = best.max(x / pw);
                    }
                }
                Some(Quantity::Approx(best))
            })
        };
        let alpha = fit(&dev_f);
        let alpha_tv = fit(&tv_f);
        (
            tv_f.into_iter().map(Quantity::Approx).collect(),
            dev_f.into_iter().map(Quantity::Approx).collect(),
            alpha,
            alpha_tv,
        )
    };
    let mut points = Vec::with_capacity(k_max);
    let mut power = BigRational::one();
    for (i, (tv, dev)) in tv_q.into_iter().zip(dev_q).enumerate() {
        let bound = match (&alpha, &lambda2) {
            (Some(a), Some(l)) => {
                power *= l;
                Some(match a {
                    Quantity::Exact(a) => Quantity::Exact(a * &power),
                    Quantity::Approx(a) => Quantity::Approx(a * power.to_f64().unwrap_or(0.0)),
                })
            }
            _ => None,
        };
        points.push(MixingPoint {
            k: i + 1,
            tv,
            max_deviation: dev,
            bound,
        });
    }
    Ok(MixingCurve {
        m: params.m(),
        n: params.n(),
        start: chain.group.index_of(start),
        exact,
        lambda2,
        alpha_star: alpha,
        alpha_star_tv: alpha_tv,
        points,
    })
}

/// Visit counts of `trials` independent `k`-step walks from `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    /// `counts[i]` walks ended at group element `i` of the enumeration.
    pub counts: Vec<u64>,
}

impl Simulation {
    pub fn empirical(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }

    pub fn tv_to(&self, law: &[f64]) -> f64 {
        0.5 * self
            .empirical()
            .iter()
            .zip(law)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    pub fn tv_to_uniform(&self) -> f64 {
        let u = 1.0 / self.counts.len() as f64;
        self.tv_to(&vec![u; self.counts.len()])
    }
}

/// Monte-Carlo walks. Trial `i` draws from ChaCha20 seeded with `seed` on
/// stream `i`, so results do not depend on how trials are split across
/// threads.
pub fn simulate(
    chain: &TransitionMatrix,
    k: usize,
    trials: u64,
    seed: u64,
    start: &GroupElement,
) -> Result<Simulation> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if start.params() != chain.params() {
        return Err(Error::ParamsMismatch {
            left: start.params().to_string(),
            right: chain.params().to_string(),
        });
    }
    let size = chain.size();
    let degree = chain.degree() as u32;
    let origin = chain.group.index_of(start);
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; size],
            |mut counts, trial| {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                let mut state = origin;
                for _ in 0..k {
                    let j = rng.random_range(0..degree) as usize;
                    state = chain.successors(state)[j] as usize;
                }
                counts[state] += 1;
                counts
            },
        )
        .reduce(
            || vec![0u64; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(Simulation {
        k,
        trials,
        seed,
        counts,
    })
}
