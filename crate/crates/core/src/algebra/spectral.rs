use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::element::AlgebraElement;
use super::shuffle::{projector_from, b_elements, shifted_product, shuffle_1};
use crate::error::{Error, Result};
use crate::group::{Group, GroupParams};
use crate::linalg::Matrix;

/// `d_{m,k} = Σ_{i=0}^{k} (−1)^i · k!/i! · m^{k−i}`, the number of elements of
/// `G(m,1,k)` that leave no card in place unrotated.
pub fn derangement(m: u64, k: u64) -> BigInt {
    let m = BigInt::from(m);
    let mut total = BigInt::zero();
    // k!/i! · m^{k−i}, built from i = k downwards
    let mut term = BigInt::one();
    for i in (0..=k).rev() {
        if i < k {
            term *= BigInt::from(i + 1) * &m;
        }
        if i % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralChecks {
    /// Closed form and trace route agree (a mismatch is an error, so this is
    /// always true in a returned report).
    pub routes_agree: bool,
    /// Multiplicities equal the fixed-point census of the group.
    pub census_agrees: bool,
    /// `Σ multiplicities = m^n·n!`.
    pub sum_is_order: bool,
    /// `Σ im·multiplicity = tr(L_Ш) = m^n·n!`.
    pub trace_matches: bool,
    /// Dropping the factor `(Ш − im)` from the annihilating product leaves a
    /// non-zero element exactly when `im` has non-zero multiplicity.
    pub minimal_polynomial: bool,
}

/// Eigenvalues `im` of left multiplication by the 1-shuffle and their
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub m: usize,
    pub n: usize,
    pub eigenvalues: Vec<u64>,
    pub multiplicities: Vec<u128>,
    pub derangements: Vec<u128>,
    pub checks: SpectralChecks,
}

/// `binom(n,i)·d_{m,n−i}` for `i = 0..=n`.
pub fn closed_form_multiplicities(params: GroupParams) -> Vec<BigInt> {
    let n = params.n() as u64;
    (0..=n)
        .map(|i| binomial(BigInt::from(n), BigInt::from(i)) * derangement(params.m() as u64, n - i))
        .collect()
}

/// Number of group elements with exactly `i` fixed cards, `i = 0..=n`.
pub fn fixed_point_census(params: GroupParams, cap: u128) -> Result<Vec<u128>> {
    let group = Group::new(params, cap)?;
    let mut counts = vec![0u128; params.n() + 1];
    for g in group.elements() {
        counts[g.fixed_points()] += 1;
    }
    Ok(counts)
}

fn to_u128(x: &BigInt) -> u128 {
    x.to_u128().expect("bounded by the group order")
}

pub fn spectral_report(params: GroupParams, cap: u128) -> Result<SpectralReport> {
    let order = params.check_cap(cap)?;
    let n = params.n();
    let m = params.m();
    let closed = closed_form_multiplicities(params);

    // trace route: tr(L_{E_i}) = |G|·(identity coefficient of E_i)
    let bs = b_elements(params, cap)?;
    let order_rat = BigRational::from_integer(BigInt::from(order));
    let mut traced = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let tr = projector_from(&bs, i).identity_coefficient() * &order_rat;
        if !tr.is_integer() {
            return Err(Error::RouteMismatch(format!(
                "trace of E_{i} is {tr}, not an integer"
            )));
        }
        traced.push(tr.to_integer());
    }
    if traced != closed {
        return Err(Error::RouteMismatch(format!(
            "closed form {closed:?} vs trace route {traced:?}"
        )));
    }
    let multiplicities: Vec<u128> = closed.iter().map(to_u128).collect();
    let census = fixed_point_census(params, cap)?;

    let sh = shuffle_1(params);
    let minimal = (0..=n).all(|i| {
        let dropped = shifted_product(&sh, (0..=n).filter(|&k| k != i));
        dropped.is_zero() == (multiplicities[i] == 0)
    });
    let trace: u128 = multiplicities
        .iter()
        .enumerate()
        .map(|(i, &k)| (i * m) as u128 * k)
        .sum();
    let checks = SpectralChecks {
        routes_agree: true,
        census_agrees: census == multiplicities,
        sum_is_order: multiplicities.iter().sum::<u128>() == order,
        trace_matches: n == 0 || trace == order,
        minimal_polynomial: minimal,
    };
    Ok(SpectralReport {
        m,
        n,
        eigenvalues: (0..=n).map(|i| (i * m) as u64).collect(),
        multiplicities,
        derangements: (0..=n as u64)
            .map(|k| to_u128(&derangement(m as u64, k)))
            .collect(),
        checks,
    })
}

/// Matrix of `y ↦ x·y` in the enumeration basis: column `g` holds `x·δ_g`.
pub fn regular_matrix(x: &AlgebraElement, cap: u128) -> Result<Matrix<BigRational>> {
    let group = Group::new(x.params(), cap)?;
    let size = group.len();
    let mut out = Matrix::zeros(size, size);
    for (col, g) in group.elements().iter().enumerate() {
        for (h, c) in x.terms() {
            let row = group.index_of(&h.compose(g));
            let v = out.get(row, col) + c;
            out.set(row, col, v);
        }
    }
    Ok(out)
}
