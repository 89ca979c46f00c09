use std::sync::Arc;

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::algebra::HeckeAlgebra;
use super::basis::StructureTable;
use crate::algebra::{derangement, regular_matrix, shuffle_1, spectral_report};
use crate::error::{Error, Result};
use crate::group::{Group, GroupParams};
use crate::linalg::Matrix;

/// Largest `n` accepted by default (dimension `2^5·5! = 3840`).
pub const DEFAULT_HECKE_MAX_N: usize = 5;

/// Relative tolerance for annihilation, attainment and kernel ranks.
pub const HECKE_TOLERANCE: f64 = 1e-6;

const GENERIC_TOLERANCE: f64 = 1e-9;

/// `(n, q, p)` with `q`, `p` away from the roots of unity where
/// `H(2,1,n)` stops being semisimple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeckeParams {
    n: usize,
    q: f64,
    p: f64,
}

impl HeckeParams {
    pub fn new(n: usize, q: f64, p: f64) -> Result<Self> {
        if !(q.is_finite() && p.is_finite()) || q == 0.0 || p == 0.0 {
            return Err(Error::InvalidParams("q and p must be finite and nonzero".into()));
        }
        let near_one = |x: f64| (x - 1.0).abs() <= GENERIC_TOLERANCE * x.abs().max(1.0);
        for k in 1..=n as i32 {
            if near_one(q.powi(2 * k)) {
                return Err(Error::NonGeneric(format!("q^{} = 1", 2 * k)));
            }
        }
        let bound = 2 * n as i32;
        for j in -bound..=bound {
            if near_one(p * p * q.powi(2 * j)) {
                return Err(Error::NonGeneric(format!("p²·q^{} = 1", 2 * j)));
            }
        }
        Ok(HeckeParams { n, q, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `1 + q² + ⋯ + q^{2ℓ−2}`; zero at `ℓ = 0`.
pub fn q_number(l: usize, q: f64) -> f64 {
    (0..l).fold(0.0, |acc, i| acc + q.powi(2 * i as i32))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjecturedSpectrum {
    pub values: Vec<f64>,
    pub zero: f64,
    /// Absent for `n < 2`, where it would coincide with `zero`.
    pub second: Option<f64>,
    pub top: f64,
    pub expected_zero: usize,
    pub expected_second: Option<usize>,
    pub expected_top: usize,
}

/// `(p² + q^{2(j−ℓ)})·(1 + q² + ⋯ + q^{2ℓ−2})` for `ℓ = 0..=n` and
/// `j ∈ {ℓ, …, n}` without `n−1`, near-duplicates merged, sorted.
pub fn conjectured_spectrum(n: usize, q: f64, p: f64) -> ConjecturedSpectrum {
    let mut values: Vec<f64> = Vec::new();
    for l in 0..=n {
        for j in l..=n {
            if n >= 1 && j == n - 1 {
                continue;
            }
            let v = (p * p + q.powi(2 * (j - l) as i32)) * q_number(l, q);
            let scale = v.abs().max(1.0);
            if !values.iter().any(|&w| (w - v).abs() <= GENERIC_TOLERANCE * scale) {
                values.push(v);
            }
        }
    }
    values.sort_by(f64::total_cmp);
    let d = derangement(2, n as u64).to_usize().unwrap_or(usize::MAX);
    ConjecturedSpectrum {
        values,
        zero: 0.0,
        second: (n >= 2).then(|| (p * p + q * q) * q_number(n - 1, q)),
        top: (p * p + 1.0) * q_number(n, q),
        expected_zero: d,
        expected_second: (n >= 2).then_some(n),
        expected_top: 1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueData {
    pub value: f64,
    pub min_singular: f64,
    pub kernel_dim: usize,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelDims {
    pub zero: usize,
    pub second: Option<usize>,
    pub top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub annihilation: bool,
    pub attainment: bool,
    pub multiplicities: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub q: f64,
    pub p: f64,
    pub dimension: usize,
    pub values: Vec<f64>,
    pub annihilation_residual: f64,
    pub attained: Vec<bool>,
    pub kernel_dims: KernelDims,
    pub expected_kernel_dims: KernelDims,
    pub verdicts: Verdicts,
    pub norm: f64,
    pub tolerance: f64,
    pub per_value: Vec<ValueData>,
}

fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    a.clone().singular_values().iter().copied().collect()
}

fn kernel_data(m: &DMatrix<f64>, value: f64, norm: f64) -> ValueData {
    let shifted = m - DMatrix::<f64>::identity(m.nrows(), m.ncols()) * value;
    let sv = singular_values(&shifted);
    let threshold = HECKE_TOLERANCE * norm;
    let min_singular = sv.iter().copied().fold(f64::INFINITY, f64::min);
    ValueData {
        value,
        min_singular,
        kernel_dim: sv.iter().filter(|&&s| s < threshold).count(),
        attained: min_singular < threshold,
    }
}

fn lookup(data: &[ValueData], value: f64) -> Option<usize> {
    data.iter()
        .find(|d| (d.value - value).abs() <= GENERIC_TOLERANCE * value.abs().max(1.0))
        .map(|d| d.kernel_dim)
}

/// Numeric test of the conjectured spectrum of left multiplication by the
/// Hecke shuffle: annihilation, attainment of every value, and the kernel
/// dimensions at the three distinguished values.
pub fn check_conjecture(params: HeckeParams, max_n: usize) -> Result<ConjectureReport> {
    let n = params.n();
    if n == 0 {
        return Err(Error::InvalidParams("the shuffle needs n ≥ 1".into()));
    }
    if n > max_n {
        let dim = HeckeBasisDim::of(n);
        return Err(Error::CapExceeded {
            order: Some(dim),
            cap: HeckeBasisDim::of(max_n),
        });
    }
    let algebra = HeckeAlgebra::new(n, params.q(), params.p())?;
    let m = algebra.shuffle_matrix()?.to_dmatrix();
    let norm = singular_values(&m).into_iter().fold(0.0, f64::max);
    let spectrum = conjectured_spectrum(n, params.q(), params.p());

    let per_value: Vec<ValueData> = spectrum.values.iter().map(|&v| kernel_data(&m, v, norm)).collect();

    let identity = DMatrix::<f64>::identity(m.nrows(), m.ncols());
    let product = spectrum
        .values
        .iter()
        .fold(identity.clone(), |acc, &v| acc * (&m - &identity * v));
    let annihilation_residual = product.norm() / norm.powi(spectrum.values.len() as i32);

    let kernel_dims = KernelDims {
        zero: lookup(&per_value, spectrum.zero).unwrap_or(0),
        second: spectrum.second.map(|v| lookup(&per_value, v).unwrap_or(0)),
        top: lookup(&per_value, spectrum.top).unwrap_or(0),
    };
    let expected_kernel_dims = KernelDims {
        zero: spectrum.expected_zero,
        second: spectrum.expected_second,
        top: spectrum.expected_top,
    };
    let attained: Vec<bool> = per_value.iter().map(|d| d.attained).collect();
    let verdicts = Verdicts {
        annihilation: annihilation_residual < HECKE_TOLERANCE,
        attainment: attained.iter().all(|&a| a),
        multiplicities: kernel_dims == expected_kernel_dims,
    };
    Ok(ConjectureReport {
        n,
        q: params.q(),
        p: params.p(),
        dimension: algebra.dim(),
        values: spectrum.values,
        annihilation_residual,
        attained,
        kernel_dims,
        expected_kernel_dims,
        verdicts,
        norm,
        tolerance: HECKE_TOLERANCE,
        per_value,
    })
}

struct HeckeBasisDim;

impl HeckeBasisDim {
    fn of(n: usize) -> u128 {
        (1..=n as u128).map(|k| 2 * k).product()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub n: usize,
    pub dimension: usize,
    /// The Hecke shuffle matrix at `q = p = 1` equals the group regular
    /// matrix entrywise, exactly.
    pub matches_group: bool,
    pub eigenvalues: Vec<u64>,
    /// Group-side multiplicities of the eigenvalues `2i`.
    pub multiplicities: Vec<u128>,
    /// Exact nullity of `M − 2i` for the Hecke matrix `M`.
    pub kernel_dims: Vec<usize>,
    pub multiplicities_match: bool,
}

/// Exact comparison at `q = p = 1` against the group algebra of `G(2,1,n)`.
pub fn check_classical(n: usize, max_n: usize) -> Result<ClassicalReport> {
    if n == 0 {
        return Err(Error::InvalidParams("the shuffle needs n ≥ 1".into()));
    }
    if n > max_n {
        return Err(Error::CapExceeded {
            order: Some(HeckeBasisDim::of(n)),
            cap: HeckeBasisDim::of(max_n),
        });
    }
    let table = Arc::new(StructureTable::new(n));
    let algebra = HeckeAlgebra::with_table(table, BigRational::one(), BigRational::one())?;
    let hecke = algebra.shuffle_matrix()?;
    let params = GroupParams::new(2, n)?;
    let cap = HeckeBasisDim::of(n);
    let group = Group::new(params, cap)?;
    let regular = regular_matrix(&shuffle_1(params), cap)?;
    let basis = algebra.basis();
    let to_group: Vec<usize> = (0..basis.dim())
        .map(|i| group.index_of(&basis.to_group_element(i)))
        .collect();
    let permuted: Matrix<BigRational> =
        Matrix::from_fn(basis.dim(), basis.dim(), |i, j| regular.get(to_group[i], to_group[j]).clone());
    let spectral = spectral_report(params, cap)?;
    let kernel_dims: Vec<usize> = spectral
        .eigenvalues
        .iter()
        .map(|&v| basis.dim() - hecke.shift_diagonal(&BigRational::from_integer(v.into())).rank())
        .collect();
    let multiplicities_match = kernel_dims.iter().map(|&d| d as u128).eq(spectral.multiplicities.iter().copied());
    Ok(ClassicalReport {
        n,
        dimension: basis.dim(),
        matches_group: permuted == hecke,
        eigenvalues: spectral.eigenvalues,
        multiplicities: spectral.multiplicities,
        kernel_dims,
        multiplicities_match,
    })
}
