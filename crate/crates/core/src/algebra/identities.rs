use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::element::AlgebraElement;
use super::shuffle::{shifted_product, shuffle_1, symmetrizer};
use crate::error::Result;
use crate::group::GroupParams;

/// Pass/fail for the four exact identities satisfied by the 1-shuffle `Ш`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub m: usize,
    pub n: usize,
    /// `Ш² = Ш·(m + Ш')`, `Ш'` the 1-shuffle of the first `n−1` cards.
    pub shuffle_square: bool,
    /// `Π_{i=0}^{n−1} (Ш − im) = Σ̃_n`.
    pub product_is_symmetrizer: bool,
    /// `Π_{i=0}^{n} (Ш − im) = 0`.
    pub annihilating_polynomial: bool,
    /// `Ш·Σ̃_n = nm·Σ̃_n`.
    pub absorption: bool,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.shuffle_square
            && self.product_is_symmetrizer
            && self.annihilating_polynomial
            && self.absorption
    }
}

/// The 1-shuffle of `G(m,1,n−1)` inside `G(m,1,n)`. For `n = 1` it is the
/// empty sum, so `Ш² = mШ` there.
pub fn lower_shuffle(params: GroupParams) -> Result<AlgebraElement> {
    let n = params.n();
    if n == 0 {
        return Ok(AlgebraElement::zero(params));
    }
    shuffle_1(params.with_n(n - 1)?).embed(n)
}

pub fn verify_identities(params: GroupParams, cap: u128) -> Result<IdentityReport> {
    params.check_cap(cap)?;
    let n = params.n();
    let m = params.m();
    let sh = shuffle_1(params);
    let sym = symmetrizer(params, cap)?;
    let m_rat = BigRational::from_integer(BigInt::from(m));

    let square = sh.par_convolve(&sh)?;
    let rhs = sh.par_convolve(&lower_shuffle(params)?.add_scalar(&m_rat))?;

    let partial = shifted_product(&sh, 0..n);
    let full = partial.par_convolve(&sh.add_scalar(&-BigRational::from_integer(BigInt::from(n * m))))?;

    let absorbed = sh.par_convolve(&sym)?;
    Ok(IdentityReport {
        m,
        n,
        shuffle_square: square == rhs,
        product_is_symmetrizer: partial == sym,
        annihilating_polynomial: full.is_zero(),
        absorption: absorbed == sym.scale(&BigRational::from_integer(BigInt::from(n * m))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::rat;
    use crate::group::DEFAULT_ORDER_CAP;

    #[test]
    fn small_cases_pass() {
        for (m, n) in [(1, 3), (2, 2), (2, 1), (3, 1), (1, 1), (3, 2)] {
            let params = GroupParams::new(m, n).unwrap();
            let report = verify_identities(params, DEFAULT_ORDER_CAP).unwrap();
            assert!(report.all_pass(), "{report:?}");
        }
    }

    #[test]
    fn degenerate_base_case() {
        // (1 + t)² = 2(1 + t) in ℚC_2
        let params = GroupParams::new(2, 1).unwrap();
        let sh = shuffle_1(params);
        assert_eq!(sh.convolve(&sh).unwrap(), sh.scale(&rat(2)));
        assert!(lower_shuffle(params).unwrap().is_zero());
    }

    #[test]
    fn hyperoctahedral_b2_annihilated() {
        let params = GroupParams::new(2, 2).unwrap();
        assert!(shifted_product(&shuffle_1(params), 0..=2).is_zero());
    }

    #[test]
    fn cap_is_respected() {
        let params = GroupParams::new(2, 12).unwrap();
        assert!(verify_identities(params, DEFAULT_ORDER_CAP).is_err());
    }
}
