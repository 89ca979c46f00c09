use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams};

/// An element of the group algebra `ℚG(m,1,n)`: a finitely supported map
/// from group elements to exact rationals. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    params: GroupParams,
    terms: BTreeMap<GroupElement, BigRational>,
}

#[cfg(test)]
pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(v))
}

fn accumulate(map: &mut HashMap<GroupElement, BigRational>, g: GroupElement, c: BigRational) {
    match map.entry(g) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl AlgebraElement {
    pub fn zero(params: GroupParams) -> Self {
        AlgebraElement {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: GroupParams) -> Self {
        AlgebraElement::scalar(params, BigRational::one())
    }

    /// `c · 1`.
    pub fn scalar(params: GroupParams, c: BigRational) -> Self {
        let mut out = AlgebraElement::zero(params);
        if !c.is_zero() {
            out.terms.insert(GroupElement::identity(params), c);
        }
        out
    }

    /// The point mass `δ_g`.
    pub fn basis(g: &GroupElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g.clone(), BigRational::one());
        AlgebraElement {
            params: g.params(),
            terms,
        }
    }

    /// Sums `c·δ_g` over the pairs, merging repeated elements.
    pub fn from_terms(
        params: GroupParams,
        terms: impl IntoIterator<Item = (GroupElement, BigRational)>,
    ) -> Self {
        let mut map = HashMap::new();
        for (g, c) in terms {
            assert_eq!(g.params(), params, "term from another group");
            accumulate(&mut map, g, c);
        }
        AlgebraElement::from_map(params, map)
    }

    /// `Σ δ_g` over the elements, with multiplicity.
    pub fn sum_of(params: GroupParams, elements: impl IntoIterator<Item = GroupElement>) -> Self {
        AlgebraElement::from_terms(params, elements.into_iter().map(|g| (g, BigRational::one())))
    }

    fn from_map(params: GroupParams, map: HashMap<GroupElement, BigRational>) -> Self {
        AlgebraElement {
            params,
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, BigRational> {
        &self.terms
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigRational {
        self.terms.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn identity_coefficient(&self) -> BigRational {
        self.coefficient(&GroupElement::identity(self.params))
    }

    fn check(&self, other: &AlgebraElement) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch {
                left: self.params.to_string(),
                right: other.params.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        Ok(self.add_scaled(other, &BigRational::one()))
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        Ok(self.add_scaled(other, &-BigRational::one()))
    }

    /// `self + c·other`, same params assumed.
    pub(crate) fn add_scaled(&self, other: &AlgebraElement, c: &BigRational) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (g, v) in &other.terms {
            let entry = terms.entry(g.clone()).or_insert_with(BigRational::zero);
            *entry += v * c;
            if entry.is_zero() {
                terms.remove(g);
            }
        }
        AlgebraElement {
            params: self.params,
            terms,
        }
    }

    /// `self + c·1`.
    pub fn add_scalar(&self, c: &BigRational) -> AlgebraElement {
        self.add_scaled(&AlgebraElement::one(self.params), c)
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.params);
        }
        AlgebraElement {
            params: self.params,
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    /// Group-algebra product `(a·b)(g) = Σ_h a(h) b(h⁻¹g)`.
    pub fn convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        Ok(self.convolve_unchecked(other))
    }

    pub(crate) fn convolve_unchecked(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut map = HashMap::with_capacity(self.terms.len().max(other.terms.len()));
        for (h, a) in &self.terms {
            for (k, b) in &other.terms {
                accumulate(&mut map, h.compose(k), a * b);
            }
        }
        AlgebraElement::from_map(self.params, map)
    }

    /// [`convolve`](Self::convolve) with the left support split across the
    /// rayon pool. Partial sums are exact, so the result does not depend on
    /// the split.
    pub fn par_convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(other)?;
        let left: Vec<(&GroupElement, &BigRational)> = self.terms.iter().collect();
        let chunk = left.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
        let partials: Vec<HashMap<GroupElement, BigRational>> = left
            .par_chunks(chunk)
            .map(|part| {
                let mut map = HashMap::new();
                for (h, a) in part {
                    for (k, b) in &other.terms {
                        accumulate(&mut map, h.compose(k), *a * b);
                    }
                }
                map
            })
            .collect();
        let mut total = HashMap::new();
        for part in partials {
            for (g, c) in part {
                accumulate(&mut total, g, c);
            }
        }
        Ok(AlgebraElement::from_map(self.params, total))
    }

    pub fn pow(&self, k: usize) -> AlgebraElement {
        (0..k).fold(AlgebraElement::one(self.params), |acc, _| {
            acc.convolve_unchecked(self)
        })
    }

    /// `g·self`.
    pub fn left_mul_element(&self, g: &GroupElement) -> AlgebraElement {
        AlgebraElement {
            params: self.params,
            terms: self.terms.iter().map(|(h, c)| (g.compose(h), c.clone())).collect(),
        }
    }

    /// `self·g`.
    pub fn right_mul_element(&self, g: &GroupElement) -> AlgebraElement {
        AlgebraElement {
            params: self.params,
            terms: self.terms.iter().map(|(h, c)| (h.compose(g), c.clone())).collect(),
        }
    }

    /// Image under `G(m,1,n) ⊂ G(m,1,n_new)`, acting on the first cards.
    pub fn embed(&self, n_new: usize) -> Result<AlgebraElement> {
        self.shift(0, n_new)
    }

    /// Image under `s_i ↦ s_{i+offset}`, `t_i ↦ t_{i+offset}`.
    pub fn shift(&self, offset: usize, n_new: usize) -> Result<AlgebraElement> {
        if offset + self.params.n() > n_new {
            return Err(Error::InvalidParams(format!(
                "cannot place {} cards at offset {offset} in a deck of {n_new}",
                self.params.n()
            )));
        }
        let params = self.params.with_n(n_new)?;
        Ok(AlgebraElement {
            params,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.shift(offset, n_new), c.clone()))
                .collect(),
        })
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.params)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Generator;

    fn p(m: usize, n: usize) -> GroupParams {
        GroupParams::new(m, n).unwrap()
    }

    #[test]
    fn delta_products() {
        let params = p(3, 3);
        let g = GroupElement::generator(params, Generator::S(1)).unwrap();
        let h = GroupElement::generator(params, Generator::T).unwrap();
        let prod = AlgebraElement::basis(&g)
            .convolve(&AlgebraElement::basis(&h))
            .unwrap();
        assert_eq!(prod, AlgebraElement::basis(&g.compose(&h)));
        let a = AlgebraElement::basis(&g).add(&AlgebraElement::basis(&h)).unwrap();
        assert_eq!(a.convolve(&AlgebraElement::one(params)).unwrap(), a);
    }

    #[test]
    fn one_plus_s1_squared() {
        let params = p(1, 2);
        let s1 = GroupElement::generator(params, Generator::S(1)).unwrap();
        let x = AlgebraElement::basis(&s1).add(&AlgebraElement::one(params)).unwrap();
        assert_eq!(x.convolve(&x).unwrap(), x.scale(&rat(2)));
    }

    #[test]
    fn zero_coefficients_vanish() {
        let params = p(2, 2);
        let t = GroupElement::generator(params, Generator::T).unwrap();
        let x = AlgebraElement::basis(&t);
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(x.scale(&rat(0)).is_zero());
        assert_eq!(x.add_scalar(&rat(-1)).add_scalar(&rat(1)), x);
    }

    #[test]
    fn parallel_product_matches() {
        let params = p(2, 3);
        let gens: Vec<GroupElement> = [Generator::T, Generator::S(1), Generator::S(2)]
            .iter()
            .map(|&x| GroupElement::generator(params, x).unwrap())
            .collect();
        let a = AlgebraElement::from_terms(
            params,
            gens.iter().enumerate().map(|(i, g)| (g.clone(), rat(i as i64 + 1))),
        );
        let b = a.pow(3).add_scalar(&rat(5));
        assert_eq!(a.convolve(&b).unwrap(), a.par_convolve(&b).unwrap());
    }

    #[test]
    fn mismatched_params() {
        let a = AlgebraElement::one(p(2, 2));
        let b = AlgebraElement::one(p(2, 3));
        assert!(matches!(a.convolve(&b), Err(Error::ParamsMismatch { .. })));
        assert!(a.add(&b).is_err());
    }
}
