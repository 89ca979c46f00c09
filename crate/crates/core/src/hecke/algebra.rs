use std::collections::BTreeMap;
use std::sync::Arc;

use super::basis::{tail_gens, HeckeBasis, HeckeGen, StructureTable};
use super::scalar::Scalar;
use super::word::HeckeLetter;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A combination of basis words of `H(2,1,n)` at fixed `(q, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement<S> {
    coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero() -> Self {
        HeckeElement {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, S::one());
        HeckeElement { coeffs }
    }

    pub fn terms(&self) -> &BTreeMap<usize, S> {
        &self.coeffs
    }

    pub fn coefficient(&self, index: usize) -> S {
        self.coeffs.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, index: usize, c: S) {
        let entry = self.coeffs.entry(index).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &HeckeElement<S>, c: &S) -> HeckeElement<S> {
        let mut out = self.clone();
        for (&k, v) in &other.coeffs {
            out.add_term(k, v.clone() * c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> HeckeElement<S> {
        HeckeElement::zero().add_scaled(self, c)
    }
}

/// `H(2,1,n)` with `σ_i² = (q−q⁻¹)σ_i + 1` and `(τ−p)(τ+p⁻¹) = 0`, evaluated
/// at fixed nonzero `q`, `p`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<S> {
    table: Arc<StructureTable>,
    q: S,
    p: S,
    big_q: S,
    big_p: S,
}

impl<S: Scalar> HeckeAlgebra<S> {
    pub fn new(n: usize, q: S, p: S) -> Result<Self> {
        HeckeAlgebra::with_table(Arc::new(StructureTable::new(n)), q, p)
    }

    /// Reuses a structure table, which does not depend on `(q, p)`.
    pub fn with_table(table: Arc<StructureTable>, q: S, p: S) -> Result<Self> {
        if q.is_zero() || p.is_zero() {
            return Err(Error::InvalidParams("q and p must be nonzero".into()));
        }
        let big_q = q.clone() - q.recip();
        let big_p = p.clone() - p.recip();
        Ok(HeckeAlgebra {
            table,
            q,
            p,
            big_q,
            big_p,
        })
    }

    pub fn n(&self) -> usize {
        self.table.basis().n()
    }

    pub fn dim(&self) -> usize {
        self.table.basis().dim()
    }

    pub fn basis(&self) -> &HeckeBasis {
        self.table.basis()
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    pub fn one(&self) -> HeckeElement<S> {
        HeckeElement::basis(self.basis().one())
    }

    fn check_gen(&self, x: HeckeGen) -> Result<()> {
        let n = self.n();
        match x {
            HeckeGen::Tau if n == 0 => Err(Error::IndexOutOfRange {
                name: "τ",
                index: 1,
                max: 0,
            }),
            HeckeGen::Sigma(i) if i == 0 || i >= n => Err(Error::IndexOutOfRange {
                name: "σ",
                index: i,
                max: n.saturating_sub(1),
            }),
            _ => Ok(()),
        }
    }

    fn monomial(&self, m: &super::basis::Monomial) -> S {
        let mut v = S::from_i64(m.coeff);
        for _ in 0..m.q_exp {
            v = v * self.big_q.clone();
        }
        for _ in 0..m.p_exp {
            v = v * self.big_p.clone();
        }
        v
    }

    /// `e·x` for a generator `x` (indices must be valid).
    pub fn right_mul(&self, e: &HeckeElement<S>, x: HeckeGen) -> HeckeElement<S> {
        let mut out = HeckeElement::zero();
        for (&b, c) in &e.coeffs {
            for (k, m) in self.table.product(b, x) {
                out.add_term(*k, c.clone() * self.monomial(m));
            }
        }
        out
    }

    /// `e·x⁻¹`, with `σ⁻¹ = σ − (q−q⁻¹)` and `τ⁻¹ = τ − (p−p⁻¹)`.
    pub fn right_mul_inverse(&self, e: &HeckeElement<S>, x: HeckeGen) -> HeckeElement<S> {
        let shift = match x {
            HeckeGen::Tau => self.big_p.clone(),
            HeckeGen::Sigma(_) => self.big_q.clone(),
        };
        self.right_mul(e, x).add_scaled(e, &-shift)
    }

    pub fn right_mul_letter(&self, e: &HeckeElement<S>, letter: HeckeLetter) -> HeckeElement<S> {
        match letter {
            HeckeLetter::Gen(x) => self.right_mul(e, x),
            HeckeLetter::Inv(x) => self.right_mul_inverse(e, x),
        }
    }

    /// Expresses a word in the normal-form basis.
    pub fn reduce(&self, word: &[HeckeLetter]) -> Result<HeckeElement<S>> {
        for l in word {
            self.check_gen(l.generator())?;
        }
        Ok(word
            .iter()
            .fold(self.one(), |acc, &l| self.right_mul_letter(&acc, l)))
    }

    /// `τ_1 = τ`, `τ_i = σ_{i−1}⁻¹ τ_{i−1} σ_{i−1}`.
    pub fn tau(&self, i: usize) -> Result<HeckeElement<S>> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                name: "τ_i",
                index: i,
                max: self.n(),
            });
        }
        let mut word: Vec<HeckeLetter> = (1..i).rev().map(|k| HeckeLetter::Inv(HeckeGen::Sigma(k))).collect();
        word.push(HeckeLetter::Gen(HeckeGen::Tau));
        word.extend((1..i).map(|k| HeckeLetter::Gen(HeckeGen::Sigma(k))));
        self.reduce(&word)
    }

    /// `(1 + qσ_{n−1} + q²σ_{n−2}σ_{n−1} + ⋯ + q^{n−1}σ_1⋯σ_{n−1})(1 + pτ_n)`.
    pub fn shuffle_element(&self) -> Result<HeckeElement<S>> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidParams("the shuffle needs n ≥ 1".into()));
        }
        let tau_n = self.tau(n)?;
        let factor = self.one().add_scaled(&tau_n, &self.p);
        let mut out = HeckeElement::zero();
        let mut qk = S::one();
        for k in 0..n {
            let prefix: Vec<HeckeLetter> = (n - k..n).map(|i| HeckeLetter::Gen(HeckeGen::Sigma(i))).collect();
            let pre = self.reduce(&prefix)?;
            out = out.add_scaled(&self.multiply(&pre, &factor), &qk);
            qk = qk * self.q.clone();
        }
        Ok(out)
    }

    /// `a·b`, by right-multiplying `a` with the letters of each basis word of `b`.
    pub fn multiply(&self, a: &HeckeElement<S>, b: &HeckeElement<S>) -> HeckeElement<S> {
        let mut out = HeckeElement::zero();
        for (&k, c) in &b.coeffs {
            let prod = self
                .basis()
                .word(k)
                .into_iter()
                .fold(a.clone(), |acc, x| self.right_mul(&acc, x));
            out = out.add_scaled(&prod, c);
        }
        out
    }

    /// Matrix of `y ↦ e·y`; column `b` holds `e·b`. Basis words share
    /// prefixes, so the products are built level by level.
    pub fn left_matrix(&self, e: &HeckeElement<S>) -> Matrix<S> {
        let dim = self.dim();
        let mut out = Matrix::zeros(dim, dim);
        self.fill(e.clone(), 1, 0, &mut out);
        out
    }

    fn fill(&self, current: HeckeElement<S>, r: usize, offset: usize, out: &mut Matrix<S>) {
        if r > self.n() {
            for (&k, c) in &current.coeffs {
                out.set(k, offset, c.clone());
            }
            return;
        }
        let stride = self.basis().stride(r);
        for alpha in 0..2u8 {
            for j in 0..r as u8 {
                let level = crate::group::Level { alpha, j };
                let next = tail_gens(r, level)
                    .into_iter()
                    .fold(current.clone(), |acc, x| self.right_mul(&acc, x));
                let digit = alpha as usize * r + j as usize;
                self.fill(next, r + 1, offset + digit * stride, out);
            }
        }
    }

    pub fn generator_matrix(&self, x: HeckeGen) -> Result<Matrix<S>> {
        self.check_gen(x)?;
        Ok(self.left_matrix(&self.right_mul(&self.one(), x)))
    }

    pub fn shuffle_matrix(&self) -> Result<Matrix<S>> {
        Ok(self.left_matrix(&self.shuffle_element()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::word::parse_hecke_word;
    use num_rational::BigRational;
    use num_traits::Zero;
    use HeckeGen::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn exact(n: usize) -> HeckeAlgebra<BigRational> {
        HeckeAlgebra::new(n, r(3, 2), r(5, 3)).unwrap()
    }

    fn mat(h: &HeckeAlgebra<BigRational>, word: &str) -> Matrix<BigRational> {
        h.left_matrix(&h.reduce(&parse_hecke_word(word).unwrap()).unwrap())
    }

    #[test]
    fn quadratic_relations() {
        let h = exact(2);
        let (big_q, big_p) = (r(3, 2) - r(2, 3), r(5, 3) - r(3, 5));
        let s = h.reduce(&parse_hecke_word("σ1").unwrap()).unwrap();
        let t = h.reduce(&parse_hecke_word("τ").unwrap()).unwrap();
        let ss = h.reduce(&parse_hecke_word("σ1 σ1").unwrap()).unwrap();
        assert_eq!(ss, h.one().add_scaled(&s, &big_q));
        let tt = h.reduce(&parse_hecke_word("τ τ").unwrap()).unwrap();
        assert_eq!(tt, h.one().add_scaled(&t, &big_p));
        assert_eq!(h.reduce(&parse_hecke_word("σ1^-1 σ1").unwrap()).unwrap(), h.one());
        assert_eq!(h.reduce(&parse_hecke_word("τ τ^-1").unwrap()).unwrap(), h.one());
    }

    #[test]
    fn relations_as_matrices() {
        let h = exact(3);
        assert_eq!(mat(&h, "σ1 σ2 σ1"), mat(&h, "σ2 σ1 σ2"));
        assert_eq!(mat(&h, "τ σ1 τ σ1"), mat(&h, "σ1 τ σ1 τ"));
        assert_eq!(mat(&h, "τ σ2"), mat(&h, "σ2 τ"));
        let one = Matrix::identity(h.dim());
        let s = h.generator_matrix(Sigma(2)).unwrap();
        let big_q = r(3, 2) - r(2, 3);
        assert_eq!(s.mul(&s), s.scale(&big_q).add(&one));
        // left multiplication is a representation
        assert_eq!(mat(&h, "τ σ1 σ2"), mat(&h, "τ").mul(&mat(&h, "σ1")).mul(&mat(&h, "σ2")));
    }

    #[test]
    fn commuting_generators_n4() {
        let h = exact(4);
        assert_eq!(mat(&h, "σ1 σ3"), mat(&h, "σ3 σ1"));
        assert_eq!(mat(&h, "τ σ3"), mat(&h, "σ3 τ"));
        assert_eq!(mat(&h, "σ2 σ3 σ2"), mat(&h, "σ3 σ2 σ3"));
    }

    #[test]
    fn basis_words_reduce_to_themselves() {
        let h = exact(3);
        for b in 0..h.dim() {
            let word: Vec<HeckeLetter> = h.basis().word(b).into_iter().map(HeckeLetter::Gen).collect();
            assert_eq!(h.reduce(&word).unwrap(), HeckeElement::basis(b));
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let h = exact(2);
        assert!(h.reduce(&parse_hecke_word("σ2").unwrap()).is_err());
        assert!(h.generator_matrix(Sigma(0)).is_err());
    }

    #[test]
    fn shuffle_trace() {
        // the trace equals the dimension only at q = p = 1
        for n in 1..=4 {
            let h = HeckeAlgebra::new(n, r(1, 1), r(1, 1)).unwrap();
            let m = h.shuffle_matrix().unwrap();
            assert_eq!(m.trace(), BigRational::from_integer((h.dim() as i64).into()), "n = {n}");
        }
        // n = 1: tr(1 + pτ) = 2 + p(p − p⁻¹) = 1 + p²
        let h = exact(1);
        assert_eq!(h.shuffle_matrix().unwrap().trace(), r(1, 1) + r(25, 9));
        assert_ne!(exact(2).shuffle_matrix().unwrap().trace(), r(8, 1));
    }

    #[test]
    fn n1_shuffle_is_one_plus_p_tau() {
        let h = exact(1);
        let e = h.shuffle_element().unwrap();
        let t = h.reduce(&[HeckeLetter::Gen(Tau)]).unwrap();
        assert_eq!(e, h.one().add_scaled(&t, &r(5, 3)));
    }

    #[test]
    fn tau_i_satisfies_the_tau_quadratic() {
        let h = exact(3);
        let big_p = r(5, 3) - r(3, 5);
        for i in 1..=3 {
            let t = h.tau(i).unwrap();
            assert_eq!(h.multiply(&t, &t), h.one().add_scaled(&t, &big_p), "i = {i}");
        }
        let word = parse_hecke_word("σ1^-1 τ σ1").unwrap();
        assert_eq!(h.tau(2).unwrap(), h.reduce(&word).unwrap());
    }

    #[test]
    fn shuffle_matrix_from_generator_matrices() {
        let n = 3;
        let h = exact(n);
        let dim = h.dim();
        let one = Matrix::identity(dim);
        let big_q = r(3, 2) - r(2, 3);
        let sigma = |i| h.generator_matrix(Sigma(i)).unwrap();
        let sigma_inv = |i| sigma(i).sub(&one.scale(&big_q));
        let mut tau = h.generator_matrix(Tau).unwrap();
        for i in 1..n {
            tau = sigma_inv(i).mul(&tau).mul(&sigma(i));
        }
        let factor = one.add(&tau.scale(&r(5, 3)));
        let mut total = Matrix::zeros(dim, dim);
        let mut qk = r(1, 1);
        for k in 0..n {
            let prefix = (n - k..n).fold(one.clone(), |acc, i| acc.mul(&sigma(i)));
            total = total.add(&prefix.mul(&factor).scale(&qk));
            qk = qk * r(3, 2);
        }
        assert_eq!(h.shuffle_matrix().unwrap(), total);
    }

    #[test]
    fn classical_reduce_is_the_group_product() {
        use crate::group::{evaluate_letters, Letter};
        let n = 3;
        let h = HeckeAlgebra::new(n, r(1, 1), r(1, 1)).unwrap();
        let params = crate::group::GroupParams::new(2, n).unwrap();
        for text in ["σ1 τ σ2 σ1^-1 τ", "τ τ σ2", "(σ2 τ σ1)^-1 σ1", "σ1 σ2 σ1 σ2 σ1 σ2"] {
            let word = parse_hecke_word(text).unwrap();
            let e = h.reduce(&word).unwrap();
            assert_eq!(e.terms().len(), 1, "{text}");
            let (&b, c) = e.terms().iter().next().unwrap();
            assert_eq!(*c, r(1, 1));
            let letters: Vec<Letter> = word
                .iter()
                .map(|l| match l.generator() {
                    Tau => Letter::t(1),
                    Sigma(i) => Letter::s(i),
                })
                .collect();
            assert_eq!(h.basis().to_group_element(b), evaluate_letters(params, &letters), "{text}");
        }
    }

    #[test]
    fn classical_generator_matrices_are_the_regular_representation() {
        use crate::algebra::{regular_matrix, AlgebraElement};
        use crate::group::{Generator, Group, GroupElement, GroupParams};
        let n = 3;
        let h = HeckeAlgebra::new(n, r(1, 1), r(1, 1)).unwrap();
        let params = GroupParams::new(2, n).unwrap();
        let group = Group::new(params, 1000).unwrap();
        let to_group: Vec<usize> = (0..h.dim())
            .map(|b| group.index_of(&h.basis().to_group_element(b)))
            .collect();
        let pairs = [(Tau, Generator::T), (Sigma(1), Generator::S(1)), (Sigma(2), Generator::S(2))];
        for (x, g) in pairs {
            let m = h.generator_matrix(x).unwrap();
            for j in 0..h.dim() {
                let col: Vec<&BigRational> = (0..h.dim()).map(|i| m.get(i, j)).filter(|c| !c.is_zero()).collect();
                assert_eq!(col, vec![&r(1, 1)], "{x}: column {j} is not a permutation column");
            }
            let delta = AlgebraElement::basis(&GroupElement::generator(params, g).unwrap());
            let reg = regular_matrix(&delta, 1000).unwrap();
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    assert_eq!(m.get(i, j), reg.get(to_group[i], to_group[j]));
                }
            }
        }
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        let e = exact(2).shuffle_matrix().unwrap();
        let f = HeckeAlgebra::new(2, 1.5, 5.0 / 3.0).unwrap().shuffle_matrix().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert!((e.get(i, j).to_f64() - f.get(i, j)).abs() < 1e-12);
            }
        }
    }
}
