use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::{Generator, Group, GroupElement, GroupParams};

fn s(params: GroupParams, i: usize) -> GroupElement {
    GroupElement::generator(params, Generator::S(i)).expect("index checked by caller")
}

/// `s_a s_{a+1} ⋯ s_b` (empty when `a > b`).
fn ascending(params: GroupParams, a: usize, b: usize) -> GroupElement {
    (a..=b).fold(GroupElement::identity(params), |acc, i| acc.compose(&s(params, i)))
}

/// `s_a s_{a−1} ⋯ s_b` (empty when `a < b`).
fn descending(params: GroupParams, a: usize, b: usize) -> GroupElement {
    (b..=a)
        .rev()
        .fold(GroupElement::identity(params), |acc, i| acc.compose(&s(params, i)))
}

/// The 1-shuffle element `(1 + s_{n−1} + s_{n−2}s_{n−1} + ⋯ + s_1⋯s_{n−1})·(1 + t_n + ⋯ + t_n^{m−1})`.
///
/// Take the top card, rotate it and insert it anywhere. At `n = 0` the sum
/// has no terms and the result is `0`.
pub fn shuffle_1(params: GroupParams) -> AlgebraElement {
    let n = params.n();
    if n == 0 {
        return AlgebraElement::zero(params);
    }
    let tn = GroupElement::generator(params, Generator::TI(n)).expect("n ≥ 1");
    let rotations: Vec<GroupElement> = (0..params.m()).map(|k| tn.pow(k)).collect();
    let mut terms = Vec::with_capacity(n * params.m());
    for k in 0..n {
        let insert = ascending(params, n - k, n - 1);
        for r in &rotations {
            terms.push(insert.compose(r));
        }
    }
    AlgebraElement::sum_of(params, terms)
}

/// Which Pascal-type recurrence builds `Ш_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShuffleRecurrence {
    /// `Ш_{p,q} = Ш_{p−1,q} + Ш_{p,q−1}·s_{p+q−1}⋯s_q`
    First,
    /// `Ш_{p,q} = Ш_{p,q−1}^{↑1} + Ш_{p−1,q}^{↑1}·s_1⋯s_q`
    Second,
}

fn check_split(params: GroupParams, p: usize, q: usize) -> Result<()> {
    if p + q != params.n() {
        return Err(Error::InvalidParams(format!(
            "shuffle sizes {p}+{q} do not add up to n = {}",
            params.n()
        )));
    }
    Ok(())
}

/// `Ш_{p,q}`, the sum of the `(p,q)`-shuffles of the symmetric group inside
/// `G(m,1,p+q)`, by the first recurrence.
pub fn shuffle_pq(params: GroupParams, p: usize, q: usize) -> Result<AlgebraElement> {
    shuffle_pq_with(params, p, q, ShuffleRecurrence::First)
}

pub fn shuffle_pq_with(
    params: GroupParams,
    p: usize,
    q: usize,
    recurrence: ShuffleRecurrence,
) -> Result<AlgebraElement> {
    check_split(params, p, q)?;
    let mut memo = HashMap::new();
    Ok(shuffle_rec(params.m(), p, q, recurrence, &mut memo))
}

fn shuffle_rec(
    m: usize,
    p: usize,
    q: usize,
    rec: ShuffleRecurrence,
    memo: &mut HashMap<(usize, usize), AlgebraElement>,
) -> AlgebraElement {
    let n = p + q;
    let params = GroupParams::new(m, n).expect("m was valid");
    if p == 0 || q == 0 {
        return AlgebraElement::one(params);
    }
    if let Some(x) = memo.get(&(p, q)) {
        return x.clone();
    }
    let x = match rec {
        ShuffleRecurrence::First => {
            let a = shuffle_rec(m, p - 1, q, rec, memo).embed(n).expect("fits");
            let b = shuffle_rec(m, p, q - 1, rec, memo)
                .embed(n)
                .expect("fits")
                .right_mul_element(&descending(params, n - 1, q));
            a.add_scaled(&b, &BigRational::one())
        }
        ShuffleRecurrence::Second => {
            let a = shuffle_rec(m, p, q - 1, rec, memo).shift(1, n).expect("fits");
            let b = shuffle_rec(m, p - 1, q, rec, memo)
                .shift(1, n)
                .expect("fits")
                .right_mul_element(&ascending(params, 1, q));
            a.add_scaled(&b, &BigRational::one())
        }
    };
    memo.insert((p, q), x.clone());
    x
}

/// `Ш_{p,q}` straight from the definition: the permutations whose images
/// increase along the first `q` positions and along the last `p` positions.
pub fn shuffle_pq_direct(params: GroupParams, p: usize, q: usize) -> Result<AlgebraElement> {
    check_split(params, p, q)?;
    let n = params.n();
    let mut terms = Vec::new();
    // every q-subset of card values goes, sorted, to the first q positions
    let mut chosen: Vec<usize> = (0..q).collect();
    loop {
        let mut images: Vec<usize> = chosen.clone();
        images.extend((0..n).filter(|v| !chosen.contains(v)));
        terms.push(GroupElement::from_parts(params, &images, &vec![0; n])?);
        // next combination in lexicographic order
        let Some(i) = (0..q).rev().find(|&i| chosen[i] < n - q + i) else {
            break;
        };
        chosen[i] += 1;
        for k in i + 1..q {
            chosen[k] = chosen[k - 1] + 1;
        }
    }
    Ok(AlgebraElement::sum_of(params, terms))
}

/// `Σ̃`: the sum of all elements of `G(m,1,n)`.
pub fn symmetrizer(params: GroupParams, cap: u128) -> Result<AlgebraElement> {
    let group = Group::new(params, cap)?;
    Ok(AlgebraElement::sum_of(params, group.elements().iter().cloned()))
}

/// Sum of `G(m,1,a)` acting on cards `offset+1 ..= offset+a` of the deck.
pub fn symmetrizer_on(params: GroupParams, offset: usize, a: usize, cap: u128) -> Result<AlgebraElement> {
    symmetrizer(params.with_n(a)?, cap)?.shift(offset, params.n())
}

/// The longest element of `S_n ⊂ G(m,1,n)`: the deck reversed.
pub fn longest_element(params: GroupParams) -> GroupElement {
    let n = params.n();
    let images: Vec<usize> = (0..n).rev().collect();
    GroupElement::from_parts(params, &images, &vec![0; n]).expect("a permutation")
}

/// `B_a = Ш_{n−a,a}·Σ̃_a`, with `Σ̃_a` on the first `a` cards.
///
/// This is the sum over all ways of taking an `a`-deck in any arrangement
/// and rotation and riffling it into the other `n−a` cards; see
/// [`b_element_from_decks`] for the literal construction.
pub fn b_element(params: GroupParams, a: usize, cap: u128) -> Result<AlgebraElement> {
    let n = params.n();
    if a > n {
        return Err(Error::IndexOutOfRange {
            name: "a",
            index: a,
            max: n,
        });
    }
    params.check_cap(cap)?;
    let sh = shuffle_pq(params, n - a, a)?;
    Ok(sh.convolve_unchecked(&symmetrizer_on(params, 0, a, cap)?))
}

/// `B_a` built deck by deck: every `a`-deck `α` of `G(m,1,a)` is placed on
/// every choice of `a` positions, the cards `a+1, …, n` fill the remaining
/// positions in order. The deck `D` acts as the element `D⁻¹`, since left
/// multiplication relabels cards.
pub fn b_element_from_decks(params: GroupParams, a: usize, cap: u128) -> Result<AlgebraElement> {
    let n = params.n();
    if a > n {
        return Err(Error::IndexOutOfRange {
            name: "a",
            index: a,
            max: n,
        });
    }
    params.check_cap(cap)?;
    let small = Group::new(params.with_n(a)?, cap)?;
    let mut terms = Vec::new();
    let mut chosen: Vec<usize> = (0..a).collect();
    loop {
        for alpha in small.elements() {
            let mut images = vec![0; n];
            let mut rotations = vec![0; n];
            let mut rest = a..n;
            let mut k = 0;
            for pos in 0..n {
                if k < a && chosen[k] == pos {
                    images[pos] = alpha.images()[k] as usize;
                    rotations[pos] = alpha.rotations()[k] as usize;
                    k += 1;
                } else {
                    images[pos] = rest.next().expect("n − a cards left");
                }
            }
            terms.push(GroupElement::from_parts(params, &images, &rotations)?.inverse());
        }
        let Some(i) = (0..a).rev().find(|&i| chosen[i] < n - a + i) else {
            break;
        };
        chosen[i] += 1;
        for k in i + 1..a {
            chosen[k] = chosen[k - 1] + 1;
        }
    }
    Ok(AlgebraElement::sum_of(params, terms))
}

/// All of `B_0, …, B_n`.
pub fn b_elements(params: GroupParams, cap: u128) -> Result<Vec<AlgebraElement>> {
    (0..=params.n()).map(|a| b_element(params, a, cap)).collect()
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `E_i = (1/i!) Σ_{a=i}^{n} (−1)^{a−i} / ((a−i)!·m^a) · B_a` from precomputed `B_a`.
pub fn projector_from(bs: &[AlgebraElement], i: usize) -> AlgebraElement {
    let params = bs[0].params();
    let n = params.n();
    let m = BigInt::from(params.m());
    let mut out = AlgebraElement::zero(params);
    for (a, b) in bs.iter().enumerate().take(n + 1).skip(i) {
        let sign = if (a - i) % 2 == 0 { 1 } else { -1 };
        let den = factorial(i) * factorial(a - i) * num_traits::pow(m.clone(), a);
        let c = BigRational::new(BigInt::from(sign), den);
        out = out.add_scaled(b, &c);
    }
    out
}

pub fn projector(params: GroupParams, i: usize, cap: u128) -> Result<AlgebraElement> {
    if i > params.n() {
        return Err(Error::IndexOutOfRange {
            name: "i",
            index: i,
            max: params.n(),
        });
    }
    Ok(projector_from(&b_elements(params, cap)?, i))
}

/// `E_0, …, E_n`.
pub fn projectors(params: GroupParams, cap: u128) -> Result<Vec<AlgebraElement>> {
    let bs = b_elements(params, cap)?;
    Ok((0..=params.n()).map(|i| projector_from(&bs, i)).collect())
}

/// `Π_{i∈factors} (x − i·m)`, multiplied left to right.
pub fn shifted_product(x: &AlgebraElement, factors: impl IntoIterator<Item = usize>) -> AlgebraElement {
    let m = x.params().m() as i64;
    factors.into_iter().fold(AlgebraElement::one(x.params()), |acc, i| {
        let f = x.add_scalar(&BigRational::from_integer(BigInt::from(-(i as i64) * m)));
        acc.convolve_unchecked(&f)
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::rat;
    use crate::group::DEFAULT_ORDER_CAP;

    fn p(m: usize, n: usize) -> GroupParams {
        GroupParams::new(m, n).unwrap()
    }

    fn word(params: GroupParams, gens: &[Generator]) -> GroupElement {
        gens.iter().fold(GroupElement::identity(params), |acc, &g| {
            acc.compose(&GroupElement::generator(params, g).unwrap())
        })
    }

    #[test]
    fn shuffle_1_examples() {
        let params = p(1, 2);
        let s1 = AlgebraElement::basis(&word(params, &[Generator::S(1)]));
        assert_eq!(shuffle_1(params), s1.add_scalar(&rat(1)));

        let params = p(2, 1);
        let t = AlgebraElement::basis(&word(params, &[Generator::T]));
        assert_eq!(shuffle_1(params), t.add_scalar(&rat(1)));

        let params = p(2, 2);
        let sh = shuffle_1(params);
        assert_eq!(sh.support_len(), 4);
        assert!(sh.terms().values().all(|c| *c == rat(1)));
        let expected = AlgebraElement::sum_of(
            params,
            [
                word(params, &[]),
                word(params, &[Generator::TI(2)]),
                word(params, &[Generator::S(1)]),
                word(params, &[Generator::S(1), Generator::TI(2)]),
            ],
        );
        assert_eq!(sh, expected);
        for (m, n) in [(3, 4), (1, 5), (4, 2)] {
            let sh = shuffle_1(p(m, n));
            assert_eq!(sh.support_len(), n * m);
        }
        assert!(shuffle_1(p(3, 0)).is_zero());
    }

    #[test]
    fn pascal_recurrences_agree() {
        for n in 0..=5 {
            for q in 0..=n {
                let params = p(2, n);
                let a = shuffle_pq_with(params, n - q, q, ShuffleRecurrence::First).unwrap();
                let b = shuffle_pq_with(params, n - q, q, ShuffleRecurrence::Second).unwrap();
                let c = shuffle_pq_direct(params, n - q, q).unwrap();
                assert_eq!(a, b, "({},{q})", n - q);
                assert_eq!(a, c, "({},{q})", n - q);
                let binom = (1..=q).fold(1usize, |acc, k| acc * (n - q + k) / k);
                assert_eq!(a.support_len(), binom);
            }
        }
        let params = p(1, 2);
        let s1 = AlgebraElement::basis(&word(params, &[Generator::S(1)]));
        assert_eq!(shuffle_pq(params, 1, 1).unwrap(), s1.add_scalar(&rat(1)));
        assert_eq!(shuffle_pq(p(2, 3), 0, 3).unwrap(), AlgebraElement::one(p(2, 3)));
        assert_eq!(shuffle_pq(p(2, 3), 3, 0).unwrap(), AlgebraElement::one(p(2, 3)));
        assert!(shuffle_pq(p(2, 3), 1, 1).is_err());
    }

    #[test]
    fn one_shuffle_is_pascal_shuffle_times_rotations() {
        for (m, n) in [(1, 4), (3, 3)] {
            let params = p(m, n);
            let tn = word(params, &[Generator::TI(n)]);
            let rot = AlgebraElement::sum_of(params, (0..m).map(|k| tn.pow(k)));
            let sh = shuffle_pq(params, 1, n - 1).unwrap();
            assert_eq!(shuffle_1(params), sh.convolve(&rot).unwrap());
        }
    }

    #[test]
    fn symmetrizer_relations() {
        let params = p(1, 2);
        let s1 = AlgebraElement::basis(&word(params, &[Generator::S(1)]));
        assert_eq!(symmetrizer(params, 100).unwrap(), s1.add_scalar(&rat(1)));

        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let params = p(m, n);
            let lower = symmetrizer_on(params, 0, n - 1, 1000).unwrap();
            let prod = shuffle_1(params).convolve(&lower).unwrap();
            assert_eq!(prod, symmetrizer(params, 1000).unwrap());
        }

        let params = p(1, 4);
        let (pp, qq) = (2, 2);
        let rhs = shuffle_pq(params, pp, qq)
            .unwrap()
            .convolve(&symmetrizer_on(params, 0, qq, 100).unwrap())
            .unwrap()
            .convolve(&symmetrizer_on(params, qq, pp, 100).unwrap())
            .unwrap();
        assert_eq!(rhs, symmetrizer(params, 100).unwrap());

        let params = p(2, 3);
        let sym = symmetrizer(params, 100).unwrap();
        let g = word(params, &[Generator::S(2), Generator::T]);
        assert_eq!(sym.left_mul_element(&g), sym);
    }

    #[test]
    fn b_elements_closed_form() {
        for (m, n) in [(2, 3), (3, 2), (1, 3)] {
            let params = p(m, n);
            let bs = b_elements(params, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(bs[0], AlgebraElement::one(params));
            let w = longest_element(params);
            let conj = shuffle_1(params).left_mul_element(&w).right_mul_element(&w.inverse());
            assert_eq!(bs[1], conj);
            for a in 0..n {
                let rhs = bs[1]
                    .add_scalar(&rat(-((a * m) as i64)))
                    .convolve(&bs[a])
                    .unwrap();
                assert_eq!(bs[a + 1], rhs, "a = {a}");
            }
            for (a, b) in bs.iter().enumerate() {
                let decks: usize = (n - a + 1..=n).product::<usize>() * m.pow(a as u32);
                assert_eq!(b.support_len(), decks);
            }
        }
    }

    #[test]
    fn b_elements_match_deck_construction() {
        let params = p(2, 3);
        for a in 0..=3 {
            assert_eq!(
                b_element(params, a, 1000).unwrap(),
                b_element_from_decks(params, a, 1000).unwrap(),
                "a = {a}"
            );
        }
        assert!(b_element(params, 4, 1000).is_err());
    }

    #[test]
    fn projector_resolution() {
        let params = p(2, 2);
        let es = projectors(params, 100).unwrap();
        let b1 = b_element(params, 1, 100).unwrap();
        let mut sum = AlgebraElement::zero(params);
        for (i, e) in es.iter().enumerate() {
            sum = sum.add(e).unwrap();
            let lhs = b1.convolve(e).unwrap();
            assert_eq!(lhs, e.scale(&rat((i * 2) as i64)));
        }
        assert_eq!(sum, AlgebraElement::one(params));
    }

    #[test]
    fn minimal_polynomial_for_s3() {
        let sh = shuffle_1(p(1, 3));
        assert!(shifted_product(&sh, 0..=3).is_zero());
        // the factor at n−1 is redundant when m = 1
        assert!(shifted_product(&sh, [0, 1, 3]).is_zero());
        assert!(!shifted_product(&sh, [0, 2, 3]).is_zero());
    }
}
