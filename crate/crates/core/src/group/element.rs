use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::params::GroupParams;
use crate::error::{Error, Result};

/// A generator of `G(m,1,n)`. Indices are 1-based as in the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Rotates the first card by one click.
    T,
    /// Swaps cards `i` and `i+1`.
    S(usize),
    /// Rotates the `i`-th card by one click; `t_1 = t` and `t_{i+1} = s_i t_i s_i`.
    TI(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T => write!(f, "t"),
            Generator::S(i) => write!(f, "s{i}"),
            Generator::TI(i) => write!(f, "t{i}"),
        }
    }
}

/// A rotational permutation of an `n`-deck of `m`-cards.
///
/// Position `j` of the deck holds card `images[j]` rotated clockwise by
/// `rotations[j]` clicks. Internally the two arrays are packed into one
/// buffer, rotations first, so the derived ordering is lexicographic on
/// `(rotations, images)`. Card labels are 0-based in this API and 1-based in
/// every textual form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: u8,
    data: SmallVec<[u8; 16]>,
}

impl GroupElement {
    pub fn identity(params: GroupParams) -> Self {
        let n = params.n();
        let mut data = SmallVec::with_capacity(2 * n);
        data.extend(std::iter::repeat_n(0u8, n));
        data.extend((0..n).map(|j| j as u8));
        GroupElement {
            m: params.m() as u8,
            data,
        }
    }

    /// Builds an element from 0-based images and rotation exponents.
    pub fn from_parts(params: GroupParams, images: &[usize], rotations: &[usize]) -> Result<Self> {
        let n = params.n();
        if images.len() != n || rotations.len() != n {
            return Err(Error::InvalidParams(format!(
                "expected {n} images and rotations, got {} and {}",
                images.len(),
                rotations.len()
            )));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParams(format!(
                    "images {images:?} are not a permutation of 0..{n}"
                )));
            }
        }
        if let Some(&k) = rotations.iter().find(|&&k| k >= params.m()) {
            return Err(Error::InvalidParams(format!(
                "rotation {k} outside 0..{}",
                params.m()
            )));
        }
        let mut data = SmallVec::with_capacity(2 * n);
        data.extend(rotations.iter().map(|&k| k as u8));
        data.extend(images.iter().map(|&x| x as u8));
        Ok(GroupElement {
            m: params.m() as u8,
            data,
        })
    }

    /// Builds an element from 1-based card labels, the textual convention.
    pub fn from_deck(params: GroupParams, cards: &[usize], rotations: &[usize]) -> Result<Self> {
        if cards.contains(&0) {
            return Err(Error::InvalidParams("card labels are 1-based".into()));
        }
        let images: Vec<usize> = cards.iter().map(|&x| x - 1).collect();
        Self::from_parts(params, &images, rotations)
    }

    pub fn generator(params: GroupParams, generator: Generator) -> Result<Self> {
        let n = params.n();
        let mut g = Self::identity(params);
        match generator {
            Generator::T => {
                if n == 0 {
                    return Err(Error::IndexOutOfRange {
                        name: "t",
                        index: 1,
                        max: 0,
                    });
                }
                g.data[0] = (1 % params.m()) as u8;
            }
            Generator::TI(i) => {
                if i == 0 || i > n {
                    return Err(Error::IndexOutOfRange {
                        name: "t_i",
                        index: i,
                        max: n,
                    });
                }
                g.data[i - 1] = (1 % params.m()) as u8;
            }
            Generator::S(i) => {
                if i == 0 || i >= n {
                    return Err(Error::IndexOutOfRange {
                        name: "s_i",
                        index: i,
                        max: n.saturating_sub(1),
                    });
                }
                g.data.swap(n + i - 1, n + i);
            }
        }
        Ok(g)
    }

    /// `t^k`, exponent taken mod `m`.
    pub fn t_power(params: GroupParams, k: usize) -> Result<Self> {
        let mut g = Self::generator(params, Generator::T)?;
        g.data[0] = (k % params.m()) as u8;
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.data.len() / 2
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn params(&self) -> GroupParams {
        GroupParams::new(self.m(), self.n()).expect("element carries valid params")
    }

    /// 0-based card label at each position.
    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.data[self.n()..]
    }

    /// Rotation exponent at each position.
    #[inline]
    pub fn rotations(&self) -> &[u8] {
        &self.data[..self.n()]
    }

    pub fn is_identity(&self) -> bool {
        self.rotations().iter().all(|&k| k == 0)
            && self.images().iter().enumerate().all(|(j, &x)| j == x as usize)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::ParamsMismatch {
                left: self.params().to_string(),
                right: other.params().to_string(),
            });
        }
        Ok(self.compose(other))
    }

    /// Composition without the params check.
    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = self.n();
        let m = self.m;
        let (g_rot, g_img) = self.data.split_at(n);
        let (h_rot, h_img) = other.data.split_at(n);
        let mut data: SmallVec<[u8; 16]> = SmallVec::with_capacity(2 * n);
        for j in 0..n {
            let x = h_img[j] as usize;
            data.push(((h_rot[j] as u16 + g_rot[x] as u16) % m as u16) as u8);
        }
        for j in 0..n {
            data.push(g_img[h_img[j] as usize]);
        }
        GroupElement { m, data }
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let m = self.m as u16;
        let mut data: SmallVec<[u8; 16]> = SmallVec::from_elem(0, 2 * n);
        for j in 0..n {
            let x = self.data[n + j] as usize;
            data[n + x] = j as u8;
            data[x] = ((m - self.data[j] as u16 % m) % m) as u8;
        }
        GroupElement { m: self.m, data }
    }

    pub fn pow(&self, k: usize) -> GroupElement {
        let mut acc = GroupElement::identity(self.params());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Number of cards left in place with no rotation.
    pub fn fixed_points(&self) -> usize {
        let n = self.n();
        (0..n)
            .filter(|&j| self.data[n + j] as usize == j && self.data[j] == 0)
            .count()
    }

    /// 0-based position holding card `card`.
    pub fn position_of(&self, card: usize) -> usize {
        self.images()
            .iter()
            .position(|&x| x as usize == card)
            .expect("images form a permutation")
    }

    /// Standard inclusion `G(m,1,n) ⊂ G(m,1,n')`: cards beyond `n` stay put.
    pub fn embed(&self, n_new: usize) -> GroupElement {
        self.shift(0, n_new)
    }

    /// Moves the element onto cards `offset+1 ..= offset+n` of an
    /// `n_new`-deck, the image of `s_i ↦ s_{i+offset}`.
    pub fn shift(&self, offset: usize, n_new: usize) -> GroupElement {
        let n = self.n();
        assert!(offset + n <= n_new, "shifted element does not fit");
        let mut data: SmallVec<[u8; 16]> = SmallVec::from_elem(0, 2 * n_new);
        for j in 0..n_new {
            data[n_new + j] = j as u8;
        }
        for j in 0..n {
            data[offset + j] = self.data[j];
            data[n_new + offset + j] = self.data[n + j] + offset as u8;
        }
        GroupElement { m: self.m, data }
    }

    /// Serializable form with 1-based card labels.
    pub fn to_record(&self) -> ElementRecord {
        ElementRecord {
            images: self.images().iter().map(|&x| x as usize + 1).collect(),
            rotations: self.rotations().iter().map(|&k| k as usize).collect(),
        }
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    /// # Panics
    /// When the operands come from different groups.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.multiply(rhs).expect("group elements from the same group")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[(x_1,k_1) … (x_n,k_n)]` with 1-based labels.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, (x, k)) in self.images().iter().zip(self.rotations()).enumerate() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "({},{})", x + 1, k)?;
        }
        write!(f, "]")
    }
}

/// JSON shape `{"images":[...],"rotations":[...]}` with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub images: Vec<usize>,
    pub rotations: Vec<usize>,
}

impl ElementRecord {
    pub fn into_element(self, params: GroupParams) -> Result<GroupElement> {
        GroupElement::from_deck(params, &self.images, &self.rotations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(m: usize, n: usize) -> GroupParams {
        GroupParams::new(m, n).unwrap()
    }

    fn deck(g: &GroupElement) -> (Vec<usize>, Vec<usize>) {
        let r = g.to_record();
        (r.images, r.rotations)
    }

    #[test]
    fn identity_examples() {
        assert_eq!(deck(&GroupElement::identity(gp(2, 3))), (vec![1, 2, 3], vec![0, 0, 0]));
        assert_eq!(deck(&GroupElement::identity(gp(1, 1))), (vec![1], vec![0]));
        assert_eq!(deck(&GroupElement::identity(gp(5, 0))), (vec![], vec![]));
    }

    #[test]
    fn generator_examples() {
        let t = GroupElement::generator(gp(3, 2), Generator::T).unwrap();
        assert_eq!(deck(&t), (vec![1, 2], vec![1, 0]));
        let s1 = GroupElement::generator(gp(2, 2), Generator::S(1)).unwrap();
        assert_eq!(deck(&s1), (vec![2, 1], vec![0, 0]));
        let t2 = GroupElement::generator(gp(2, 3), Generator::TI(2)).unwrap();
        assert_eq!(deck(&t2), (vec![1, 2, 3], vec![0, 1, 0]));
    }

    #[test]
    fn generator_range_errors() {
        let p = gp(2, 3);
        assert!(GroupElement::generator(p, Generator::S(0)).is_err());
        assert!(GroupElement::generator(p, Generator::S(3)).is_err());
        assert!(GroupElement::generator(p, Generator::TI(4)).is_err());
        assert!(GroupElement::generator(gp(2, 0), Generator::T).is_err());
    }

    #[test]
    fn t_is_trivial_for_m_one() {
        let t = GroupElement::generator(gp(1, 3), Generator::T).unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn s1_t_s1_is_t2() {
        for m in 2..5 {
            let p = gp(m, 2);
            let s1 = GroupElement::generator(p, Generator::S(1)).unwrap();
            let t = GroupElement::generator(p, Generator::T).unwrap();
            let t2 = GroupElement::generator(p, Generator::TI(2)).unwrap();
            assert_eq!(&(&s1 * &t) * &s1, t2);
            assert_eq!(deck(&t2), (vec![1, 2], vec![0, 1]));
        }
    }

    #[test]
    fn t_has_order_m() {
        for m in 1..6 {
            let t = GroupElement::generator(gp(m, 3), Generator::T).unwrap();
            assert!(t.pow(m).is_identity());
            if m > 1 {
                assert!(!t.pow(m - 1).is_identity());
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let p = gp(4, 3);
        let s2 = GroupElement::generator(p, Generator::S(2)).unwrap();
        assert_eq!(s2.inverse(), s2);
        let t = GroupElement::generator(p, Generator::T).unwrap();
        assert_eq!(t.inverse(), t.pow(3));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(GroupElement::identity(gp(2, 4)).fixed_points(), 4);
        let t = GroupElement::generator(gp(3, 3), Generator::T).unwrap();
        assert_eq!(t.fixed_points(), 2);
        let s1 = GroupElement::generator(gp(1, 3), Generator::S(1)).unwrap();
        assert_eq!(s1.fixed_points(), 1);
    }

    #[test]
    fn mismatched_params() {
        let a = GroupElement::identity(gp(2, 3));
        let b = GroupElement::identity(gp(3, 3));
        let c = GroupElement::identity(gp(2, 2));
        assert!(matches!(a.multiply(&b), Err(Error::ParamsMismatch { .. })));
        assert!(a.multiply(&c).is_err());
    }

    #[test]
    fn from_parts_validation() {
        let p = gp(2, 3);
        assert!(GroupElement::from_parts(p, &[0, 0, 1], &[0, 0, 0]).is_err());
        assert!(GroupElement::from_parts(p, &[0, 1, 2], &[0, 2, 0]).is_err());
        assert!(GroupElement::from_parts(p, &[0, 1], &[0, 0]).is_err());
        assert!(GroupElement::from_deck(p, &[0, 1, 2], &[0, 0, 0]).is_err());
        let g = GroupElement::from_deck(p, &[3, 1, 2], &[1, 0, 1]).unwrap();
        assert_eq!(g.images(), &[2, 0, 1]);
        assert_eq!(g.to_record().into_element(p).unwrap(), g);
    }

    #[test]
    fn json_shape() {
        let g = GroupElement::from_deck(gp(3, 2), &[2, 1], &[2, 0]).unwrap();
        let json = serde_json::to_string(&g.to_record()).unwrap();
        assert_eq!(json, r#"{"images":[2,1],"rotations":[2,0]}"#);
    }

    #[test]
    fn embed_and_shift() {
        let p = gp(2, 2);
        let t = GroupElement::generator(p, Generator::T).unwrap();
        let s1 = GroupElement::generator(p, Generator::S(1)).unwrap();
        let big = gp(2, 4);
        assert_eq!(t.embed(4), GroupElement::generator(big, Generator::T).unwrap());
        assert_eq!(s1.shift(2, 4), GroupElement::generator(big, Generator::S(3)).unwrap());
        assert_eq!(t.shift(1, 4), GroupElement::generator(big, Generator::TI(2)).unwrap());
    }
}
