use super::element::GroupElement;
use super::params::GroupParams;
use crate::error::Result;

/// All elements of `G(m,1,n)` in a fixed order, lexicographic on
/// `(rotations, images)`, with constant-time rank lookup.
#[derive(Clone, Debug)]
pub struct Group {
    params: GroupParams,
    elements: Vec<GroupElement>,
    factorial_n: usize,
}

impl Group {
    pub fn new(params: GroupParams, cap: u128) -> Result<Self> {
        let order = params.check_cap(cap)? as usize;
        let n = params.n();
        let m = params.m();
        let perms = permutations_lex(n);
        let factorial_n = perms.len();
        let mut elements = Vec::with_capacity(order);
        let mut rotations = vec![0usize; n];
        for _ in 0..order / factorial_n {
            for perm in &perms {
                elements.push(
                    GroupElement::from_parts(params, perm, &rotations)
                        .expect("enumeration produces valid elements"),
                );
            }
            // odometer, last slot fastest
            for slot in (0..n).rev() {
                rotations[slot] += 1;
                if rotations[slot] < m {
                    break;
                }
                rotations[slot] = 0;
            }
        }
        Ok(Group {
            params,
            elements,
            factorial_n,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, index: usize) -> &GroupElement {
        &self.elements[index]
    }

    /// Position of `g` in [`Group::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        debug_assert_eq!(g.params(), self.params);
        let m = self.params.m();
        let rot_rank = g
            .rotations()
            .iter()
            .fold(0usize, |acc, &k| acc * m + k as usize);
        rot_rank * self.factorial_n + permutation_rank(g.images())
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let pivot = i - 1;
        let j = (i..n).rev().find(|&j| current[j] > current[pivot]).unwrap();
        current.swap(pivot, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Lexicographic rank via the Lehmer code.
fn permutation_rank(images: &[u8]) -> usize {
    let n = images.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller_after = images[i + 1..].iter().filter(|&&x| x < images[i]).count();
        rank = rank * (n - i) + smaller_after;
    }
    rank
}
