//! Rotational permutations of polygonal cards.
//!
//! The complex reflection group `G(m,1,n)` is modelled as the group of
//! rearrangements of a deck of `n` cards, each card an `m`-gon that can be
//! rotated by multiples of `2π/m`. On top of the exact group arithmetic the
//! crate provides:
//!
//! * [`group`]: elements, generators, enumeration, the tail normal form and
//!   the Schreier coset graph for the chain `G(m,1,n−1) ⊂ G(m,1,n)`;
//! * [`words`]: a parser for generator words and a string rewriting system
//!   whose irreducible words are exactly the tail normal forms;
//! * [`algebra`]: exact rational arithmetic in `ℚG(m,1,n)`, the 1-shuffle
//!   element, shuffle elements, symmetrizers, the eigenprojectors of the
//!   shuffle and the eigenvalue/multiplicity report;
//! * [`markov`]: the top-to-random walk on `G(m,1,n)`, its exact transition
//!   matrix, total variation decay and a seeded Monte-Carlo sampler;
//! * [`hecke`]: the cyclotomic Hecke algebra `H(2,1,n)`, its left regular
//!   representation and a numeric test of the conjectured shuffle spectrum.
//!
//! All values are immutable after construction; every operation is a pure
//! function of its inputs.

pub mod algebra;
pub mod error;
pub mod group;
pub mod hecke;
pub mod linalg;
pub mod markov;
pub mod words;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupParams};
