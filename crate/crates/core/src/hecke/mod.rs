//! The cyclotomic Hecke algebra `H(2,1,n)` with `τ`-eigenvalues `p`, `−p⁻¹`.

mod algebra;
mod basis;
mod conjecture;
mod scalar;
mod word;

pub use algebra::{HeckeAlgebra, HeckeElement};
pub use basis::{HeckeBasis, HeckeGen, Monomial, StructureTable};
pub use conjecture::{
    check_classical, check_conjecture, conjectured_spectrum, q_number, ClassicalReport,
    ConjectureReport, ConjecturedSpectrum, HeckeParams, KernelDims, ValueData, Verdicts,
    DEFAULT_HECKE_MAX_N, HECKE_TOLERANCE,
};
pub use scalar::Scalar;
pub use word::{parse_hecke_word, HeckeLetter};
