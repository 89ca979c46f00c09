//! Exact arithmetic in the group algebra `ℚG(m,1,n)`.

mod element;
mod identities;
mod shuffle;
mod spectral;

pub use element::AlgebraElement;
pub use identities::{lower_shuffle, verify_identities, IdentityReport};
pub use shuffle::{
    b_element, b_element_from_decks, b_elements, longest_element, projector, projector_from,
    projectors, shifted_product, shuffle_1, shuffle_pq, shuffle_pq_direct, shuffle_pq_with,
    symmetrizer, symmetrizer_on, ShuffleRecurrence,
};
pub use spectral::{
    closed_form_multiplicities, derangement, fixed_point_census, regular_matrix, spectral_report,
    SpectralChecks, SpectralReport,
};
