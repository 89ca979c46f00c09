//! Exact arithmetic in `G(m,1,n)`.

mod element;
mod enumerate;
mod letter;
mod normal_form;
mod params;
mod schreier;

pub use element::{ElementRecord, Generator, GroupElement};
pub use enumerate::Group;
pub use letter::{evaluate_letters, format_letters, Letter};
pub use normal_form::{normal_form, tail_letters, Level, NormalForm, NormalFormer};
pub use params::{GroupParams, DEFAULT_ORDER_CAP};
pub use schreier::{schreier_graph, Coset, CosetGraph, Edge, GraphShape};
