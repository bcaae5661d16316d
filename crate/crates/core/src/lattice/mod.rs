//! Hirzebruch–Jung plumbings, negative definite unimodular forms, the
//! characteristic invariant `Θ` and the splitting of `⟨−1⟩` summands.

mod form;
mod hnk;
mod plumbing;
mod theta;

pub use form::IntegerQuadraticForm;
pub use hnk::{hnk_split_diagonalize, HnkSplit};
pub use plumbing::{hj_expand, plumbing_form, PlumbingGraph};
pub use theta::{min_characteristic_norm, theta_invariant, theta_invariant_with};
