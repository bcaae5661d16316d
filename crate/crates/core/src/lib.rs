//! Exact invariants of Seifert fibered 3-manifolds: Dedekind–Rademacher
//! sums, eta invariants of adiabatic Dirac operators, Seiberg–Witten–Floer
//! polynomials of Brieskorn spheres, Froyshov bounds and the Θ invariant of
//! plumbing lattices.

pub mod dedekind;
pub mod error;
pub mod laurent;
pub mod lattice;
pub mod eta;
pub mod numkernel;
pub mod orbifold;
pub mod par;
pub mod report;
pub mod seifert;
pub mod swfloer;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use numkernel::{BigFloat, ExactRational};
