//! Finite fibered category theory, decided exhaustively.
//!
//! The crate provides fully tabulated finite categories and functors
//! ([`fincat`]), cartesian-morphism analysis and fibration verification
//! ([`fibration`]), the standard constructions that produce fibered
//! categories — family fibrations, internal categories and their
//! externalizations, the Grothendieck construction, subfibrations of a map
//! and their stack completions ([`constructions`]) — and decision procedures
//! for every notion of generic object together with bounded counterexample
//! search ([`classify`]).
//!
//! Everything is deterministic: tie-breaking is by least index throughout,
//! and no randomness is used anywhere.

pub mod builders;
pub mod classify;
pub mod constructions;
pub mod fibration;
pub mod fincat;
pub mod io;
pub mod suite;

pub use fibration::Fibration;
pub use fincat::{FinCat, FinFunctor};
