//! Decision procedures for generic-object notions, smallness, the
//! implication diagram, the lifting-property lemma, and bounded
//! counterexample search.

pub mod predicates;
pub mod report;
pub mod rlp;
pub mod search;
pub mod smallness;
