pub mod arrow;
pub mod fam;
pub mod finset;
pub mod groth;
pub mod gset;
pub mod internal;
pub mod stack;
pub mod weak_split;
pub mod zoo;
