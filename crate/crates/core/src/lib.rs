//! Exact formal calculus for permutation orbifolds of vertex operator
//! algebras, on the rank-one free boson, plus orbifold fusion tables.

pub mod boson;
pub mod delta;
pub mod exact;
pub mod exec;
pub mod field;
pub mod fusion;
pub mod genint;
pub mod perm;
pub mod report;
pub mod transport;
pub mod twisted;
