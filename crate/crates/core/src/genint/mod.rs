//! Generalized intertwining operators between twisted modules and the weak
//! module structure Y_H on them.

pub mod action;
pub mod verify;

pub use action::{apply_yh, apply_yh_with, tensor_weight, GenInt, JSum};
pub use verify::{
    compare_gen, verify_h_associativity, verify_h_derivative, verify_slot_action, verify_technical_one, verify_truncation,
    verify_vacuum_identity, verify_weak_commutativity,
};

#[cfg(test)]
mod tests;
