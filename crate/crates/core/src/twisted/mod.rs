//! Twisted modules T_sigma(W) for the cyclic permutation and their checks.

pub mod conjugate;
pub mod jacobi;
pub mod module;
pub mod tensor;

pub use conjugate::{conjugate_module, verify_cross_slot_commutator, Conjugated, ModuleAction, UntwistedTensor};
pub use jacobi::{verify_twisted_commutator, verify_twisted_jacobi, verify_virasoro_formula, JacobiWindow};
pub use module::{twisted_vertex, TwistedField, TwistedModule};
pub use tensor::{eigencomponent, TensorVector};
