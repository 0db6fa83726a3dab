//! The rank-one Heisenberg vertex operator algebra M(1) and its Fock modules.

pub mod contragredient;
pub mod fields;
pub mod fock;
pub mod operator;
pub mod virasoro;

pub use contragredient::contragredient_apply;
pub use fields::{fock_intertwiner, mode, singular_order, vertex_operator, FockField};
pub use fock::{ground_weight, module_basis, partitions, FockMonomial, GradedVector, Parts};
pub use operator::{OperatorSeries, Window};
pub use virasoro::{virasoro, CENTRAL_CHARGE};
