//! Transport of intertwining operators between V and the cyclic permutation
//! orbifold of V^(x)k.

pub mod maps;
pub mod verify;

pub use maps::{fock, module_map, transport_forward, transport_inverse, twisted_module_map, IntertwinerMap};
pub use verify::{
    compare_maps, verify_intertwiner_associativity, verify_intertwiner_derivative, verify_transport_commutator,
};
pub use crate::delta::verify_phi_conjugation as verify_delta_property;
