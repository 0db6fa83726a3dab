//! The operator Delta_k(z) on the free boson and its identities.

pub mod coeffs;
pub mod image;
pub mod verify;

pub use coeffs::{coefficients, satisfies_definition, solve_an, DeltaCoefficients};
pub use image::{apply_delta, apply_phi, compose, DeltaImage};
pub use verify::{
    compare_series, verify_delta_conjugation, verify_delta_omega, verify_derivative_identity, verify_l_minus_one_bracket,
    verify_phi_conjugation, VectorSeries,
};
