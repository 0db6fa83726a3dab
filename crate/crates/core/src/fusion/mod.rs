//! Fusion rings and the orbifold fusion rule for permutation-twisted modules.

pub mod orbifold;
pub mod ring;
pub mod verify;

pub use orbifold::{
    classify_twisted, conjugate_label, conjugate_twisted, conjugate_untwisted, cycle_normal_form, iterate_fuse, named,
    orbifold_fuse, sigma_kappa, tuples, FusionError, NamedTerm, OrbifoldLabel, Partition, TwistedLabel, UntwistedLabel,
};
pub use ring::{FusionRing, Multiset, RingError};
pub use verify::verify_fusion_table;
