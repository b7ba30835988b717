//! Chart on the moduli of enhanced structures and the vector field on it.

pub mod chart;
pub mod compat;
pub mod field;

pub use chart::{independent_entries, moduli_dimension, solve_dependent_entries, AuxCoord, ChartSpec};
pub use compat::{compatibility_check, compatibility_of, CompatEntry, CompatReport};
pub use field::{
    compute_y_zdot, derive_symbolic, derive_vector_field, y_matrix, Derivation, ODESystem, OmegaMode,
    SymbolicForm,
};
