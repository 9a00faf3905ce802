//! Exact finite-dimensional state engine.
//!
//! Registers are ordered lists of three-level atoms (basis `g, e, i`) and
//! Fock-truncated field modes (basis `0, 1, …, n_max`). Flat indices are
//! row-major: the leftmost subsystem is the most significant digit.

mod matrix;
mod operator;
mod qubit;
mod register;
mod state;

pub use matrix::{
    dagger, hermitian_eigenvalues, identity, is_unitary, kraus_completeness_error, kron,
    max_abs_diff, Matrix, Vector, C64,
};
pub use operator::{LocalOperator, OperatorKind};
pub use qubit::{bloch_vector, qubit_reduce, QubitBasis, ReducedQubit, DEFAULT_LEAKAGE_TOLERANCE};
pub use register::{make_register, RegisterLayout, SubsystemKind, SubsystemSpec};
pub use state::{fidelity_pure, product_state, DensityState, PureState};

/// Tolerance for identities that hold in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for validating caller-supplied normalisation.
pub const INPUT_TOL: f64 = 1e-9;
