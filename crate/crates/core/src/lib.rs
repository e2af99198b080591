//! Entanglement entropy of pure two-atom (two-qubit) states from the
//! magnitude of one atom's mean spin vector.
//!
//! For a pure state `|Ψ⟩ = c1·u1⊗v1 + c2·u2⊗v2` the mean spin vector of
//! either atom has magnitude `r = (c1² − c2²)/2`, so the von Neumann entropy
//! of either reduced state is `H₂(½ + r)` bits. The crate computes that
//! entropy from the reduced-state spectrum and from `r`, checks the two
//! agree, and estimates `r` (and so the entropy) from simulated finite-shot
//! spin measurements.
//!
//! Modules:
//! - [`qstate`]: spin operators, states, partial trace, mean spin vector
//! - [`schmidt`]: closed-form 2×2 Schmidt decomposition
//! - [`entropy`]: both entropy routes and the entangled/unentangled call
//! - [`measurement`]: shot-noise simulation and estimators
//! - [`batch`]: Haar-random equivalence checks and seed sweeps, parallel
//!   when the `parallel` feature is enabled

pub mod batch;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod measurement;
pub mod qstate;
pub mod schmidt;

pub use entropy::{
    analyze, binary_entropy_bits, classify_entanglement, entropy_eigen, entropy_from_magnitude, Entanglement,
    EntropyReport, DEFAULT_EPS,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use measurement::{
    axis_outcome_prob, estimate_entropy, estimate_mean_spin, haar_random_state, measure, simulate_counts,
    AxisCounts, AxisEstimate, EntropyEstimate, MeasurementEstimate, RngStream, SpinEstimate,
};
pub use qstate::{
    commutator, mean_spin_vector, partial_trace, spin_magnitude, spin_operator, superpose,
    tensor_product_state, validate_constraints, Atom, Axis, DensityMatrix1Q, ExplicitCoefficients,
    MeanSpinVector, PureTwoQubitState, SingleQubitState, SpinOperator, C64,
};
pub use schmidt::{reconstruct, schmidt_decompose, schmidt_probs_from_magnitude, SchmidtDecomposition};
