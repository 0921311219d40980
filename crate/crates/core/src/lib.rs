//! Battery capacity of a two-qubit isotropic state whose halves are held by
//! observers hovering near a black-hole horizon, with optional local noise.
//!
//! The crate computes every quantity along two independent routes and keeps
//! them honest against each other:
//!
//! * a first-principles matrix pipeline (isometry, partial trace, Kraus
//!   maps, Jacobi diagonalization) in [`linalg`], [`relativistic`],
//!   [`channels`] and [`battery`], and
//! * closed-form eigenvalue and capacity expressions in [`analytic`].
//!
//! [`verify`] sweeps both routes over parameter grids and reports residuals;
//! [`sweep`] emits reproducible CSV scans. The `qbcap` binary exposes all of
//! it on the command line.

pub mod analytic;
pub mod battery;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod relativistic;
pub mod sweep;
pub mod verify;

pub use battery::{capacity, capacity_zz, evaluate, CapacityPath, CapacityRecord, HamiltonianSpec};
pub use channels::{
    apply_channel, bloch_action, kraus_operators, ChannelKind, ChannelSpec, Target,
};
pub use error::{Error, Result};
pub use linalg::{
    dagger, hermitian_eigenvalues, partial_trace, tensor, ComplexMatrix, EigenSpectrum,
};
pub use relativistic::{
    bloch_coefficients, four_partite_state, hawking_isometry, isotropic_state, reduced_state,
    BlochTwoQubit, HawkingParam, ReductionPath, Region, Scenario,
};
