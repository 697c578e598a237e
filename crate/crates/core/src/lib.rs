//! Gaussian entanglement measure (GEM) for multimode pure bosonic Gaussian states.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`gaussian`]: phase-space machinery (symplectic form, covariance matrices,
//!   quadratic-Hamiltonian evolution, reduction, purity).
//! * [`measure`]: the Fubini-Study metric restricted to local `Sp(2,ℝ)` orbits,
//!   its Killing-form contraction and the GEM itself.
//! * [`graph`]: graph-state families, their closed-form GEMs, the compact GEM,
//!   the logarithmic-negativity baseline and edge-count ratio probes.
//! * [`lattice`]: the discretized Klein-Gordon ground state on a circle and its
//!   continuum asymptotics.
//!
//! Phase-space vectors are laid out as `(q₁, p₁, …, q_N, p_N)` everywhere, and
//! mode indices in the public API are 0-based. The vacuum covariance matrix is
//! `I/2`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod elliptic;
mod error;
pub mod expm;
pub mod gaussian;
pub mod graph;
pub mod lattice;
pub mod matrix;
pub mod measure;

pub use elliptic::{complete_elliptic, EllipticKind};
pub use error::{GemError, Result};
pub use gaussian::{
    build_omega, check_pure, evolve_covariance, purity, reduced_covariance,
    symplectic_from_hamiltonian, vacuum_state, CovarianceMatrix, PurityCheck, QuadraticHamiltonian,
    QuadratureOrdering, SymplecticForm, SymplecticTransform, DEFAULT_PURE_TOLERANCE,
};
pub use graph::{
    compact_gem_two_mode, gem_ratio_small_r, gem_three_mode_g1, gem_three_mode_g2,
    gem_two_mode_closed, graph_state_covariance, hamiltonian_from_graph, log_negativity_two_mode,
    two_mode_metric_blocks, two_mode_metric_closed, Edge, GraphSpec, PolarCoupling,
    TwoModeMetricBlocks,
};
pub use lattice::{
    asymptotic_coefficients, bogoliubov_matrices, dispersion, gem_field_asymptotic,
    gem_field_exact, gem_field_pipeline, reduced_det_from_xy, AsymptoticCoefficients,
    BogoliubovMatrices, LatticeFieldConfig,
};
pub use matrix::Matrix;
pub use measure::{
    gem_from_metric, gem_from_purity, killing_form_sp2, metric_g, metric_h,
    moments_from_covariance, MetricKind, MetricTensor, MomentTable, Sp2KillingForm,
};
