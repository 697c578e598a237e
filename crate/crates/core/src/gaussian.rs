//! Phase-space representation of pure zero-mean Gaussian states.
//!
//! Conventions: quadratures are ordered `(q₁, p₁, …, q_N, p_N)`, the symplectic
//! form is the block sum of `[[0, 1], [-1, 0]]`, and `Γ_AB = ½⟨{ξ_A, ξ_B}⟩` so
//! that the vacuum is `I/2`. A covariance matrix is pure iff
//! `(ΓΩ⁻¹)² = -I/4`.

use crate::error::{GemError, Result};
use crate::expm::matrix_exponential;
use crate::matrix::Matrix;

/// Residual below which [`check_pure`] reports a state as pure by default.
pub const DEFAULT_PURE_TOLERANCE: f64 = 1e-9;

/// Slack allowed under the uncertainty bound `det Γ ≥ 4^{-N}` before a
/// state is rejected as unphysical.
const UNCERTAINTY_SLACK: f64 = 1e-9;

/// Index layout of the phase-space vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureOrdering;

impl QuadratureOrdering {
    /// Row of `q_μ` (0-based mode index).
    #[inline]
    pub const fn q(mode: usize) -> usize {
        2 * mode
    }

    /// Row of `p_μ` (0-based mode index).
    #[inline]
    pub const fn p(mode: usize) -> usize {
        2 * mode + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    omega: Matrix,
}

impl SymplecticForm {
    pub fn modes(&self) -> usize {
        self.omega.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.omega
    }

    /// `Ω⁻¹ = -Ω`.
    pub fn inverse(&self) -> Matrix {
        self.omega.scale(-1.0)
    }
}

/// Builds the `N`-mode symplectic form.
pub fn build_omega(modes: usize) -> Result<SymplecticForm> {
    if modes == 0 {
        return Err(GemError::invalid("mode count must be at least 1"));
    }
    let mut omega = Matrix::zeros(2 * modes, 2 * modes);
    for mu in 0..modes {
        omega[(QuadratureOrdering::q(mu), QuadratureOrdering::p(mu))] = 1.0;
        omega[(QuadratureOrdering::p(mu), QuadratureOrdering::q(mu))] = -1.0;
    }
    Ok(SymplecticForm { omega })
}

/// Symmetric covariance matrix `Γ` of an `N`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    gamma: Matrix,
}

impl CovarianceMatrix {
    /// Validates shape, symmetry and positive definiteness.
    pub fn new(gamma: Matrix) -> Result<Self> {
        if !gamma.is_square() || gamma.rows() == 0 || !gamma.rows().is_multiple_of(2) {
            return Err(GemError::invalid(
                "covariance matrix must be 2N x 2N with N >= 1",
            ));
        }
        if !gamma.is_finite() {
            return Err(GemError::invalid(
                "covariance matrix has non-finite entries",
            ));
        }
        let scale = gamma.max_abs().max(1.0);
        if gamma.asymmetry() > 1e-10 * scale {
            return Err(GemError::invalid("covariance matrix is not symmetric"));
        }
        if !gamma.is_positive_definite() {
            return Err(GemError::UnphysicalState {
                what: "covariance matrix is not positive definite",
                value: f64::NAN,
            });
        }
        Ok(CovarianceMatrix { gamma })
    }

    /// Wraps a matrix that is symmetric by construction (e.g. `½SSᵀ`),
    /// symmetrizing away rounding.
    pub(crate) fn from_symmetric_unchecked(gamma: Matrix) -> Self {
        let n = gamma.rows();
        let sym = Matrix::from_fn(n, n, |i, j| 0.5 * (gamma[(i, j)] + gamma[(j, i)]));
        CovarianceMatrix { gamma: sym }
    }

    pub fn modes(&self) -> usize {
        self.gamma.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.gamma
    }

    pub fn into_matrix(self) -> Matrix {
        self.gamma
    }

    /// Entry by phase-space indices.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.gamma[(a, b)]
    }
}

/// Coefficient matrix `h` of `H = ½ ξᵀ h ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    h: Matrix,
}

impl QuadraticHamiltonian {
    pub fn new(h: Matrix) -> Result<Self> {
        if !h.is_square() || h.rows() == 0 || !h.rows().is_multiple_of(2) {
            return Err(GemError::invalid(
                "hamiltonian matrix must be 2N x 2N with N >= 1",
            ));
        }
        if !h.is_finite() {
            return Err(GemError::invalid(
                "hamiltonian matrix has non-finite entries",
            ));
        }
        if h.asymmetry() > 1e-12 * h.max_abs().max(1.0) {
            return Err(GemError::invalid("hamiltonian matrix is not symmetric"));
        }
        Ok(QuadraticHamiltonian { h })
    }

    pub fn modes(&self) -> usize {
        self.h.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.h
    }
}

/// Phase-space matrix `S` with `SΩSᵀ = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    s: Matrix,
}

impl SymplecticTransform {
    /// Checks `‖SΩSᵀ − Ω‖_max ≤ tol`.
    pub fn new(s: Matrix, tol: f64) -> Result<Self> {
        if !s.is_square() || s.rows() == 0 || !s.rows().is_multiple_of(2) {
            return Err(GemError::invalid(
                "symplectic matrix must be 2N x 2N with N >= 1",
            ));
        }
        let t = SymplecticTransform { s };
        let r = t.symplectic_residual();
        if !(r <= tol) {
            return Err(GemError::invalid("matrix is not symplectic"));
        }
        Ok(t)
    }

    /// Block-diagonal `⊕_μ S_μ` from single-mode `2×2` blocks.
    pub fn local(blocks: &[Matrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(GemError::invalid("no local blocks"));
        }
        let n = blocks.len();
        let mut s = Matrix::zeros(2 * n, 2 * n);
        for (mu, b) in blocks.iter().enumerate() {
            if b.rows() != 2 || b.cols() != 2 {
                return Err(GemError::invalid("local blocks must be 2x2"));
            }
            s.set_block(2 * mu, 2 * mu, b);
        }
        SymplecticTransform::new(s, 1e-10)
    }

    pub fn modes(&self) -> usize {
        self.s.rows() / 2
    }

    pub fn matrix(&self) -> &Matrix {
        &self.s
    }

    /// `‖SΩSᵀ − Ω‖_max`.
    pub fn symplectic_residual(&self) -> f64 {
        let omega = build_omega(self.modes()).expect("modes >= 1").omega;
        let lhs = self.s.matmul(&omega).matmul(&self.s.transpose());
        (&lhs - &omega).max_abs()
    }
}

/// `S = exp(Ωh)`.
pub fn symplectic_from_hamiltonian(
    h: &QuadraticHamiltonian,
    omega: &SymplecticForm,
) -> Result<SymplecticTransform> {
    if h.modes() != omega.modes() {
        return Err(GemError::invalid(
            "hamiltonian and symplectic form sizes differ",
        ));
    }
    let generator = omega.matrix().matmul(h.matrix());
    let s = matrix_exponential(&generator)?;
    Ok(SymplecticTransform { s })
}

pub fn vacuum_state(modes: usize) -> Result<CovarianceMatrix> {
    if modes == 0 {
        return Err(GemError::invalid("mode count must be at least 1"));
    }
    Ok(CovarianceMatrix {
        gamma: Matrix::identity(2 * modes).scale(0.5),
    })
}

/// `Γ ↦ SΓSᵀ`.
pub fn evolve_covariance(
    gamma: &CovarianceMatrix,
    s: &SymplecticTransform,
) -> Result<CovarianceMatrix> {
    if gamma.modes() != s.modes() {
        return Err(GemError::invalid("state and transform sizes differ"));
    }
    let out = s
        .matrix()
        .matmul(gamma.matrix())
        .matmul(&s.matrix().transpose());
    if !out.is_finite() {
        return Err(GemError::NumericOverflow(
            "evolved covariance is not finite".into(),
        ));
    }
    Ok(CovarianceMatrix::from_symmetric_unchecked(out))
}

/// The `2×2` block `[[Γ_qq, Γ_qp], [Γ_pq, Γ_pp]]` of `mode` (0-based).
pub fn reduced_covariance(gamma: &CovarianceMatrix, mode: usize) -> Result<Matrix> {
    if mode >= gamma.modes() {
        return Err(GemError::invalid("mode index out of range"));
    }
    Ok(gamma.matrix().block(2 * mode, 2 * mode, 2, 2))
}

/// Purity `tr ρ² = 1 / (2^N √det Γ)` of the Gaussian state with covariance
/// `gamma_sub` (`2N×2N`; for a single mode this is `1/(2√det Γ)`).
///
/// Determinants a hair below the uncertainty bound are accepted and the result
/// is clamped to 1.
pub fn purity(gamma_sub: &Matrix) -> Result<f64> {
    if !gamma_sub.is_square() || gamma_sub.rows() == 0 || !gamma_sub.rows().is_multiple_of(2) {
        return Err(GemError::invalid(
            "purity needs a 2N x 2N covariance matrix",
        ));
    }
    let modes = gamma_sub.rows() / 2;
    let det = gamma_sub.determinant()?;
    let bound = libm::pow(0.25, modes as f64);
    if !(det >= bound - UNCERTAINTY_SLACK) {
        return Err(GemError::UnphysicalState {
            what: "determinant below uncertainty bound",
            value: det,
        });
    }
    let p = 1.0 / (libm::exp2(modes as f64) * libm::sqrt(det.max(bound)));
    Ok(p.min(1.0))
}

/// Outcome of [`check_pure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityCheck {
    /// `‖(ΓΩ⁻¹)² + I/4‖_max`.
    pub residual: f64,
    /// `tol · max(1, ‖Γ‖_max²)`; the residual of a squared matrix carries
    /// rounding proportional to the square of its entries.
    pub threshold: f64,
    pub pure: bool,
}

pub fn check_pure(gamma: &CovarianceMatrix, tol: f64) -> PurityCheck {
    let omega = build_omega(gamma.modes()).expect("modes >= 1");
    let j = gamma.matrix().matmul(&omega.inverse());
    let mut sq = j.matmul(&j);
    for i in 0..sq.rows() {
        sq[(i, i)] += 0.25;
    }
    let residual = sq.max_abs();
    let scale = gamma.matrix().max_abs().max(1.0);
    let threshold = tol * scale * scale;
    PurityCheck {
        residual,
        threshold,
        pure: residual <= threshold,
    }
}

/// Fails with [`GemError::UnphysicalState`] unless `gamma` passes
/// [`check_pure`] at the default tolerance.
pub(crate) fn require_pure(gamma: &CovarianceMatrix) -> Result<()> {
    let check = check_pure(gamma, DEFAULT_PURE_TOLERANCE);
    if check.pure {
        Ok(())
    } else {
        Err(GemError::UnphysicalState {
            what: "state is not pure",
            value: check.residual,
        })
    }
}
