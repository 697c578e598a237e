//! Ground state of a free Klein-Gordon field on a circle of radius `R`,
//! discretized on `N = 2n + 1` points with spacing `δ = 2πR/N`.
//!
//! The normal modes are the real Fourier modes `k = 0, …, n` (cosine and sine
//! pair for `k ≥ 1`) with `ω_k = √(m² + (4/δ²) sin²(πk/N))`. Every site has the
//! same reduced determinant
//!
//! ```text
//! det Γ^(μ) = [1 + 2 Σ_k (m/ω_k + ω_k/m) + 4 (Σ_k ω_k)(Σ_k 1/ω_k)] / (4N²)
//! ```
//!
//! with sums over `k = 1, …, n`, so `GEM = N (det − ¼)/8`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::elliptic::{complete_elliptic, EllipticKind};
use crate::error::{GemError, Result};
use crate::gaussian::CovarianceMatrix;
use crate::matrix::Matrix;
use crate::measure::gem_from_purity;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeFieldConfig {
    n: usize,
    mass: f64,
    radius: f64,
}

impl LatticeFieldConfig {
    pub fn new(n: usize, mass: f64, radius: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(GemError::invalid("mass must be positive and finite"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GemError::invalid("radius must be positive and finite"));
        }
        Ok(LatticeFieldConfig { n, mass, radius })
    }

    /// Config from the site count; even counts are rejected.
    pub fn from_modes(modes: usize, mass: f64, radius: f64) -> Result<Self> {
        if modes.is_multiple_of(2) {
            return Err(GemError::invalid("number of lattice sites must be odd"));
        }
        LatticeFieldConfig::new(modes / 2, mass, radius)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modes(&self) -> usize {
        2 * self.n + 1
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Lattice spacing `δ = 2πR/N`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI * self.radius / self.modes() as f64
    }

    /// `τ = mR`; the GEM depends on the mass and radius only through it.
    pub fn tau(&self) -> f64 {
        self.mass * self.radius
    }

    /// Reference frequency `ω = √(m² + 2/δ²)` of the on-site oscillators.
    pub fn effective_frequency(&self) -> f64 {
        let d = self.spacing();
        libm::sqrt(self.mass * self.mass + 2.0 / (d * d))
    }
}

/// `ω_k` for `0 ≤ k ≤ n`.
pub fn dispersion(k: usize, cfg: &LatticeFieldConfig) -> Result<f64> {
    if k > cfg.n {
        return Err(GemError::invalid("momentum index exceeds n"));
    }
    let d = cfg.spacing();
    let s = libm::sin(PI * k as f64 / cfg.modes() as f64);
    Ok(libm::sqrt(cfg.mass * cfg.mass + 4.0 * s * s / (d * d)))
}

fn frequencies(cfg: &LatticeFieldConfig) -> Vec<f64> {
    (0..=cfg.n)
        .map(|k| dispersion(k, cfg).expect("k in range"))
        .collect()
}

/// Orthogonal real Fourier matrix: row 0 is `1/√N`, rows `1..=n` are
/// `√(2/N) cos(2πka/N)` and rows `n+1..` are `√(2/N) sin(2πka/N)`, with site
/// labels `a = 1, …, N`.
fn real_fourier(n: usize) -> Matrix {
    let nn = 2 * n + 1;
    let nf = nn as f64;
    Matrix::from_fn(nn, nn, |row, col| {
        let a = (col + 1) as f64;
        if row == 0 {
            1.0 / libm::sqrt(nf)
        } else if row <= n {
            libm::sqrt(2.0 / nf) * libm::cos(2.0 * PI * row as f64 * a / nf)
        } else {
            libm::sqrt(2.0 / nf) * libm::sin(2.0 * PI * (row - n) as f64 * a / nf)
        }
    })
}

/// Bogoliubov matrices taking the on-site operators at frequency `ω` to the
/// normal modes. Row `k` of `X` is `½(√(ω_k/ω) + √(ω/ω_k))` times the `k`-th
/// Fourier row, and row `k` of `Y` is `−½(√(ω_k/ω) − √(ω/ω_k))` times it; the
/// cosine and sine rows of the same `k` share these factors.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovMatrices {
    pub x: Matrix,
    pub y: Matrix,
}

/// Maximum deviations of the four symplectic identities
/// `XXᵀ − YYᵀ = I`, `XYᵀ − YXᵀ = 0`, `XᵀX − YᵀY = I`, `XᵀY − YᵀX = 0`
/// (all entries are real).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticResiduals {
    pub row_norm: f64,
    pub row_cross: f64,
    pub column_norm: f64,
    pub column_cross: f64,
}

impl SymplecticResiduals {
    pub fn max(&self) -> f64 {
        self.row_norm
            .max(self.row_cross)
            .max(self.column_norm)
            .max(self.column_cross)
    }
}

impl BogoliubovMatrices {
    pub fn residuals(&self) -> SymplecticResiduals {
        let (x, y) = (&self.x, &self.y);
        let (xt, yt) = (x.transpose(), y.transpose());
        let id = Matrix::identity(x.rows());
        SymplecticResiduals {
            row_norm: (&(&x.matmul(&xt) - &y.matmul(&yt)) - &id).max_abs(),
            row_cross: (&x.matmul(&yt) - &y.matmul(&xt)).max_abs(),
            column_norm: (&(&xt.matmul(x) - &yt.matmul(y)) - &id).max_abs(),
            column_cross: (&xt.matmul(y) - &yt.matmul(x)).max_abs(),
        }
    }
}

pub fn bogoliubov_matrices(cfg: &LatticeFieldConfig) -> BogoliubovMatrices {
    let n = cfg.n;
    let w = cfg.effective_frequency();
    let wk = frequencies(cfg);
    let o = real_fourier(n);
    let k_of = |row: usize| if row <= n { row } else { row - n };
    let plus = |row: usize| {
        let (f, g) = (libm::sqrt(wk[k_of(row)] / w), libm::sqrt(w / wk[k_of(row)]));
        (0.5 * (f + g), 0.5 * (f - g))
    };
    let x = Matrix::from_fn(o.rows(), o.cols(), |i, j| plus(i).0 * o[(i, j)]);
    let y = Matrix::from_fn(o.rows(), o.cols(), |i, j| -plus(i).1 * o[(i, j)]);
    BogoliubovMatrices { x, y }
}

/// `det Γ^(μ) = ¼((YᵀY + XᵀX)_μμ)² − [((YᵀX)_μμ)² + ((XᵀY)_μμ)²]/2`.
pub fn reduced_det_from_xy(b: &BogoliubovMatrices, mu: usize) -> Result<f64> {
    let nn = b.x.rows();
    if mu >= nn {
        return Err(GemError::invalid("site index out of range"));
    }
    let (mut s, mut yx, mut xy) = (0.0, 0.0, 0.0);
    for k in 0..nn {
        let (xk, yk) = (b.x[(k, mu)], b.y[(k, mu)]);
        s += yk * yk + xk * xk;
        yx += yk * xk;
        xy += xk * yk;
    }
    Ok(0.25 * s * s - 0.5 * (yx * yx + xy * xy))
}

/// The bracket `1 + 2 Σ (m/ω_k + ω_k/m) + 4 (Σ ω_k)(Σ 1/ω_k)`.
fn det_bracket(cfg: &LatticeFieldConfig) -> f64 {
    let m = cfg.mass;
    let wk = frequencies(cfg);
    let (mut mixed, mut sum_w, mut sum_inv) = (0.0, 0.0, 0.0);
    for &w in &wk[1..] {
        mixed += m / w + w / m;
        sum_w += w;
        sum_inv += 1.0 / w;
    }
    1.0 + 2.0 * mixed + 4.0 * sum_w * sum_inv
}

/// Closed-form reduced determinant at any site.
pub fn reduced_det_closed(cfg: &LatticeFieldConfig) -> f64 {
    let nf = cfg.modes() as f64;
    det_bracket(cfg) / (4.0 * nf * nf)
}

/// `bracket/(32N) − N/32`, with the double sum factorized.
pub fn gem_field_exact(cfg: &LatticeFieldConfig) -> f64 {
    let nf = cfg.modes() as f64;
    (det_bracket(cfg) / (32.0 * nf) - nf / 32.0).max(0.0)
}

/// Leading small-mass behaviour, `cot(π/2N) / (32πRm)`.
pub fn gem_field_small_mass(cfg: &LatticeFieldConfig) -> f64 {
    let nf = cfg.modes() as f64;
    1.0 / libm::tan(PI / (2.0 * nf)) / (32.0 * PI * cfg.radius * cfg.mass)
}

/// Position-basis covariance of the ground state in the on-site units
/// `q̃ = √(ω/δ) φ`, `p̃ = √(δ/ω) π`.
pub fn field_covariance(cfg: &LatticeFieldConfig) -> Result<CovarianceMatrix> {
    let nn = cfg.modes();
    let w = cfg.effective_frequency();
    let wk = frequencies(cfg);
    let o = real_fourier(cfg.n);
    let freq = |row: usize| {
        if row <= cfg.n {
            wk[row]
        } else {
            wk[row - cfg.n]
        }
    };
    // mode-basis variances ⟨q̃_k²⟩ = ω/(2ω_k), ⟨p̃_k²⟩ = ω_k/(2ω), transported back
    let mut gamma = Matrix::zeros(2 * nn, 2 * nn);
    for a in 0..nn {
        for b in a..nn {
            let (mut qq, mut pp) = (0.0, 0.0);
            for k in 0..nn {
                let ok = o[(k, a)] * o[(k, b)];
                qq += ok * w / (2.0 * freq(k));
                pp += ok * freq(k) / (2.0 * w);
            }
            gamma[(2 * a, 2 * b)] = qq;
            gamma[(2 * b, 2 * a)] = qq;
            gamma[(2 * a + 1, 2 * b + 1)] = pp;
            gamma[(2 * b + 1, 2 * a + 1)] = pp;
        }
    }
    CovarianceMatrix::new(gamma)
}

/// GEM through the generic purity route on the dense position-basis state.
pub fn gem_field_pipeline(cfg: &LatticeFieldConfig) -> Result<f64> {
    gem_from_purity(&field_covariance(cfg)?)
}

/// Coefficients of `κ₁ + κ₂ ln n + κ₃ n + κ₄ n ln n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub kappa4: f64,
    /// Bernoulli cutoff of the Euler-Maclaurin expansion.
    pub p: u8,
    pub tau: f64,
}

impl AsymptoticCoefficients {
    pub fn evaluate(&self, n: f64) -> f64 {
        let ln = libm::log(n);
        self.kappa1 + self.kappa2 * ln + self.kappa3 * n + self.kappa4 * n * ln
    }
}

pub fn asymptotic_coefficients(tau: f64, p: u8) -> Result<AsymptoticCoefficients> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(GemError::invalid("tau must be positive and finite"));
    }
    let s = libm::sqrt(tau * tau + 1.0);
    let (lt, lp, l2) = (libm::log(tau), libm::log(PI), libm::log(2.0));
    let (kappa1, kappa3) = match p {
        0 => {
            let common = 1.0 / s + 1.0 / tau - 2.0 * lt - 2.0 * lp + 6.0 * l2;
            (
                (common + 2.0) / (32.0 * PI),
                (common - PI * PI / 2.0) / (8.0 * PI * PI),
            )
        }
        1 => {
            let tail = 6.0 / tau - 12.0 * lt - 12.0 * lp + 36.0 * l2;
            let k1 = (1.0 / (s * s * s) + 6.0 / s + tail + 12.0) / (192.0 * PI);
            let k3 =
                ((6.0 * tau * tau + 7.0) / (s * s * s) + tail - 3.0 * PI * PI) / (28.0 * PI * PI);
            (k1, k3)
        }
        _ => return Err(GemError::invalid("Bernoulli cutoff must be 0 or 1")),
    };
    Ok(AsymptoticCoefficients {
        kappa1,
        kappa2: 1.0 / (16.0 * PI),
        kappa3,
        kappa4: 1.0 / (4.0 * PI * PI),
        p,
        tau,
    })
}

pub fn gem_field_asymptotic(n: usize, tau: f64, p: u8) -> Result<f64> {
    if n == 0 {
        return Err(GemError::invalid("asymptotic form needs n >= 1"));
    }
    Ok(asymptotic_coefficients(tau, p)?.evaluate(n as f64))
}

/// Continuum estimates of `Σ_{k=1}^n ω_k` and `Σ_{k=1}^n 1/ω_k` from
/// `(N/π) ∫₀^{π/2} f(θ) dθ`, which are `(N/π) m E(−Λ)` and `(N/π) K(−Λ)/m` with
/// `Λ = (2/(mδ))²`. Both omit the half-weight `k = 0` endpoint.
pub fn dispersion_sums_continuum(cfg: &LatticeFieldConfig) -> Result<(f64, f64)> {
    let m = cfg.mass;
    let lambda = {
        let t = 2.0 / (m * cfg.spacing());
        t * t
    };
    let scale = cfg.modes() as f64 / PI;
    let e = complete_elliptic(EllipticKind::E, -lambda)?;
    let k = complete_elliptic(EllipticKind::K, -lambda)?;
    Ok((scale * m * e - 0.5 * m, scale * k / m - 0.5 / m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, m: f64, r: f64) -> LatticeFieldConfig {
        LatticeFieldConfig::new(n, m, r).unwrap()
    }

    #[test]
    fn dispersion_values() {
        let c = cfg(1, 1.0, 1.0);
        assert_eq!(dispersion(0, &c).unwrap(), 1.0);
        assert!((dispersion(1, &c).unwrap() - 1.297_659).abs() < 1e-6);
        assert!(dispersion(2, &c).is_err());
        let c = cfg(10, 0.3, 1.0);
        for k in 0..10 {
            assert!(dispersion(k + 1, &c).unwrap() > dispersion(k, &c).unwrap());
        }
    }

    #[test]
    fn config_validation() {
        assert!(LatticeFieldConfig::new(1, 0.0, 1.0).is_err());
        assert!(LatticeFieldConfig::new(1, 1.0, -1.0).is_err());
        assert!(LatticeFieldConfig::from_modes(4, 1.0, 1.0).is_err());
        assert_eq!(LatticeFieldConfig::from_modes(5, 1.0, 1.0).unwrap().n(), 2);
    }

    #[test]
    fn bogoliubov_identities_hold() {
        for n in [1, 2, 10] {
            let b = bogoliubov_matrices(&cfg(n, 1.0, 1.0));
            assert!(b.residuals().max() < 1e-12, "n={n}: {:?}", b.residuals());
        }
    }

    #[test]
    fn heavy_field_decouples() {
        let b = bogoliubov_matrices(&cfg(2, 1e6, 1.0));
        assert!(b.y.max_abs() < 1e-6);
        let xxt = b.x.matmul(&b.x.transpose());
        assert!((&xxt - &Matrix::identity(5)).max_abs() < 1e-10);
    }

    #[test]
    fn diagonal_norm_matches_display() {
        let c = cfg(1, 1.0, 1.0);
        let b = bogoliubov_matrices(&c);
        let s = &b.x.transpose().matmul(&b.x) + &b.y.transpose().matmul(&b.y);
        let (m, w, w1) = (1.0, c.effective_frequency(), dispersion(1, &c).unwrap());
        let want = (m / w + w / m + 2.0 * (w1 / w + w / w1)) / 6.0;
        for mu in 0..3 {
            assert!((s[(mu, mu)] - want).abs() < 1e-14);
        }
    }

    #[test]
    fn reduced_determinant() {
        let c = cfg(1, 1.0, 1.0);
        let b = bogoliubov_matrices(&c);
        let d0 = reduced_det_from_xy(&b, 0).unwrap();
        assert!((d0 - 0.253_793_2).abs() < 1e-7);
        assert!((d0 - reduced_det_closed(&c)).abs() < 1e-14);
        for mu in 1..3 {
            assert!((reduced_det_from_xy(&b, mu).unwrap() - d0).abs() < 1e-14);
        }
        assert!(reduced_det_from_xy(&b, 3).is_err());
        assert!((reduced_det_closed(&cfg(3, 1e6, 1.0)) - 0.25).abs() < 1e-10);
    }

    #[test]
    fn exact_and_pipeline_gem() {
        let c = cfg(1, 1.0, 1.0);
        let exact = gem_field_exact(&c);
        assert!((exact - 1.42244e-3).abs() < 1e-8);
        assert!((exact - 3.0 * (reduced_det_closed(&c) - 0.25) / 8.0).abs() < 1e-15);
        assert!((gem_field_pipeline(&c).unwrap() - exact).abs() < 1e-12);
        let c = cfg(10, 0.5, 2.0);
        assert!((gem_field_pipeline(&c).unwrap() - gem_field_exact(&c)).abs() < 1e-10);
    }

    #[test]
    fn coefficients() {
        let k = asymptotic_coefficients(1.0, 0).unwrap();
        assert!((k.kappa2 - 0.019_894_37).abs() < 1e-8);
        assert!((k.kappa4 - 0.025_330_30).abs() < 1e-8);
        assert!((k.kappa1 - 0.05547).abs() < 1e-5);
        let k1 = asymptotic_coefficients(1.0, 1).unwrap();
        assert!((k.kappa1 - k1.kappa1).abs() < 5e-3);
        assert!(asymptotic_coefficients(0.0, 0).is_err());
        assert!(asymptotic_coefficients(1.0, 2).is_err());
        assert!(gem_field_asymptotic(0, 1.0, 0).is_err());
    }

    #[test]
    fn continuum_sums_approach_lattice_sums() {
        let mut last = f64::INFINITY;
        for n in [20, 80, 320] {
            let c = cfg(n, 1.0, 1.0);
            let wk = frequencies(&c);
            let sum_w: f64 = wk[1..].iter().sum();
            let (est, _) = dispersion_sums_continuum(&c).unwrap();
            let rel = ((est - sum_w) / sum_w).abs();
            assert!(rel < last);
            last = rel;
        }
        assert!(last < 1e-3);
    }
}
