//! Fubini-Study metric on local `Sp(2,ℝ)` orbits and the GEM.
//!
//! Each mode carries the metaplectic generators
//!
//! ```text
//! T₁ = (q² − p²)/4,   T₂ = −(qp + pq)/4,   T₃ = (q² + p²)/4
//! ```
//!
//! whose Killing form is `κ = 2·diag(−1, −1, 1)`. The restricted metric is
//! `g_(μ,i)(ν,j) = −½⟨{ΔT_(μ,i), ΔT_(ν,j)}⟩`, and contracting its single-mode
//! blocks with `κ⁻¹` gives `⅛ Σ_μ (det Γ^(μ) + ¾)`; subtracting the separable
//! value `N/8` yields
//!
//! ```text
//! GEM[Γ] = ⅛ Σ_μ (det Γ^(μ) − ¼) = (1/32) Σ_μ (P(ρ^(μ))⁻² − 1).
//! ```
//!
//! Two independent routes to `g` are provided: [`MomentTable::metric`]
//! assembles it from Wick-expanded first and second moments, [`metric_g`] uses
//! the closed quadratic forms in `Γ`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Result;
use crate::gaussian::{
    build_omega, purity, reduced_covariance, require_pure, CovarianceMatrix,
    QuadratureOrdering as Q,
};
use crate::matrix::Matrix;

/// Killing form of `sp(2,ℝ)` in the `(T₁, T₂, T₃)` basis and its inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sp2KillingForm {
    pub kappa: [[f64; 3]; 3],
    pub kappa_inv: [[f64; 3]; 3],
}

impl Sp2KillingForm {
    pub const fn standard() -> Self {
        Sp2KillingForm {
            kappa: [[-2.0, 0.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, 2.0]],
            kappa_inv: [[-0.5, 0.0, 0.0], [0.0, -0.5, 0.0], [0.0, 0.0, 0.5]],
        }
    }

    /// `κ_ij = Tr(ad_{T_i} ∘ ad_{T_j})` from the commutators
    /// `[T₁,T₂] = −iT₃`, `[T₂,T₃] = iT₁`, `[T₃,T₁] = iT₂`.
    pub fn from_structure_constants() -> [[f64; 3]; 3] {
        // c_ij^k = i·s[i][j][k]
        let mut s = [[[0.0f64; 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: f64| {
            s[i][j][k] = v;
            s[j][i][k] = -v;
        };
        set(0, 1, 2, -1.0);
        set(1, 2, 0, 1.0);
        set(2, 0, 1, 1.0);

        let mut kappa = [[0.0; 3]; 3];
        for (i, row) in kappa.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut tr = 0.0;
                for k in 0..3 {
                    for l in 0..3 {
                        tr += s[i][k][l] * s[j][l][k];
                    }
                }
                // i² = −1
                *entry = -tr;
            }
        }
        kappa
    }

    /// Number of negative and positive eigenvalues of `κ`.
    pub fn signature(&self) -> (usize, usize) {
        let diag = [self.kappa[0][0], self.kappa[1][1], self.kappa[2][2]];
        let neg = diag.iter().filter(|&&d| d < 0.0).count();
        (neg, 3 - neg)
    }
}

pub fn killing_form_sp2() -> Sp2KillingForm {
    Sp2KillingForm::standard()
}

/// First and second moments of the local generators:
/// `M_i^μ = ⟨T_(μ,i)⟩` and `M_ij^μν = Re⟨T_(μ,i) T_(ν,j)⟩`.
///
/// Same-mode products of distinct generators have an imaginary part equal to
/// half the commutator expectation; it cancels in the symmetrized combination
/// that enters the metric, so only real parts are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    modes: usize,
    first: Vec<[f64; 3]>,
    second: Vec<f64>,
}

impl MomentTable {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn first(&self, mode: usize, gen: usize) -> f64 {
        self.first[mode][gen]
    }

    pub fn second(&self, mu: usize, nu: usize, i: usize, j: usize) -> f64 {
        self.second[((mu * self.modes + nu) * 3 + i) * 3 + j]
    }

    /// `(M_ij^μν + M_ji^νμ)/2`.
    pub fn symmetrized_second(&self, mu: usize, nu: usize, i: usize, j: usize) -> f64 {
        0.5 * (self.second(mu, nu, i, j) + self.second(nu, mu, j, i))
    }

    /// `g = −(M_ij^μν + M_ji^νμ)/2 + M_i^μ M_j^ν`.
    pub fn metric(&self) -> MetricTensor {
        let n = self.modes;
        let mut t = MetricTensor::zeros(n, MetricKind::G);
        for mu in 0..n {
            for nu in 0..n {
                for i in 0..3 {
                    for j in 0..3 {
                        let v = -self.symmetrized_second(mu, nu, i, j)
                            + self.first(mu, i) * self.first(nu, j);
                        t.set(mu, i, nu, j, v);
                    }
                }
            }
        }
        t
    }
}

/// Generator `T_i` of one mode as `Σ_ab t[a][b] x_a x_b` over `x = (q, p)`.
const GENERATORS: [[[f64; 2]; 2]; 3] = [
    [[0.25, 0.0], [0.0, -0.25]],
    [[0.0, -0.25], [-0.25, 0.0]],
    [[0.25, 0.0], [0.0, 0.25]],
];

/// Expands the generator moments with Wick's theorem from the ordered
/// two-point function `C_AB = ⟨x_A x_B⟩ = Γ_AB + (i/2)Ω_AB`:
/// `⟨x_a x_b x_c x_d⟩ = C_ab C_cd + C_ac C_bd + C_ad C_bc`.
pub fn moments_from_covariance(gamma: &CovarianceMatrix) -> Result<MomentTable> {
    require_pure(gamma)?;
    let n = gamma.modes();
    let omega = build_omega(n)?;
    let c = |a: usize, b: usize| Complex64::new(gamma.get(a, b), 0.5 * omega.matrix()[(a, b)]);
    let quad = |mode: usize, k: usize| if k == 0 { Q::q(mode) } else { Q::p(mode) };

    let first = (0..n)
        .map(|mu| {
            let mut m = [0.0; 3];
            for (gen, t) in GENERATORS.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        acc += t[a][b] * c(quad(mu, a), quad(mu, b));
                    }
                }
                m[gen] = acc.re;
            }
            m
        })
        .collect();

    let mut second = vec![0.0; n * n * 9];
    for mu in 0..n {
        for nu in 0..n {
            for (i, ti) in GENERATORS.iter().enumerate() {
                for (j, tj) in GENERATORS.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..2 {
                        for b in 0..2 {
                            if ti[a][b] == 0.0 {
                                continue;
                            }
                            for cc in 0..2 {
                                for d in 0..2 {
                                    if tj[cc][d] == 0.0 {
                                        continue;
                                    }
                                    let (xa, xb) = (quad(mu, a), quad(mu, b));
                                    let (xc, xd) = (quad(nu, cc), quad(nu, d));
                                    let w = c(xa, xb) * c(xc, xd)
                                        + c(xa, xc) * c(xb, xd)
                                        + c(xa, xd) * c(xb, xc);
                                    acc += ti[a][b] * tj[cc][d] * w;
                                }
                            }
                        }
                    }
                    second[((mu * n + nu) * 3 + i) * 3 + j] = acc.re;
                }
            }
        }
    }
    Ok(MomentTable {
        modes: n,
        first,
        second,
    })
}

/// Which metric a [`MetricTensor`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// The restricted Fubini-Study metric `g`.
    G,
    /// The shifted metric `h`, whose contraction vanishes on separable states.
    H,
}

/// Real `3N×3N` tensor indexed by `(mode, generator)` pairs; generators are
/// numbered `0, 1, 2` for `T₁, T₂, T₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    modes: usize,
    kind: MetricKind,
    data: Vec<f64>,
}

impl MetricTensor {
    pub(crate) fn zeros(modes: usize, kind: MetricKind) -> Self {
        MetricTensor {
            modes,
            kind,
            data: vec![0.0; 9 * modes * modes],
        }
    }

    #[inline]
    fn offset(&self, mu: usize, i: usize, nu: usize, j: usize) -> usize {
        (3 * mu + i) * 3 * self.modes + 3 * nu + j
    }

    pub(crate) fn set(&mut self, mu: usize, i: usize, nu: usize, j: usize, v: f64) {
        let k = self.offset(mu, i, nu, j);
        self.data[k] = v;
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn get(&self, mu: usize, i: usize, nu: usize, j: usize) -> f64 {
        self.data[self.offset(mu, i, nu, j)]
    }

    /// The tensor as a `3N×3N` matrix with row `3μ + i`.
    pub fn to_matrix(&self) -> Matrix {
        let d = 3 * self.modes;
        Matrix::from_vec(d, d, self.data.clone()).expect("shape is consistent")
    }

    /// `Σ_μ Σ_ij κ^ij t_(μ,i)(μ,j)`; the Killing form is block diagonal in the
    /// modes, so cross-mode entries do not contribute.
    pub fn killing_contraction(&self) -> f64 {
        let k = Sp2KillingForm::standard().kappa_inv;
        let mut sum = 0.0;
        for mu in 0..self.modes {
            for (i, row) in k.iter().enumerate() {
                for (j, kij) in row.iter().enumerate() {
                    if *kij != 0.0 {
                        sum += kij * self.get(mu, i, mu, j);
                    }
                }
            }
        }
        sum
    }
}

/// `Γ` entries entering the `(μ, ν)` block of the closed forms.
struct PairView {
    /// `Γ_{p_μ p_ν}`
    pp: f64,
    /// `Γ_{p_μ q_ν}`
    pq: f64,
    /// `Γ_{p_ν q_μ}`
    qp: f64,
    /// `Γ_{q_μ q_ν}`
    qq: f64,
    /// `Γ_{p_μ p_μ}`, `Γ_{q_μ q_μ}`, `Γ_{p_μ q_μ}`
    pp_local: f64,
    qq_local: f64,
    pq_local: f64,
    same: bool,
}

impl PairView {
    fn new(gamma: &CovarianceMatrix, mu: usize, nu: usize) -> Self {
        PairView {
            pp: gamma.get(Q::p(mu), Q::p(nu)),
            pq: gamma.get(Q::p(mu), Q::q(nu)),
            qp: gamma.get(Q::p(nu), Q::q(mu)),
            qq: gamma.get(Q::q(mu), Q::q(nu)),
            pp_local: gamma.get(Q::p(mu), Q::p(mu)),
            qq_local: gamma.get(Q::q(mu), Q::q(mu)),
            pq_local: gamma.get(Q::p(mu), Q::q(mu)),
            same: mu == nu,
        }
    }

    fn delta(&self) -> f64 {
        if self.same {
            1.0
        } else {
            0.0
        }
    }

    /// `g` components for generator pairs `(0,0) (0,1) (0,2) (1,1) (1,2) (2,2)`.
    fn g(&self) -> [f64; 6] {
        let (pp, pq, qp, qq, d) = (self.pp, self.pq, self.qp, self.qq, self.delta());
        [
            (-pp * pp + pq * pq + qp * qp - qq * qq) / 8.0 - d / 16.0,
            (qq * qp - pp * pq) / 4.0,
            (pp * pp + pq * pq - qp * qp - qq * qq) / 8.0,
            (-d - 4.0 * (pq * qp + pp * qq)) / 16.0,
            (pp * qp + qq * pq) / 4.0,
            (d - 2.0 * (pp * pp + pq * pq + qp * qp + qq * qq)) / 16.0,
        ]
    }

    /// `h` components, same ordering as [`PairView::g`].
    fn h(&self) -> [f64; 6] {
        let (pp, pq, qp, qq, d) = (self.pp, self.pq, self.qp, self.qq, self.delta());
        let (a, b, c) = (self.pp_local, self.qq_local, self.pq_local);
        [
            (-pp * pp + pq * pq + qp * qp - qq * qq + (a - b) * (a - b) + 1.0 - d / 2.0) / 8.0,
            (-pp * pq + qq * qp + c * (a - b)) / 4.0,
            (pp * pp - a * a + pq * pq - qp * qp - qq * qq + b * b) / 8.0,
            (-pq * qp - pp * qq + 2.0 * a * b - d / 4.0) / 4.0,
            (pp * qp + qq * pq - c * (a + b)) / 4.0,
            // Prefactor 1/8: this is the normalization for which the diagonal
            // blocks contract to (1/8)(det Γ^(μ) − 1/4).
            (-pp * pp - pq * pq - qp * qp - qq * qq + (a + b) * (a + b) - 1.0 + d / 2.0) / 8.0,
        ]
    }
}

const UPPER_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn assemble(gamma: &CovarianceMatrix, kind: MetricKind) -> MetricTensor {
    let n = gamma.modes();
    let mut t = MetricTensor::zeros(n, kind);
    for mu in 0..n {
        for nu in 0..n {
            let view = PairView::new(gamma, mu, nu);
            let vals = match kind {
                MetricKind::G => view.g(),
                MetricKind::H => view.h(),
            };
            for (&(i, j), &v) in UPPER_PAIRS.iter().zip(vals.iter()) {
                if i == j {
                    // both orientations of a same-generator block come from
                    // the formula; average them to keep the tensor symmetric
                    let k = t.offset(mu, i, nu, i);
                    t.data[k] += 0.5 * v;
                    let k = t.offset(nu, i, mu, i);
                    t.data[k] += 0.5 * v;
                } else {
                    t.set(mu, i, nu, j, v);
                    t.set(nu, j, mu, i, v);
                }
            }
        }
    }
    t
}

/// Closed-form restricted Fubini-Study metric.
pub fn metric_g(gamma: &CovarianceMatrix) -> Result<MetricTensor> {
    require_pure(gamma)?;
    Ok(assemble(gamma, MetricKind::G))
}

/// Closed-form shifted metric `h`; its Killing contraction is the GEM.
pub fn metric_h(gamma: &CovarianceMatrix) -> Result<MetricTensor> {
    require_pure(gamma)?;
    Ok(assemble(gamma, MetricKind::H))
}

/// GEM as the Killing contraction of `g` minus the separable value `N/8`.
pub fn gem_from_metric(gamma: &CovarianceMatrix) -> Result<f64> {
    let g = metric_g(gamma)?;
    Ok(g.killing_contraction() - gamma.modes() as f64 / 8.0)
}

/// GEM from the single-mode purities, `(1/32) Σ_μ (P_μ⁻² − 1)`.
pub fn gem_from_purity(gamma: &CovarianceMatrix) -> Result<f64> {
    require_pure(gamma)?;
    let mut sum = 0.0;
    for mu in 0..gamma.modes() {
        let p = purity(&reduced_covariance(gamma, mu)?)?;
        sum += 1.0 / (p * p) - 1.0;
    }
    Ok(sum / 32.0)
}
