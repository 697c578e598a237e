//! Gaussian graph states and their entanglement.
//!
//! A graph on `N` modes with complex edge weights `A_μν` defines the quadratic
//! Hamiltonian whose `(μ, ν)` block is `[[Re A, −Im A], [−Im A, Re A]]`. The
//! state is prepared from the vacuum by `S = exp(Ωh)`, so `Γ = ½SSᵀ`.
//!
//! Real weights act as beam splitters and leave the vacuum separable; the
//! imaginary parts squeeze. The closed forms below involve `√cos 2φ`, which is
//! continued to `cos 2φ < 0` through `sin(ix) = i sinh x` with real piecewise
//! formulas.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{GemError, Result};
use crate::gaussian::{
    build_omega, evolve_covariance, symplectic_from_hamiltonian, vacuum_state, CovarianceMatrix,
    QuadraticHamiltonian,
};
use crate::matrix::Matrix;
use crate::measure::{gem_from_purity, MetricKind, MetricTensor};

/// Undirected weighted edge between modes `a < b` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: Complex64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: Complex64) -> Self {
        Edge { a, b, weight }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSpec {
    modes: usize,
    edges: Vec<Edge>,
}

impl GraphSpec {
    /// Validates mode count, ordering `a < b`, bounds, duplicates and weight
    /// finiteness. Duplicate edges are rejected, not summed.
    pub fn new(modes: usize, edges: Vec<Edge>) -> Result<Self> {
        if modes == 0 {
            return Err(GemError::invalid("graph needs at least one mode"));
        }
        for (k, e) in edges.iter().enumerate() {
            if e.a == e.b {
                return Err(GemError::invalid("self-loops are not allowed"));
            }
            if e.a > e.b {
                return Err(GemError::invalid("edge endpoints must satisfy a < b"));
            }
            if e.b >= modes {
                return Err(GemError::invalid("edge endpoint out of range"));
            }
            if !(e.weight.re.is_finite() && e.weight.im.is_finite()) {
                return Err(GemError::invalid("edge weight is not finite"));
            }
            if edges[..k].iter().any(|f| f.a == e.a && f.b == e.b) {
                return Err(GemError::invalid("duplicate edge"));
            }
        }
        Ok(GraphSpec { modes, edges })
    }

    /// Same weight on every listed pair; pairs may be given in either order.
    pub fn uniform(modes: usize, pairs: &[(usize, usize)], weight: Complex64) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a.min(b), a.max(b), weight))
            .collect();
        GraphSpec::new(modes, edges)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Same topology with every weight replaced by `weight`.
    pub fn with_weight(&self, weight: Complex64) -> GraphSpec {
        GraphSpec {
            modes: self.modes,
            edges: self.edges.iter().map(|e| Edge { weight, ..*e }).collect(),
        }
    }
}

/// Edge weight in polar form, `w = r e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarCoupling {
    pub r: f64,
    pub phi: f64,
}

impl PolarCoupling {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite() && phi.is_finite()) {
            return Err(GemError::invalid(
                "polar coupling needs finite r >= 0 and finite phase",
            ));
        }
        Ok(PolarCoupling { r, phi })
    }

    pub fn from_weight(w: Complex64) -> Self {
        PolarCoupling {
            r: libm::hypot(w.re, w.im),
            phi: libm::atan2(w.im, w.re),
        }
    }

    pub fn weight(&self) -> Complex64 {
        Complex64::new(self.r * libm::cos(self.phi), self.r * libm::sin(self.phi))
    }
}

pub fn hamiltonian_from_graph(spec: &GraphSpec) -> Result<QuadraticHamiltonian> {
    let mut h = Matrix::zeros(2 * spec.modes, 2 * spec.modes);
    for e in &spec.edges {
        let (re, im) = (e.weight.re, e.weight.im);
        let block = Matrix::from_rows(&[&[re, -im], &[-im, re]])?;
        h.set_block(2 * e.a, 2 * e.b, &block);
        h.set_block(2 * e.b, 2 * e.a, &block);
    }
    QuadraticHamiltonian::new(h)
}

pub fn graph_state_covariance(spec: &GraphSpec) -> Result<CovarianceMatrix> {
    let h = hamiltonian_from_graph(spec)?;
    let s = symplectic_from_hamiltonian(&h, &build_omega(spec.modes)?)?;
    evolve_covariance(&vacuum_state(spec.modes)?, &s)
}

/// Width of the window around `c = 0` where the series is used.
const SINGULAR_WINDOW: f64 = 1e-6;

/// `sin²(a√c)/c`, real for either sign of `c` and regular at `c = 0`.
pub(crate) fn sin2_ratio(c: f64, a: f64) -> f64 {
    if c.abs() < SINGULAR_WINDOW {
        let a2 = a * a;
        a2 - a2 * a2 * c / 3.0 + 2.0 * a2 * a2 * a2 * c * c / 45.0
    } else if c > 0.0 {
        let s = libm::sin(a * libm::sqrt(c));
        s * s / c
    } else {
        let s = libm::sinh(a * libm::sqrt(-c));
        -(s * s) / c
    }
}

/// `cos(a√c)`, i.e. `cosh(a√−c)` for negative `c`.
pub(crate) fn cos_cont(c: f64, a: f64) -> f64 {
    1.0 - 2.0 * c * sin2_ratio(c, 0.5 * a)
}

/// Two-mode GEM, `(1/16) sin²φ sin²(2r√cos 2φ) / cos 2φ`.
pub fn gem_two_mode_closed(w: PolarCoupling) -> f64 {
    let s = libm::sin(w.phi);
    s * s * sin2_ratio(libm::cos(2.0 * w.phi), 2.0 * w.r) / 16.0
}

/// `[P₁⁻² + P₂⁻² − 2] / (2 sinh² 2)` for the two-mode state with weight
/// `tanh(ν) e^{iφ}`. Bounded by 1, approached along `φ = π/2`, `ν → ∞`.
pub fn compact_gem_two_mode(nu: f64, phi: f64) -> f64 {
    let r = libm::tanh(nu).abs();
    let s2 = libm::sinh(2.0);
    16.0 * gem_two_mode_closed(PolarCoupling { r, phi }) / (s2 * s2)
}

/// Fully connected three-mode graph with equal weights,
/// `(1/12) sin²φ sin²(3r√cos 2φ) / cos 2φ`.
pub fn gem_three_mode_g1(w: PolarCoupling) -> f64 {
    let s = libm::sin(w.phi);
    s * s * sin2_ratio(libm::cos(2.0 * w.phi), 3.0 * w.r) / 12.0
}

/// Three-mode path with equal weights. With `c = sin 4φ / sin 2φ = 2 cos 2φ`
/// the GEM is `(1/32) sin²φ sec 2φ sin²(r√c) (3 cos(2r√c) + 5)`.
pub fn gem_three_mode_g2(w: PolarCoupling) -> f64 {
    let s = libm::sin(w.phi);
    let c = 2.0 * libm::cos(2.0 * w.phi);
    // sec 2φ = 2/c
    s * s * 2.0 * sin2_ratio(c, w.r) * (3.0 * cos_cont(c, 2.0 * w.r) + 5.0) / 32.0
}

/// GEM(A)/GEM(B) with every weight of both graphs set to `i·r`.
pub fn gem_ratio_small_r(a: &GraphSpec, b: &GraphSpec, r: f64) -> Result<f64> {
    if a.modes != b.modes {
        return Err(GemError::invalid("graphs have different mode counts"));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(GemError::invalid("probe modulus must be positive"));
    }
    let w = Complex64::new(0.0, r);
    let ga = gem_from_purity(&graph_state_covariance(&a.with_weight(w))?)?;
    let gb = gem_from_purity(&graph_state_covariance(&b.with_weight(w))?)?;
    if gb <= 0.0 {
        return Err(GemError::DivisionByZero(
            "reference graph has zero GEM".into(),
        ));
    }
    Ok(ga / gb)
}

/// Logarithmic negativity `max(0, −ln 2ν̃₋)` of a two-mode state, where `ν̃₋`
/// is the smaller symplectic eigenvalue of the partial transpose (sign flip
/// of `p₂`).
pub fn log_negativity_two_mode(gamma: &CovarianceMatrix) -> Result<f64> {
    if gamma.modes() != 2 {
        return Err(GemError::invalid("log negativity needs a two-mode state"));
    }
    let m = gamma.matrix();
    let det_a = m.block(0, 0, 2, 2).determinant()?;
    let det_b = m.block(2, 2, 2, 2).determinant()?;
    let det_c = m.block(0, 2, 2, 2).determinant()?;
    let det = m.determinant()?;
    // the flip negates det C and leaves det Γ unchanged
    let delta = det_a + det_b - 2.0 * det_c;
    let disc = (delta * delta - 4.0 * det).max(0.0);
    let denom = delta + libm::sqrt(disc);
    if !(denom > 0.0) {
        return Err(GemError::UnphysicalState {
            what: "partial transpose invariant",
            value: delta,
        });
    }
    let nu_minus = libm::sqrt(2.0 * det / denom);
    Ok((-libm::log(2.0 * nu_minus)).max(0.0))
}

/// The five independent components of the two-mode `h` metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeMetricBlocks {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

pub fn two_mode_metric_blocks(w: PolarCoupling) -> TwoModeMetricBlocks {
    let (s, co) = (libm::sin(w.phi), libm::cos(w.phi));
    let c2 = libm::cos(2.0 * w.phi);
    let s2r = sin2_ratio(c2, 2.0 * w.r);
    let sr = sin2_ratio(c2, w.r);
    // (cos²φ − sin²φ cos(2r√c)) / c = 1 + 2 sin²φ sin²(r√c)/c
    let bracket = 1.0 + 2.0 * s * s * sr;
    TwoModeMetricBlocks {
        a: -s * s * s2r / 16.0,
        b: (2.0 - s * s * s2r) / 16.0,
        c: (s * s * s2r + 2.0 * bracket * bracket) / 16.0,
        d: -s * co * bracket * sr / 4.0,
        e: s * s * sr * (sr + 1.0) / 4.0,
    }
}

/// The `h` metric of the two-mode graph state assembled from
/// [`two_mode_metric_blocks`]. Generator pairs `(T₁, T₂)` and `(T₁, T₃)`
/// vanish; `(T₂, T₃)` couples only across modes.
pub fn two_mode_metric_closed(w: PolarCoupling) -> MetricTensor {
    let k = two_mode_metric_blocks(w);
    let mut t = MetricTensor::zeros(2, MetricKind::H);
    for mu in 0..2 {
        for nu in 0..2 {
            let same = mu == nu;
            t.set(mu, 0, nu, 0, if same { k.a } else { k.b });
            t.set(mu, 1, nu, 1, if same { -k.a } else { k.c });
            t.set(mu, 2, nu, 2, if same { -k.a } else { k.e });
            if !same {
                t.set(mu, 1, nu, 2, k.d);
                t.set(mu, 2, nu, 1, k.d);
            }
        }
    }
    t
}

/// Named graph topologies used by the ratio probes (0-based modes).
pub mod topology {
    /// Fully connected three-mode graph.
    pub const TRIANGLE: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2)];
    /// Two-edge three-mode path `1 − 2 − 3`.
    pub const PATH3: &[(usize, usize)] = &[(0, 1), (1, 2)];

    /// Four-mode cycle.
    pub const SQUARE: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3)];
    /// Cycle plus one diagonal.
    pub const SQUARE_DIAGONAL: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)];
    /// Complete graph on four modes.
    pub const COMPLETE4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];
    /// Two edges meeting at a corner.
    pub const CORNER: &[(usize, usize)] = &[(0, 1), (0, 3)];
    /// Three-edge open path.
    pub const PATH4: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 3)];

    /// The six four-mode ratio pairs `(numerator, denominator)`.
    pub const FOUR_MODE_PAIRS: [(&[(usize, usize)], &[(usize, usize)]); 6] = [
        (SQUARE_DIAGONAL, COMPLETE4),
        (SQUARE, COMPLETE4),
        (CORNER, PATH4),
        (CORNER, SQUARE_DIAGONAL),
        (CORNER, SQUARE),
        (SQUARE, SQUARE_DIAGONAL),
    ];
}

/// Three-mode graph with `A₁₂ = ix`, `A₂₃ = iy` and, for the fully connected
/// member, `A₁₃ = 1`.
pub fn second_family(x: f64, y: f64, fully_connected: bool) -> Result<GraphSpec> {
    let mut edges = alloc::vec![
        Edge::new(0, 1, Complex64::new(0.0, x)),
        Edge::new(1, 2, Complex64::new(0.0, y)),
    ];
    if fully_connected {
        edges.push(Edge::new(0, 2, Complex64::new(1.0, 0.0)));
    }
    GraphSpec::new(3, edges)
}
