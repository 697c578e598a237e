//! Complete elliptic integrals `K(m)` and `E(m)` in the parameter convention
//! `K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)`.
//!
//! Evaluated with the arithmetic-geometric mean. Negative parameters, the
//! regime of the lattice-field continuum limit, are mapped onto `[0, 1)` by
//! the imaginary-modulus transformation
//! `K(−Λ) = K(Λ/(1+Λ))/√(1+Λ)`, `E(−Λ) = √(1+Λ) E(Λ/(1+Λ))`.

use crate::error::{GemError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticKind {
    /// Second kind, `E(π/2 | m)`.
    E,
    /// First kind, `F(π/2 | m) = K(m)`.
    K,
}

const MAX_ITER: usize = 64;

/// Returns `(K(m), E(m))` for `0 ≤ m < 1`.
fn agm_pair(m: f64) -> (f64, f64) {
    let mut a = 1.0;
    let mut b = libm::sqrt(1.0 - m);
    // Σ 2^{n−1} c_n², starting from c₀² = m
    let mut sum = 0.5 * m;
    let mut pow = 0.5;
    for _ in 0..MAX_ITER {
        let c = 0.5 * (a - b);
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = libm::sqrt(a * b);
        a = an;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let k = core::f64::consts::FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

pub fn complete_elliptic(kind: EllipticKind, m: f64) -> Result<f64> {
    if m.is_nan() {
        return Err(GemError::invalid("elliptic parameter is NaN"));
    }
    if m == f64::NEG_INFINITY {
        return match kind {
            EllipticKind::K => Ok(0.0),
            EllipticKind::E => Ok(f64::INFINITY),
        };
    }
    if m >= 1.0 {
        return match kind {
            EllipticKind::E if m == 1.0 => Ok(1.0),
            EllipticKind::E => Err(GemError::invalid("E(m) is complex for m > 1")),
            EllipticKind::K => Err(GemError::Divergence("K(m) diverges at m >= 1".into())),
        };
    }
    if m >= 0.0 {
        let (k, e) = agm_pair(m);
        return Ok(match kind {
            EllipticKind::K => k,
            EllipticKind::E => e,
        });
    }
    let lambda = -m;
    let s = libm::sqrt(1.0 + lambda);
    let (k, e) = agm_pair(lambda / (1.0 + lambda));
    Ok(match kind {
        EllipticKind::K => k / s,
        EllipticKind::E => e * s,
    })
}
