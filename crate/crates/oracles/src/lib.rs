//! Reference computations for the test suites.
//!
//! Everything here is deliberately naive and shares no code with `gem-core`:
//! a truncated Fock-space model of the two-mode squeezed vacuum, a plain Taylor
//! matrix exponential, adaptive Simpson quadrature and a random graph sampler.

use num_complex::Complex64;
use rand::Rng;

pub mod fock {
    use super::Complex64;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum Quadrature {
        Q,
        P,
    }

    /// `Σ_n λⁿ |n, n⟩ / normalization`, truncated at `cutoff` photons per mode.
    #[derive(Debug, Clone)]
    pub struct TwoModeState {
        cutoff: usize,
        psi: Vec<Complex64>,
    }

    impl TwoModeState {
        /// Squeezed vacuum with Schmidt ratio `λ = −tanh r`.
        pub fn squeezed_vacuum(r: f64, cutoff: usize) -> Self {
            let lambda = -r.tanh();
            let dim = cutoff + 1;
            let mut psi = vec![Complex64::new(0.0, 0.0); dim * dim];
            let mut norm = 0.0;
            for n in 0..dim {
                let c = lambda.powi(n as i32) / r.cosh();
                psi[n * dim + n] = Complex64::new(c, 0.0);
                norm += c * c;
            }
            let s = norm.sqrt();
            for v in &mut psi {
                *v /= s;
            }
            TwoModeState { cutoff, psi }
        }

        fn dim(&self) -> usize {
            self.cutoff + 1
        }

        fn lower(&self, mode: usize, v: &[Complex64]) -> Vec<Complex64> {
            let d = self.dim();
            let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
            for n1 in 0..d {
                for n2 in 0..d {
                    let (k, target) = match mode {
                        0 if n1 > 0 => (n1, (n1 - 1) * d + n2),
                        1 if n2 > 0 => (n2, n1 * d + n2 - 1),
                        _ => continue,
                    };
                    out[target] += (k as f64).sqrt() * v[n1 * d + n2];
                }
            }
            out
        }

        fn raise(&self, mode: usize, v: &[Complex64]) -> Vec<Complex64> {
            let d = self.dim();
            let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
            for n1 in 0..d {
                for n2 in 0..d {
                    let (k, target) = match mode {
                        0 if n1 + 1 < d => (n1 + 1, (n1 + 1) * d + n2),
                        1 if n2 + 1 < d => (n2 + 1, n1 * d + n2 + 1),
                        _ => continue,
                    };
                    out[target] += (k as f64).sqrt() * v[n1 * d + n2];
                }
            }
            out
        }

        /// `q = (a + a†)/√2`, `p = i(a† − a)/√2`.
        fn apply(&self, mode: usize, quad: Quadrature, v: &[Complex64]) -> Vec<Complex64> {
            let lo = self.lower(mode, v);
            let hi = self.raise(mode, v);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            lo.iter()
                .zip(&hi)
                .map(|(l, h)| match quad {
                    Quadrature::Q => (l + h) * s,
                    Quadrature::P => (h - l) * Complex64::new(0.0, s),
                })
                .collect()
        }

        /// `⟨ψ| x₁ x₂ ⋯ x_k |ψ⟩` for the listed `(mode, quadrature)` factors.
        pub fn expect(&self, ops: &[(usize, Quadrature)]) -> Complex64 {
            let mut v = self.psi.clone();
            for &(mode, quad) in ops.iter().rev() {
                v = self.apply(mode, quad, &v);
            }
            self.psi.iter().zip(&v).map(|(a, b)| a.conj() * b).sum()
        }

        /// Symmetrized covariance `½⟨{x_A, x_B}⟩` in the `(q₁, p₁, q₂, p₂)` layout.
        pub fn covariance(&self) -> [[f64; 4]; 4] {
            let label = |a: usize| {
                (
                    a / 2,
                    if a.is_multiple_of(2) {
                        Quadrature::Q
                    } else {
                        Quadrature::P
                    },
                )
            };
            let mut g = [[0.0; 4]; 4];
            for (a, row) in g.iter_mut().enumerate() {
                for (b, entry) in row.iter_mut().enumerate() {
                    let ab = self.expect(&[label(a), label(b)]);
                    let ba = self.expect(&[label(b), label(a)]);
                    *entry = 0.5 * (ab + ba).re;
                }
            }
            g
        }

        /// Purity of the reduced state of mode 1, `Σ_n |c_n|⁴`.
        pub fn reduced_purity(&self) -> f64 {
            let d = self.dim();
            (0..d).map(|n| self.psi[n * d + n].norm_sqr().powi(2)).sum()
        }
    }
}

/// Row-major `n×n` matrix exponential by a plain Taylor series after scaling the
/// max-norm below `2⁻⁸`.
pub fn expm_taylor(m: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(m.len(), n * n);
    let mul = |a: &[f64], b: &[f64]| {
        let mut c = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        c
    };
    let norm = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())) * n as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 1.0 / 256.0 {
        scale *= 0.5;
        squarings += 1;
    }
    let x: Vec<f64> = m.iter().map(|v| v * scale).collect();
    let mut sum: Vec<f64> = (0..n * n)
        .map(|k| if k % (n + 1) == 0 { 1.0 } else { 0.0 })
        .collect();
    let mut term = sum.clone();
    for k in 1..40 {
        term = mul(&term, &x).iter().map(|v| v / k as f64).collect();
        let small = term.iter().all(|v| v.abs() < 1e-300);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        if small {
            break;
        }
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Random graph on `modes` modes: each pair is an edge with probability
/// `density`, weights uniform in the disk `|w| ≤ max_modulus`. Pairs are
/// 0-based with `a < b`.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    modes: usize,
    density: f64,
    max_modulus: f64,
) -> Vec<(usize, usize, Complex64)> {
    let mut edges = Vec::new();
    for a in 0..modes {
        for b in (a + 1)..modes {
            if rng.gen::<f64>() < density {
                let r = max_modulus * rng.gen::<f64>().sqrt();
                let phi = rng.gen_range(0.0..std::f64::consts::TAU);
                edges.push((a, b, Complex64::from_polar(r, phi)));
            }
        }
    }
    edges
}
