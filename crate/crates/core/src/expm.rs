//! Dense matrix exponential by scaling and squaring.
//!
//! `exp(M) = exp(M / 2^s)^(2^s)` where `s` is the smallest power with
//! `‖M / 2^s‖₁ ≤ 1/2`; the scaled exponential is a degree-18 Taylor polynomial
//! evaluated by Horner's rule. The truncation error at norm 1/2 is below
//! `0.5^19 / 19! ≈ 1.6e-23`, far under `f64` resolution. The generators `Ωh`
//! we feed in are not normal, which rules out an eigendecomposition route.

use crate::error::{GemError, Result};
use crate::matrix::Matrix;

const TAYLOR_DEGREE: u32 = 18;
const SCALED_NORM: f64 = 0.5;
const MAX_SQUARINGS: i32 = 1024;

pub fn matrix_exponential(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(GemError::invalid(
            "matrix exponential of a non-square matrix",
        ));
    }
    if !m.is_finite() {
        return Err(GemError::invalid(
            "matrix exponential of non-finite entries",
        ));
    }
    let n = m.rows();
    let norm = m.norm1();
    let mut squarings = 0i32;
    if norm > SCALED_NORM {
        squarings = libm::ceil(libm::log2(norm / SCALED_NORM)) as i32;
    }
    if squarings > MAX_SQUARINGS {
        return Err(GemError::NumericOverflow("norm too large for exp".into()));
    }
    let x = m.scale(libm::exp2(-(squarings as f64)));

    let id = Matrix::identity(n);
    let mut p = id.clone();
    for k in (1..=TAYLOR_DEGREE).rev() {
        p = &id + &x.matmul(&p).scale(1.0 / k as f64);
    }
    for _ in 0..squarings {
        p = p.matmul(&p);
        if !p.is_finite() {
            return Err(GemError::NumericOverflow(
                "exp overflowed while squaring".into(),
            ));
        }
    }
    Ok(p)
}
