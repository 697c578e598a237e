#![allow(dead_code)]

use gem_core::{
    graph_state_covariance, CovarianceMatrix, Edge, GraphSpec, Matrix, SymplecticTransform,
};
use rand::Rng;

pub fn random_spec<R: Rng>(rng: &mut R, modes: usize, max_modulus: f64) -> GraphSpec {
    let edges = gem_oracles::random_graph(rng, modes, 0.7, max_modulus)
        .into_iter()
        .map(|(a, b, w)| Edge::new(a, b, w))
        .collect();
    GraphSpec::new(modes, edges).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, modes: usize) -> CovarianceMatrix {
    graph_state_covariance(&random_spec(rng, modes, 1.5)).unwrap()
}

/// `R(θ₁) diag(eˢ, e⁻ˢ) R(θ₂)`, a generic element of `Sp(2,ℝ)`.
pub fn sp2(theta1: f64, s: f64, theta2: f64) -> Matrix {
    let rot = |t: f64| Matrix::from_rows(&[&[t.cos(), t.sin()], &[-t.sin(), t.cos()]]).unwrap();
    let sq = Matrix::from_rows(&[&[s.exp(), 0.0], &[0.0, (-s).exp()]]).unwrap();
    rot(theta1).matmul(&sq).matmul(&rot(theta2))
}

pub fn random_local<R: Rng>(rng: &mut R, modes: usize) -> SymplecticTransform {
    let blocks: Vec<Matrix> = (0..modes)
        .map(|_| {
            sp2(
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    SymplecticTransform::local(&blocks).unwrap()
}
