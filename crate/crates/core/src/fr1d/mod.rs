//! One-dimensional flux-reconstruction building blocks.
//!
//! Everything here lives on the reference element `[-1, 1]`: the nodal
//! Lagrange basis at Gauss-Legendre points, the gradients of the
//! DG-recovering (Radau) correction functions, and the per-element
//! advection operator matrices `L`, `C`, `R`.

mod basis;
mod correction;
mod operators;

pub use basis::{legendre_and_derivative, NodalBasis};
pub use correction::{correction_left, correction_right, CorrectionGradients};
pub use operators::ElementOperators;

/// Physical coordinates of all solution points of a uniform 1D mesh of
/// `n` elements covering `[x0, x0 + n*h]`, element-major.
pub fn solution_points_1d(n: usize, h: f64, x0: f64, nodes: &[f64]) -> Vec<f64> {
    let mut xs = Vec::with_capacity(n * nodes.len());
    for e in 0..n {
        let left = x0 + e as f64 * h;
        let center = left + 0.5 * h;
        for &r in nodes {
            xs.push(center + 0.5 * h * r);
        }
    }
    xs
}
