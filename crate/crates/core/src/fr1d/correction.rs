//! Gradients of the DG-recovering correction functions.
//!
//! The left/right correction functions are the right/left Radau polynomials
//! of degree P+1, the choice for which flux reconstruction recovers the
//! nodal DG scheme:
//!
//! ```text
//! g_L(r) = (-1)^(P+1)/2 * (L_{P+1}(r) - L_P(r)),   g_L(-1) = 1, g_L(1) = 0
//! g_R(r) = g_L(-r) = 1/2 * (L_{P+1}(r) + L_P(r)),  g_R(-1) = 0, g_R(1) = 1
//! ```

use super::basis::{legendre_and_derivative, NodalBasis};

/// Value of the left correction function `g_L` at `r`.
pub fn correction_left(order: usize, r: f64) -> f64 {
    let sign = if order % 2 == 0 { -1.0 } else { 1.0 };
    let (p1, _) = legendre_eval(order + 1, r);
    let (p0, _) = legendre_eval(order, r);
    0.5 * sign * (p1 - p0)
}

/// Value of the right correction function `g_R` at `r`.
pub fn correction_right(order: usize, r: f64) -> f64 {
    correction_left(order, -r)
}

// legendre_and_derivative uses (x^2 - 1) in the derivative; at the exact
// endpoints fall back to the closed forms P_n(+-1) and P_n'(+-1).
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    if x == 1.0 {
        return (1.0, n as f64 * (n as f64 + 1.0) / 2.0);
    }
    if x == -1.0 {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        return (s, -s * n as f64 * (n as f64 + 1.0) / 2.0);
    }
    legendre_and_derivative(n, x)
}

/// Correction-function gradients sampled at the solution points.
#[derive(Debug, Clone)]
pub struct CorrectionGradients {
    /// `d g_L / dr` at each solution point.
    pub g_left: Vec<f64>,
    /// `d g_R / dr` at each solution point.
    pub g_right: Vec<f64>,
}

impl CorrectionGradients {
    pub fn new(basis: &NodalBasis) -> Self {
        let p = basis.order;
        let sign = if p % 2 == 0 { -1.0 } else { 1.0 };
        let g_left: Vec<f64> = basis
            .nodes
            .iter()
            .map(|&r| {
                let (_, dp1) = legendre_eval(p + 1, r);
                let (_, dp0) = legendre_eval(p, r);
                0.5 * sign * (dp1 - dp0)
            })
            .collect();
        // Mirror symmetry g_R'(r) = -g_L'(-r); Gauss nodes reflect exactly.
        let np = p + 1;
        let g_right: Vec<f64> = (0..np).map(|i| -g_left[np - 1 - i]).collect();
        Self { g_left, g_right }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boundary_values_of_correction_functions() {
        for p in 0..=10 {
            assert_abs_diff_eq!(correction_left(p, -1.0), 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(correction_left(p, 1.0), 0.0, epsilon = 1e-13);
            assert_abs_diff_eq!(correction_right(p, 1.0), 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(correction_right(p, -1.0), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn p0_left_gradient_is_minus_half() {
        // g_L = (1 - r)/2 for P = 0, so the gradient is -1/2 everywhere.
        let basis = NodalBasis::new(0);
        let corr = CorrectionGradients::new(&basis);
        assert_eq!(corr.g_left.len(), 1);
        assert_abs_diff_eq!(corr.g_left[0], -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(corr.g_right[0], 0.5, epsilon = 1e-14);
    }

    /// Oracle: differentiate the closed-form Radau polynomial with a central
    /// finite difference in extended precision step and compare.
    #[test]
    fn gradients_match_closed_form_derivative() {
        for p in 0..=8 {
            let basis = NodalBasis::new(p);
            let corr = CorrectionGradients::new(&basis);
            let h = 1e-6;
            for (i, &r) in basis.nodes.iter().enumerate() {
                let fd =
                    (correction_left(p, r + h) - correction_left(p, r - h)) / (2.0 * h);
                assert_abs_diff_eq!(corr.g_left[i], fd, epsilon = 1e-6);
                let fd_r =
                    (correction_right(p, r + h) - correction_right(p, r - h)) / (2.0 * h);
                assert_abs_diff_eq!(corr.g_right[i], fd_r, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn reflection_symmetry() {
        for p in 0..=10 {
            let basis = NodalBasis::new(p);
            let corr = CorrectionGradients::new(&basis);
            for i in 0..=p {
                assert_eq!(corr.g_right[i], -corr.g_left[p - i]);
            }
        }
    }

    /// Quadrature of the gradient against the constant mode recovers the
    /// boundary jump of the correction function: integral of g_L' = -1,
    /// integral of g_R' = +1. The integrand has degree P, so the P+1-point
    /// Gauss rule is exact.
    #[test]
    fn gradient_quadrature_recovers_boundary_jump() {
        for p in 0..=10 {
            let basis = NodalBasis::new(p);
            let corr = CorrectionGradients::new(&basis);
            let int_l: f64 = basis
                .weights
                .iter()
                .zip(&corr.g_left)
                .map(|(w, g)| w * g)
                .sum();
            let int_r: f64 = basis
                .weights
                .iter()
                .zip(&corr.g_right)
                .map(|(w, g)| w * g)
                .sum();
            assert_abs_diff_eq!(int_l, -1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(int_r, 1.0, epsilon = 1e-12);
        }
    }
}
