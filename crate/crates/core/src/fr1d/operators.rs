//! Per-element advection operator matrices.
//!
//! For the linear advection equation with a Lax-Friedrichs style numerical
//! flux (upwind parameter `lambda`), the semi-discrete update of element n
//! couples to its neighbours as
//!
//! ```text
//! d u_n / dt = L u_{n-1} + C u_n + R u_{n+1}
//! ```
//!
//! with
//!
//! ```text
//! L = -(1/h) g_L' (c + lambda |c|) l^T(+1)
//! C = -(2/h) [ c D - 1/2 g_L' (c + lambda |c|) l^T(-1)
//!                  + 1/2 g_R' (lambda |c| - c) l^T(+1) ]
//! R = -(1/h) g_R' (c - lambda |c|) l^T(-1)
//! ```

use ndarray::Array2;

use super::{CorrectionGradients, NodalBasis};
use crate::error::{Error, Result};

/// The three coupling matrices of one FR element plus their parameters.
#[derive(Debug, Clone)]
pub struct ElementOperators {
    /// Coupling to the left neighbour.
    pub left: Array2<f64>,
    /// Self-coupling.
    pub center: Array2<f64>,
    /// Coupling to the right neighbour.
    pub right: Array2<f64>,
    /// Element width.
    pub h: f64,
    /// Advection speed.
    pub c: f64,
    /// Upwind parameter of the numerical flux (1 = fully upwind).
    pub lambda: f64,
    /// Polynomial degree.
    pub order: usize,
}

impl ElementOperators {
    pub fn new(
        basis: &NodalBasis,
        corr: &CorrectionGradients,
        h: f64,
        c: f64,
        lambda: f64,
    ) -> Result<Self> {
        if h <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "element width must be positive, got {h}"
            )));
        }
        let np = basis.order + 1;
        let upwind = c + lambda * c.abs();
        let downwind = c - lambda * c.abs();

        let mut left = Array2::zeros((np, np));
        let mut center = Array2::zeros((np, np));
        let mut right = Array2::zeros((np, np));
        for i in 0..np {
            for j in 0..np {
                left[(i, j)] =
                    -(1.0 / h) * corr.g_left[i] * upwind * basis.boundary_interp_right[j];
                right[(i, j)] =
                    -(1.0 / h) * corr.g_right[i] * downwind * basis.boundary_interp_left[j];
                center[(i, j)] = -(2.0 / h)
                    * (c * basis.diff_matrix[(i, j)]
                        - 0.5 * corr.g_left[i] * upwind * basis.boundary_interp_left[j]
                        + 0.5 * corr.g_right[i] * (lambda * c.abs() - c)
                            * basis.boundary_interp_right[j]);
            }
        }
        Ok(Self {
            left,
            center,
            right,
            h,
            c,
            lambda,
            order: basis.order,
        })
    }
}
