//! Fully-discrete (RK3) amplification analysis.

use ndarray::Array2;
use num_complex::Complex64;

use super::backend::eig_complex;
use super::global::GlobalOperator;
use crate::error::{Error, Result};

/// The RK3 amplification matrix `A = I + dt M + (dt M)^2/2 + (dt M)^3/6`.
#[derive(Debug, Clone)]
pub struct AmplificationOperator {
    pub matrix: Array2<Complex64>,
    pub dt: f64,
}

/// Build the amplification matrix for one global operator.
pub fn rk3_amplification(op: &GlobalOperator, dt: f64) -> Result<AmplificationOperator> {
    if dt <= 0.0 {
        return Err(Error::InvalidParam(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let n = op.matrix.nrows();
    let z = op.matrix.mapv(|v| v * dt);
    let z2 = z.dot(&z);
    let z3 = z2.dot(&z);
    let mut a = Array2::from_diag_elem(n, Complex64::new(1.0, 0.0));
    a = a + &z + z2.mapv(|v| v * 0.5) + z3.mapv(|v| v / 6.0);
    Ok(AmplificationOperator { matrix: a, dt })
}

/// Amplification eigenvalues `g` and eigenvectors of the fully-discrete
/// operator. Dissipation rates are `ln|g|/dt`; any `|g| > 1` marks an
/// instability of the space-time scheme.
pub fn fully_discrete_spectrum(
    op: &GlobalOperator,
    dt: f64,
) -> Result<(Vec<Complex64>, Array2<Complex64>)> {
    let amp = rk3_amplification(op, dt)?;
    eig_complex(&amp.matrix)
}

/// The scalar RK3 stability polynomial `1 + z + z^2/2 + z^3/6`.
pub fn rk3_stability_polynomial(z: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) + z + z * z * 0.5 + z * z * z / 6.0
}
