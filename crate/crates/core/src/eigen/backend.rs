//! Dense complex eigendecomposition, delegated to LAPACK (zgeev) through
//! ndarray-linalg.

use ndarray::Array2;
use ndarray_linalg::Eig;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues and right eigenvectors (as matrix columns) of a general
/// complex matrix.
pub fn eig_complex(a: &Array2<Complex64>) -> Result<(Vec<Complex64>, Array2<Complex64>)> {
    let (vals, vecs) = a
        .eig()
        .map_err(|e| Error::Eig(format!("zgeev failed on {}x{} matrix: {e}", a.nrows(), a.ncols())))?;
    Ok((vals.to_vec(), vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn residuals_below_target() {
        // ||M v - lambda v|| / ||M|| <= 1e-10 on a small non-normal matrix.
        let m = array![
            [Complex64::new(2.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.3, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(-5.0, 0.0), Complex64::new(4.0, 2.0)],
            [Complex64::new(1.0, -1.0), Complex64::new(0.0, 0.5), Complex64::new(0.1, 0.0)]
        ];
        let norm: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let (vals, vecs) = eig_complex(&m).unwrap();
        for (j, &lambda) in vals.iter().enumerate() {
            let v = vecs.column(j);
            let mv = m.dot(&v);
            let resid: f64 = mv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - lambda * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid / norm < 1e-10, "residual {resid}");
        }
    }
}
