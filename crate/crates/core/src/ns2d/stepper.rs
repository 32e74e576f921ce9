//! Explicit Runge-Kutta steppers over flat state vectors.
//!
//! Both the three-stage TVD scheme and the low-storage five-stage
//! fourth-order scheme (LSERK) are available; they produce matching
//! predictions, LSERK at a somewhat larger stable step.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeScheme {
    Rk3,
    Lserk,
}

impl Default for TimeScheme {
    fn default() -> Self {
        TimeScheme::Rk3
    }
}

/// Carpenter-Kennedy five-stage fourth-order low-storage coefficients.
const LSERK_A: [f64; 5] = [
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
];
const LSERK_B: [f64; 5] = [
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
];

/// Reusable buffers for the steppers.
#[derive(Debug, Default)]
pub struct StepBuffers {
    pub k: Vec<f64>,
    pub tmp: Vec<f64>,
    pub tmp2: Vec<f64>,
}

impl StepBuffers {
    pub fn sized(n: usize) -> Self {
        Self {
            k: vec![0.0; n],
            tmp: vec![0.0; n],
            tmp2: vec![0.0; n],
        }
    }

    fn ensure(&mut self, n: usize) {
        self.k.resize(n, 0.0);
        self.tmp.resize(n, 0.0);
        self.tmp2.resize(n, 0.0);
    }
}

/// TVD-RK3 (Shu-Osher). `rhs(u, du)` evaluates the semi-discrete RHS.
pub fn rk3_step(
    u: &mut [f64],
    dt: f64,
    buf: &mut StepBuffers,
    mut rhs: impl FnMut(&[f64], &mut [f64]) -> Result<()>,
) -> Result<()> {
    let n = u.len();
    buf.ensure(n);
    rhs(u, &mut buf.k)?;
    buf.tmp
        .par_iter_mut()
        .zip(u.par_iter())
        .zip(buf.k.par_iter())
        .for_each(|((t, &ui), &ki)| *t = ui + dt * ki);
    rhs(&buf.tmp, &mut buf.k)?;
    let (tmp, tmp2) = (&buf.tmp, &mut buf.tmp2);
    tmp2.par_iter_mut()
        .zip(u.par_iter().zip(tmp.par_iter()).zip(buf.k.par_iter()))
        .for_each(|(t2, ((&ui, &t1), &ki))| *t2 = 0.75 * ui + 0.25 * (t1 + dt * ki));
    rhs(&buf.tmp2, &mut buf.k)?;
    let tmp2 = &buf.tmp2;
    u.par_iter_mut()
        .zip(tmp2.par_iter().zip(buf.k.par_iter()))
        .for_each(|(ui, (&t2, &ki))| *ui = (*ui + 2.0 * (t2 + dt * ki)) / 3.0);
    Ok(())
}

/// Low-storage five-stage fourth-order explicit Runge-Kutta.
pub fn lserk_step(
    u: &mut [f64],
    dt: f64,
    buf: &mut StepBuffers,
    mut rhs: impl FnMut(&[f64], &mut [f64]) -> Result<()>,
) -> Result<()> {
    let n = u.len();
    buf.ensure(n);
    buf.tmp.fill(0.0); // the low-storage register
    for stage in 0..5 {
        rhs(u, &mut buf.k)?;
        let a = LSERK_A[stage];
        let b = LSERK_B[stage];
        buf.tmp
            .par_iter_mut()
            .zip(buf.k.par_iter())
            .for_each(|(r, &ki)| *r = a * *r + dt * ki);
        u.par_iter_mut()
            .zip(buf.tmp.par_iter())
            .for_each(|(ui, &ri)| *ui += b * ri);
    }
    Ok(())
}

pub fn step(
    scheme: TimeScheme,
    u: &mut [f64],
    dt: f64,
    buf: &mut StepBuffers,
    rhs: impl FnMut(&[f64], &mut [f64]) -> Result<()>,
) -> Result<()> {
    match scheme {
        TimeScheme::Rk3 => rk3_step(u, dt, buf, rhs),
        TimeScheme::Lserk => lserk_step(u, dt, buf, rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    /// Linear test du/dt = lambda u: one step must match the scheme's
    /// stability polynomial applied to u0.
    #[test]
    fn rk3_matches_stability_polynomial() {
        let lambda = -3.7;
        let dt = 0.1;
        let mut u = vec![1.0];
        let mut buf = StepBuffers::default();
        rk3_step(&mut u, dt, &mut buf, |s, d| {
            d[0] = lambda * s[0];
            Ok(())
        })
        .unwrap();
        let z = lambda * dt;
        let expect = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        assert_abs_diff_eq!(u[0], expect, epsilon = 1e-14);
    }

    /// LSERK on the same linear test matches its quartic stability
    /// polynomial computed independently from the coefficient tableau.
    #[test]
    fn lserk_matches_its_own_polynomial_and_order() {
        // Derive the polynomial coefficients by stepping the scalar system
        // symbolically in powers of z using exact complex arithmetic.
        let dt = 0.05;
        let lambda = Complex64::new(-1.0, 2.0);
        // Numeric step on the complex system as two reals.
        let mut u = vec![1.0, 0.0];
        let mut buf = StepBuffers::default();
        lserk_step(&mut u, dt, &mut buf, |s, d| {
            let v = Complex64::new(s[0], s[1]);
            let dv = lambda * v;
            d[0] = dv.re;
            d[1] = dv.im;
            Ok(())
        })
        .unwrap();
        // Reference: run the same tableau in complex arithmetic.
        let mut v = Complex64::new(1.0, 0.0);
        let mut r = Complex64::new(0.0, 0.0);
        for stage in 0..5 {
            r = LSERK_A[stage] * r + dt * (lambda * v);
            v += LSERK_B[stage] * r;
        }
        assert_abs_diff_eq!(u[0], v.re, epsilon = 1e-14);
        assert_abs_diff_eq!(u[1], v.im, epsilon = 1e-14);
        // Fourth order: |R(z) - e^z| = O(z^5).
        for &h in &[0.1, 0.05, 0.025] {
            let z = lambda * h;
            let mut v = Complex64::new(1.0, 0.0);
            let mut r = Complex64::new(0.0, 0.0);
            for stage in 0..5 {
                r = LSERK_A[stage] * r + z * v;
                v += LSERK_B[stage] * r;
            }
            let err = (v - z.exp()).norm();
            assert!(err < 0.01 * z.norm().powi(5), "h={h}: err={err}");
        }
    }

    #[test]
    fn zero_rhs_is_identity() {
        for scheme in [TimeScheme::Rk3, TimeScheme::Lserk] {
            let mut u = vec![1.5, -2.5, 3.75];
            let orig = u.clone();
            let mut buf = StepBuffers::default();
            step(scheme, &mut u, 0.1, &mut buf, |_, d| {
                d.fill(0.0);
                Ok(())
            })
            .unwrap();
            assert_eq!(u, orig);
        }
    }

    /// Convergence orders on the smooth nonlinear ODE u' = u (1 - u).
    #[test]
    fn textbook_convergence_orders() {
        let exact = |t: f64| {
            let u0: f64 = 0.1;
            u0 * t.exp() / (1.0 - u0 + u0 * t.exp())
        };
        let run = |scheme: TimeScheme, n: usize| -> f64 {
            let dt = 1.0 / n as f64;
            let mut u = vec![0.1];
            let mut buf = StepBuffers::default();
            for _ in 0..n {
                step(scheme, &mut u, dt, &mut buf, |s, d| {
                    d[0] = s[0] * (1.0 - s[0]);
                    Ok(())
                })
                .unwrap();
            }
            (u[0] - exact(1.0)).abs()
        };
        for (scheme, expect) in [(TimeScheme::Rk3, 3.0), (TimeScheme::Lserk, 4.0)] {
            let e1 = run(scheme, 20);
            let e2 = run(scheme, 40);
            let order = (e1 / e2).log2();
            assert!(
                (order - expect).abs() < 0.25,
                "{scheme:?}: observed order {order}"
            );
        }
    }
}
