//! Encapsulated selective frequency damping.
//!
//! SFD couples the in-solid velocities `q` to a low-pass filtered companion
//! `q_bar` through
//!
//! ```text
//! dq/dt     = -chi_f (q - q_bar)
//! dq_bar/dt = (q - q_bar) / delta
//! ```
//!
//! The 2x2 block system is advanced exactly once per outer time step by the
//! closed-form propagator `exp(L dt)`; the underlying PDE stepper enters only
//! through its output `phi(q)`, so any time-marching code can be wrapped
//! without modification.
//!
//! Point ordering for `q` is lexicographic by (element index, solution-point
//! index, velocity component) and is fixed for reproducibility.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// SFD parameters: feedback coefficient and filter width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SfdParams {
    /// Control (feedback) coefficient, units 1/time.
    pub chi_f: f64,
    /// Filter width; the filter cutoff frequency is `1/delta`.
    pub delta: f64,
    pub enabled: bool,
}

impl SfdParams {
    pub fn new(chi_f: f64, delta: f64) -> Result<Self> {
        if chi_f < 0.0 {
            return Err(Error::InvalidParam(format!(
                "SFD control coefficient must be non-negative, got {chi_f}"
            )));
        }
        if delta <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "SFD filter width must be positive, got {delta}"
            )));
        }
        Ok(Self {
            chi_f,
            delta,
            enabled: true,
        })
    }

    pub fn disabled() -> Self {
        Self {
            chi_f: 0.0,
            delta: 1.0,
            enabled: false,
        }
    }

    /// Cutoff frequency of the first-order low-pass filter.
    pub fn cutoff_frequency(&self) -> f64 {
        1.0 / self.delta
    }
}

/// Paired signal/filter vectors over the in-solid points.
#[derive(Debug, Clone, PartialEq)]
pub struct SfdState {
    pub q: Vec<f64>,
    pub q_bar: Vec<f64>,
}

impl SfdState {
    pub fn new(q: Vec<f64>, q_bar: Vec<f64>) -> Result<Self> {
        if q.len() != q_bar.len() {
            return Err(Error::ShapeMismatch(format!(
                "q has {} entries but q_bar has {}",
                q.len(),
                q_bar.len()
            )));
        }
        Ok(Self { q, q_bar })
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// The four scalar entries of the exact block propagator `exp(L dt)`;
/// each entry multiplies the identity on the q / q_bar blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SfdPropagator {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
    pub dt: f64,
}

/// Exact propagator over one step:
///
/// ```text
/// exp(L dt) = 1/(1 + chi_f delta) *
///   [ 1 + chi_f delta e     chi_f delta (1 - e) ]
///   [ 1 - e                 chi_f delta + e     ]
/// ```
///
/// with `e = exp(-(chi_f + 1/delta) dt)`.
pub fn build_propagator(params: &SfdParams, dt: f64) -> Result<SfdPropagator> {
    if params.delta <= 0.0 {
        return Err(Error::InvalidParam(
            "SFD filter width must be positive".into(),
        ));
    }
    if dt < 0.0 {
        return Err(Error::InvalidParam(format!(
            "time step must be non-negative, got {dt}"
        )));
    }
    let cd = params.chi_f * params.delta;
    let den = 1.0 + cd;
    let e = (-(params.chi_f + 1.0 / params.delta) * dt).exp();
    Ok(SfdPropagator {
        a11: (1.0 + cd * e) / den,
        a12: cd * (1.0 - e) / den,
        a21: (1.0 - e) / den,
        a22: (cd + e) / den,
        dt,
    })
}

/// One encapsulated SFD step: `(q, q_bar)^{n+1} = exp(L dt) (phi(q^n), q_bar^n)`
/// applied block-wise. `phi_of_q` is the PDE stepper output at the solid
/// points.
pub fn sfd_step(state: &mut SfdState, phi_of_q: &[f64], prop: &SfdPropagator) -> Result<()> {
    if phi_of_q.len() != state.q_bar.len() {
        return Err(Error::ShapeMismatch(format!(
            "phi(q) has {} entries but the SFD state has {}",
            phi_of_q.len(),
            state.q_bar.len()
        )));
    }
    state.q.resize(phi_of_q.len(), 0.0);
    for i in 0..phi_of_q.len() {
        let p = phi_of_q[i];
        let b = state.q_bar[i];
        state.q[i] = prop.a11 * p + prop.a12 * b;
        state.q_bar[i] = prop.a21 * p + prop.a22 * b;
    }
    Ok(())
}

/// Initial filter vector: `q_bar^0 = u_s` at every solid point, laid out in
/// the documented (point, component) ordering.
pub fn init_filtered(n_solid_points: usize, u_s: &[f64]) -> Vec<f64> {
    let mut q = Vec::with_capacity(n_solid_points * u_s.len());
    for _ in 0..n_solid_points {
        q.extend_from_slice(u_s);
    }
    q
}

/// Velocities `q = chi M U / rho` extracted from conserved states at solid
/// points, two components per point. Errors on non-positive density.
pub fn select_velocities(solid_states: &[[f64; 4]]) -> Result<Vec<f64>> {
    let mut q = Vec::with_capacity(2 * solid_states.len());
    for (i, s) in solid_states.iter().enumerate() {
        if s[0] <= 0.0 {
            return Err(Error::InadmissibleState(format!(
                "non-positive density {} at solid point {i}",
                s[0]
            )));
        }
        q.push(s[1] / s[0]);
        q.push(s[2] / s[0]);
    }
    Ok(q)
}

/// Write velocities back into conserved states at solid points. Momentum is
/// set to `rho q`; total energy is updated so the internal energy (hence
/// pressure and temperature) is unchanged.
pub fn scatter_velocities(q: &[f64], solid_states: &mut [[f64; 4]]) -> Result<()> {
    if q.len() != 2 * solid_states.len() {
        return Err(Error::ShapeMismatch(format!(
            "q has {} entries but {} solid points were given",
            q.len(),
            solid_states.len()
        )));
    }
    for (i, s) in solid_states.iter_mut().enumerate() {
        let rho = s[0];
        let old_ke = 0.5 * (s[1] * s[1] + s[2] * s[2]) / rho;
        let (u, v) = (q[2 * i], q[2 * i + 1]);
        s[1] = rho * u;
        s[2] = rho * v;
        s[3] += 0.5 * rho * (u * u + v * v) - old_ke;
    }
    Ok(())
}
