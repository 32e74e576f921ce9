//! Critical penalization/feedback parameter search from the fully-discrete
//! solid-mode dissipation.

use serde::{Deserialize, Serialize};

use super::EigenSetup;
use crate::error::{Error, Result};
use crate::masking::{Eta, PenalizationParams};
use crate::sfd::SfdParams;

/// Which source terms the search varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Volume penalization only: vary `eta`.
    Single,
    /// Penalization combined with SFD at `chi_f = 1/eta`: vary both together.
    Combined,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CriticalResult {
    pub dt: f64,
    pub scheme: Scheme,
    /// Critical penalization parameter: the zero crossing of the maximal
    /// solid-mode dissipation. Positive dissipation marks instability.
    pub eta_critical: f64,
    /// `eta_critical / dt`.
    pub ratio: f64,
    pub bisection_steps: usize,
}

/// Maximal solid-mode dissipation `ln|g|/dt` of the fully-discrete scheme
/// for a given `eta`, probed at three wavenumbers.
fn max_solid_dissipation(
    base: &EigenSetup,
    scheme: Scheme,
    sfd_delta: f64,
    eta: f64,
    dt: f64,
) -> Result<f64> {
    let mut setup = base.clone();
    setup.pen = PenalizationParams::no_slip(Eta::Finite(eta))?;
    setup.sfd = match scheme {
        Scheme::Single => SfdParams::disabled(),
        Scheme::Combined => SfdParams::new(1.0 / eta, sfd_delta)?,
    };
    setup.n_wavenumbers = 3;
    let spectrum = setup.fully_discrete_sweep(dt)?;
    spectrum.max_solid_dissipation().ok_or_else(|| {
        Error::Search(format!(
            "no solid modes identified at eta = {eta}; cannot evaluate stability"
        ))
    })
}

/// Bisection on `eta` until the maximal solid-mode dissipation crosses zero,
/// to a tolerance of `1e-3 * dt` on `eta`. The bracket is
/// `[0.2 dt, 1.2 dt]`, wide enough for both schemes across the reported
/// time-step range.
pub fn critical_parameter_search(
    base: &EigenSetup,
    dt: f64,
    scheme: Scheme,
    sfd_delta: f64,
) -> Result<CriticalResult> {
    if dt <= 0.0 {
        return Err(Error::InvalidParam(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let mut lo = 0.2 * dt; // unstable side (stiff source)
    let mut hi = 1.2 * dt; // stable side
    let d_lo = max_solid_dissipation(base, scheme, sfd_delta, lo, dt)?;
    let d_hi = max_solid_dissipation(base, scheme, sfd_delta, hi, dt)?;
    if d_lo <= 0.0 || d_hi >= 0.0 {
        return Err(Error::Search(format!(
            "no sign change of solid-mode dissipation in eta bracket [{lo}, {hi}]: d(lo) = {d_lo}, d(hi) = {d_hi}"
        )));
    }
    let tol = 1e-3 * dt;
    let mut steps = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let d = max_solid_dissipation(base, scheme, sfd_delta, mid, dt)?;
        if d > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
        if steps > 60 {
            break;
        }
    }
    let eta_critical = 0.5 * (lo + hi);
    Ok(CriticalResult {
        dt,
        scheme,
        eta_critical,
        ratio: eta_critical / dt,
        bisection_steps: steps,
    })
}
