//! Aerodynamic force evaluation and the shedding-frequency estimate.

use super::field::FlowField;
use super::kernel::Basis2d;
use super::mesh::CartesianMesh;
use crate::error::{Error, Result};
use crate::masking::{Eta, PenalizationParams};

/// Integrated aerodynamic coefficients.
#[derive(Debug, Clone, Copy, Default)]
pub struct ForceCoefficients {
    pub cl: f64,
    pub cd: f64,
}

/// Force on the body from the volume integral of the momentum penalization
/// source, `F = int (chi/eta) rho (u - u_s) dV`, with the per-step SFD
/// momentum removal added so the SFD-only mode still reports loads. The
/// coefficients are normalized by `1/2 rho_inf V_inf^2 L_ref`; drag is
/// positive downstream.
#[allow(clippy::too_many_arguments)]
pub fn compute_forces(
    field: &FlowField,
    mesh: &CartesianMesh,
    basis: &Basis2d,
    solid_points: &[(usize, usize)],
    pen: &PenalizationParams,
    sfd_contribution: [f64; 2],
    ref_length: f64,
) -> Result<ForceCoefficients> {
    if solid_points.is_empty() {
        return Err(Error::InvalidParam(
            "force evaluation requires a non-empty mask".into(),
        ));
    }
    let np1 = basis.np1;
    let mut fx = 0.0;
    let mut fy = 0.0;
    if let Eta::Finite(eta) = pen.eta {
        for &(e, p) in solid_points {
            let (i, j) = (e % mesh.nx, e / mesh.nx);
            let jac = 0.25 * mesh.dx(i) * mesh.dy(j);
            let (ii, jj) = (p % np1, p / np1);
            let w = basis.weights[ii] * basis.weights[jj] * jac;
            let u = field.state(e, p);
            fx += w * (u[1] - u[0] * pen.u_s[0]) / eta;
            fy += w * (u[2] - u[0] * pen.u_s[1]) / eta;
        }
    }
    fx += sfd_contribution[0];
    fy += sfd_contribution[1];
    let norm = 0.5 * ref_length; // 1/2 rho_inf V_inf^2 L with rho = V = 1
    Ok(ForceCoefficients {
        cl: fy / norm,
        cd: fx / norm,
    })
}

/// Dominant frequency of a lift series by a band-limited discrete Fourier
/// transform with parabolic peak interpolation; returns `St = f D / V`.
///
/// The caller is expected to pass a series spanning several shedding
/// periods after transient trimming.
pub fn strouhal(times: &[f64], lift: &[f64], diameter: f64, velocity: f64) -> Result<f64> {
    if times.len() != lift.len() || times.len() < 16 {
        return Err(Error::InvalidParam(format!(
            "lift series too short for a spectrum ({} samples)",
            times.len()
        )));
    }
    let mean = lift.iter().sum::<f64>() / lift.len() as f64;
    let span = times[times.len() - 1] - times[0];
    if span <= 0.0 {
        return Err(Error::InvalidParam("non-increasing time series".into()));
    }
    // Frequency grid: resolve down to 1/(4 span) steps over a generous
    // shedding band.
    let f_lo = 0.5 / span;
    let f_hi = {
        let dt_mean = span / (times.len() - 1) as f64;
        (0.5 / dt_mean).min(2.0)
    };
    let df = 0.25 / span;
    let n_freq = ((f_hi - f_lo) / df) as usize;
    if n_freq < 4 {
        return Err(Error::InvalidParam("series spans too few periods".into()));
    }
    let amplitude = |f: f64| -> f64 {
        let w = 2.0 * std::f64::consts::PI * f;
        let mut re = 0.0;
        let mut im = 0.0;
        for (&t, &c) in times.iter().zip(lift) {
            let phase = w * t;
            re += (c - mean) * phase.cos();
            im += (c - mean) * phase.sin();
        }
        (re * re + im * im).sqrt()
    };
    let amps: Vec<f64> = (0..n_freq)
        .map(|i| amplitude(f_lo + i as f64 * df))
        .collect();
    let (peak_idx, &peak) = amps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let mut sorted = amps.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[sorted.len() / 2];
    let scale = lift.iter().map(|c| c.abs()).fold(1e-300f64, f64::max);
    // The peak must dominate the spectrum and the implied oscillation must
    // be non-negligible against the series magnitude, or there is no
    // shedding tone (e.g. a constant force history).
    if peak < 5.0 * median.max(1e-300) || 2.0 * peak / lift.len() as f64 <= 1e-9 * scale {
        return Err(Error::Search(format!(
            "no dominant spectral peak (peak/median = {:.2})",
            peak / median.max(1e-300)
        )));
    }
    // Parabolic interpolation around the peak.
    let f_peak = if peak_idx == 0 || peak_idx + 1 == amps.len() {
        f_lo + peak_idx as f64 * df
    } else {
        let (ym, y0, yp) = (amps[peak_idx - 1], amps[peak_idx], amps[peak_idx + 1]);
        let denom = ym - 2.0 * y0 + yp;
        let shift = if denom.abs() > 0.0 {
            0.5 * (ym - yp) / denom
        } else {
            0.0
        };
        f_lo + (peak_idx as f64 + shift.clamp(-0.5, 0.5)) * df
    };
    Ok(f_peak * diameter / velocity)
}
