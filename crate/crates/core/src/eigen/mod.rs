//! Semi- and fully-discrete eigensolution analysis of the penalized/SFD
//! advection discretization.
//!
//! Conventions used throughout (and in the CSV output):
//!
//! - the semi-discrete system is written `du/dt = M u`; eigenvalues are of M;
//! - dispersion of a mode is `k* = -Im(lambda)/c` (units of wavenumber),
//!   reported nondimensionally as `k* h / ((P+1)(1-r))` so the exact relation
//!   lies on the diagonal against the wavenumber axis `k_hat h/(P+1)`;
//! - dissipation is `Re(lambda)` (negative = damped); fully-discrete
//!   dissipation is `ln|g|/dt` for amplification eigenvalues `g`;
//! - the Bloch corner phases use `T = 1`, half the `[-1, 1]` domain.

mod backend;
mod critical;
mod fully;
mod global;
mod modes;

pub use backend::eig_complex;
pub use critical::{critical_parameter_search, CriticalResult, Scheme};
pub use fully::{
    fully_discrete_spectrum, rk3_amplification, rk3_stability_polynomial, AmplificationOperator,
};
pub use global::{assemble_ibm_sfd, assemble_periodic, GlobalOperator};
pub use modes::{extract_physical_mode, find_solid_modes, ModeSelection, ModeSpectrum};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fr1d::{CorrectionGradients, ElementOperators, NodalBasis};
use crate::masking::{GeometryTag, MaskField, PenalizationParams};
use crate::sfd::SfdParams;

/// Discretization and model data for one analysis sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenSetup {
    pub n_elements: usize,
    pub order: usize,
    pub advection_speed: f64,
    pub upwind_lambda: f64,
    /// Number of whole elements occupied by the slab (0 disables the IBM).
    pub slab_elements: usize,
    pub pen: PenalizationParams,
    pub sfd: SfdParams,
    /// Samples of `k_hat h/(P+1)` uniformly in `(0, pi]`.
    pub n_wavenumbers: usize,
    /// Relative eigenvalue variation below which a mode counts as solid.
    pub solid_mode_tol: f64,
}

impl EigenSetup {
    pub fn element_width(&self) -> f64 {
        2.0 / self.n_elements as f64
    }

    pub fn solid_ratio(&self) -> f64 {
        self.slab_elements as f64 / self.n_elements as f64
    }

    /// Raw domain wavenumber corresponding to a nondimensional
    /// `k_hat h / (P+1)` sample.
    pub fn raw_wavenumber(&self, k_nondim: f64) -> f64 {
        let k_hat = k_nondim * (self.order as f64 + 1.0) / self.element_width();
        k_hat * (1.0 - self.solid_ratio())
    }

    pub fn operators(&self) -> Result<ElementOperators> {
        if self.n_elements < 2 {
            return Err(Error::InvalidParam(format!(
                "need at least 2 elements, got {}",
                self.n_elements
            )));
        }
        let basis = NodalBasis::new(self.order);
        let corr = CorrectionGradients::new(&basis);
        ElementOperators::new(
            &basis,
            &corr,
            self.element_width(),
            self.advection_speed,
            self.upwind_lambda,
        )
    }

    /// Slab mask sampled at the solution points of the `[-1, 1]` mesh.
    pub fn slab_mask(&self) -> Result<MaskField> {
        let basis = NodalBasis::new(self.order);
        let h = self.element_width();
        let delta = self.slab_elements as f64 * h;
        let xs = crate::fr1d::solution_points_1d(self.n_elements, h, -1.0, &basis.nodes);
        let values = xs.iter().map(|&x| crate::masking::mask_slab(x, delta)).collect();
        Ok(MaskField::new(values, GeometryTag::Slab))
    }

    fn assemble_at(&self, k: f64, ops: &ElementOperators) -> Result<GlobalOperator> {
        if self.slab_elements == 0 {
            assemble_periodic(ops, self.n_elements, k)
        } else {
            let mask = self.slab_mask()?;
            assemble_ibm_sfd(ops, self.n_elements, k, &mask, &self.pen, &self.sfd)
        }
    }

    /// Run the semi-discrete sweep over the configured wavenumber samples.
    pub fn semi_discrete_sweep(&self) -> Result<ModeSpectrum> {
        self.sweep_impl(None)
    }

    /// Run the fully-discrete sweep (RK3 amplification) at time step `dt`.
    pub fn fully_discrete_sweep(&self, dt: f64) -> Result<ModeSpectrum> {
        if dt <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "time step must be positive, got {dt}"
            )));
        }
        self.sweep_impl(Some(dt))
    }

    fn sweep_impl(&self, dt: Option<f64>) -> Result<ModeSpectrum> {
        use rayon::prelude::*;

        let ops = self.operators()?;
        let nk = self.n_wavenumbers.max(3);
        let k_nondim: Vec<f64> = (0..nk)
            .map(|i| std::f64::consts::PI * (i + 1) as f64 / nk as f64)
            .collect();

        // Per-wavenumber decompositions are independent.
        let decomposed: Result<Vec<_>> = k_nondim
            .par_iter()
            .map(|&knd| {
                let k = self.raw_wavenumber(knd);
                let op = self.assemble_at(k, &ops)?;
                let (vals, vecs, rates) = match dt {
                    None => {
                        let (vals, vecs) = eig_complex(&op.matrix)?;
                        let rates = vals.clone();
                        (vals, vecs, rates)
                    }
                    Some(dt) => {
                        let (g, vecs) = fully_discrete_spectrum(&op, dt)?;
                        // Complex rate ln(g)/dt: dissipation Re, dispersion Im.
                        let rates = g.iter().map(|gi| gi.ln() / dt).collect();
                        (g, vecs, rates)
                    }
                };
                Ok((op, vals, vecs, rates))
            })
            .collect();
        let decomposed = decomposed?;

        let mut spectrum = ModeSpectrum::new(self, &k_nondim, dt);
        let mut prev: Option<num_complex::Complex64> = None;
        for ((op, vals, vecs, rates), &knd) in decomposed.iter().zip(&k_nondim) {
            let sel = extract_physical_mode(op, vals, vecs, prev)?;
            prev = Some(vals[sel.index]);
            spectrum.push_sample(self, knd, op, vals, rates, &sel);
        }
        spectrum.classify_solid_modes(self.solid_mode_tol);
        Ok(spectrum)
    }
}
