//! Physical/solid mode classification and the assembled sweep data.

use ndarray::Array2;
use num_complex::Complex64;

use super::global::GlobalOperator;
use super::EigenSetup;
use crate::error::{Error, Result};

/// Result of selecting the physical mode at one wavenumber.
#[derive(Debug, Clone, Copy)]
pub struct ModeSelection {
    /// Index into the eigenvalue list.
    pub index: usize,
    /// Modulus of the normalized plane-wave projection of the winner.
    pub projection: f64,
    /// True when a second candidate projected within 1% of the winner.
    pub ambiguous: bool,
}

/// Select the eigenvalue whose eigenvector has maximal modulus of projection
/// onto the discrete plane wave `exp(ikx)` sampled at fluid solution points.
/// Near-ties (within 1%) are flagged and resolved by nearest-eigenvalue
/// continuity from the previous wavenumber sample when available.
pub fn extract_physical_mode(
    op: &GlobalOperator,
    vals: &[Complex64],
    vecs: &Array2<Complex64>,
    prev: Option<Complex64>,
) -> Result<ModeSelection> {
    let n_u = op.n_state();
    if vals.is_empty() || vecs.ncols() != vals.len() {
        return Err(Error::ShapeMismatch(
            "eigenvector matrix does not match eigenvalue count".into(),
        ));
    }
    // Plane wave on fluid points, zero on solid points and the filter block.
    let wave: Vec<Complex64> = (0..n_u)
        .map(|j| {
            if op.is_solid[j] {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::from_polar(1.0, op.wavenumber * op.points_x[j])
            }
        })
        .collect();
    let wave_norm = (wave.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();

    let mut projections = vec![0.0f64; vals.len()];
    for (j, proj) in projections.iter_mut().enumerate() {
        let col = vecs.column(j);
        let mut dot = Complex64::new(0.0, 0.0);
        let mut norm2 = 0.0;
        for (i, &w) in wave.iter().enumerate() {
            dot += w.conj() * col[i];
            norm2 += col[i].norm_sqr();
        }
        // Include the filter-block entries in the eigenvector norm.
        for i in n_u..col.len() {
            norm2 += col[i].norm_sqr();
        }
        *proj = dot.norm() / (wave_norm * norm2.sqrt());
    }

    let best = projections
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let candidates: Vec<usize> = (0..vals.len())
        .filter(|&j| projections[j] >= 0.99 * projections[best])
        .collect();
    let ambiguous = candidates.len() > 1;
    let index = match (ambiguous, prev) {
        (true, Some(p)) => *candidates
            .iter()
            .min_by(|&&a, &&b| {
                (vals[a] - p)
                    .norm()
                    .partial_cmp(&(vals[b] - p).norm())
                    .unwrap()
            })
            .unwrap(),
        _ => best,
    };
    Ok(ModeSelection {
        index,
        projection: projections[index],
        ambiguous,
    })
}

/// Eigenvalues that stay constant (below `tol` relative variation) across
/// the whole wavenumber sweep: the solid / filter modes introduced by the
/// IBM and SFD terms. An empty result is valid.
pub fn find_solid_modes(spectra: &[Vec<Complex64>], tol: f64) -> Vec<Complex64> {
    if spectra.len() < 3 {
        return Vec::new();
    }
    let mut solid = Vec::new();
    'refs: for &candidate in &spectra[0] {
        let scale = candidate.norm().max(f64::MIN_POSITIVE);
        let mut acc = candidate;
        for other in &spectra[1..] {
            let nearest = other
                .iter()
                .min_by(|a, b| {
                    (*a - candidate)
                        .norm()
                        .partial_cmp(&(*b - candidate).norm())
                        .unwrap()
                })
                .copied();
            match nearest {
                Some(n) if (n - candidate).norm() / scale < tol => acc += n,
                _ => continue 'refs,
            }
        }
        solid.push(acc / spectra.len() as f64);
    }
    solid
}

/// Classified sweep output: per-wavenumber eigenvalues, the tracked physical
/// mode, and the wavenumber-constant solid modes.
#[derive(Debug, Clone)]
pub struct ModeSpectrum {
    /// Samples of `k_hat h/(P+1)`.
    pub k_nondim: Vec<f64>,
    /// Raw domain wavenumbers.
    pub wavenumbers: Vec<f64>,
    /// Full eigenvalue sets per wavenumber (amplification factors `g` for
    /// the fully-discrete sweep).
    pub eigenvalues: Vec<Vec<Complex64>>,
    /// Complex rates per wavenumber: the eigenvalues themselves for the
    /// semi-discrete sweep, `ln(g)/dt` for the fully-discrete one.
    pub rates: Vec<Vec<Complex64>>,
    /// The physical-mode rate at each wavenumber.
    pub physical_mode: Vec<Complex64>,
    /// Ambiguity flag from the per-wavenumber selection.
    pub ambiguous: Vec<bool>,
    /// Index of the physical mode in the per-wavenumber lists.
    pub physical_index: Vec<usize>,
    /// Wavenumber-constant rates (solid / filter modes).
    pub solid_modes: Vec<Complex64>,
    /// Time step of the fully-discrete sweep (None for semi-discrete).
    pub dt: Option<f64>,
    pub order: usize,
    pub n_elements: usize,
    pub solid_ratio: f64,
    pub advection_speed: f64,
}

impl ModeSpectrum {
    pub(super) fn new(setup: &EigenSetup, k_nondim: &[f64], dt: Option<f64>) -> Self {
        Self {
            k_nondim: k_nondim.to_vec(),
            wavenumbers: Vec::new(),
            eigenvalues: Vec::new(),
            rates: Vec::new(),
            physical_mode: Vec::new(),
            ambiguous: Vec::new(),
            physical_index: Vec::new(),
            solid_modes: Vec::new(),
            dt,
            order: setup.order,
            n_elements: setup.n_elements,
            solid_ratio: setup.solid_ratio(),
            advection_speed: setup.advection_speed,
        }
    }

    pub(super) fn push_sample(
        &mut self,
        setup: &EigenSetup,
        k_nondim: f64,
        op: &GlobalOperator,
        vals: &[Complex64],
        rates: &[Complex64],
        sel: &ModeSelection,
    ) {
        let _ = k_nondim;
        let _ = setup;
        self.wavenumbers.push(op.wavenumber);
        self.eigenvalues.push(vals.to_vec());
        self.rates.push(rates.to_vec());
        self.physical_mode.push(rates[sel.index]);
        self.ambiguous.push(sel.ambiguous);
        self.physical_index.push(sel.index);
    }

    pub(super) fn classify_solid_modes(&mut self, tol: f64) {
        self.solid_modes = find_solid_modes(&self.rates, tol);
    }

    /// Dispersion of a rate in the nondimensional units of the sweep axis:
    /// `k* h / ((P+1)(1-r))` with `k* = -Im(lambda)/c`.
    pub fn dispersion_nondim(&self, rate: Complex64) -> f64 {
        let h = 2.0 / self.n_elements as f64;
        let k_star = -rate.im / self.advection_speed;
        k_star * h / ((self.order as f64 + 1.0) * (1.0 - self.solid_ratio))
    }

    /// Dissipation (real part) of a rate.
    pub fn dissipation(&self, rate: Complex64) -> f64 {
        rate.re
    }

    /// Physical-mode dispersion curve in sweep-axis units.
    pub fn physical_dispersion(&self) -> Vec<f64> {
        self.physical_mode
            .iter()
            .map(|&r| self.dispersion_nondim(r))
            .collect()
    }

    /// Physical-mode dissipation curve (raw rate).
    pub fn physical_dissipation(&self) -> Vec<f64> {
        self.physical_mode.iter().map(|r| r.re).collect()
    }

    /// Largest solid-mode dissipation, if any solid mode exists.
    pub fn max_solid_dissipation(&self) -> Option<f64> {
        self.solid_modes
            .iter()
            .map(|m| m.re)
            .max_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solid_modes_empty_without_constant_eigenvalues() {
        let spectra = vec![
            vec![Complex64::new(-1.0, 1.0), Complex64::new(-2.0, 0.0)],
            vec![Complex64::new(-1.1, 1.2), Complex64::new(-2.3, 0.1)],
            vec![Complex64::new(-1.2, 1.4), Complex64::new(-2.6, 0.2)],
        ];
        assert!(find_solid_modes(&spectra, 1e-8).is_empty());
    }

    #[test]
    fn solid_modes_found_when_constant() {
        let fixed = Complex64::new(-1000.0, 0.5);
        let spectra: Vec<Vec<Complex64>> = (0..5)
            .map(|i| {
                vec![
                    fixed,
                    Complex64::new(-1.0 - i as f64, 2.0 * i as f64), // moving mode
                ]
            })
            .collect();
        let solid = find_solid_modes(&spectra, 1e-8);
        assert_eq!(solid.len(), 1);
        assert!((solid[0] - fixed).norm() < 1e-12);
    }

    #[test]
    fn too_few_samples_gives_empty_set() {
        let spectra = vec![vec![Complex64::new(-1.0, 0.0)]; 2];
        assert!(find_solid_modes(&spectra, 1e-8).is_empty());
    }
}
