//! Time-domain simulation of the penalized 1D advection problem.
//!
//! The penalization source is imposed directly inside the RK3 stages
//! (unsplit, matching the eigensolution analyses); the SFD propagator is
//! applied once per step after the RK update. The domain is `[-1, 1]` with
//! periodic boundaries; the slab `[0, delta]` covers whole elements.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fr1d::{solution_points_1d, CorrectionGradients, ElementOperators, NodalBasis};
use crate::masking::{mask_slab, Eta, GeometryTag, MaskField, PenalizationParams};
use crate::sfd::{build_propagator, sfd_step, SfdParams, SfdState};

/// Discretization, wave and time-integration controls for one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdvectionConfig {
    pub n_elements: usize,
    pub order: usize,
    pub advection_speed: f64,
    pub upwind_lambda: f64,
    /// Initial-condition wavenumber, nondimensionalized as `k_hat h/(P+1)`
    /// with `k_hat` the effective fluid wavenumber.
    pub k_nondim: f64,
    /// Slab width in whole elements (0 disables the solid).
    pub slab_elements: usize,
    pub dt: f64,
    pub t_final: f64,
    pub pen: PenalizationParams,
    pub sfd: SfdParams,
}

impl Default for AdvectionConfig {
    fn default() -> Self {
        Self {
            n_elements: 40,
            order: 3,
            advection_speed: 1.0,
            upwind_lambda: 1.0,
            k_nondim: 0.3223,
            slab_elements: 1,
            dt: 1e-5,
            t_final: 1.1,
            pen: PenalizationParams::disabled(),
            sfd: SfdParams::disabled(),
        }
    }
}

impl AdvectionConfig {
    pub fn element_width(&self) -> f64 {
        2.0 / self.n_elements as f64
    }

    pub fn solid_ratio(&self) -> f64 {
        self.slab_elements as f64 / self.n_elements as f64
    }

    pub fn slab_width(&self) -> f64 {
        self.slab_elements as f64 * self.element_width()
    }

    /// Effective fluid wavenumber of the initial condition.
    pub fn k_hat(&self) -> f64 {
        self.k_nondim * (self.order as f64 + 1.0) / self.element_width()
    }
}

/// Final state of a run plus the SFD state and bookkeeping.
#[derive(Debug, Clone)]
pub struct AdvectionResult {
    /// Solution values at all solution points, element-major.
    pub u: Vec<f64>,
    /// Physical coordinates of the solution points.
    pub x: Vec<f64>,
    pub mask: MaskField,
    pub sfd_state: SfdState,
    pub steps: usize,
    pub wall_time: f64,
}

/// Prebuilt discretization for repeated stepping.
pub struct AdvectionRun {
    pub config: AdvectionConfig,
    ops: ElementOperators,
    pub x: Vec<f64>,
    pub mask: MaskField,
    solid_idx: Vec<usize>,
}

impl AdvectionRun {
    pub fn new(config: AdvectionConfig) -> Result<Self> {
        if config.n_elements < 2 {
            return Err(Error::InvalidParam("need at least 2 elements".into()));
        }
        if config.dt <= 0.0 || config.t_final < 0.0 {
            return Err(Error::InvalidParam(
                "time step and final time must be positive".into(),
            ));
        }
        let basis = NodalBasis::new(config.order);
        let corr = CorrectionGradients::new(&basis);
        let ops = ElementOperators::new(
            &basis,
            &corr,
            config.element_width(),
            config.advection_speed,
            config.upwind_lambda,
        )?;
        let x = solution_points_1d(config.n_elements, config.element_width(), -1.0, &basis.nodes);
        let delta = config.slab_width();
        let values: Vec<bool> = x
            .iter()
            .map(|&xi| delta > 0.0 && mask_slab(xi, delta))
            .collect();
        let mask = MaskField::new(values, GeometryTag::Slab);
        let solid_idx: Vec<usize> = mask
            .values
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect();
        Ok(Self {
            config,
            ops,
            x,
            mask,
            solid_idx,
        })
    }

    /// Initial condition: a sine wave of the effective wavenumber in the
    /// fluid region, zero inside the slab.
    pub fn initial_condition(&self) -> Vec<f64> {
        let k_hat = self.config.k_hat();
        self.x
            .iter()
            .zip(&self.mask.values)
            .map(|(&x, &solid)| if solid { 0.0 } else { (k_hat * x).sin() })
            .collect()
    }

    /// Semi-discrete RHS: FR transport plus the direct penalization source.
    pub fn rhs(&self, u: &[f64], du: &mut [f64]) {
        let np = self.config.order + 1;
        let n = self.config.n_elements;
        for e in 0..n {
            let prev = (e + n - 1) % n;
            let next = (e + 1) % n;
            let u_c = &u[e * np..(e + 1) * np];
            let u_l = &u[prev * np..prev * np + np];
            let u_r = &u[next * np..next * np + np];
            let out = &mut du[e * np..(e + 1) * np];
            for i in 0..np {
                let mut acc = 0.0;
                for j in 0..np {
                    acc += self.ops.left[(i, j)] * u_l[j]
                        + self.ops.center[(i, j)] * u_c[j]
                        + self.ops.right[(i, j)] * u_r[j];
                }
                out[i] = acc;
            }
        }
        if let Eta::Finite(eta) = self.config.pen.eta {
            let us = self.config.pen.u_s[0];
            for &i in &self.solid_idx {
                du[i] -= (u[i] - us) / eta;
            }
        }
    }

    fn check_finite(u: &[f64], step: usize) -> Result<()> {
        for &v in u {
            if !v.is_finite() || v.abs() > 1e12 {
                return Err(Error::Instability {
                    step,
                    context: format!("solution magnitude {v}"),
                });
            }
        }
        Ok(())
    }

    /// March to `t_final`. Aborts with the step index if the solution blows
    /// up.
    pub fn run(&self) -> Result<AdvectionResult> {
        let start = Instant::now();
        let mut u = self.initial_condition();
        let dt = self.config.dt;
        let n_steps = (self.config.t_final / dt).round() as usize;

        let prop = if self.config.sfd.enabled {
            Some(build_propagator(&self.config.sfd, dt)?)
        } else {
            None
        };
        let mut sfd_state = SfdState::new(
            self.solid_idx.iter().map(|&i| u[i]).collect(),
            vec![self.config.pen.u_s[0]; self.solid_idx.len()],
        )?;

        let mut k1 = vec![0.0; u.len()];
        let mut u1 = vec![0.0; u.len()];
        let mut u2 = vec![0.0; u.len()];
        for step in 0..n_steps {
            // TVD-RK3 (Shu-Osher) with the source inside each stage.
            self.rhs(&u, &mut k1);
            for i in 0..u.len() {
                u1[i] = u[i] + dt * k1[i];
            }
            self.rhs(&u1, &mut k1);
            for i in 0..u.len() {
                u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k1[i]);
            }
            self.rhs(&u2, &mut k1);
            for i in 0..u.len() {
                u[i] = (u[i] + 2.0 * (u2[i] + dt * k1[i])) / 3.0;
            }

            if let Some(prop) = &prop {
                let phi: Vec<f64> = self.solid_idx.iter().map(|&i| u[i]).collect();
                sfd_step(&mut sfd_state, &phi, prop)?;
                for (n, &i) in self.solid_idx.iter().enumerate() {
                    u[i] = sfd_state.q[n];
                }
            }

            if step % 64 == 0 || step + 1 == n_steps {
                Self::check_finite(&u, step)?;
            }
        }

        Ok(AdvectionResult {
            u,
            x: self.x.clone(),
            mask: self.mask.clone(),
            sfd_state,
            steps: n_steps,
            wall_time: start.elapsed().as_secs_f64(),
        })
    }
}

/// RMS of the solution against the exact penalized value (zero) over the
/// fluid region downstream of the slab, `x in [delta, 1]`.
pub fn flow_error(u: &[f64], x: &[f64], delta: f64) -> f64 {
    rms_over(u, x, |xi| xi >= delta && xi <= 1.0)
}

/// RMS of the solution against zero over the slab, `x in [0, delta]`;
/// equals the norm of the SFD `q` vector for a no-slip target.
pub fn solid_error(u: &[f64], x: &[f64], delta: f64) -> f64 {
    rms_over(u, x, |xi| xi >= 0.0 && xi <= delta)
}

fn rms_over(u: &[f64], x: &[f64], in_region: impl Fn(f64) -> bool) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (&ui, &xi) in u.iter().zip(x) {
        if in_region(xi) {
            sum += ui * ui;
            count += 1;
        }
    }
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).sqrt()
    }
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub eta: Option<f64>,
    pub chi_f: f64,
    pub delta: f64,
    pub flow_error: f64,
    pub solid_error: f64,
    pub max_stable_dt: Option<f64>,
    pub wall_time: f64,
    pub failed: bool,
}

/// Grid of SFD/penalization combinations for the error and cost studies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Penalization parameters; `None` disables penalization (SFD only).
    pub etas: Vec<Option<f64>>,
    /// Control coefficients; 0 disables SFD.
    pub chi_fs: Vec<f64>,
    pub deltas: Vec<f64>,
    /// Also search the maximal stable time step per combination.
    pub find_max_dt: bool,
}

/// Run one configuration per grid point; individual failures are recorded
/// per row and the sweep continues.
pub fn sweep(base: &AdvectionConfig, spec: &SweepSpec) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &eta in &spec.etas {
        for &chi_f in &spec.chi_fs {
            for &delta in &spec.deltas {
                let mut cfg = base.clone();
                cfg.pen = match eta {
                    Some(e) => match PenalizationParams::no_slip(Eta::Finite(e)) {
                        Ok(p) => p,
                        Err(_) => continue,
                    },
                    None => PenalizationParams::disabled(),
                };
                cfg.sfd = if chi_f > 0.0 {
                    match SfdParams::new(chi_f, delta) {
                        Ok(s) => s,
                        Err(_) => continue,
                    }
                } else {
                    SfdParams::disabled()
                };
                let row = match AdvectionRun::new(cfg.clone()).and_then(|r| r.run()) {
                    Ok(res) => {
                        let delta_w = base.slab_width();
                        let max_dt = if spec.find_max_dt {
                            max_stable_dt(&cfg).ok()
                        } else {
                            None
                        };
                        SweepRow {
                            eta,
                            chi_f,
                            delta,
                            flow_error: flow_error(&res.u, &res.x, delta_w),
                            solid_error: solid_error(&res.u, &res.x, delta_w),
                            max_stable_dt: max_dt,
                            wall_time: res.wall_time,
                            failed: false,
                        }
                    }
                    Err(_) => SweepRow {
                        eta,
                        chi_f,
                        delta,
                        flow_error: f64::NAN,
                        solid_error: f64::NAN,
                        max_stable_dt: None,
                        wall_time: 0.0,
                        failed: true,
                    },
                };
                rows.push(row);
            }
        }
    }
    rows
}

/// Maximal stable time step for a configuration, by doubling then bisection
/// to 2% relative width. A trial counts as stable when the run completes
/// without blow-up and the final solution stays bounded.
pub fn max_stable_dt(config: &AdvectionConfig) -> Result<f64> {
    let stable = |dt: f64| -> bool {
        let mut cfg = config.clone();
        cfg.dt = dt;
        match AdvectionRun::new(cfg).and_then(|r| r.run()) {
            Ok(res) => res.u.iter().all(|v| v.is_finite() && v.abs() < 1e3),
            Err(_) => false,
        }
    };
    let mut lo = config.dt;
    if !stable(lo) {
        for _ in 0..40 {
            lo *= 0.5;
            if stable(lo) {
                break;
            }
        }
        if !stable(lo) {
            return Err(Error::Search(
                "no stable time step found while shrinking".into(),
            ));
        }
    }
    let mut hi = lo * 2.0;
    while stable(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1.0 {
            return Ok(lo);
        }
    }
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if stable(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) / lo < 0.02 {
            break;
        }
    }
    Ok(lo)
}
