//! Binary mask functions and volume-penalization source terms.
//!
//! Masks are sharp point-wise indicators evaluated at solution points; no
//! smoothing layer is applied. All solid sets are open: points exactly on
//! the geometric boundary count as fluid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry selector for the built-in masks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryTag {
    Slab,
    Circle,
    Naca0012,
}

/// A sampled mask: one indicator per solution point.
#[derive(Debug, Clone)]
pub struct MaskField {
    /// Per-point indicator, true inside the solid.
    pub values: Vec<bool>,
    /// Fraction of points inside the solid.
    pub solid_ratio: f64,
    pub geometry_tag: GeometryTag,
}

impl MaskField {
    pub fn new(values: Vec<bool>, geometry_tag: GeometryTag) -> Self {
        let solid = values.iter().filter(|&&v| v).count();
        let solid_ratio = if values.is_empty() {
            0.0
        } else {
            solid as f64 / values.len() as f64
        };
        Self {
            values,
            solid_ratio,
            geometry_tag,
        }
    }

    pub fn solid_count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

/// Penalization strength: a finite `eta` or explicitly disabled
/// (the `eta -> infinity` limit). No sentinel values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Eta {
    Finite(f64),
    Disabled,
}

impl Eta {
    pub fn is_enabled(&self) -> bool {
        matches!(self, Eta::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Eta::Finite(e) => Some(*e),
            Eta::Disabled => None,
        }
    }
}

/// Volume-penalization parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenalizationParams {
    pub eta: Eta,
    /// Target solid velocity; zero for the no-slip walls used throughout.
    pub u_s: [f64; 2],
}

impl PenalizationParams {
    pub fn new(eta: Eta, u_s: [f64; 2]) -> Result<Self> {
        if let Eta::Finite(e) = eta {
            if e <= 0.0 {
                return Err(Error::InvalidParam(format!(
                    "penalization parameter eta must be positive, got {e}"
                )));
            }
        }
        Ok(Self { eta, u_s })
    }

    /// No-slip wall with the given penalization strength.
    pub fn no_slip(eta: Eta) -> Result<Self> {
        Self::new(eta, [0.0, 0.0])
    }

    pub fn disabled() -> Self {
        Self {
            eta: Eta::Disabled,
            u_s: [0.0, 0.0],
        }
    }
}

/// Slab mask: solid iff `0 < x < delta` (both boundaries open).
pub fn mask_slab(x: f64, delta: f64) -> bool {
    debug_assert!(delta > 0.0);
    x > 0.0 && x < delta
}

/// Circle mask: solid strictly inside the circle of diameter `d`.
pub fn mask_circle(x: f64, y: f64, center: (f64, f64), d: f64) -> bool {
    debug_assert!(d > 0.0);
    let dx = x - center.0;
    let dy = y - center.1;
    dx * dx + dy * dy < 0.25 * d * d
}

/// NACA0012 mask in chord-normalized coordinates with the airfoil spanning
/// `x/c` in `[-0.5, 0.5]`. Uses the closed-trailing-edge thickness
/// polynomial (last coefficient -0.1036) so the solid terminates exactly at
/// the trailing edge.
pub fn mask_naca0012(x: f64, y: f64) -> bool {
    let xh = x + 0.5;
    if !(0.0..=1.0).contains(&xh) {
        return false;
    }
    let yt = 0.6
        * (0.2969 * xh.sqrt() - 0.1260 * xh - 0.3516 * xh * xh + 0.2843 * xh.powi(3)
            - 0.1036 * xh.powi(4));
    y.abs() < yt
}

/// Penalization source for the advection unknown: `-(chi/eta)(u - u_s)`.
///
/// Returns zero outside the solid or when penalization is disabled.
pub fn penalize_advection(u: f64, chi: bool, params: &PenalizationParams) -> f64 {
    match (chi, params.eta) {
        (true, Eta::Finite(eta)) => -(u - params.u_s[0]) / eta,
        _ => 0.0,
    }
}

/// Penalization source for the 2D compressible equations,
/// `(chi/eta) * (0, rho u_s - rho u, rho v_s - rho v,
///  rho/2 (|u_s|^2 - |u|^2))`.
pub fn penalize_ns(state: [f64; 4], chi: bool, params: &PenalizationParams) -> Result<[f64; 4]> {
    let rho = state[0];
    if rho <= 0.0 {
        return Err(Error::InadmissibleState(format!(
            "non-positive density {rho} in penalization source"
        )));
    }
    let eta = match (chi, params.eta) {
        (true, Eta::Finite(e)) => e,
        _ => return Ok([0.0; 4]),
    };
    let u = state[1] / rho;
    let v = state[2] / rho;
    let [us, vs] = params.u_s;
    Ok([
        0.0,
        (rho * us - state[1]) / eta,
        (rho * vs - state[2]) / eta,
        0.5 * rho * ((us * us + vs * vs) - (u * u + v * v)) / eta,
    ])
}

/// Effective fluid wavenumber `k / (1 - r)` for solid ratio `r`.
pub fn effective_wavenumber(k: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParam(format!(
            "solid ratio must lie in [0, 1), got {r}"
        )));
    }
    Ok(k / (1.0 - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn slab_mask_examples() {
        assert!(mask_slab(0.025, 0.05));
        assert!(!mask_slab(-0.3, 0.05));
        assert!(!mask_slab(0.0, 0.05)); // open on the left
        assert!(!mask_slab(0.05, 0.05)); // open on the right
    }

    #[test]
    fn circle_mask_examples() {
        assert!(mask_circle(0.0, 0.0, (0.0, 0.0), 1.0));
        assert!(!mask_circle(0.5, 0.0, (0.0, 0.0), 1.0)); // boundary is fluid
        assert!(mask_circle(0.36, 0.23, (0.0, 0.0), 1.0)); // inside probe point
    }

    #[test]
    fn naca_mask_examples() {
        assert!(mask_naca0012(0.0225, 0.015)); // inside probe point
        assert!(!mask_naca0012(0.555, 0.015)); // beyond the trailing edge
        assert!(!mask_naca0012(-0.5, 0.0)); // leading edge, open set
        assert!(!mask_naca0012(0.5, 0.0)); // closed trailing edge, open set
        assert!(mask_naca0012(0.0, 0.05)); // mid-chord, inside thickness
    }

    #[test]
    fn closed_trailing_edge_thickness_vanishes() {
        // With the -0.1036 coefficient the thickness at x_hat = 1 is ~0.
        let yt_te = 0.6 * (0.2969 - 0.1260 - 0.3516 + 0.2843 - 0.1036);
        assert_abs_diff_eq!(yt_te, 0.0, epsilon = 1e-4);
    }

    #[test]
    fn advection_source_examples() {
        let p = PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap();
        assert_eq!(penalize_advection(0.7, false, &p), 0.0);
        assert_eq!(penalize_advection(0.0, true, &p), 0.0);
        assert_abs_diff_eq!(penalize_advection(0.2, true, &p), -200.0, epsilon = 1e-10);
        let off = PenalizationParams::disabled();
        assert_eq!(penalize_advection(0.2, true, &off), 0.0);
    }

    #[test]
    fn ns_source_examples() {
        let p = PenalizationParams::no_slip(Eta::Finite(1e-2)).unwrap();
        // Outside the solid: zero vector.
        let s = penalize_ns([1.0, 0.3, 0.1, 2.0], false, &p).unwrap();
        assert_eq!(s, [0.0; 4]);
        // Velocities equal to the target: zero vector.
        let s = penalize_ns([2.0, 0.0, 0.0, 3.0], true, &p).unwrap();
        assert_eq!(s, [0.0; 4]);
        // Direct evaluation.
        let s = penalize_ns([1.0, 0.3, 0.1, 2.0], true, &p).unwrap();
        assert_abs_diff_eq!(s[0], 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s[1], -30.0, epsilon = 1e-10);
        assert_abs_diff_eq!(s[2], -10.0, epsilon = 1e-10);
        assert_abs_diff_eq!(s[3], -5.0, epsilon = 1e-10);
    }

    #[test]
    fn ns_source_rejects_nonpositive_density() {
        let p = PenalizationParams::no_slip(Eta::Finite(1e-2)).unwrap();
        assert!(penalize_ns([0.0, 0.0, 0.0, 1.0], true, &p).is_err());
        assert!(penalize_ns([-1.0, 0.0, 0.0, 1.0], true, &p).is_err());
    }

    #[test]
    fn effective_wavenumber_examples() {
        assert_abs_diff_eq!(effective_wavenumber(3.0, 0.0).unwrap(), 3.0);
        assert_abs_diff_eq!(effective_wavenumber(3.0, 0.5).unwrap(), 6.0);
        assert!(effective_wavenumber(3.0, 1.0).is_err());
        // k reproducing k_hat h/(P+1) = 0.3223 at r = 1/40, P = 3, h = 0.05.
        let r = 1.0 / 40.0;
        let k = 0.3223 * (1.0 - r) * 4.0 / 0.05;
        let k_hat = effective_wavenumber(k, r).unwrap();
        assert_abs_diff_eq!(k_hat * 0.05 / 4.0, 0.3223, epsilon = 1e-12);
    }

    #[test]
    fn eta_must_be_positive() {
        assert!(PenalizationParams::no_slip(Eta::Finite(0.0)).is_err());
        assert!(PenalizationParams::no_slip(Eta::Finite(-1.0)).is_err());
    }

    #[test]
    fn solid_ratio_counts_points() {
        let m = MaskField::new(vec![true, false, false, false], GeometryTag::Slab);
        assert_abs_diff_eq!(m.solid_ratio, 0.25);
        assert_eq!(m.solid_count(), 1);
    }

    /// Energy-row consistency: with u_s = 0 the energy source equals
    /// -(chi/eta) * rho |u|^2 / 2 exactly.
    #[test]
    fn energy_row_consistent_with_momentum_rows() {
        let p = PenalizationParams::no_slip(Eta::Finite(5e-4)).unwrap();
        for (rho, u, v) in [(1.0, 0.4, -0.2), (0.3, -1.0, 0.7), (2.5, 0.0, 1.2)] {
            let s = penalize_ns([rho, rho * u, rho * v, 10.0], true, &p).unwrap();
            let expect = -(rho * (u * u + v * v) / 2.0) / 5e-4;
            assert_abs_diff_eq!(s[3], expect, epsilon = 1e-9 * expect.abs().max(1.0));
        }
    }

    proptest! {
        /// Masks are pure functions of coordinates: re-evaluation is stable
        /// and penalization sources vanish outside the solid.
        #[test]
        fn mask_idempotence(x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let a = mask_naca0012(x, y);
            let b = mask_naca0012(x, y);
            prop_assert_eq!(a, b);
            let c1 = mask_circle(x, y, (0.0, 0.0), 1.0);
            let c2 = mask_circle(x, y, (0.0, 0.0), 1.0);
            prop_assert_eq!(c1, c2);
            let p = PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap();
            if !c1 {
                let s = penalize_ns([1.0, x, y, 5.0], c1, &p).unwrap();
                prop_assert_eq!(s, [0.0; 4]);
            }
        }
    }
}
