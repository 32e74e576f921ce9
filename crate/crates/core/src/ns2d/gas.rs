//! Nondimensional perfect-gas model.
//!
//! Reference conditions: free-stream density and speed are 1, the reference
//! length is the chord/diameter, and the free-stream pressure is
//! `1/(gamma M^2)` so the free-stream temperature is 1 and the speed of
//! sound is `1/M`. Dynamic viscosity is the constant `1/Re`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gas parameters as they appear in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasSpec {
    #[serde(default = "d_gamma")]
    pub gamma: f64,
    #[serde(default = "d_prandtl")]
    pub prandtl: f64,
    pub mach: f64,
    /// Omit for inviscid flow.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reynolds: Option<f64>,
}

fn d_gamma() -> f64 {
    1.4
}
fn d_prandtl() -> f64 {
    0.72
}

/// Derived gas model used by the solver.
#[derive(Debug, Clone, Copy)]
pub struct GasModel {
    pub gamma: f64,
    pub prandtl: f64,
    pub mach: f64,
    pub reynolds: f64,
    /// Dynamic viscosity (zero for inviscid runs).
    pub mu: f64,
    /// Nondimensional gas constant `1/(gamma M^2)`.
    pub r_gas: f64,
    pub cp: f64,
    /// Thermal conductivity `mu cp / Pr`.
    pub k_thermal: f64,
}

impl GasModel {
    pub fn from_spec(spec: &GasSpec) -> Result<Self> {
        if spec.mach <= 0.0 {
            return Err(Error::Config(format!(
                "gas.mach must be positive, got {}",
                spec.mach
            )));
        }
        if spec.gamma <= 1.0 {
            return Err(Error::Config(format!(
                "gas.gamma must exceed 1, got {}",
                spec.gamma
            )));
        }
        let mu = match spec.reynolds {
            Some(re) if re > 0.0 => 1.0 / re,
            Some(re) => {
                return Err(Error::Config(format!(
                    "gas.reynolds must be positive, got {re}"
                )))
            }
            None => 0.0,
        };
        let r_gas = 1.0 / (spec.gamma * spec.mach * spec.mach);
        let cp = spec.gamma * r_gas / (spec.gamma - 1.0);
        Ok(Self {
            gamma: spec.gamma,
            prandtl: spec.prandtl,
            mach: spec.mach,
            reynolds: spec.reynolds.unwrap_or(f64::INFINITY),
            mu,
            r_gas,
            cp,
            k_thermal: mu * cp / spec.prandtl,
        })
    }

    pub fn is_viscous(&self) -> bool {
        self.mu > 0.0
    }

    /// Free-stream conserved state (unit density and speed along +x).
    pub fn free_stream(&self) -> [f64; 4] {
        let p = 1.0 / (self.gamma * self.mach * self.mach);
        [1.0, 1.0, 0.0, p / (self.gamma - 1.0) + 0.5]
    }

    pub fn pressure(&self, u: &[f64; 4]) -> f64 {
        (self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }

    pub fn sound_speed(&self, u: &[f64; 4]) -> f64 {
        (self.gamma * self.pressure(u) / u[0]).sqrt()
    }

    pub fn temperature(&self, u: &[f64; 4]) -> f64 {
        self.pressure(u) / (u[0] * self.r_gas)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn model(mach: f64, re: Option<f64>) -> GasModel {
        GasModel::from_spec(&GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach,
            reynolds: re,
        })
        .unwrap()
    }

    #[test]
    fn free_stream_is_consistent() {
        let gas = model(0.5, Some(5000.0));
        let u = gas.free_stream();
        // Equation of state closes: E - P/(gamma-1) - rho|u|^2/2 = 0.
        let p = gas.pressure(&u);
        assert_abs_diff_eq!(
            u[3] - p / (gas.gamma - 1.0) - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0],
            0.0,
            epsilon = 1e-14
        );
        // Sound speed 1/M and temperature 1.
        assert_abs_diff_eq!(gas.sound_speed(&u), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(gas.temperature(&u), 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(gas.mu, 2e-4, epsilon = 1e-18);
    }

    #[test]
    fn inviscid_when_reynolds_absent() {
        let gas = model(0.2, None);
        assert!(!gas.is_viscous());
        assert_eq!(gas.mu, 0.0);
        assert_eq!(gas.k_thermal, 0.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(GasModel::from_spec(&GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.0,
            reynolds: None
        })
        .is_err());
        assert!(GasModel::from_spec(&GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.5,
            reynolds: Some(-1.0)
        })
        .is_err());
    }
}
