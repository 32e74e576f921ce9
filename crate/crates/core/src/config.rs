//! Run configuration: one TOML schema across all modes.
//!
//! Unknown keys are rejected, defaults are resolved at parse time, and the
//! resolved configuration can be re-emitted and re-parsed losslessly.

use serde::{Deserialize, Serialize};

use crate::advect1d::AdvectionConfig;
use crate::eigen::EigenSetup;
use crate::error::{Error, Result};
use crate::masking::{Eta, PenalizationParams};
use crate::ns2d::{
    GasSpec, GeometrySpec, InitialSpec, MeshBc, MeshSpec, Ns2dConfig, OutputSpec, TimeScheme,
};
use crate::sfd::SfdParams;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    EigenSemi,
    EigenFull,
    Advect,
    Ns2d,
}

/// Top-level run configuration.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub mode: Mode,
    /// Output directory; the CLI `--out` flag overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advect: Option<AdvectSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns2d: Option<Ns2dSection>,
}

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PenalizationSection {
    /// Penalization parameter; omit the key (or the whole section) to
    /// disable penalization (the eta -> infinity limit).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

impl PenalizationSection {
    fn to_params(&self) -> Result<PenalizationParams> {
        match self.eta {
            Some(e) => PenalizationParams::no_slip(Eta::Finite(e))
                .map_err(|_| Error::Config(format!("penalization.eta must be positive, got {e}"))),
            None => Ok(PenalizationParams::disabled()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SfdSection {
    #[serde(default = "default_true")]
    pub enabled: bool,
    pub chi_f: f64,
    pub delta: f64,
}

fn default_true() -> bool {
    true
}

impl SfdSection {
    fn to_params(&self) -> Result<SfdParams> {
        if !self.enabled {
            return Ok(SfdParams::disabled());
        }
        SfdParams::new(self.chi_f, self.delta).map_err(|_| {
            Error::Config(format!(
                "sfd requires chi_f >= 0 and delta > 0, got chi_f = {}, delta = {}",
                self.chi_f, self.delta
            ))
        })
    }
}

fn pen_to_section(p: &PenalizationParams) -> Option<PenalizationSection> {
    match p.eta {
        Eta::Finite(e) => Some(PenalizationSection { eta: Some(e) }),
        Eta::Disabled => None,
    }
}

fn sfd_to_section(s: &SfdParams) -> Option<SfdSection> {
    s.enabled.then_some(SfdSection {
        enabled: true,
        chi_f: s.chi_f,
        delta: s.delta,
    })
}

/// Parameters of the 1D advection runs; defaults follow the reference setup
/// (N = 40, P = 3, fully upwind).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AdvectSection {
    #[serde(default = "d_n40")]
    pub n_elements: usize,
    #[serde(default = "d_p3")]
    pub order: usize,
    #[serde(default = "d_one")]
    pub advection_speed: f64,
    #[serde(default = "d_one")]
    pub upwind_lambda: f64,
    #[serde(default = "d_knd")]
    pub k_nondim: f64,
    #[serde(default = "d_z1")]
    pub slab_elements: usize,
    #[serde(default = "d_dt1em5")]
    pub dt: f64,
    #[serde(default = "d_t11")]
    pub t_final: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalization: Option<PenalizationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sfd: Option<SfdSection>,
}

fn d_n40() -> usize {
    40
}
fn d_p3() -> usize {
    3
}
fn d_one() -> f64 {
    1.0
}
fn d_knd() -> f64 {
    0.3223
}
fn d_z1() -> usize {
    1
}
fn d_dt1em5() -> f64 {
    1e-5
}
fn d_t11() -> f64 {
    1.1
}

impl AdvectSection {
    pub fn to_config(&self) -> Result<AdvectionConfig> {
        let pen = self
            .penalization
            .as_ref()
            .map(|p| p.to_params())
            .transpose()?
            .unwrap_or_else(PenalizationParams::disabled);
        let sfd = self
            .sfd
            .as_ref()
            .map(|s| s.to_params())
            .transpose()?
            .unwrap_or_else(SfdParams::disabled);
        if self.dt <= 0.0 {
            return Err(Error::Config(format!(
                "advect.dt must be positive, got {}",
                self.dt
            )));
        }
        Ok(AdvectionConfig {
            n_elements: self.n_elements,
            order: self.order,
            advection_speed: self.advection_speed,
            upwind_lambda: self.upwind_lambda,
            k_nondim: self.k_nondim,
            slab_elements: self.slab_elements,
            dt: self.dt,
            t_final: self.t_final,
            pen,
            sfd,
        })
    }

    pub fn from_config(c: &AdvectionConfig) -> Self {
        Self {
            n_elements: c.n_elements,
            order: c.order,
            advection_speed: c.advection_speed,
            upwind_lambda: c.upwind_lambda,
            k_nondim: c.k_nondim,
            slab_elements: c.slab_elements,
            dt: c.dt,
            t_final: c.t_final,
            penalization: pen_to_section(&c.pen),
            sfd: sfd_to_section(&c.sfd),
        }
    }
}

/// Parameters of the eigensolution sweeps.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EigenSection {
    #[serde(default = "d_n40")]
    pub n_elements: usize,
    #[serde(default = "d_p3")]
    pub order: usize,
    #[serde(default = "d_one")]
    pub advection_speed: f64,
    #[serde(default = "d_one")]
    pub upwind_lambda: f64,
    #[serde(default = "d_z1")]
    pub slab_elements: usize,
    #[serde(default = "d_nk64")]
    pub n_wavenumbers: usize,
    #[serde(default = "d_solid_tol")]
    pub solid_mode_tol: f64,
    /// Time step; required for the fully-discrete mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalization: Option<PenalizationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sfd: Option<SfdSection>,
}

fn d_nk64() -> usize {
    64
}
fn d_solid_tol() -> f64 {
    1e-8
}

impl EigenSection {
    pub fn to_setup(&self) -> Result<EigenSetup> {
        Ok(EigenSetup {
            n_elements: self.n_elements,
            order: self.order,
            advection_speed: self.advection_speed,
            upwind_lambda: self.upwind_lambda,
            slab_elements: self.slab_elements,
            pen: self
                .penalization
                .as_ref()
                .map(|p| p.to_params())
                .transpose()?
                .unwrap_or_else(PenalizationParams::disabled),
            sfd: self
                .sfd
                .as_ref()
                .map(|s| s.to_params())
                .transpose()?
                .unwrap_or_else(SfdParams::disabled),
            n_wavenumbers: self.n_wavenumbers,
            solid_mode_tol: self.solid_mode_tol,
        })
    }
}

/// NS solver section; mirrors [`Ns2dConfig`] with schema defaults.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Ns2dSection {
    #[serde(default = "d_p2")]
    pub order: usize,
    pub dt: f64,
    pub t_final: f64,
    #[serde(default)]
    pub scheme: TimeScheme,
    pub gas: GasSpec,
    pub mesh: MeshSpec,
    #[serde(default)]
    pub geometry: GeometrySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub penalization: Option<PenalizationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sfd: Option<SfdSection>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub initial: InitialSpec,
}

fn d_p2() -> usize {
    2
}

impl Ns2dSection {
    pub fn to_config(&self) -> Result<Ns2dConfig> {
        if self.dt <= 0.0 {
            return Err(Error::Config(format!(
                "ns2d.dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.mesh.bc == MeshBc::Periodic) && self.mesh.domain_contains_core().is_err() {
            return Err(Error::Config(
                "ns2d.mesh: core region must lie inside the domain".into(),
            ));
        }
        Ok(Ns2dConfig {
            order: self.order,
            dt: self.dt,
            t_final: self.t_final,
            scheme: self.scheme,
            gas: self.gas.clone(),
            mesh: self.mesh.clone(),
            geometry: self.geometry.clone(),
            pen: self
                .penalization
                .as_ref()
                .map(|p| p.to_params())
                .transpose()?
                .unwrap_or_else(PenalizationParams::disabled),
            sfd: self
                .sfd
                .as_ref()
                .map(|s| s.to_params())
                .transpose()?
                .unwrap_or_else(SfdParams::disabled),
            output: self.output.clone(),
            initial: self.initial.clone(),
        })
    }
}

/// Parse and validate a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    if text.trim().is_empty() {
        return Err(Error::Config(
            "empty configuration; required keys: mode (one of eigen_semi, eigen_full, advect, \
             ns2d) plus the matching [advect]/[eigen]/[ns2d] section"
                .into(),
        ));
    }
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    if cfg.schema_version != SCHEMA_VERSION {
        return Err(Error::Config(format!(
            "schema_version {} not supported (expected {SCHEMA_VERSION})",
            cfg.schema_version
        )));
    }
    match cfg.mode {
        Mode::Advect if cfg.advect.is_none() => {
            return Err(Error::Config("mode = advect requires an [advect] section".into()))
        }
        Mode::EigenSemi | Mode::EigenFull if cfg.eigen.is_none() => {
            return Err(Error::Config(format!(
                "mode = {:?} requires an [eigen] section",
                cfg.mode
            )))
        }
        Mode::EigenFull
            if cfg
                .eigen
                .as_ref()
                .is_some_and(|e| e.dt.is_none()) =>
        {
            return Err(Error::Config(
                "mode = eigen_full requires eigen.dt".into(),
            ))
        }
        Mode::Ns2d if cfg.ns2d.is_none() => {
            return Err(Error::Config("mode = ns2d requires an [ns2d] section".into()))
        }
        _ => {}
    }
    // Validate the active section eagerly so key errors surface at parse time.
    match cfg.mode {
        Mode::Advect => {
            cfg.advect.as_ref().unwrap().to_config()?;
        }
        Mode::EigenSemi | Mode::EigenFull => {
            cfg.eigen.as_ref().unwrap().to_setup()?;
        }
        Mode::Ns2d => {
            cfg.ns2d.as_ref().unwrap().to_config()?;
        }
    }
    Ok(cfg)
}

/// Emit a configuration as TOML (the inverse of [`parse_config`]).
pub fn emit_config(cfg: &RunConfig) -> Result<String> {
    toml::to_string_pretty(cfg).map_err(|e| Error::Config(format!("serialize: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_advect_config_gets_reference_defaults() {
        let cfg = parse_config("mode = \"advect\"\n[advect]\n").unwrap();
        let adv = cfg.advect.unwrap().to_config().unwrap();
        assert_eq!(adv.n_elements, 40);
        assert_eq!(adv.order, 3);
        assert_eq!(adv.upwind_lambda, 1.0);
        assert_eq!(adv.k_nondim, 0.3223);
    }

    #[test]
    fn empty_file_lists_required_keys() {
        let err = parse_config("").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mode"), "{msg}");
        assert!(msg.contains("advect"), "{msg}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_config("mode = \"advect\"\ntypo_key = 1\n[advect]\n").unwrap_err();
        assert!(err.to_string().contains("typo_key"), "{err}");
        let err =
            parse_config("mode = \"advect\"\n[advect]\nn_elemnts = 40\n").unwrap_err();
        assert!(err.to_string().contains("n_elemnts"), "{err}");
    }

    #[test]
    fn semantic_errors_name_the_key() {
        let err = parse_config(
            "mode = \"advect\"\n[advect]\ndt = -1.0\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("advect.dt"), "{err}");
        let err = parse_config(
            "mode = \"advect\"\n[advect]\n[advect.penalization]\neta = -2.0\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("penalization.eta"), "{err}");
    }

    #[test]
    fn round_trip_full_ns2d_config() {
        let text = r#"
mode = "ns2d"
out_dir = "out/cyl"

[ns2d]
order = 2
dt = 4e-4
t_final = 10.0
scheme = "lserk"

[ns2d.gas]
gamma = 1.4
prandtl = 0.72
mach = 0.2
reynolds = 100.0

[ns2d.mesh]
core = [-1.0, 1.0, -1.0, 1.0]
core_size = 0.03
domain = [-10.0, 20.0, -10.0, 10.0]
stretch_ratio_x = 1.2
stretch_ratio_y = 1.2
bc = "far_field"

[ns2d.geometry]
kind = "circle"
center = [0.0, 0.0]
diameter = 1.0

[ns2d.penalization]
eta = 4e-4

[ns2d.sfd]
chi_f = 2500.0
delta = 100.0

[ns2d.output]
probes = [[0.36, 0.23], [0.75, 0.23]]
probe_every = 25
force_every = 25

[ns2d.initial]
perturbation_amp = 0.1
"#;
        let cfg = parse_config(text).unwrap();
        let emitted = emit_config(&cfg).unwrap();
        let cfg2 = parse_config(&emitted).unwrap();
        assert_eq!(cfg, cfg2);
    }

    #[test]
    fn eigen_full_requires_dt() {
        let err = parse_config("mode = \"eigen_full\"\n[eigen]\n").unwrap_err();
        assert!(err.to_string().contains("dt"), "{err}");
        assert!(parse_config("mode = \"eigen_full\"\n[eigen]\ndt = 1e-3\n").is_ok());
    }
}
