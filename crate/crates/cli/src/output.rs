//! Shared output helpers: resolved-config echo and the eigen CSV schema.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use penalfr_core::config::RunConfig;
use penalfr_core::eigen::ModeSpectrum;
use penalfr_core::io::{write_csv, Cell, Table};

/// Pick the output directory: CLI flag beats the config, default `out`.
pub fn out_dir(cfg_dir: Option<&str>, flag: Option<&Path>) -> PathBuf {
    match (flag, cfg_dir) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(d)) => PathBuf::from(d),
        (None, None) => PathBuf::from("out"),
    }
}

/// Echo the resolved configuration into the output directory.
pub fn echo_config(cfg: &RunConfig, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let text = penalfr_core::config::emit_config(cfg)?;
    std::fs::write(dir.join("config.resolved.toml"), text)?;
    Ok(())
}

/// Mode table with the documented columns
/// (k_nondim, mode_id, class, dispersion, dissipation).
pub fn spectrum_table(spec: &ModeSpectrum) -> Table {
    let mut table = Table::new(&["k_nondim", "mode_id", "class", "dispersion", "dissipation"]);
    for (ik, &knd) in spec.k_nondim.iter().enumerate() {
        for (im, &rate) in spec.rates[ik].iter().enumerate() {
            let class = if im == spec.physical_index[ik] {
                if spec.ambiguous[ik] {
                    "physical_ambiguous"
                } else {
                    "physical"
                }
            } else if spec
                .solid_modes
                .iter()
                .any(|s| (s - rate).norm() / rate.norm().max(1e-300) < 1e-6)
            {
                "solid"
            } else {
                "secondary"
            };
            table.push(vec![
                Cell::F64(knd),
                Cell::Int(im as i64),
                Cell::Str(class.to_string()),
                Cell::F64(spec.dispersion_nondim(rate)),
                Cell::F64(spec.dissipation(rate)),
            ]);
        }
    }
    table
}

pub fn write_spectrum(spec: &ModeSpectrum, path: &Path) -> Result<()> {
    write_csv(&spectrum_table(spec), path)?;
    Ok(())
}
