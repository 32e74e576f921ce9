//! Subcommand drivers for user-supplied configuration files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use penalfr_core::advect1d::{self, AdvectionRun, SweepSpec};
use penalfr_core::config::{parse_config, Mode, RunConfig};
use penalfr_core::io::{restore, write_csv, Cell, Table};
use penalfr_core::ns2d::Ns2dSolver;

use crate::output::{echo_config, out_dir, write_spectrum};
use crate::EigenKind;

fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    Ok(parse_config(&text)?)
}

pub fn eigen(kind: EigenKind, config: &Path, out: Option<&Path>) -> Result<()> {
    let cfg = load(config)?;
    let section = cfg
        .eigen
        .as_ref()
        .ok_or_else(|| penalfr_core::Error::Config("missing [eigen] section".into()))?;
    match (kind, cfg.mode) {
        (EigenKind::Semi, Mode::EigenSemi) | (EigenKind::Full, Mode::EigenFull) => {}
        _ => bail!(penalfr_core::Error::Config(format!(
            "config mode {:?} does not match the requested eigen kind",
            cfg.mode
        ))),
    }
    let dir = out_dir(cfg.out_dir.as_deref(), out);
    echo_config(&cfg, &dir)?;
    let setup = section.to_setup()?;
    let spec = match kind {
        EigenKind::Semi => setup.semi_discrete_sweep()?,
        EigenKind::Full => {
            let dt = section
                .dt
                .ok_or_else(|| penalfr_core::Error::Config("eigen.dt required".into()))?;
            setup.fully_discrete_sweep(dt)?
        }
    };
    let name = match kind {
        EigenKind::Semi => "modes_semi.csv",
        EigenKind::Full => "modes_full.csv",
    };
    write_spectrum(&spec, &dir.join(name))?;
    println!(
        "wrote {} ({} wavenumbers, {} solid modes)",
        dir.join(name).display(),
        spec.k_nondim.len(),
        spec.solid_modes.len()
    );
    Ok(())
}

pub fn advect(config: &Path, sweep: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let cfg = load(config)?;
    let section = cfg
        .advect
        .as_ref()
        .ok_or_else(|| penalfr_core::Error::Config("missing [advect] section".into()))?;
    let dir = out_dir(cfg.out_dir.as_deref(), out);
    echo_config(&cfg, &dir)?;
    let run_cfg = section.to_config()?;
    let run = AdvectionRun::new(run_cfg.clone())?;
    let result = run.run()?;

    let mut table = Table::new(&["x", "u"]);
    for (&x, &u) in result.x.iter().zip(&result.u) {
        table.push(vec![Cell::F64(x), Cell::F64(u)]);
    }
    write_csv(&table, &dir.join("solution.csv"))?;
    let delta = run_cfg.slab_width();
    println!(
        "flow error = {:.6e}, solid error = {:.6e} ({} steps, {:.2}s)",
        advect1d::flow_error(&result.u, &result.x, delta),
        advect1d::solid_error(&result.u, &result.x, delta),
        result.steps,
        result.wall_time,
    );

    if let Some(sweep_path) = sweep {
        let text = std::fs::read_to_string(sweep_path)
            .with_context(|| format!("reading sweep spec {}", sweep_path.display()))?;
        let spec: SweepSpec =
            toml::from_str(&text).map_err(|e| penalfr_core::Error::Config(e.to_string()))?;
        let rows = advect1d::sweep(&run_cfg, &spec);
        let mut table = Table::new(&[
            "eta",
            "chi_f",
            "delta",
            "flow_error",
            "solid_error",
            "max_stable_dt",
            "wall_time",
            "failed",
        ]);
        for r in rows {
            table.push(vec![
                Cell::F64(r.eta.unwrap_or(f64::INFINITY)),
                Cell::F64(r.chi_f),
                Cell::F64(r.delta),
                Cell::F64(r.flow_error),
                Cell::F64(r.solid_error),
                Cell::F64(r.max_stable_dt.unwrap_or(f64::NAN)),
                Cell::F64(r.wall_time),
                Cell::Str(r.failed.to_string()),
            ]);
        }
        write_csv(&table, &dir.join("sweep.csv"))?;
        println!("wrote {}", dir.join("sweep.csv").display());
    }
    Ok(())
}

pub fn ns2d(config: &Path, resume: Option<&Path>, out: Option<&Path>) -> Result<()> {
    let cfg = load(config)?;
    let section = cfg
        .ns2d
        .as_ref()
        .ok_or_else(|| penalfr_core::Error::Config("missing [ns2d] section".into()))?;
    let dir = out_dir(cfg.out_dir.as_deref(), out);
    echo_config(&cfg, &dir)?;
    let mut solver = Ns2dSolver::new(section.to_config()?)?;
    if let Some(ckpt_path) = resume {
        let ckpt = restore(ckpt_path)?;
        solver.restore_from(&ckpt)?;
        println!(
            "resumed from {} at step {} (t = {})",
            ckpt_path.display(),
            solver.step_index,
            solver.time
        );
    }
    solver.run(Some(&dir))?;
    solver.write_histories(&dir)?;
    solver.write_snapshot(&dir.join("field_final.csv"))?;
    solver.write_checkpoint(&dir.join("final.ckpt"))?;
    if solver.cfg.output.surface_pressure {
        write_csv(&solver.surface_pressure(), &dir.join("cp.csv"))?;
    }
    if !solver.history.forces.is_empty() {
        let n = solver.history.forces.len();
        let tail = &solver.history.forces[n / 2..];
        let mean_cl = tail.iter().map(|f| f.1).sum::<f64>() / tail.len() as f64;
        let mean_cd = tail.iter().map(|f| f.2).sum::<f64>() / tail.len() as f64;
        println!("mean (second half): cl = {mean_cl:.4}, cd = {mean_cd:.4}");
    }
    println!(
        "finished {} steps to t = {}; outputs in {}",
        solver.step_index,
        solver.time,
        dir.display()
    );
    Ok(())
}
