//! Reproduction runs: one identifier per published figure (or table) in
//! scope, emitting the data behind it as CSV files.
//!
//! `fig1` (the workflow diagram) carries no data and has no entry. The
//! NACA/cylinder runs are long at full fidelity; `--quick` switches to
//! reduced horizons (and, for `table1`, the reduced-domain smoke variant).

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use penalfr_core::advect1d::{self, AdvectionConfig, AdvectionRun, SweepSpec};
use penalfr_core::eigen::{critical_parameter_search, EigenSetup, Scheme};
use penalfr_core::io::{write_csv, Cell, Table};
use penalfr_core::masking::{Eta, PenalizationParams};
use penalfr_core::ns2d::{
    strouhal, GasSpec, GeometrySpec, InitialSpec, MeshBc, MeshSpec, Ns2dConfig, Ns2dSolver,
    OutputSpec, TimeScheme,
};
use penalfr_core::sfd::SfdParams;

const IDS: &[&str] = &[
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12",
    "fig13", "fig14", "fig15", "fig16", "fig17", "fig18", "fig19", "fig20", "table1",
];

pub fn run(id: &str, quick: bool, out: Option<&Path>) -> Result<()> {
    let dir = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("out").join("repro").join(id));
    std::fs::create_dir_all(&dir)?;
    match id {
        "list" => {
            for id in IDS {
                println!("{id}");
            }
            return Ok(());
        }
        "fig2" => fig2(&dir)?,
        "fig3" => fig3(&dir)?,
        "fig4" => fig4(&dir, quick)?,
        "fig5" => fig5(&dir)?,
        "fig6" => fig6(&dir)?,
        "fig7" => fig7(&dir)?,
        "fig8" => fig8(&dir)?,
        "fig9" => naca_mesh(&dir, false)?,
        "fig10" => naca_flowfields(&dir, quick)?,
        "fig11" => naca_probes(&dir, quick, FIG11_CASES)?,
        "fig12" => naca_probes(&dir, quick, FIG12_CASES)?,
        "fig13" => naca_refined(&dir, quick, false)?,
        "fig14" => naca_refined(&dir, quick, false)?,
        "fig15" => naca_refined(&dir, quick, true)?,
        "fig16" => cylinder_mesh(&dir)?,
        "fig17" | "fig18" => cylinder_probes(&dir, quick)?,
        "fig19" | "fig20" => cylinder_orders(&dir, quick)?,
        "table1" => table1(&dir, quick)?,
        other => bail!(
            "unknown repro id '{other}'; known ids: {} (or 'list')",
            IDS.join(", ")
        ),
    }
    println!("repro {id}: outputs in {}", dir.display());
    Ok(())
}

fn advect_case(
    eta: Option<f64>,
    sfd: Option<(f64, f64)>,
    dt: f64,
    t_final: f64,
) -> Result<AdvectionConfig> {
    let mut cfg = AdvectionConfig {
        dt,
        t_final,
        ..Default::default()
    };
    cfg.pen = match eta {
        Some(e) => PenalizationParams::no_slip(Eta::Finite(e))?,
        None => PenalizationParams::disabled(),
    };
    cfg.sfd = match sfd {
        Some((chi, delta)) => SfdParams::new(chi, delta)?,
        None => SfdParams::disabled(),
    };
    Ok(cfg)
}

fn write_solution(cfg: &AdvectionConfig, path: &Path) -> Result<()> {
    let run = AdvectionRun::new(cfg.clone())?;
    let res = run.run()?;
    let mut table = Table::new(&["x", "u"]);
    for (&x, &u) in res.x.iter().zip(&res.u) {
        table.push(vec![Cell::F64(x), Cell::F64(u)]);
    }
    write_csv(&table, path)?;
    Ok(())
}

/// Advection schematic: the initial wave and a partially penalized state.
fn fig2(dir: &Path) -> Result<()> {
    let cfg = advect_case(Some(1e-3), None, 1e-5, 0.0)?;
    let run = AdvectionRun::new(cfg.clone())?;
    let u0 = run.initial_condition();
    let mut table = Table::new(&["x", "u"]);
    for (&x, &u) in run.x.iter().zip(&u0) {
        table.push(vec![Cell::F64(x), Cell::F64(u)]);
    }
    write_csv(&table, &dir.join("initial.csv"))?;
    let cfg = advect_case(Some(1e-3), None, 1e-5, 0.5)?;
    write_solution(&cfg, &dir.join("evolved_t0p5.csv"))
}

/// Four transient cases at t = 1.1.
fn fig3(dir: &Path) -> Result<()> {
    let cases: [(&str, Option<f64>, Option<(f64, f64)>); 4] = [
        ("case1_eta1e-3", Some(1e-3), None),
        ("case2_eta1e-4", Some(1e-4), None),
        ("case3_eta1e-3_sfd_d0p01", Some(1e-3), Some((1e5, 0.01))),
        ("case4_eta1e-3_sfd_d1", Some(1e-3), Some((1e5, 1.0))),
    ];
    for (name, eta, sfd) in cases {
        let cfg = advect_case(eta, sfd, 1e-5, 1.1)?;
        write_solution(&cfg, &dir.join(format!("{name}.csv")))?;
    }
    Ok(())
}

/// Error comparison grids (three penalization levels).
fn fig4(dir: &Path, quick: bool) -> Result<()> {
    let base = advect_case(None, None, 1e-5, 1.1)?;
    let spec = SweepSpec {
        etas: vec![None, Some(1e-3), Some(1e-5)],
        chi_fs: if quick {
            vec![1e3, 1e5]
        } else {
            vec![1e2, 1e3, 1e4, 1e5]
        },
        deltas: if quick {
            vec![1e-3, 1e-1, 1e1, 1e3]
        } else {
            vec![1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3]
        },
        find_max_dt: false,
    };
    let rows = advect1d::sweep(&base, &spec);
    let mut table = Table::new(&["eta", "chi_f", "delta", "flow_error", "solid_error", "failed"]);
    for r in rows {
        table.push(vec![
            Cell::F64(r.eta.unwrap_or(f64::INFINITY)),
            Cell::F64(r.chi_f),
            Cell::F64(r.delta),
            Cell::F64(r.flow_error),
            Cell::F64(r.solid_error),
            Cell::Str(r.failed.to_string()),
        ]);
    }
    write_csv(&table, &dir.join("errors.csv"))?;
    Ok(())
}

fn eigen_base() -> EigenSetup {
    EigenSetup {
        n_elements: 40,
        order: 3,
        advection_speed: 1.0,
        upwind_lambda: 1.0,
        slab_elements: 1,
        pen: PenalizationParams::disabled(),
        sfd: SfdParams::disabled(),
        n_wavenumbers: 64,
        solid_mode_tol: 1e-8,
    }
}

/// Semi-discrete curves: eta-only and eta + SFD over filter widths.
fn fig5(dir: &Path) -> Result<()> {
    let mut setup = eigen_base();
    setup.pen = PenalizationParams::no_slip(Eta::Finite(1e-3))?;
    let spec = setup.semi_discrete_sweep()?;
    crate::output::write_spectrum(&spec, &dir.join("eta_only.csv"))?;
    for delta in [0.01, 0.1, 1.0, 10.0] {
        let mut s = setup.clone();
        s.sfd = SfdParams::new(1e3, delta)?;
        let spec = s.semi_discrete_sweep()?;
        crate::output::write_spectrum(&spec, &dir.join(format!("sfd_delta_{delta}.csv")))?;
    }
    Ok(())
}

/// Fully-discrete curves for the combined scheme at Delta = 1e-3.
fn fig6(dir: &Path) -> Result<()> {
    let dt = 1e-3;
    for ratio in [0.6, 0.703, 0.9, 1.1, 1.3] {
        let eta = ratio * dt;
        let mut s = eigen_base();
        s.pen = PenalizationParams::no_slip(Eta::Finite(eta))?;
        s.sfd = SfdParams::new(1.0 / eta, 1e-3)?;
        let spec = s.fully_discrete_sweep(dt)?;
        crate::output::write_spectrum(
            &spec,
            &dir.join(format!("combined_eta_{ratio}dt.csv")),
        )?;
    }
    let result = critical_parameter_search(&eigen_base(), dt, Scheme::Combined, 1e-3)?;
    let mut table = Table::new(&["dt", "scheme", "eta_critical", "ratio"]);
    table.push(vec![
        Cell::F64(result.dt),
        Cell::Str("combined_delta_1e-3".into()),
        Cell::F64(result.eta_critical),
        Cell::F64(result.ratio),
    ]);
    write_csv(&table, &dir.join("critical.csv"))?;
    Ok(())
}

/// Critical-parameter study over time steps and schemes.
fn fig7(dir: &Path) -> Result<()> {
    let mut table = Table::new(&["dt", "scheme", "eta_critical", "ratio"]);
    for dt in [1e-3, 1e-4, 1e-5] {
        for (scheme, name) in [(Scheme::Single, "single"), (Scheme::Combined, "combined")] {
            let r = critical_parameter_search(&eigen_base(), dt, scheme, 100.0)?;
            println!("  {name} dt={dt:.0e}: eta_c/dt = {:.4}", r.ratio);
            table.push(vec![
                Cell::F64(dt),
                Cell::Str(name.into()),
                Cell::F64(r.eta_critical),
                Cell::F64(r.ratio),
            ]);
        }
    }
    write_csv(&table, &dir.join("critical.csv"))?;
    Ok(())
}

/// Cost study: maximal stable step of each method at matched flow error.
fn fig8(dir: &Path) -> Result<()> {
    let combined = advect_case(Some(1e-3), Some((1e3, 100.0)), 1e-5, 1.1)?;
    let run = AdvectionRun::new(combined.clone())?;
    let res = run.run()?;
    let target = advect1d::flow_error(&res.u, &res.x, combined.slab_width());
    let dt_combined = advect1d::max_stable_dt(&combined)?;

    // Match the target error with each single method by log-bisection.
    let eta_err = |eta: f64| -> Result<f64> {
        let cfg = advect_case(Some(eta), None, 1e-5, 1.1)?;
        let run = AdvectionRun::new(cfg.clone())?;
        let res = run.run()?;
        Ok(advect1d::flow_error(&res.u, &res.x, cfg.slab_width()))
    };
    let mut lo = 1e-5f64;
    let mut hi = 1e-3f64;
    for _ in 0..20 {
        let mid = (lo * hi).sqrt();
        if eta_err(mid)? > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let eta_single = (lo * hi).sqrt();
    let dt_eta = advect1d::max_stable_dt(&advect_case(Some(eta_single), None, 1e-5, 1.1)?)?;

    let sfd_err = |chi: f64| -> Result<f64> {
        let cfg = advect_case(None, Some((chi, 100.0)), 1e-5, 1.1)?;
        let run = AdvectionRun::new(cfg.clone())?;
        let res = run.run()?;
        Ok(advect1d::flow_error(&res.u, &res.x, cfg.slab_width()))
    };
    let mut lo = 1e3f64;
    let mut hi = 1e5f64;
    for _ in 0..20 {
        let mid = (lo * hi).sqrt();
        if sfd_err(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let chi_single = (lo * hi).sqrt();
    let dt_sfd = advect1d::max_stable_dt(&advect_case(None, Some((chi_single, 100.0)), 1e-5, 1.1)?)?;

    let mut table = Table::new(&["method", "parameter", "flow_error", "max_stable_dt"]);
    table.push(vec![
        Cell::Str("combined".into()),
        Cell::F64(1e-3),
        Cell::F64(target),
        Cell::F64(dt_combined),
    ]);
    table.push(vec![
        Cell::Str("eta_only".into()),
        Cell::F64(eta_single),
        Cell::F64(eta_err(eta_single)?),
        Cell::F64(dt_eta),
    ]);
    table.push(vec![
        Cell::Str("sfd_only".into()),
        Cell::F64(chi_single),
        Cell::F64(sfd_err(chi_single)?),
        Cell::F64(dt_sfd),
    ]);
    write_csv(&table, &dir.join("cost.csv"))?;
    Ok(())
}

pub fn naca_coarse_mesh() -> MeshSpec {
    MeshSpec {
        core: [-0.51, 0.51, -0.07, 0.07],
        core_size: 0.01,
        domain: [-20.0, 40.0, -20.0, 20.0],
        stretch_ratio_x: 1.18,
        stretch_ratio_y: 1.26,
        bc: MeshBc::FarField,
    }
}

fn naca_refined_mesh() -> MeshSpec {
    MeshSpec {
        core: [-0.51, 0.51, -0.07, 0.07],
        core_size: 0.003,
        domain: [-20.0, 40.0, -20.0, 20.0],
        stretch_ratio_x: 1.12,
        stretch_ratio_y: 1.14,
        bc: MeshBc::FarField,
    }
}

pub fn cylinder_mesh_spec(smoke: bool) -> MeshSpec {
    MeshSpec {
        core: [-1.0, 1.0, -1.0, 1.0],
        core_size: 0.03,
        domain: if smoke {
            [-10.0, 20.0, -10.0, 10.0]
        } else {
            [-30.0, 50.0, -30.0, 30.0]
        },
        stretch_ratio_x: if smoke { 1.2 } else { 1.08 },
        stretch_ratio_y: if smoke { 1.2 } else { 1.08 },
        bc: MeshBc::FarField,
    }
}

pub fn naca_config(
    mesh: MeshSpec,
    dt: f64,
    t_final: f64,
    eta: Option<f64>,
    sfd: Option<(f64, f64)>,
) -> Result<Ns2dConfig> {
    Ok(Ns2dConfig {
        order: 2,
        dt,
        t_final,
        scheme: TimeScheme::Rk3,
        gas: GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.5,
            reynolds: Some(5000.0),
        },
        mesh,
        geometry: GeometrySpec::Naca0012,
        pen: match eta {
            Some(e) => PenalizationParams::no_slip(Eta::Finite(e))?,
            None => PenalizationParams::disabled(),
        },
        sfd: match sfd {
            Some((chi, delta)) => SfdParams::new(chi, delta)?,
            None => SfdParams::disabled(),
        },
        output: OutputSpec {
            probes: vec![[0.0225, 0.015], [0.555, 0.015]],
            probe_every: 20,
            force_every: 20,
            snapshot_every: 0,
            checkpoint_every: 0,
            surface_pressure: false,
        },
        initial: InitialSpec::default(),
    })
}

pub fn cylinder_config(
    order: usize,
    dt: f64,
    t_final: f64,
    eta: Option<f64>,
    sfd: Option<(f64, f64)>,
    smoke: bool,
) -> Result<Ns2dConfig> {
    Ok(Ns2dConfig {
        order,
        dt,
        t_final,
        scheme: TimeScheme::Rk3,
        gas: GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.2,
            reynolds: Some(100.0),
        },
        mesh: cylinder_mesh_spec(smoke),
        geometry: GeometrySpec::Circle {
            center: [0.0, 0.0],
            diameter: 1.0,
        },
        pen: match eta {
            Some(e) => PenalizationParams::no_slip(Eta::Finite(e))?,
            None => PenalizationParams::disabled(),
        },
        sfd: match sfd {
            Some((chi, delta)) => SfdParams::new(chi, delta)?,
            None => SfdParams::disabled(),
        },
        output: OutputSpec {
            probes: vec![[0.36, 0.23], [0.75, 0.23]],
            probe_every: 25,
            force_every: 25,
            snapshot_every: 0,
            checkpoint_every: 0,
            surface_pressure: false,
        },
        initial: InitialSpec {
            // Seed the wake asymmetry so shedding locks in early.
            perturbation_amp: 0.3,
            perturbation_center: [1.5, 0.0],
            perturbation_width: 1.0,
        },
    })
}

fn write_mesh_csv(spec: &MeshSpec, dir: &Path) -> Result<()> {
    let mesh = spec.build()?;
    let mut table = Table::new(&["axis", "edge"]);
    for &x in &mesh.x_edges {
        table.push(vec![Cell::Str("x".into()), Cell::F64(x)]);
    }
    for &y in &mesh.y_edges {
        table.push(vec![Cell::Str("y".into()), Cell::F64(y)]);
    }
    write_csv(&table, &dir.join("mesh_edges.csv"))?;
    println!("mesh: {} x {} elements", mesh.nx, mesh.ny);
    Ok(())
}

fn naca_mesh(dir: &Path, refined: bool) -> Result<()> {
    let spec = if refined {
        naca_refined_mesh()
    } else {
        naca_coarse_mesh()
    };
    write_mesh_csv(&spec, dir)
}

fn run_ns_case(cfg: Ns2dConfig, dir: &Path, name: &str, snapshot: bool) -> Result<()> {
    println!("  running {name} (t_final = {}, dt = {:.1e})", cfg.t_final, cfg.dt);
    let case_dir = dir.join(name);
    std::fs::create_dir_all(&case_dir)?;
    let mut solver = Ns2dSolver::new(cfg)?;
    solver.run(None)?;
    solver.write_histories(&case_dir)?;
    if snapshot {
        solver.write_snapshot(&case_dir.join("field_final.csv"))?;
    }
    if solver.cfg.output.surface_pressure {
        write_csv(&solver.surface_pressure(), &case_dir.join("cp.csv"))?;
    }
    Ok(())
}

fn naca_flowfields(dir: &Path, quick: bool) -> Result<()> {
    let t_final = if quick { 4.0 } else { 20.0 };
    let cases: [(&str, Option<f64>, Option<(f64, f64)>); 3] = [
        ("eta_1e-2", Some(1e-2), None),
        ("eta_5e-3", Some(5e-3), None),
        ("combined_eta1e-2_chif5e3_d10", Some(1e-2), Some((5e3, 10.0))),
    ];
    for (name, eta, sfd) in cases {
        let cfg = naca_config(naca_coarse_mesh(), 5e-4, t_final, eta, sfd)?;
        run_ns_case(cfg, dir, name, true)?;
    }
    Ok(())
}

type NsCase = (&'static str, Option<f64>, Option<(f64, f64)>);

const FIG11_CASES: &[NsCase] = &[
    ("case1_eta1e-2", Some(1e-2), None),
    ("case2_eta1e-2_chif1e2_d100", Some(1e-2), Some((1e2, 100.0))),
    ("case3_eta5e-3", Some(5e-3), None),
    ("case4_eta5e-3_chif2e3_d100", Some(5e-3), Some((2e3, 100.0))),
];

const FIG12_CASES: &[NsCase] = &[
    ("case1_eta1e-2", Some(1e-2), None),
    ("case2_eta5e-3", Some(5e-3), None),
    ("case3_eta1e-2_chif5e3_d100", Some(1e-2), Some((5e3, 100.0))),
    ("case4_eta1e-2_chif5e3_d2", Some(1e-2), Some((5e3, 2.0))),
];

fn naca_probes(dir: &Path, quick: bool, cases: &[NsCase]) -> Result<()> {
    let t_final = if quick { 4.0 } else { 20.0 };
    for &(name, eta, sfd) in cases {
        let cfg = naca_config(naca_coarse_mesh(), 5e-4, t_final, eta, sfd)?;
        run_ns_case(cfg, dir, name, false)?;
    }
    Ok(())
}

fn naca_refined(dir: &Path, quick: bool, surface_pressure: bool) -> Result<()> {
    let t_final = if quick { 2.0 } else { 20.0 };
    let cases: [NsCase; 4] = [
        ("case1_eta1e-2", Some(1e-2), None),
        ("case2_eta5e-4", Some(5e-4), None),
        ("case3_sfd_chif2e4_d100", None, Some((2e4, 100.0))),
        ("case4_eta5e-4_chif2e4_d100", Some(5e-4), Some((2e4, 100.0))),
    ];
    for (name, eta, sfd) in cases {
        let mut cfg = naca_config(naca_refined_mesh(), 7.5e-5, t_final, eta, sfd)?;
        cfg.output.surface_pressure = surface_pressure;
        run_ns_case(cfg, dir, name, false)?;
    }
    Ok(())
}

fn cylinder_mesh(dir: &Path) -> Result<()> {
    write_mesh_csv(&cylinder_mesh_spec(false), dir)
}

fn cylinder_probes(dir: &Path, quick: bool) -> Result<()> {
    let t_final = if quick { 30.0 } else { 150.0 };
    let cases: [NsCase; 4] = [
        ("case1_eta1e-3", Some(1e-3), None),
        ("case2_eta5e-4", Some(5e-4), None),
        ("case3_eta1e-3_chif5e3_d100", Some(1e-3), Some((5e3, 100.0))),
        ("case4_eta5e-4_chif2e3_d100", Some(5e-4), Some((2e3, 100.0))),
    ];
    for (name, eta, sfd) in cases {
        let cfg = cylinder_config(2, 4e-4, t_final, eta, sfd, quick)?;
        run_ns_case(cfg, dir, name, false)?;
    }
    Ok(())
}

fn cylinder_orders(dir: &Path, quick: bool) -> Result<()> {
    let t_final = if quick { 30.0 } else { 150.0 };
    for (p, dt) in [(1usize, 6e-4), (3, 1.5e-4), (4, 5e-5)] {
        let eta = dt; // the eta = dt guideline
        for (tag, sfd) in [("penalty", None), ("combined", Some((1.0 / eta, 100.0)))] {
            let cfg = cylinder_config(p, dt, t_final, Some(eta), sfd, quick)?;
            run_ns_case(cfg, dir, &format!("p{p}_{tag}"), false)?;
        }
    }
    Ok(())
}

fn table1(dir: &Path, quick: bool) -> Result<()> {
    let mut table = Table::new(&["order", "mean_cd", "cl_amplitude", "strouhal"]);
    let orders: &[(usize, f64)] = if quick {
        &[(2, 4e-4)]
    } else {
        &[(1, 6e-4), (2, 4e-4), (3, 1.5e-4), (4, 5e-5)]
    };
    for &(p, dt) in orders {
        let eta = dt;
        let t_final = if quick { 60.0 } else { 150.0 };
        let cfg = cylinder_config(p, dt, t_final, Some(eta), Some((1.0 / eta, 100.0)), quick)?;
        let mut solver = Ns2dSolver::new(cfg)?;
        solver.run(None)?;
        let forces = &solver.history.forces;
        let tail = &forces[forces.len() / 2..];
        let mean_cd = tail.iter().map(|f| f.2).sum::<f64>() / tail.len() as f64;
        let mean_cl = tail.iter().map(|f| f.1).sum::<f64>() / tail.len() as f64;
        let cl_amp = tail
            .iter()
            .map(|f| (f.1 - mean_cl).abs())
            .fold(0.0f64, f64::max);
        let times: Vec<f64> = tail.iter().map(|f| f.0).collect();
        let lift: Vec<f64> = tail.iter().map(|f| f.1).collect();
        let st = strouhal(&times, &lift, 1.0, 1.0)?;
        println!("  P={p}: mean cd = {mean_cd:.3}, cl amplitude = {cl_amp:.3}, St = {st:.4}");
        table.push(vec![
            Cell::Int(p as i64),
            Cell::F64(mean_cd),
            Cell::F64(cl_amp),
            Cell::F64(st),
        ]);
        solver.write_histories(&dir.join(format!("p{p}")))?;
    }
    write_csv(&table, &dir.join("table1.csv"))?;
    Ok(())
}
