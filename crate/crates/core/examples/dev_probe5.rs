// Scratch: NACA criterion-9 oscillation study (removed before release).
use penalfr_core::masking::{Eta, PenalizationParams};
use penalfr_core::ns2d::*;
use penalfr_core::sfd::SfdParams;

fn naca(eta: f64, sfd: Option<(f64, f64)>, t_final: f64) -> Ns2dConfig {
    Ns2dConfig {
        order: 2,
        dt: 2.5e-4,
        t_final,
        scheme: TimeScheme::Rk3,
        gas: GasSpec { gamma: 1.4, prandtl: 0.72, mach: 0.5, reynolds: Some(5000.0) },
        mesh: MeshSpec {
            core: [-0.51, 0.51, -0.07, 0.07],
            core_size: 0.01,
            domain: [-20.0, 40.0, -20.0, 20.0],
            stretch_ratio_x: 1.18,
            stretch_ratio_y: 1.26,
            bc: MeshBc::FarField,
        },
        geometry: GeometrySpec::Naca0012,
        pen: PenalizationParams::no_slip(Eta::Finite(eta)).unwrap(),
        sfd: match sfd {
            Some((c, d)) => SfdParams::new(c, d).unwrap(),
            None => SfdParams::disabled(),
        },
        output: OutputSpec {
            probes: vec![[0.0225, 0.015], [0.555, 0.015]],
            probe_every: 20,
            force_every: 20,
            ..Default::default()
        },
        initial: InitialSpec::default(),
    }
}

fn rms(series: &[(f64, f64, f64)], from: f64, to: f64) -> f64 {
    let vals: Vec<f64> = series
        .iter()
        .filter(|(t, _, _)| *t >= from && *t <= to)
        .map(|(_, u, _)| *u)
        .collect();
    (vals.iter().map(|u| u * u).sum::<f64>() / vals.len().max(1) as f64).sqrt()
}

fn main() {
    let t_final = 8.0;
    for (name, eta, sfd) in [
        ("eta_1e-2", 1e-2, None),
        ("eta_5e-3", 5e-3, None),
        ("eta_1e-2_sfd", 1e-2, Some((100.0, 100.0))),
    ] {
        let t0 = std::time::Instant::now();
        let mut solver = Ns2dSolver::new(naca(eta, sfd, t_final)).unwrap();
        match solver.run(None) {
            Ok(()) => {
                let probe = &solver.history.probes[0];
                for q in 0..4 {
                    let (a, b) = (t_final * q as f64 / 4.0, t_final * (q + 1) as f64 / 4.0);
                    print!(" q{}={:.3e}", q, rms(probe, a, b));
                }
                let forces = &solver.history.forces;
                let tail = &forces[forces.len() / 2..];
                let mean_cl = tail.iter().map(|f| f.1).sum::<f64>() / tail.len() as f64;
                let mean_cd = tail.iter().map(|f| f.2).sum::<f64>() / tail.len() as f64;
                println!(
                    "\n{name}: wall {:.0}s; mean cl {mean_cl:+.4} cd {mean_cd:.4}",
                    t0.elapsed().as_secs_f64()
                );
            }
            Err(e) => println!("{name}: FAILED {e}"),
        }
    }
}
