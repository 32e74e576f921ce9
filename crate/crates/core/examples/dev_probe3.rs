// Scratch: advection error-study quantities (removed before release).
use penalfr_core::advect1d::{flow_error, max_stable_dt, solid_error, AdvectionConfig, AdvectionRun};
use penalfr_core::masking::{Eta, PenalizationParams};
use penalfr_core::sfd::SfdParams;

fn run(eta: Option<f64>, chi_f: f64, delta: f64, dt: f64) -> (f64, f64) {
    let mut cfg = AdvectionConfig {
        dt,
        ..Default::default()
    };
    cfg.pen = match eta {
        Some(e) => PenalizationParams::no_slip(Eta::Finite(e)).unwrap(),
        None => PenalizationParams::disabled(),
    };
    cfg.sfd = if chi_f > 0.0 {
        SfdParams::new(chi_f, delta).unwrap()
    } else {
        SfdParams::disabled()
    };
    let run = AdvectionRun::new(cfg.clone()).unwrap();
    let res = run.run().unwrap();
    let d = cfg.slab_width();
    (flow_error(&res.u, &res.x, d), solid_error(&res.u, &res.x, d))
}

fn main() {
    let t0 = std::time::Instant::now();
    println!("(a) eta-only:");
    for eta in [1e-3, 1e-4] {
        let (f, s) = run(Some(eta), 0.0, 1.0, 1e-5);
        println!("  eta={eta:.0e}: flow={f:.4e} solid={s:.4e}");
    }
    println!("(b) SFD-only vs eta-only at chi_f = 1/eta:");
    for m in [1e3, 1e4, 1e5] {
        let (fe, _) = run(Some(1.0 / m), 0.0, 1.0, 1e-5);
        let (fs, _) = run(None, m, 100.0, 1e-5);
        println!("  mag={m:.0e}: eta-only flow={fe:.4e}, sfd-only flow={fs:.4e}");
    }
    println!("(c) error vs Delta at chi_f=1e3, eta=1e-3:");
    let mut prev = f64::INFINITY;
    for d in [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0] {
        let (f, s) = run(Some(1e-3), 1e3, d, 1e-5);
        println!("  Delta={d:.0e}: flow={f:.6e} solid={s:.4e} (non-increasing: {})", f <= prev * 1.000001);
        prev = f;
    }
    println!("(d) combined 1e5 vs eta-only 1e-5:");
    let (fc, _) = run(Some(1e-5), 1e5, 100.0, 1e-5);
    let (fe, _) = run(Some(1e-5), 0.0, 1.0, 1e-5);
    println!("  combined={fc:.4e}, eta-only={fe:.4e}");
    println!("(6) power law flow error vs eta (sfd off, dt << eta):");
    let mut pts = Vec::new();
    for eta in [1e-2f64, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5] {
        let dt = (eta / 20.0).min(1e-5);
        let (f, _) = run(Some(eta), 0.0, 1.0, dt);
        println!("  eta={eta:.0e} dt={dt:.1e}: flow={f:.5e}");
        pts.push((eta.ln(), f.ln()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    println!("  fitted exponent = {slope:.4}");
    println!("(5) max stable dt at matched error:");
    let combined = AdvectionConfig {
        dt: 1e-5,
        pen: PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap(),
        sfd: SfdParams::new(1e3, 100.0).unwrap(),
        ..Default::default()
    };
    let dt_c = max_stable_dt(&combined).unwrap();
    println!("  combined eta=1e-3 chif=1e3: dt_max = {dt_c:.4e}");
    println!("elapsed {:.1}s", t0.elapsed().as_secs_f64());
}
