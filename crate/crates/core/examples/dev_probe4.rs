// Scratch: isentropic vortex convergence (removed before release).
use std::f64::consts::PI;
use penalfr_core::masking::PenalizationParams;
use penalfr_core::ns2d::*;
use penalfr_core::sfd::SfdParams;

fn vortex_state(x: f64, y: f64, cx: f64, cy: f64, beta: f64, gas: &GasModel) -> [f64; 4] {
    let g = gas.gamma;
    let r2 = (x - cx).powi(2) + (y - cy).powi(2);
    let f = beta / (2.0 * PI) * ((1.0 - r2) / 2.0).exp();
    let du = -(y - cy) * f;
    let dv = (x - cx) * f;
    // Force balance cp dT/dr = v_theta^2 / r with R = 1/(gamma M^2):
    // temperature deficit scales with (gamma-1) M^2 beta^2 / (8 pi^2).
    let dt_temp = -(g - 1.0) * gas.mach * gas.mach * beta * beta / (8.0 * PI * PI)
        * (1.0 - r2).exp();
    let t = 1.0 + dt_temp; // T_inf = 1 in these units
    let rho = t.powf(1.0 / (g - 1.0));
    let p = rho * gas.r_gas * t;
    let (u, v) = (1.0 + du, dv);
    [rho, rho * u, rho * v, p / (g - 1.0) + 0.5 * rho * (u * u + v * v)]
}

fn main() {
    let gas = GasModel::from_spec(&GasSpec { gamma: 1.4, prandtl: 0.72, mach: 0.5, reynolds: None }).unwrap();
    let beta = 1.0;
    for p in [2usize] {
        let mut errs = Vec::new();
        for n in [32usize, 64] {
            let mesh = MeshSpec {
                core: [0.0, 10.0, 0.0, 10.0],
                core_size: 10.0 / n as f64,
                domain: [0.0, 10.0, 0.0, 10.0],
                stretch_ratio_x: 1.2, stretch_ratio_y: 1.2,
                bc: MeshBc::Periodic,
            };
            let h = 10.0 / n as f64;
            let dt = 0.1 * h / (3.2 * (2.0 * p as f64 + 1.0));
            let steps = (10.0 / dt).round() as usize;
            let dt = 10.0 / steps as f64;
            let cfg = Ns2dConfig {
                order: p, dt, t_final: 10.0, scheme: TimeScheme::Lserk,
                gas: GasSpec { gamma: 1.4, prandtl: 0.72, mach: 0.5, reynolds: None },
                mesh, geometry: GeometrySpec::None,
                pen: PenalizationParams::disabled(), sfd: SfdParams::disabled(),
                output: OutputSpec::default(), initial: InitialSpec::default(),
            };
            let mut solver = Ns2dSolver::new(cfg).unwrap();
            let npts = solver.disc.basis.npts;
            for e in 0..solver.field.n_elements {
                for q in 0..npts {
                    let s = vortex_state(solver.xs[e*npts+q], solver.ys[e*npts+q], 5.0, 5.0, beta, &gas);
                    solver.field.set_state(e, q, s);
                }
            }
            let t0 = std::time::Instant::now();
            solver.run(None).unwrap();
            // One period: vortex returns to the center (periodic wrap).
            let mut err2 = 0.0;
            let mut cnt = 0;
            for e in 0..solver.field.n_elements {
                for q in 0..npts {
                    let exact = vortex_state(solver.xs[e*npts+q], solver.ys[e*npts+q], 5.0, 5.0, beta, &gas);
                    err2 += (solver.field.state(e, q)[0] - exact[0]).powi(2);
                    cnt += 1;
                }
            }
            errs.push((err2 / cnt as f64).sqrt());
            println!("  P={p} n={n}: err={:.4e} steps={steps} ({:.1}s)", errs.last().unwrap(), t0.elapsed().as_secs_f64());
        }
        println!("P={p}: order = {:.2}", (errs[0] / errs[1]).log2());
    }
}
