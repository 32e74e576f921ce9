// Scratch driver used during development; removed from the final tree.
use penalfr_core::eigen::{critical_parameter_search, EigenSetup, Scheme};
use penalfr_core::masking::PenalizationParams;
use penalfr_core::sfd::SfdParams;

fn base() -> EigenSetup {
    EigenSetup {
        n_elements: 40,
        order: 3,
        advection_speed: 1.0,
        upwind_lambda: 1.0,
        slab_elements: 1,
        pen: PenalizationParams::disabled(),
        sfd: SfdParams::disabled(),
        n_wavenumbers: 3,
        solid_mode_tol: 1e-8,
    }
}

fn main() {
    let t0 = std::time::Instant::now();
    for dt in [1e-3, 1e-4, 1e-5] {
        for (scheme, delta) in [(Scheme::Single, 100.0), (Scheme::Combined, 100.0)] {
            match critical_parameter_search(&base(), dt, scheme, delta) {
                Ok(r) => println!(
                    "dt={dt:>7.0e} {scheme:?} delta={delta}: eta_c = {:.6e}, ratio = {:.4} ({} steps)",
                    r.eta_critical, r.ratio, r.bisection_steps
                ),
                Err(e) => println!("dt={dt:>7.0e} {scheme:?}: ERROR {e}"),
            }
        }
    }
    // Fig. 6 variant: combined with Delta = 1e-3 at dt = 1e-3.
    match critical_parameter_search(&base(), 1e-3, Scheme::Combined, 1e-3) {
        Ok(r) => println!(
            "dt=1e-3 Combined delta=1e-3: eta_c = {:.6e}, ratio = {:.4}",
            r.eta_critical, r.ratio
        ),
        Err(e) => println!("combined small-delta: ERROR {e}"),
    }
    println!("elapsed: {:.1}s", t0.elapsed().as_secs_f64());
}
