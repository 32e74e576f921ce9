// Scratch: pointwise dispersion-change profile (removed before release).
use penalfr_core::eigen::EigenSetup;
use penalfr_core::masking::{Eta, PenalizationParams};
use penalfr_core::sfd::SfdParams;

fn main() {
    let base = EigenSetup {
        n_elements: 40,
        order: 3,
        advection_speed: 1.0,
        upwind_lambda: 1.0,
        slab_elements: 1,
        pen: PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap(),
        sfd: SfdParams::disabled(),
        n_wavenumbers: 64,
        solid_mode_tol: 1e-8,
    };
    let eta_only = base.semi_discrete_sweep().unwrap();
    for &d in &[0.1, 1.0] {
        let mut s = base.clone();
        s.sfd = SfdParams::new(1e3, d).unwrap();
        let spec = s.semi_discrete_sweep().unwrap();
        println!("Delta={d}");
        for (i, &k) in spec.k_nondim.iter().enumerate() {
            if k > 1.05 {
                break;
            }
            let dm = spec.dispersion_nondim(spec.physical_mode[i]);
            let de = eta_only.dispersion_nondim(eta_only.physical_mode[i]);
            println!(
                "  k={k:.3}: disp {de:+.5} -> {dm:+.5}  rel {:+.4e}",
                (dm - de) / de.abs()
            );
        }
    }
}
