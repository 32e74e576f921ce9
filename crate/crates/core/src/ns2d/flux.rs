//! Physical fluxes, the Rusanov interface flux and the characteristic
//! far-field state.

use super::field::NV;
use super::gas::GasModel;
use crate::error::{Error, Result};

/// Inviscid flux vectors in both directions.
#[inline]
pub fn inviscid_flux(u: &[f64; NV], gas: &GasModel) -> ([f64; NV], [f64; NV]) {
    let rho = u[0];
    let vx = u[1] / rho;
    let vy = u[2] / rho;
    let p = gas.pressure(u);
    (
        [u[1], u[1] * vx + p, u[2] * vx, vx * (u[3] + p)],
        [u[2], u[1] * vy, u[2] * vy + p, vy * (u[3] + p)],
    )
}

/// Viscous contribution to the flux vectors (already signed so that the
/// total flux is `F_inv + F_vsc`), from the state and its conserved-variable
/// gradients.
#[inline]
pub fn viscous_flux(
    u: &[f64; NV],
    qx: &[f64; NV],
    qy: &[f64; NV],
    gas: &GasModel,
) -> ([f64; NV], [f64; NV]) {
    if !gas.is_viscous() {
        return ([0.0; NV], [0.0; NV]);
    }
    let rho = u[0];
    let vx = u[1] / rho;
    let vy = u[2] / rho;
    // Velocity gradients from conserved gradients.
    let ux = (qx[1] - vx * qx[0]) / rho;
    let uy = (qy[1] - vx * qy[0]) / rho;
    let vx_x = (qx[2] - vy * qx[0]) / rho;
    let vy_y = (qy[2] - vy * qy[0]) / rho;
    let div = ux + vy_y;
    let txx = gas.mu * (2.0 * ux - 2.0 / 3.0 * div);
    let tyy = gas.mu * (2.0 * vy_y - 2.0 / 3.0 * div);
    let txy = gas.mu * (uy + vx_x);
    // Temperature gradient: T = (gamma-1)/R * (E/rho - |v|^2/2).
    let c = (gas.gamma - 1.0) / gas.r_gas;
    let e_over_rho_x = (qx[3] - (u[3] / rho) * qx[0]) / rho;
    let e_over_rho_y = (qy[3] - (u[3] / rho) * qy[0]) / rho;
    let tx = c * (e_over_rho_x - (vx * ux + vy * vx_x));
    let ty = c * (e_over_rho_y - (vx * uy + vy * vy_y));
    (
        [
            0.0,
            -txx,
            -txy,
            -(vx * txx + vy * txy + gas.k_thermal * tx),
        ],
        [
            0.0,
            -txy,
            -tyy,
            -(vx * txy + vy * tyy + gas.k_thermal * ty),
        ],
    )
}

fn admissible(u: &[f64; NV], gas: &GasModel) -> bool {
    u[0] > 0.0 && gas.pressure(u) > 0.0
}

/// Rusanov (local Lax-Friedrichs) interface flux for an arbitrary unit
/// normal: `1/2 (F(U_L) + F(U_R)) . n - 1/2 s_max (U_R - U_L)` with
/// `s_max = max(|u_n| + a)` over both states.
pub fn rusanov_flux(
    u_l: &[f64; NV],
    u_r: &[f64; NV],
    normal: [f64; 2],
    gas: &GasModel,
) -> Result<[f64; NV]> {
    if !admissible(u_l, gas) || !admissible(u_r, gas) {
        return Err(Error::InadmissibleState(
            "non-positive density or pressure at an interface".into(),
        ));
    }
    let (fxl, fyl) = inviscid_flux(u_l, gas);
    let (fxr, fyr) = inviscid_flux(u_r, gas);
    let s = wave_speed(u_l, normal, gas).max(wave_speed(u_r, normal, gas));
    let mut out = [0.0; NV];
    for v in 0..NV {
        let fl = fxl[v] * normal[0] + fyl[v] * normal[1];
        let fr = fxr[v] * normal[0] + fyr[v] * normal[1];
        out[v] = 0.5 * (fl + fr) - 0.5 * s * (u_r[v] - u_l[v]);
    }
    Ok(out)
}

#[inline]
pub fn wave_speed(u: &[f64; NV], normal: [f64; 2], gas: &GasModel) -> f64 {
    let un = (u[1] * normal[0] + u[2] * normal[1]) / u[0];
    un.abs() + gas.sound_speed(u)
}

/// Characteristic far-field state from one-dimensional Riemann invariants
/// normal to the boundary. `normal` is the outward unit normal; the returned
/// state is used for both the common solution value and the boundary
/// interaction flux.
pub fn farfield_state(
    interior: &[f64; NV],
    free_stream: &[f64; NV],
    normal: [f64; 2],
    gas: &GasModel,
) -> [f64; NV] {
    let g = gas.gamma;
    let prim = |u: &[f64; NV]| {
        let rho = u[0];
        let vx = u[1] / rho;
        let vy = u[2] / rho;
        let p = gas.pressure(u);
        (rho, vx, vy, p)
    };
    let (rho_i, vx_i, vy_i, p_i) = prim(interior);
    let (rho_o, vx_o, vy_o, p_o) = prim(free_stream);
    let a_i = (g * p_i / rho_i).sqrt();
    let a_o = (g * p_o / rho_o).sqrt();
    let un_i = vx_i * normal[0] + vy_i * normal[1];
    let un_o = vx_o * normal[0] + vy_o * normal[1];

    if un_i.abs() >= a_i {
        // Supersonic: one-sided.
        return if un_i > 0.0 { *interior } else { *free_stream };
    }
    let r_plus = un_i + 2.0 * a_i / (g - 1.0); // outgoing invariant
    let r_minus = un_o - 2.0 * a_o / (g - 1.0); // incoming invariant
    let un_b = 0.5 * (r_plus + r_minus);
    let a_b = 0.25 * (g - 1.0) * (r_plus - r_minus);
    // Entropy and tangential velocity from the upwind side.
    let (s_up, vt_x, vt_y) = if un_b > 0.0 {
        (
            p_i / rho_i.powf(g),
            vx_i - un_i * normal[0],
            vy_i - un_i * normal[1],
        )
    } else {
        (
            p_o / rho_o.powf(g),
            vx_o - un_o * normal[0],
            vy_o - un_o * normal[1],
        )
    };
    let rho_b = (a_b * a_b / (g * s_up)).powf(1.0 / (g - 1.0));
    let p_b = rho_b * a_b * a_b / g;
    let vx_b = vt_x + un_b * normal[0];
    let vy_b = vt_y + un_b * normal[1];
    [
        rho_b,
        rho_b * vx_b,
        rho_b * vy_b,
        p_b / (g - 1.0) + 0.5 * rho_b * (vx_b * vx_b + vy_b * vy_b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns2d::gas::GasSpec;
    use approx::assert_abs_diff_eq;

    fn gas() -> GasModel {
        GasModel::from_spec(&GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.5,
            reynolds: Some(5000.0),
        })
        .unwrap()
    }

    #[test]
    fn rusanov_consistency() {
        // Equal states: the exact physical normal flux.
        let gas = gas();
        let u = [1.1, 0.4, -0.2, 3.0];
        for normal in [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]] {
            let f = rusanov_flux(&u, &u, normal, &gas).unwrap();
            let (fx, fy) = inviscid_flux(&u, &gas);
            for v in 0..NV {
                let expect = fx[v] * normal[0] + fy[v] * normal[1];
                assert_abs_diff_eq!(f[v], expect, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn rusanov_antisymmetry_under_swap() {
        // Swapping the states and flipping the normal negates the flux:
        // conservation across the interface.
        let gas = gas();
        let u_l = [1.0, 0.9, 0.1, 3.2];
        let u_r = [0.8, -0.5, 0.3, 2.4];
        let n = [0.6, 0.8];
        let f = rusanov_flux(&u_l, &u_r, n, &gas).unwrap();
        let f_swapped = rusanov_flux(&u_r, &u_l, [-n[0], -n[1]], &gas).unwrap();
        for v in 0..NV {
            assert_abs_diff_eq!(f[v], -f_swapped[v], epsilon = 1e-12);
        }
    }

    /// Independent evaluation of the Rusanov formula for one state pair.
    #[test]
    fn rusanov_matches_direct_formula() {
        let gas = gas();
        let u_l = [1.0, 0.3, 0.0, 2.5];
        let u_r = [0.9, 0.5, -0.1, 2.2];
        let f = rusanov_flux(&u_l, &u_r, [1.0, 0.0], &gas).unwrap();

        // Direct evaluation from primitive quantities.
        let p_l = 0.4 * (2.5 - 0.5 * (0.3f64.powi(2)) / 1.0);
        let p_r = 0.4 * (2.2 - 0.5 * (0.5f64.powi(2) + 0.1f64.powi(2)) / 0.9);
        let a_l = (1.4 * p_l / 1.0).sqrt();
        let a_r = (1.4 * p_r / 0.9).sqrt();
        let s = ((0.3f64 / 1.0).abs() + a_l).max((0.5f64 / 0.9).abs() + a_r);
        let fx_l = [0.3, 0.3 * 0.3 / 1.0 + p_l, 0.0, 0.3 / 1.0 * (2.5 + p_l)];
        let fx_r = [
            0.5,
            0.5 * 0.5 / 0.9 + p_r,
            -0.1 * 0.5 / 0.9,
            0.5 / 0.9 * (2.2 + p_r),
        ];
        for v in 0..NV {
            let expect = 0.5 * (fx_l[v] + fx_r[v]) - 0.5 * s * (u_r[v] - u_l[v]);
            assert_abs_diff_eq!(f[v], expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn rusanov_rejects_inadmissible_states() {
        let gas = gas();
        let ok = [1.0, 0.0, 0.0, 2.0];
        let vacuum = [-0.1, 0.0, 0.0, 2.0];
        assert!(rusanov_flux(&ok, &vacuum, [1.0, 0.0], &gas).is_err());
    }

    #[test]
    fn viscous_flux_vanishes_without_viscosity() {
        let inviscid = GasModel::from_spec(&GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 0.5,
            reynolds: None,
        })
        .unwrap();
        let u = [1.0, 0.5, 0.2, 3.0];
        let q = [0.3, -0.4, 0.1, 0.9];
        let (fx, fy) = viscous_flux(&u, &q, &q, &inviscid);
        assert_eq!(fx, [0.0; NV]);
        assert_eq!(fy, [0.0; NV]);
    }

    /// Pure shear flow u(y): the only nonzero stress is txy = mu du/dy and
    /// the energy flux row is -u txy - k dT/dy.
    #[test]
    fn viscous_flux_matches_hand_shear_evaluation() {
        let gas = gas();
        let (rho, vx, du_dy) = (1.0, 0.3, 2.0);
        let p = 1.0 / (1.4 * 0.25); // free-stream pressure at M = 0.5
        let e = p / 0.4 + 0.5 * rho * vx * vx;
        let u = [rho, rho * vx, 0.0, e];
        // Gradients: only d(rho u)/dy nonzero (rho constant).
        let qx = [0.0; NV];
        let qy = [0.0, rho * du_dy, 0.0, 0.0];
        let (fx, fy) = viscous_flux(&u, &qx, &qy, &gas);
        let txy = gas.mu * du_dy;
        assert_abs_diff_eq!(fx[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fx[2], -txy, epsilon = 1e-15);
        assert_abs_diff_eq!(fy[1], -txy, epsilon = 1e-15);
        // dT/dy from E alone: T = (gamma-1)/R (E/rho - |v|^2/2);
        // here d(E/rho)/dy = 0 and velocity gradient term -vx * du/dy.
        let c = 0.4 / gas.r_gas;
        let ty = c * (0.0 - vx * du_dy);
        assert_abs_diff_eq!(fy[3], -(vx * txy + gas.k_thermal * ty), epsilon = 1e-13);
    }

    #[test]
    fn farfield_recovers_free_stream_when_interior_matches() {
        let gas = gas();
        let inf = gas.free_stream();
        for normal in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
            let b = farfield_state(&inf, &inf, normal, &gas);
            for v in 0..NV {
                assert_abs_diff_eq!(b[v], inf[v], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn farfield_is_supersonic_passthrough() {
        let spec = GasSpec {
            gamma: 1.4,
            prandtl: 0.72,
            mach: 2.0,
            reynolds: None,
        };
        let gas = GasModel::from_spec(&spec).unwrap();
        let inf = gas.free_stream();
        let mut interior = inf;
        interior[0] = 1.1;
        interior[1] = 1.2;
        // Supersonic outflow at the +x boundary takes the interior state.
        let b = farfield_state(&interior, &inf, [1.0, 0.0], &gas);
        assert_eq!(b, interior);
        // Supersonic inflow at the -x boundary takes the free stream.
        let b = farfield_state(&interior, &inf, [-1.0, 0.0], &gas);
        assert_eq!(b, inf);
    }
}
