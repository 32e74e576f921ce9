//! The FR right-hand side: gradients, fluxes, interface resolution and the
//! corrected divergence on Cartesian tensor-product elements.
//!
//! Interface conventions: common solution values (gradient stage) are taken
//! from the minus side (west/south neighbour); common viscous fluxes from
//! the plus side (east/north) with zero penalty, the pure alternating LDG
//! choice. Interaction fluxes on vertical faces are stored as x-direction
//! fluxes, on horizontal faces as y-direction fluxes. Far-field boundaries
//! use the characteristic state of [`super::flux::farfield_state`] inside
//! both the common-value and interaction-flux computations.

use rayon::prelude::*;

use super::field::{FieldRef, FlowField, NV};
use super::flux::{farfield_state, inviscid_flux, rusanov_flux, viscous_flux};
use super::gas::GasModel;
use super::kernel::{
    element_face_traces, face_block, hface_id, vface_id, Basis2d, Workspace, E, N, S, W,
};
use super::mesh::{CartesianMesh, MeshBc};
use crate::error::{Error, Result};

/// Corrected conserved-variable gradients, `[element][var][point]`.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub npts: usize,
}

/// Immutable discretization data shared by the RHS stages.
pub struct Discretization {
    pub mesh: CartesianMesh,
    pub basis: Basis2d,
    pub gas: GasModel,
    pub free_stream: [f64; NV],
}

struct Scratch {
    qx: Vec<f64>,
    qy: Vec<f64>,
    visc_x: Vec<f64>,
    visc_y: Vec<f64>,
}

impl Scratch {
    fn new(npts: usize) -> Self {
        Self {
            qx: vec![0.0; NV * npts],
            qy: vec![0.0; NV * npts],
            visc_x: vec![0.0; NV * npts],
            visc_y: vec![0.0; NV * npts],
        }
    }
}

impl Discretization {
    pub fn new(mesh: CartesianMesh, basis: Basis2d, gas: GasModel) -> Self {
        let free_stream = gas.free_stream();
        Self {
            mesh,
            basis,
            gas,
            free_stream,
        }
    }

    #[inline]
    fn elem(&self, i: usize, j: usize) -> usize {
        j * self.mesh.nx + i
    }

    /// Neighbour element across a vertical face column `i` (0..=nx);
    /// `None` marks a far-field boundary.
    #[inline]
    fn vface_left(&self, i: usize, j: usize) -> Option<usize> {
        if i > 0 {
            Some(self.elem(i - 1, j))
        } else if self.mesh.bc == MeshBc::Periodic {
            Some(self.elem(self.mesh.nx - 1, j))
        } else {
            None
        }
    }

    #[inline]
    fn vface_right(&self, i: usize, j: usize) -> Option<usize> {
        if i < self.mesh.nx {
            Some(self.elem(i, j))
        } else if self.mesh.bc == MeshBc::Periodic {
            Some(self.elem(0, j))
        } else {
            None
        }
    }

    #[inline]
    fn hface_down(&self, i: usize, j: usize) -> Option<usize> {
        if j > 0 {
            Some(self.elem(i, j - 1))
        } else if self.mesh.bc == MeshBc::Periodic {
            Some(self.elem(i, self.mesh.ny - 1))
        } else {
            None
        }
    }

    #[inline]
    fn hface_up(&self, i: usize, j: usize) -> Option<usize> {
        if j < self.mesh.ny {
            Some(self.elem(i, j))
        } else if self.mesh.bc == MeshBc::Periodic {
            Some(self.elem(i, 0))
        } else {
            None
        }
    }

    fn trace_state(&self, face_u: &[f64], e: usize, face: usize, q: usize) -> [f64; NV] {
        let np1 = self.basis.np1;
        let b = face_block(e, face, np1);
        [
            face_u[b + q],
            face_u[b + np1 + q],
            face_u[b + 2 * np1 + q],
            face_u[b + 3 * np1 + q],
        ]
    }

    /// Stage 1: interpolate the solution to all element faces.
    fn stage_traces(&self, field: FieldRef, ws: &mut Workspace) {
        let basis = &self.basis;
        let len = 4 * NV * basis.np1;
        ws.face_u
            .par_chunks_mut(len)
            .enumerate()
            .for_each(|(e, chunk)| element_face_traces(basis, field, e, chunk));
    }

    /// Stage 2: common solution values at every face (minus side, or the
    /// characteristic state at far-field boundaries).
    fn stage_common_solution(&self, ws: &mut Workspace) {
        let np1 = self.basis.np1;
        let nx = self.mesh.nx;
        let ny = self.mesh.ny;
        let face_u = &ws.face_u;

        ws.comm_v
            .par_chunks_mut(NV * np1)
            .enumerate()
            .for_each(|(vf, out)| {
                let (i, j) = (vf % (nx + 1), vf / (nx + 1));
                let left = self.vface_left(i, j);
                let right = self.vface_right(i, j);
                for q in 0..np1 {
                    let state = match (left, right) {
                        (Some(le), _) => self.trace_state(face_u, le, E, q),
                        (None, Some(re)) => {
                            let interior = self.trace_state(face_u, re, W, q);
                            farfield_state(&interior, &self.free_stream, [-1.0, 0.0], &self.gas)
                        }
                        (None, None) => unreachable!(),
                    };
                    for v in 0..NV {
                        out[v * np1 + q] = state[v];
                    }
                }
            });

        ws.comm_h
            .par_chunks_mut(NV * np1)
            .enumerate()
            .for_each(|(hf, out)| {
                let (i, j) = (hf % nx, hf / nx);
                let down = self.hface_down(i, j);
                let up = self.hface_up(i, j);
                for q in 0..np1 {
                    let state = match (down, up) {
                        (Some(de), _) => self.trace_state(face_u, de, N, q),
                        (None, Some(ue)) => {
                            let interior = self.trace_state(face_u, ue, S, q);
                            farfield_state(&interior, &self.free_stream, [0.0, -1.0], &self.gas)
                        }
                        (None, None) => unreachable!(),
                    };
                    for v in 0..NV {
                        out[v * np1 + q] = state[v];
                    }
                }
            });
        let _ = ny;
    }

    /// Corrected reference-space gradients of one element, scaled to
    /// physical space. `out_qx`/`out_qy` are `[var][point]` slices.
    #[allow(clippy::too_many_arguments)]
    fn element_gradient(
        &self,
        field: FieldRef,
        face_u: &[f64],
        comm_v: &[f64],
        comm_h: &[f64],
        e: usize,
        out_qx: &mut [f64],
        out_qy: &mut [f64],
    ) {
        let np1 = self.basis.np1;
        let npts = self.basis.npts;
        let (i, j) = (e % self.mesh.nx, e / self.mesh.nx);
        let sx = 2.0 / self.mesh.dx(i);
        let sy = 2.0 / self.mesh.dy(j);
        let vf_w = vface_id(i, j, self.mesh.nx) * NV * np1;
        let vf_e = vface_id(i + 1, j, self.mesh.nx) * NV * np1;
        let hf_s = hface_id(i, j, self.mesh.nx) * NV * np1;
        let hf_n = hface_id(i, j + 1, self.mesh.nx) * NV * np1;
        let fb = face_block(e, 0, np1);

        for v in 0..NV {
            let u = field.var(e, v);
            let uw = &face_u[fb + (W * NV + v) * np1..];
            let ue = &face_u[fb + (E * NV + v) * np1..];
            let us = &face_u[fb + (S * NV + v) * np1..];
            let un = &face_u[fb + (N * NV + v) * np1..];
            let cw = &comm_v[vf_w + v * np1..];
            let ce = &comm_v[vf_e + v * np1..];
            let cs = &comm_h[hf_s + v * np1..];
            let cn = &comm_h[hf_n + v * np1..];
            for jj in 0..np1 {
                for ii in 0..np1 {
                    let p = jj * np1 + ii;
                    let mut dxi = 0.0;
                    let mut deta = 0.0;
                    for m in 0..np1 {
                        dxi += self.basis.diff[ii * np1 + m] * u[jj * np1 + m];
                        deta += self.basis.diff[jj * np1 + m] * u[m * np1 + ii];
                    }
                    dxi += self.basis.gl[ii] * (cw[jj] - uw[jj])
                        + self.basis.gh[ii] * (ce[jj] - ue[jj]);
                    deta += self.basis.gl[jj] * (cs[ii] - us[ii])
                        + self.basis.gh[jj] * (cn[ii] - un[ii]);
                    out_qx[v * npts + p] = sx * dxi;
                    out_qy[v * npts + p] = sy * deta;
                }
            }
        }
    }

    /// Stages 3-4 for one element: gradients, point fluxes and directional
    /// flux traces on the faces.
    fn element_flux(
        &self,
        field: FieldRef,
        ws_face_u: &[f64],
        comm_v: &[f64],
        comm_h: &[f64],
        e: usize,
        scratch: &mut Scratch,
        flux_pts: &mut [f64],
        face_ft: &mut [f64],
        face_fv: &mut [f64],
    ) {
        let np1 = self.basis.np1;
        let npts = self.basis.npts;
        let viscous = self.gas.is_viscous();
        if viscous {
            self.element_gradient(
                field,
                ws_face_u,
                comm_v,
                comm_h,
                e,
                &mut scratch.qx,
                &mut scratch.qy,
            );
        }

        // Total and viscous fluxes at the solution points:
        // flux_pts is [dir][var][pt]; fv accumulates into face traces below.
        let mut fv_x = [0.0; NV];
        let mut fv_y = [0.0; NV];
        let (visc_x, visc_y) = (&mut scratch.visc_x, &mut scratch.visc_y);
        for p in 0..npts {
            let u = field.state(e, p);
            let (fx, fy) = inviscid_flux(&u, &self.gas);
            if viscous {
                let qx = [
                    scratch.qx[p],
                    scratch.qx[npts + p],
                    scratch.qx[2 * npts + p],
                    scratch.qx[3 * npts + p],
                ];
                let qy = [
                    scratch.qy[p],
                    scratch.qy[npts + p],
                    scratch.qy[2 * npts + p],
                    scratch.qy[3 * npts + p],
                ];
                let (vx, vy) = viscous_flux(&u, &qx, &qy, &self.gas);
                fv_x = vx;
                fv_y = vy;
            }
            for v in 0..NV {
                let vx = if viscous { fv_x[v] } else { 0.0 };
                let vy = if viscous { fv_y[v] } else { 0.0 };
                flux_pts[v * npts + p] = fx[v] + vx;
                flux_pts[(NV + v) * npts + p] = fy[v] + vy;
                visc_x[v * npts + p] = vx;
                visc_y[v * npts + p] = vy;
            }
        }

        // Directional flux traces: x-flux on W/E faces, y-flux on S/N.
        for v in 0..NV {
            for q in 0..np1 {
                let (mut w, mut ee, mut s, mut n) = (0.0, 0.0, 0.0, 0.0);
                let (mut wv, mut ev, mut sv, mut nv) = (0.0, 0.0, 0.0, 0.0);
                for m in 0..np1 {
                    let fx = flux_pts[v * npts + q * np1 + m];
                    let fy = flux_pts[(NV + v) * npts + m * np1 + q];
                    w += self.basis.l_lo[m] * fx;
                    ee += self.basis.l_hi[m] * fx;
                    s += self.basis.l_lo[m] * fy;
                    n += self.basis.l_hi[m] * fy;
                    wv += self.basis.l_lo[m] * visc_x[v * npts + q * np1 + m];
                    ev += self.basis.l_hi[m] * visc_x[v * npts + q * np1 + m];
                    sv += self.basis.l_lo[m] * visc_y[v * npts + m * np1 + q];
                    nv += self.basis.l_hi[m] * visc_y[v * npts + m * np1 + q];
                }
                face_ft[(W * NV + v) * np1 + q] = w;
                face_ft[(E * NV + v) * np1 + q] = ee;
                face_ft[(S * NV + v) * np1 + q] = s;
                face_ft[(N * NV + v) * np1 + q] = n;
                face_fv[(W * NV + v) * np1 + q] = wv;
                face_fv[(E * NV + v) * np1 + q] = ev;
                face_fv[(S * NV + v) * np1 + q] = sv;
                face_fv[(N * NV + v) * np1 + q] = nv;
            }
        }
    }

    /// Stage 5: interaction fluxes on every face (Rusanov for the inviscid
    /// part, plus-side viscous trace for the LDG part).
    fn stage_interface_flux(&self, ws: &mut Workspace) -> Result<()> {
        let np1 = self.basis.np1;
        let nx = self.mesh.nx;
        let face_u = &ws.face_u;
        let face_fv = &ws.face_fv;

        let v_results: Result<Vec<()>> = ws
            .fint_v
            .par_chunks_mut(NV * np1)
            .enumerate()
            .map(|(vf, out)| {
                let (i, j) = (vf % (nx + 1), vf / (nx + 1));
                let left = self.vface_left(i, j);
                let right = self.vface_right(i, j);
                for q in 0..np1 {
                    let (u_l, u_r) = match (left, right) {
                        (Some(le), Some(re)) => (
                            self.trace_state(face_u, le, E, q),
                            self.trace_state(face_u, re, W, q),
                        ),
                        (None, Some(re)) => {
                            let interior = self.trace_state(face_u, re, W, q);
                            let ghost = farfield_state(
                                &interior,
                                &self.free_stream,
                                [-1.0, 0.0],
                                &self.gas,
                            );
                            (ghost, interior)
                        }
                        (Some(le), None) => {
                            let interior = self.trace_state(face_u, le, E, q);
                            let ghost = farfield_state(
                                &interior,
                                &self.free_stream,
                                [1.0, 0.0],
                                &self.gas,
                            );
                            (interior, ghost)
                        }
                        (None, None) => unreachable!(),
                    };
                    let mut f = rusanov_flux(&u_l, &u_r, [1.0, 0.0], &self.gas)?;
                    if self.gas.is_viscous() {
                        // Plus side = east element's west trace; boundaries
                        // fall back to the interior side.
                        let (fe, fface) = match (right, left) {
                            (Some(re), _) => (re, W),
                            (None, Some(le)) => (le, E),
                            _ => unreachable!(),
                        };
                        let b = face_block(fe, fface, np1);
                        for v in 0..NV {
                            f[v] += face_fv[b + v * np1 + q];
                        }
                    }
                    for v in 0..NV {
                        out[v * np1 + q] = f[v];
                    }
                }
                Ok(())
            })
            .collect();
        v_results?;

        let h_results: Result<Vec<()>> = ws
            .fint_h
            .par_chunks_mut(NV * np1)
            .enumerate()
            .map(|(hf, out)| {
                let (i, j) = (hf % nx, hf / nx);
                let down = self.hface_down(i, j);
                let up = self.hface_up(i, j);
                for q in 0..np1 {
                    let (u_l, u_r) = match (down, up) {
                        (Some(de), Some(ue)) => (
                            self.trace_state(face_u, de, N, q),
                            self.trace_state(face_u, ue, S, q),
                        ),
                        (None, Some(ue)) => {
                            let interior = self.trace_state(face_u, ue, S, q);
                            let ghost = farfield_state(
                                &interior,
                                &self.free_stream,
                                [0.0, -1.0],
                                &self.gas,
                            );
                            (ghost, interior)
                        }
                        (Some(de), None) => {
                            let interior = self.trace_state(face_u, de, N, q);
                            let ghost = farfield_state(
                                &interior,
                                &self.free_stream,
                                [0.0, 1.0],
                                &self.gas,
                            );
                            (interior, ghost)
                        }
                        (None, None) => unreachable!(),
                    };
                    let mut f = rusanov_flux(&u_l, &u_r, [0.0, 1.0], &self.gas)?;
                    if self.gas.is_viscous() {
                        let (fe, fface) = match (up, down) {
                            (Some(ue), _) => (ue, S),
                            (None, Some(de)) => (de, N),
                            _ => unreachable!(),
                        };
                        let b = face_block(fe, fface, np1);
                        for v in 0..NV {
                            f[v] += face_fv[b + v * np1 + q];
                        }
                    }
                    for v in 0..NV {
                        out[v * np1 + q] = f[v];
                    }
                }
                Ok(())
            })
            .collect();
        h_results?;
        Ok(())
    }

    /// Stages 6-7: corrected divergence, written as `dU/dt = -div F`.
    fn stage_divergence(&self, ws: &Workspace, flux_pts: &[f64], out: &mut [f64]) {
        let np1 = self.basis.np1;
        let npts = self.basis.npts;
        let nx = self.mesh.nx;
        let flux_len = 2 * NV * npts;

        out.par_chunks_mut(NV * npts)
            .enumerate()
            .for_each(|(e, du)| {
                let (i, j) = (e % nx, e / nx);
                let sx = 2.0 / self.mesh.dx(i);
                let sy = 2.0 / self.mesh.dy(j);
                let fp = &flux_pts[e * flux_len..(e + 1) * flux_len];
                let fb = face_block(e, 0, np1);
                let vf_w = vface_id(i, j, nx) * NV * np1;
                let vf_e = vface_id(i + 1, j, nx) * NV * np1;
                let hf_s = hface_id(i, j, nx) * NV * np1;
                let hf_n = hface_id(i, j + 1, nx) * NV * np1;
                for v in 0..NV {
                    let fx = &fp[v * npts..(v + 1) * npts];
                    let fy = &fp[(NV + v) * npts..(NV + v + 1) * npts];
                    let tw = &ws.face_ft[fb + (W * NV + v) * np1..];
                    let te = &ws.face_ft[fb + (E * NV + v) * np1..];
                    let ts = &ws.face_ft[fb + (S * NV + v) * np1..];
                    let tn = &ws.face_ft[fb + (N * NV + v) * np1..];
                    let iw = &ws.fint_v[vf_w + v * np1..];
                    let ie = &ws.fint_v[vf_e + v * np1..];
                    let is = &ws.fint_h[hf_s + v * np1..];
                    let in_ = &ws.fint_h[hf_n + v * np1..];
                    for jj in 0..np1 {
                        for ii in 0..np1 {
                            let p = jj * np1 + ii;
                            let mut dxi = 0.0;
                            let mut deta = 0.0;
                            for m in 0..np1 {
                                dxi += self.basis.diff[ii * np1 + m] * fx[jj * np1 + m];
                                deta += self.basis.diff[jj * np1 + m] * fy[m * np1 + ii];
                            }
                            dxi += self.basis.gl[ii] * (iw[jj] - tw[jj])
                                + self.basis.gh[ii] * (ie[jj] - te[jj]);
                            deta += self.basis.gl[jj] * (is[ii] - ts[ii])
                                + self.basis.gh[jj] * (in_[ii] - tn[ii]);
                            du[v * npts + p] = -(sx * dxi + sy * deta);
                        }
                    }
                }
            });
    }

    /// Admissibility scan; reports the first offending location.
    pub fn check_positivity(&self, field: FieldRef) -> Result<()> {
        for e in 0..field.n_elements() {
            for p in 0..field.npts {
                let u = field.state(e, p);
                if !(u[0] > 0.0) || !(self.gas.pressure(&u) > 0.0) {
                    let (i, j) = (e % self.mesh.nx, e / self.mesh.nx);
                    return Err(Error::InadmissibleState(format!(
                        "non-positive density/pressure at element ({i}, {j}), point {p}: rho = {}, p = {}",
                        u[0],
                        self.gas.pressure(&u)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full FR right-hand side `dU/dt = -div F(U, grad U)` (no source
    /// terms; penalization enters through the splitting).
    pub fn rhs(
        &self,
        state: &[f64],
        ws: &mut Workspace,
        flux_pts: &mut Vec<f64>,
        out: &mut [f64],
    ) -> Result<()> {
        let npts = self.basis.npts;
        let field = FieldRef::new(state, npts);
        let nelem = field.n_elements();
        flux_pts.resize(nelem * 2 * NV * npts, 0.0);

        self.stage_traces(field, ws);
        if self.gas.is_viscous() {
            self.stage_common_solution(ws);
        }

        // Per-element gradients + fluxes + flux traces.
        {
            let face_u = std::mem::take(&mut ws.face_u);
            let comm_v = std::mem::take(&mut ws.comm_v);
            let comm_h = std::mem::take(&mut ws.comm_h);
            let flux_len = 2 * NV * npts;
            let trace_len = 4 * NV * self.basis.np1;
            flux_pts
                .par_chunks_mut(flux_len)
                .zip(ws.face_ft.par_chunks_mut(trace_len))
                .zip(ws.face_fv.par_chunks_mut(trace_len))
                .enumerate()
                .for_each_init(
                    || Scratch::new(npts),
                    |scratch, (e, ((fp, ft), fv))| {
                        self.element_flux(field, &face_u, &comm_v, &comm_h, e, scratch, fp, ft, fv);
                    },
                );
            ws.face_u = face_u;
            ws.comm_v = comm_v;
            ws.comm_h = comm_h;
        }

        self.stage_interface_flux(ws)?;
        self.stage_divergence(ws, flux_pts, out);
        Ok(())
    }

    /// Public gradient operation: corrected conserved-variable gradients of
    /// the whole field (stages 1-3 of the FR procedure).
    pub fn fr_gradient(&self, flow: &FlowField, ws: &mut Workspace) -> Gradients {
        let npts = self.basis.npts;
        let field = FieldRef::from_field(flow);
        let nelem = field.n_elements();
        self.stage_traces(field, ws);
        self.stage_common_solution(ws);
        let mut qx = vec![0.0; nelem * NV * npts];
        let mut qy = vec![0.0; nelem * NV * npts];
        let face_u = &ws.face_u;
        let comm_v = &ws.comm_v;
        let comm_h = &ws.comm_h;
        qx.par_chunks_mut(NV * npts)
            .zip(qy.par_chunks_mut(NV * npts))
            .enumerate()
            .for_each(|(e, (gx, gy))| {
                self.element_gradient(field, face_u, comm_v, comm_h, e, gx, gy);
            });
        Gradients { x: qx, y: qy, npts }
    }
}
