//! Tensor-product FR kernel data and the shared face-trace operation.

use crate::fr1d::{CorrectionGradients, NodalBasis};

use super::field::{FieldRef, NV};
use super::mesh::CartesianMesh;

/// Face indices of a quadrilateral element.
pub const W: usize = 0;
pub const E: usize = 1;
pub const S: usize = 2;
pub const N: usize = 3;

/// Flattened 1D basis data reused along each tensor direction.
#[derive(Debug, Clone)]
pub struct Basis2d {
    pub order: usize,
    pub np1: usize,
    pub npts: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Row-major derivative matrix `D[i*np1 + j] = l_j'(r_i)`.
    pub diff: Vec<f64>,
    /// `l_j(-1)` and `l_j(+1)`.
    pub l_lo: Vec<f64>,
    pub l_hi: Vec<f64>,
    /// Left/right correction gradients at the nodes.
    pub gl: Vec<f64>,
    pub gh: Vec<f64>,
}

impl Basis2d {
    pub fn new(order: usize) -> Self {
        let basis = NodalBasis::new(order);
        let corr = CorrectionGradients::new(&basis);
        let np1 = order + 1;
        let mut diff = vec![0.0; np1 * np1];
        for i in 0..np1 {
            for j in 0..np1 {
                diff[i * np1 + j] = basis.diff_matrix[(i, j)];
            }
        }
        Self {
            order,
            np1,
            npts: np1 * np1,
            nodes: basis.nodes.clone(),
            weights: basis.weights.clone(),
            diff,
            l_lo: basis.boundary_interp_left,
            l_hi: basis.boundary_interp_right,
            gl: corr.g_left,
            gh: corr.g_right,
        }
    }
}

/// Scratch arrays reused across time steps. Element-major blocks are written
/// concurrently by disjoint element chunks; face-major blocks by disjoint
/// face chunks.
#[derive(Debug)]
pub struct Workspace {
    /// `[element][face][var][q]` solution traces.
    pub face_u: Vec<f64>,
    /// `[element][face][var][q]` total directional flux traces.
    pub face_ft: Vec<f64>,
    /// `[element][face][var][q]` viscous flux traces.
    pub face_fv: Vec<f64>,
    /// `[vertical face][var][q]` common solution values.
    pub comm_v: Vec<f64>,
    /// `[horizontal face][var][q]`.
    pub comm_h: Vec<f64>,
    /// `[vertical face][var][q]` interaction fluxes.
    pub fint_v: Vec<f64>,
    /// `[horizontal face][var][q]`.
    pub fint_h: Vec<f64>,
}

impl Workspace {
    pub fn new(mesh: &CartesianMesh, np1: usize) -> Self {
        let nelem = mesh.nx * mesh.ny;
        let n_vf = (mesh.nx + 1) * mesh.ny;
        let n_hf = mesh.nx * (mesh.ny + 1);
        Self {
            face_u: vec![0.0; nelem * 4 * NV * np1],
            face_ft: vec![0.0; nelem * 4 * NV * np1],
            face_fv: vec![0.0; nelem * 4 * NV * np1],
            comm_v: vec![0.0; n_vf * NV * np1],
            comm_h: vec![0.0; n_hf * NV * np1],
            fint_v: vec![0.0; n_vf * NV * np1],
            fint_h: vec![0.0; n_hf * NV * np1],
        }
    }
}

#[inline]
pub fn face_block(e: usize, face: usize, np1: usize) -> usize {
    (e * 4 + face) * NV * np1
}

#[inline]
pub fn vface_id(i: usize, j: usize, nx: usize) -> usize {
    j * (nx + 1) + i
}

#[inline]
pub fn hface_id(i: usize, j: usize, nx: usize) -> usize {
    j * nx + i
}

/// Interpolate all variables of one element to its four faces.
///
/// Face points are indexed by the transverse node: `q = jj` on W/E faces and
/// `q = ii` on S/N faces.
pub fn element_face_traces(basis: &Basis2d, field: FieldRef, e: usize, out: &mut [f64]) {
    let np1 = basis.np1;
    for v in 0..NV {
        let u = field.var(e, v);
        for q in 0..np1 {
            let (mut w, mut ee, mut s, mut n) = (0.0, 0.0, 0.0, 0.0);
            for m in 0..np1 {
                // W/E faces: fix jj = q, sum over ii = m.
                w += basis.l_lo[m] * u[q * np1 + m];
                ee += basis.l_hi[m] * u[q * np1 + m];
                // S/N faces: fix ii = q, sum over jj = m.
                s += basis.l_lo[m] * u[m * np1 + q];
                n += basis.l_hi[m] * u[m * np1 + q];
            }
            out[(W * NV + v) * np1 + q] = w;
            out[(E * NV + v) * np1 + q] = ee;
            out[(S * NV + v) * np1 + q] = s;
            out[(N * NV + v) * np1 + q] = n;
        }
    }
}
