//! Conserved-variable storage on tensor-product solution points.

use super::kernel::Basis2d;
use super::mesh::CartesianMesh;

pub const NV: usize = 4;

/// Conserved variables `(rho, rho u, rho v, E)` for every solution point of
/// every element, stored `[element][variable][point]` with points ordered
/// `jj * (P+1) + ii` (x index fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    pub data: Vec<f64>,
    pub n_elements: usize,
    pub npts: usize,
}

impl FlowField {
    pub fn new(n_elements: usize, npts: usize) -> Self {
        Self {
            data: vec![0.0; n_elements * NV * npts],
            n_elements,
            npts,
        }
    }

    #[inline]
    pub fn var(&self, e: usize, v: usize) -> &[f64] {
        let base = (e * NV + v) * self.npts;
        &self.data[base..base + self.npts]
    }

    #[inline]
    pub fn var_mut(&mut self, e: usize, v: usize) -> &mut [f64] {
        let base = (e * NV + v) * self.npts;
        &mut self.data[base..base + self.npts]
    }

    #[inline]
    pub fn state(&self, e: usize, p: usize) -> [f64; NV] {
        let base = e * NV * self.npts;
        [
            self.data[base + p],
            self.data[base + self.npts + p],
            self.data[base + 2 * self.npts + p],
            self.data[base + 3 * self.npts + p],
        ]
    }

    #[inline]
    pub fn set_state(&mut self, e: usize, p: usize, s: [f64; NV]) {
        let base = e * NV * self.npts;
        self.data[base + p] = s[0];
        self.data[base + self.npts + p] = s[1];
        self.data[base + 2 * self.npts + p] = s[2];
        self.data[base + 3 * self.npts + p] = s[3];
    }

    /// Fill every point with one state.
    pub fn fill_uniform(&mut self, s: [f64; NV]) {
        for e in 0..self.n_elements {
            for v in 0..NV {
                self.var_mut(e, v).fill(s[v]);
            }
        }
    }
}

/// Borrowed view with the same layout as [`FlowField`]; lets the RHS read
/// states handed over as flat slices by the time steppers.
#[derive(Clone, Copy)]
pub struct FieldRef<'a> {
    pub data: &'a [f64],
    pub npts: usize,
}

impl<'a> FieldRef<'a> {
    pub fn new(data: &'a [f64], npts: usize) -> Self {
        debug_assert_eq!(data.len() % (NV * npts), 0);
        Self { data, npts }
    }

    pub fn from_field(f: &'a FlowField) -> Self {
        Self {
            data: &f.data,
            npts: f.npts,
        }
    }

    pub fn n_elements(&self) -> usize {
        self.data.len() / (NV * self.npts)
    }

    #[inline]
    pub fn var(&self, e: usize, v: usize) -> &[f64] {
        let base = (e * NV + v) * self.npts;
        &self.data[base..base + self.npts]
    }

    #[inline]
    pub fn state(&self, e: usize, p: usize) -> [f64; NV] {
        let base = e * NV * self.npts;
        [
            self.data[base + p],
            self.data[base + self.npts + p],
            self.data[base + 2 * self.npts + p],
            self.data[base + 3 * self.npts + p],
        ]
    }
}

/// Physical coordinates of all solution points, `[element][point]`.
pub fn solution_point_coords(mesh: &CartesianMesh, basis: &Basis2d) -> (Vec<f64>, Vec<f64>) {
    let np1 = basis.np1;
    let npts = np1 * np1;
    let nelem = mesh.n_elements();
    let mut xs = vec![0.0; nelem * npts];
    let mut ys = vec![0.0; nelem * npts];
    for j in 0..mesh.ny {
        let yc = 0.5 * (mesh.y_edges[j] + mesh.y_edges[j + 1]);
        let hy = 0.5 * mesh.dy(j);
        for i in 0..mesh.nx {
            let xc = 0.5 * (mesh.x_edges[i] + mesh.x_edges[i + 1]);
            let hx = 0.5 * mesh.dx(i);
            let e = j * mesh.nx + i;
            for jj in 0..np1 {
                for ii in 0..np1 {
                    let p = jj * np1 + ii;
                    xs[e * npts + p] = xc + hx * basis.nodes[ii];
                    ys[e * npts + p] = yc + hy * basis.nodes[jj];
                }
            }
        }
    }
    (xs, ys)
}
