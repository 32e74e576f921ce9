//! Velocity probes at solution points.

use super::field::FlowField;
use super::kernel::Basis2d;
use super::mesh::CartesianMesh;
use crate::error::{Error, Result};

/// A probe snapped to the nearest solution point (no interpolation).
#[derive(Debug, Clone, Copy)]
pub struct Probe {
    pub requested: (f64, f64),
    pub snapped: (f64, f64),
    pub element: usize,
    pub point: usize,
}

impl Probe {
    /// Locate the solution point nearest to `(x, y)`. Errors if the request
    /// lies outside the domain.
    pub fn locate(
        x: f64,
        y: f64,
        mesh: &CartesianMesh,
        basis: &Basis2d,
        xs: &[f64],
        ys: &[f64],
    ) -> Result<Self> {
        if x < mesh.x_edges[0]
            || x > *mesh.x_edges.last().unwrap()
            || y < mesh.y_edges[0]
            || y > *mesh.y_edges.last().unwrap()
        {
            return Err(Error::InvalidParam(format!(
                "probe ({x}, {y}) lies outside the domain"
            )));
        }
        // Element containing the point, then its nearest solution point.
        let i = mesh
            .x_edges
            .partition_point(|&e| e <= x)
            .saturating_sub(1)
            .min(mesh.nx - 1);
        let j = mesh
            .y_edges
            .partition_point(|&e| e <= y)
            .saturating_sub(1)
            .min(mesh.ny - 1);
        let e = j * mesh.nx + i;
        let npts = basis.npts;
        let mut best = (0usize, f64::INFINITY);
        for p in 0..npts {
            let dx = xs[e * npts + p] - x;
            let dy = ys[e * npts + p] - y;
            let d2 = dx * dx + dy * dy;
            if d2 < best.1 {
                best = (p, d2);
            }
        }
        Ok(Self {
            requested: (x, y),
            snapped: (xs[e * npts + best.0], ys[e * npts + best.0]),
            element: e,
            point: best.0,
        })
    }

    /// Velocity components at the probe point.
    pub fn sample(&self, field: &FlowField) -> (f64, f64) {
        let u = field.state(self.element, self.point);
        (u[1] / u[0], u[2] / u[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns2d::field::solution_point_coords;
    use crate::ns2d::mesh::MeshBc;

    #[test]
    fn free_stream_probe_reads_free_stream() {
        let mesh = CartesianMesh::uniform([0.0, 1.0, 0.0, 1.0], 4, 4, MeshBc::FarField).unwrap();
        let basis = Basis2d::new(2);
        let (xs, ys) = solution_point_coords(&mesh, &basis);
        let mut field = FlowField::new(mesh.n_elements(), basis.npts);
        field.fill_uniform([1.0, 0.7, 0.0, 2.0]);
        let probe = Probe::locate(0.51, 0.52, &mesh, &basis, &xs, &ys).unwrap();
        let (u, v) = probe.sample(&field);
        assert_eq!((u, v), (0.7, 0.0));
        // Snapped coordinates are a real solution point near the request.
        assert!((probe.snapped.0 - 0.51).abs() < 0.13);
        assert!((probe.snapped.1 - 0.52).abs() < 0.13);
    }

    #[test]
    fn outside_domain_is_rejected() {
        let mesh = CartesianMesh::uniform([0.0, 1.0, 0.0, 1.0], 4, 4, MeshBc::FarField).unwrap();
        let basis = Basis2d::new(1);
        let (xs, ys) = solution_point_coords(&mesh, &basis);
        assert!(Probe::locate(1.5, 0.5, &mesh, &basis, &xs, &ys).is_err());
    }
}
