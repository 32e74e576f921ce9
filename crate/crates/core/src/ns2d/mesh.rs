//! Cartesian tensor-product meshes: a uniform core with geometric
//! stretching to the far field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeshBc {
    FarField,
    Periodic,
}

impl Default for MeshBc {
    fn default() -> Self {
        MeshBc::FarField
    }
}

/// Mesh parameters as they appear in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSpec {
    /// Uniform core region `[x0, x1, y0, y1]`.
    pub core: [f64; 4],
    /// Element size inside the core.
    pub core_size: f64,
    /// Full domain `[x0, x1, y0, y1]`.
    pub domain: [f64; 4],
    #[serde(default = "d_ratio")]
    pub stretch_ratio_x: f64,
    #[serde(default = "d_ratio")]
    pub stretch_ratio_y: f64,
    #[serde(default)]
    pub bc: MeshBc,
}

fn d_ratio() -> f64 {
    1.2
}

impl MeshSpec {
    pub fn domain_contains_core(&self) -> Result<()> {
        let [cx0, cx1, cy0, cy1] = self.core;
        let [dx0, dx1, dy0, dy1] = self.domain;
        if cx0 >= cx1 || cy0 >= cy1 || dx0 >= dx1 || dy0 >= dy1 {
            return Err(Error::Config("mesh extents must be increasing".into()));
        }
        if cx0 < dx0 || cx1 > dx1 || cy0 < dy0 || cy1 > dy1 {
            return Err(Error::Config("mesh core must lie inside the domain".into()));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<CartesianMesh> {
        self.domain_contains_core()?;
        if self.core_size <= 0.0 {
            return Err(Error::Config("mesh.core_size must be positive".into()));
        }
        if self.stretch_ratio_x <= 1.0 || self.stretch_ratio_y <= 1.0 {
            return Err(Error::Config("stretch ratios must exceed 1".into()));
        }
        let x_edges = direction_edges(
            self.core[0],
            self.core[1],
            self.domain[0],
            self.domain[1],
            self.core_size,
            self.stretch_ratio_x,
        );
        let y_edges = direction_edges(
            self.core[2],
            self.core[3],
            self.domain[2],
            self.domain[3],
            self.core_size,
            self.stretch_ratio_y,
        );
        CartesianMesh::from_edges(x_edges, y_edges, self.bc)
    }
}

/// Edge coordinates in one direction: uniform cells across the core,
/// geometrically growing cells outward. The outermost stretched block is
/// rescaled so the domain boundary is hit exactly.
fn direction_edges(c0: f64, c1: f64, d0: f64, d1: f64, size: f64, ratio: f64) -> Vec<f64> {
    let n_core = (((c1 - c0) / size).round() as usize).max(1);
    let h_core = (c1 - c0) / n_core as f64;

    let mut widths: Vec<f64> = Vec::new();
    // Left stretched block, built outward then reversed.
    let left = stretched_block(c0 - d0, h_core, ratio);
    widths.extend(left.iter().rev());
    widths.extend(std::iter::repeat(h_core).take(n_core));
    widths.extend(stretched_block(d1 - c1, h_core, ratio));

    let mut edges = Vec::with_capacity(widths.len() + 1);
    let mut x = d0;
    edges.push(x);
    for w in widths {
        x += w;
        edges.push(x);
    }
    // Pin the endpoints exactly.
    *edges.last_mut().unwrap() = d1;
    edges
}

/// Cell widths covering a gap of length `gap`, starting from `h0 * ratio`
/// and growing geometrically, scaled at the end to fill the gap exactly.
fn stretched_block(gap: f64, h0: f64, ratio: f64) -> Vec<f64> {
    if gap <= h0 * 1e-12 {
        return Vec::new();
    }
    let mut widths = Vec::new();
    let mut h = h0;
    let mut total = 0.0;
    while total < gap {
        h *= ratio;
        widths.push(h);
        total += h;
    }
    let scale = gap / total;
    for w in &mut widths {
        *w *= scale;
    }
    widths
}

/// Conforming Cartesian mesh of `nx * ny` quadrilateral elements.
#[derive(Debug, Clone)]
pub struct CartesianMesh {
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    pub nx: usize,
    pub ny: usize,
    pub bc: MeshBc,
}

impl CartesianMesh {
    pub fn from_edges(x_edges: Vec<f64>, y_edges: Vec<f64>, bc: MeshBc) -> Result<Self> {
        if x_edges.len() < 2 || y_edges.len() < 2 {
            return Err(Error::Config("mesh needs at least one element".into()));
        }
        for e in [&x_edges, &y_edges] {
            for w in e.windows(2) {
                if w[1] <= w[0] {
                    return Err(Error::Config("mesh edges must be strictly increasing".into()));
                }
            }
        }
        Ok(Self {
            nx: x_edges.len() - 1,
            ny: y_edges.len() - 1,
            x_edges,
            y_edges,
            bc,
        })
    }

    /// Uniform `nx * ny` mesh over a rectangle.
    pub fn uniform(domain: [f64; 4], nx: usize, ny: usize, bc: MeshBc) -> Result<Self> {
        let x_edges = (0..=nx)
            .map(|i| domain[0] + (domain[1] - domain[0]) * i as f64 / nx as f64)
            .collect();
        let y_edges = (0..=ny)
            .map(|j| domain[2] + (domain[3] - domain[2]) * j as f64 / ny as f64)
            .collect();
        Self::from_edges(x_edges, y_edges, bc)
    }

    pub fn n_elements(&self) -> usize {
        self.nx * self.ny
    }

    pub fn dx(&self, i: usize) -> f64 {
        self.x_edges[i + 1] - self.x_edges[i]
    }

    pub fn dy(&self, j: usize) -> f64 {
        self.y_edges[j + 1] - self.y_edges[j]
    }

    /// Discretization hash for checkpoint verification.
    pub fn hash(&self, order: usize) -> u64 {
        let mut bytes = Vec::with_capacity(8 * (self.x_edges.len() + self.y_edges.len()) + 8);
        bytes.extend_from_slice(&(order as u64).to_le_bytes());
        for v in self.x_edges.iter().chain(&self.y_edges) {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        crate::io::checkpoint_hash(&bytes)
    }
}
