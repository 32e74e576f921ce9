//! 2D compressible Navier-Stokes solver on Cartesian quadrilateral grids:
//! tensor-product FR discretization, Rusanov/LDG interface fluxes,
//! characteristic far-field boundaries, Strang-split volume penalization and
//! the SFD wrapper on in-solid velocities.

mod field;
mod flux;
mod forces;
mod gas;
mod kernel;
mod mesh;
mod probes;
mod rhs;
mod solver;
mod stepper;

pub use field::{solution_point_coords, FieldRef, FlowField, NV};
pub use flux::{farfield_state, inviscid_flux, rusanov_flux, viscous_flux, wave_speed};
pub use forces::{compute_forces, strouhal, ForceCoefficients};
pub use gas::{GasModel, GasSpec};
pub use kernel::{Basis2d, Workspace};
pub use mesh::{CartesianMesh, MeshBc, MeshSpec};
pub use probes::Probe;
pub use rhs::{Discretization, Gradients};
pub use solver::{GeometrySpec, InitialSpec, Ns2dConfig, Ns2dSolver, OutputSpec, RunHistory};
pub use stepper::{lserk_step, rk3_step, step, StepBuffers, TimeScheme};
