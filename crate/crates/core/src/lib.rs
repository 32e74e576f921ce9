//! High-order flux-reconstruction (FR) discretizations with immersed
//! boundaries imposed by volume penalization and selective frequency
//! damping (SFD).
//!
//! The crate is organized in layers:
//!
//! - [`fr1d`]: one-dimensional FR building blocks (Gauss-point nodal basis,
//!   correction-function gradients, per-element operator matrices).
//! - [`masking`]: binary mask functions for slab / circle / NACA0012
//!   geometries and the penalization source terms.
//! - [`sfd`]: the encapsulated SFD subsystem (exact 2x2-block propagator,
//!   velocity select/scatter, per-step wrapper).
//! - [`eigen`]: semi- and fully-discrete eigensolution analysis of the
//!   penalized/SFD advection discretization.
//! - [`advect1d`]: time-domain simulation of the penalized 1D advection
//!   problem with parameter sweeps.
//! - [`ns2d`]: 2D compressible Navier-Stokes FR solver on Cartesian grids
//!   with Strang-split penalization and SFD.
//! - [`config`], [`io`]: run configuration, CSV output and checkpointing.

pub mod advect1d;
pub mod config;
pub mod eigen;
pub mod error;
pub mod fr1d;
pub mod io;
pub mod masking;
pub mod ns2d;
pub mod sfd;

pub use error::{Error, Result};
