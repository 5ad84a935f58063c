//! Meshless radial basis function toolkit.
//!
//! The crate collects the pieces needed for boundary-only RBF collocation
//! experiments on convection-diffusion problems:
//!
//! * [`geometry`] — knot placement on an elliptic boundary and symmetric 1D
//!   grids.
//! * [`specfun`] — the Bessel functions `J0` and `I0` and the 3D radial
//!   function `sin(r)/r`, implemented from scratch.
//! * [`distance`] — Euclidean, time-space, and variable-transform distance
//!   functions.
//! * [`kernels`] — the kernel catalogue: Helmholtz and convection-diffusion
//!   non-singular general solutions, time-space kernels, the transient
//!   diffusion fundamental solution, multiquadrics, thin-plate splines and
//!   their pre-wavelet/wavelet variants.
//! * [`linalg`] — dense LU solves plus centrosymmetric structure detection,
//!   half-size factorization, and the block preconditioner.
//! * [`bkm`] — the boundary knot method for the Burgers-like equation
//!   `∇²u = u_x·u`, linearized through response-knot-dependent kernels.

pub mod bkm;
pub mod distance;
pub mod geometry;
pub mod kernels;
pub mod linalg;
pub mod specfun;

pub use bkm::{BkmModel, BracketConfig};
pub use geometry::{Ellipse, KnotSet, Point2};
pub use kernels::{KernelSpec, ScalingMode, SpaceDim};
pub use linalg::{DenseMatrix, DenseVector};
