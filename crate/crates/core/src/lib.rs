//! Numerical analysis of the symmetrically decoupled map
//! `T(x, y, z) = (y, z, x² + b)`.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. File
//! formats, parallel sweeps and the command-line front end live in the
//! `sdmap` crate.
//!
//! * [`map`]: the map, its iterates, the 1D quadratic `H` and the Jacobian.
//! * [`cycles`]: periodic orbits of `H`, conjugate cycles and their lifts
//!   to homogeneous and mixed cycles of `T`.
//! * [`bifurcation`]: fold, flip and transcritical locators, multiplier
//!   continuation and bifurcation-diagram data.
//! * [`lyapunov`]: Lyapunov spectrum of `T` and exponent of `H`.
//! * [`critical`]: critical planes, zones `Z0`/`Z2` and inverse branches.
//! * [`basin`]: attractor catalogs and basin classification.

#![no_std]

extern crate alloc;

pub mod basin;
pub mod bifurcation;
pub mod critical;
pub mod cycles;
pub mod error;
pub mod linalg;
pub mod lyapunov;
pub mod map;
mod math;

pub use error::{Error, Result};
pub use linalg::Mat3;
pub use map::{apply_t, apply_t_n, h1d, jacobian_t, orbit, Axis, Params, Point3, ESCAPE_RADIUS};
