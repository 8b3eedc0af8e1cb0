//! The map `T(x, y, z) = (y, z, x² + b)`, its iterates and its Jacobian.
//!
//! `T³` acts coordinate-wise: `T³(x, y, z) = (H(x), H(y), H(z))` with the
//! one-dimensional quadratic `H(x) = x² + b`. With identity `f` and `g`
//! the conjugate maps `F` and `G` coincide with `H`, so [`h1d`] serves
//! all three.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat3;

/// Default escape radius in sup norm. For `b ∈ [−2, 1/4]` any 1D iterate
/// with `|x| > 2` grows monotonically.
pub const ESCAPE_RADIUS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub b: f64,
}

impl Params {
    pub fn new(b: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::NonFinite("parameter b"));
        }
        Ok(Params { b })
    }
}

/// One coordinate axis of state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub const fn splat(v: f64) -> Self {
        Point3 { x: v, y: v, z: v }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Point3 {
            x: a[0],
            y: a[1],
            z: a[2],
        }
    }

    pub fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn set_coord(&mut self, axis: Axis, value: f64) {
        match axis {
            Axis::X => self.x = value,
            Axis::Y => self.y = value,
            Axis::Z => self.z = value,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Sup norm.
    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Sup-norm distance.
    pub fn dist_inf(&self, other: &Point3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Lexicographic comparison on (x, y, z), treating NaN as equal.
    pub fn lex_cmp(&self, other: &Point3) -> core::cmp::Ordering {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    }
}

/// `H(x) = x² + b`.
#[inline]
pub fn h1d(x: f64, params: Params) -> f64 {
    x * x + params.b
}

/// `H^k(x)`.
pub fn h1d_n(mut x: f64, params: Params, k: usize) -> f64 {
    for _ in 0..k {
        x = h1d(x, params);
    }
    x
}

/// One application of `T`.
#[inline]
pub fn apply_t(p: Point3, params: Params) -> Result<Point3> {
    let q = Point3::new(p.y, p.z, p.x * p.x + params.b);
    if q.z.is_finite() {
        Ok(q)
    } else {
        Err(Error::Overflow)
    }
}

/// `T^n(p)` by plain composition.
pub fn apply_t_n(p: Point3, params: Params, n: usize) -> Result<Point3> {
    if !p.is_finite() {
        return Err(Error::NonFinite("point"));
    }
    let mut q = p;
    for _ in 0..n {
        q = apply_t(q, params)?;
    }
    Ok(q)
}

/// `T^n(p)` through `T^{3k} = (H^k, H^k, H^k)` followed by at most two
/// single steps. Agrees with [`apply_t_n`] to rounding.
pub fn apply_t_n_decoupled(p: Point3, params: Params, n: usize) -> Result<Point3> {
    if !p.is_finite() {
        return Err(Error::NonFinite("point"));
    }
    let k = n / 3;
    let q = Point3::new(
        h1d_n(p.x, params, k),
        h1d_n(p.y, params, k),
        h1d_n(p.z, params, k),
    );
    if !q.is_finite() {
        return Err(Error::Overflow);
    }
    apply_t_n(q, params, n % 3)
}

/// Jacobian of `T` at `p`; rows `(0,1,0)`, `(0,0,1)`, `(2x,0,0)`.
pub fn jacobian_t(p: Point3) -> Mat3 {
    Mat3::new([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [2.0 * p.x, 0.0, 0.0]])
}

/// Iterates `transient` unrecorded steps, then records `n` consecutive states
/// (the first recorded state is `T^{transient+1}(p0)`).
pub fn orbit(p0: Point3, params: Params, n: usize, transient: usize) -> Result<Vec<Point3>> {
    orbit_with_radius(p0, params, n, transient, ESCAPE_RADIUS)
}

pub fn orbit_with_radius(
    p0: Point3,
    params: Params,
    n: usize,
    transient: usize,
    escape_radius: f64,
) -> Result<Vec<Point3>> {
    if n == 0 {
        return Err(Error::InvalidArgument("orbit length must be positive"));
    }
    if !p0.is_finite() {
        return Err(Error::NonFinite("initial point"));
    }
    let mut out = Vec::with_capacity(n);
    let mut p = p0;
    for step in 1..=transient + n {
        p = step_bounded(p, params, escape_radius, step)?;
        if step > transient {
            out.push(p);
        }
    }
    Ok(out)
}

/// Applies `T` once and reports divergence at `step` if the image leaves the ball.
#[inline]
pub(crate) fn step_bounded(p: Point3, params: Params, radius: f64, step: usize) -> Result<Point3> {
    let q = Point3::new(p.y, p.z, p.x * p.x + params.b);
    // NaN fails the comparison, so a non-finite image is caught here too.
    if q.z.abs() <= radius && q.x.abs() <= radius && q.y.abs() <= radius {
        Ok(q)
    } else {
        Err(Error::Diverged { step })
    }
}
