//! Lyapunov spectrum of `T` and the exponent of `H`.
//!
//! The tangent frame is advanced by the Jacobian and re-orthonormalised by
//! modified Gram–Schmidt. Exponents are growth rates per application of
//! `T`. Since `T³ = (H, H, H)`, an orbit whose three coordinates each
//! follow the same attractor of `H` has all three exponents equal to a third
//! of the exponent of `H`.

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, Mat3};
use crate::map::{jacobian_t, step_bounded, Params, Point3, ESCAPE_RADIUS};
use crate::math;

/// `|r|` is floored here before taking logs; the Jacobian is singular on `x = 0`.
pub const LOG_FLOOR: f64 = 1e-300;
pub const DEFAULT_TRANSIENT: usize = 10_000;
pub const DEFAULT_ITERS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovOptions {
    /// Steps between re-orthonormalisations.
    pub reorth_every: usize,
    pub escape_radius: f64,
}

impl Default for LyapunovOptions {
    fn default() -> Self {
        LyapunovOptions {
            reorth_every: 1,
            escape_radius: ESCAPE_RADIUS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovResult {
    /// Per-step exponents, descending.
    pub exponents: [f64; 3],
    pub n_used: usize,
    pub transient: usize,
    pub p0: Point3,
}

pub fn lyapunov_spectrum(
    p0: Point3,
    params: Params,
    n_iter: usize,
    transient: usize,
) -> Result<LyapunovResult> {
    lyapunov_spectrum_with(p0, params, n_iter, transient, LyapunovOptions::default())
}

pub fn lyapunov_spectrum_with(
    p0: Point3,
    params: Params,
    n_iter: usize,
    transient: usize,
    opts: LyapunovOptions,
) -> Result<LyapunovResult> {
    if n_iter == 0 {
        return Err(Error::InvalidArgument("n_iter must be positive"));
    }
    if opts.reorth_every == 0 {
        return Err(Error::InvalidArgument("reorth_every must be positive"));
    }
    if !p0.is_finite() {
        return Err(Error::NonFinite("initial point"));
    }
    let mut p = p0;
    for step in 1..=transient {
        p = step_bounded(p, params, opts.escape_radius, step)?;
    }
    let mut q = Mat3::identity();
    let mut sums = [0.0f64; 3];
    for k in 1..=n_iter {
        q = jacobian_t(p) * q;
        p = step_bounded(p, params, opts.escape_radius, transient + k)?;
        if k % opts.reorth_every == 0 || k == n_iter {
            let r = orthonormalize(&mut q);
            for (s, rj) in sums.iter_mut().zip(r) {
                *s += math::ln(rj.abs().max(LOG_FLOOR));
            }
        }
    }
    let mut exponents = sums.map(|s| s / n_iter as f64);
    exponents.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    Ok(LyapunovResult {
        exponents,
        n_used: n_iter,
        transient,
        p0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lyapunov1D {
    pub exponent: f64,
    /// The orbit passed through the critical point `x = 0`, where the log
    /// argument was floored.
    pub superstable: bool,
}

/// Average of `ln|2x_k|` along `n_iter` points of the `H`-orbit of `x0`
/// recorded after `transient` steps.
pub fn lyapunov_1d(x0: f64, params: Params, n_iter: usize, transient: usize) -> Result<Lyapunov1D> {
    if n_iter == 0 {
        return Err(Error::InvalidArgument("n_iter must be positive"));
    }
    if !x0.is_finite() {
        return Err(Error::NonFinite("initial point"));
    }
    let mut x = x0;
    let advance = |x: f64, step: usize| {
        let y = x * x + params.b;
        if y.abs() <= ESCAPE_RADIUS {
            Ok(y)
        } else {
            Err(Error::Diverged { step })
        }
    };
    for step in 1..=transient {
        x = advance(x, step)?;
    }
    let mut sum = 0.0;
    let mut superstable = false;
    for k in 0..n_iter {
        let d = (2.0 * x).abs();
        if d < LOG_FLOOR {
            superstable = true;
        }
        sum += math::ln(d.max(LOG_FLOOR));
        x = advance(x, transient + k + 1)?;
    }
    Ok(Lyapunov1D {
        exponent: sum / n_iter as f64,
        superstable,
    })
}
