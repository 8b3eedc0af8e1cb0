//! Bracketing of the periodic points of `H` on a uniform grid.
//!
//! Roots of `g(x) = Hⁿ(x) − x` are bracketed cell by cell. Inside a cell
//! where `g′ = (Hⁿ)′ − 1` changes sign the extremum is located first, so a
//! pair of nearly coincident roots (a cycle pair just born in a fold) is
//! still split into two brackets.

use alloc::vec::Vec;

use crate::map::Params;

/// Beyond this magnitude an iterate can no longer return to `[−2.5, 2.5]`.
const RUNAWAY: f64 = 1e3;

/// `(Hⁿ(x) − x, (Hⁿ)′(x) − 1)`. Runaway orbits report `(+∞, NaN)`.
#[inline]
pub(crate) fn residual(x0: f64, params: Params, n: usize) -> (f64, f64) {
    let mut x = x0;
    let mut d = 1.0;
    for _ in 0..n {
        d *= 2.0 * x;
        x = x * x + params.b;
        if x.abs() > RUNAWAY {
            return (f64::INFINITY, f64::NAN);
        }
    }
    (x - x0, d - 1.0)
}

#[inline]
fn opposite(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)
}

/// Shrinks `[a, c]`, on which `f` changes sign, to adjacent floats.
fn bisect(mut a: f64, mut c: f64, mut fa: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + c);
        if mid <= a || mid >= c {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if opposite(fa, fm) {
            c = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    if fa.abs() <= f(c).abs() {
        a
    } else {
        c
    }
}

/// Bisection to machine resolution followed by Newton steps that are only
/// kept when they stay in the bracket and do not increase `|g|`.
fn refine(a: f64, c: f64, ga: f64, params: Params, n: usize) -> f64 {
    let mut x = bisect(a, c, ga, |t| residual(t, params, n).0);
    for _ in 0..3 {
        let (g, dg) = residual(x, params, n);
        if g == 0.0 || !dg.is_finite() || dg == 0.0 {
            break;
        }
        let next = x - g / dg;
        if !(a..=c).contains(&next) || residual(next, params, n).0.abs() > g.abs() {
            break;
        }
        x = next;
    }
    x
}

/// Sorted roots of `Hⁿ(x) = x` in `[lo, hi]` sampled at `samples` nodes.
pub(crate) fn periodic_roots(
    params: Params,
    n: usize,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Vec<f64> {
    let samples = samples.max(2);
    let node = |i: usize| lo + (hi - lo) * (i as f64) / ((samples - 1) as f64);
    let mut roots = Vec::new();

    let mut xa = node(0);
    let (mut ga, mut da) = residual(xa, params, n);
    if ga == 0.0 {
        roots.push(xa);
    }
    for i in 1..samples {
        let xc = node(i);
        let (gc, dc) = residual(xc, params, n);
        if gc == 0.0 {
            roots.push(xc);
        }
        if opposite(da, dc) {
            // Interior extremum at e: g is monotone on [xa, e] and [e, xc].
            let e = bisect(xa, xc, da, |t| residual(t, params, n).1);
            let ge = residual(e, params, n).0;
            if ge == 0.0 {
                roots.push(e);
            }
            if opposite(ga, ge) {
                roots.push(refine(xa, e, ga, params, n));
            }
            if opposite(ge, gc) {
                roots.push(refine(e, xc, ge, params, n));
            }
        } else if opposite(ga, gc) {
            roots.push(refine(xa, xc, ga, params, n));
        }
        xa = xc;
        ga = gc;
        da = dc;
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + b.abs()));
    roots
}

/// Points where `(Hⁿ)′(x) = 1` inside `[a, c]`, located by bisection on the
/// sign of `(Hⁿ)′ − 1` over `cells` sub-intervals.
pub(crate) fn unit_slope_points(
    params: Params,
    n: usize,
    a: f64,
    c: f64,
    cells: usize,
) -> Vec<f64> {
    let mut out = Vec::new();
    let node = |i: usize| a + (c - a) * (i as f64) / (cells as f64);
    let mut xa = node(0);
    let mut da = residual(xa, params, n).1;
    for i in 1..=cells {
        let xc = node(i);
        let dc = residual(xc, params, n).1;
        if da == 0.0 {
            out.push(xa);
        } else if opposite(da, dc) {
            out.push(bisect(xa, xc, da, |t| residual(t, params, n).1));
        }
        xa = xc;
        da = dc;
    }
    out
}
