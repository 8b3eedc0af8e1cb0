//! Periodic orbits of `H`, their conjugates, and their lifts to cycles of `T`.
//!
//! A cycle `X = {x_i}` of `H` has conjugate cycles `Y = g(h(X))` of `F` and
//! `Z = h(X)` of `G`. For this map `f` and `g` are identities and
//! `h(x) = x² + b`, so `y_i = z_i = x_{i+1}`.
//!
//! Cycles of `T` whose coordinates all come from one conjugate family are
//! *homogeneous*; the others are *mixed*. The lift operations build seed
//! points from index formulas and then validate every seed by iterating `T`:
//! a seed that does not close with the expected period is dropped and
//! reported, never trusted.

mod lift;
pub(crate) mod roots;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::{h1d, Params};
use crate::math;

pub use lift::{
    census, classify_stability, fixed_points_t, lift_homogeneous, lift_homogeneous_3n,
    lift_mixed_pair, lift_mixed_triple, Census, Cycle3D, CycleKind, DroppedSeed, Lift, Provenance,
    Stability,
};

/// Default search interval; every bounded orbit of `H` lies in `[−2, 2]` for `b ≥ −2`.
pub const DEFAULT_INTERVAL: (f64, f64) = (-2.5, 2.5);
/// Grid nodes used to bracket `Hⁿ(x) − x`.
pub const GRID_SAMPLES: usize = 20_001;
/// A root is not of minimal period `n` if `|H^d(x) − x|` is below this for a proper divisor `d`.
pub const DIVISOR_TOL: f64 = 1e-8;
/// Cycles with points this close to another cycle's points are flagged degenerate.
pub const COLLISION_TOL: f64 = 1e-7;
/// Two orbits are the same when their sorted points agree to this tolerance.
pub const DEDUP_TOL: f64 = 1e-9;
/// Tolerance on `|λ| = 1` for the nonhyperbolic tag.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;

/// Identifies a 1D cycle by its period and smallest point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleId {
    pub period: usize,
    pub anchor: f64,
}

/// A periodic orbit of `H`.
///
/// `points` follow the orbit, `points[i + 1] = H(points[i])`. Cycles returned
/// by [`find_cycles_1d`] and [`fixed_points_1d`] start at their smallest
/// point; the `y`/`z` members of a [`ConjugateTriple`] are instead aligned
/// index-by-index with `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle1D {
    pub period: usize,
    pub points: Vec<f64>,
    /// `Π 2x_i`, multiplied in ascending order of the points so that
    /// conjugate cycles get bit-identical values.
    pub multiplier: f64,
    /// Set when another cycle found at the same `b` has a point within
    /// [`COLLISION_TOL`] of this one (a fold pair about to merge).
    pub degenerate: bool,
    pub params: Params,
}

impl Cycle1D {
    /// Builds the cycle through `x0` by iterating `H`, without validation.
    pub fn from_seed(x0: f64, period: usize, params: Params) -> Self {
        let mut points = Vec::with_capacity(period);
        let mut x = x0;
        for _ in 0..period {
            points.push(x);
            x = h1d(x, params);
        }
        Self::from_points(points, params).canonical()
    }

    pub(crate) fn from_points(points: Vec<f64>, params: Params) -> Self {
        let period = points.len();
        Cycle1D {
            period,
            multiplier: multiplier_of(&points),
            points,
            degenerate: false,
            params,
        }
    }

    /// `x_i` with 1-based, cyclic indexing.
    pub fn point(&self, i: isize) -> f64 {
        let n = self.period as isize;
        self.points[(i - 1).rem_euclid(n) as usize]
    }

    pub fn id(&self) -> CycleId {
        CycleId {
            period: self.period,
            anchor: self.min_point(),
        }
    }

    fn min_point(&self) -> f64 {
        self.points.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// The same orbit rotated so that its smallest point comes first.
    pub fn canonical(mut self) -> Self {
        if let Some(k) = self
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(core::cmp::Ordering::Equal))
            .map(|(k, _)| k)
        {
            self.points.rotate_left(k);
        }
        self
    }

    /// Largest closure residual `|H(x_i) − x_{i+1}|`.
    pub fn closure_residual(&self) -> f64 {
        (0..self.period)
            .map(|i| (h1d(self.points[i], self.params) - self.points[(i + 1) % self.period]).abs())
            .fold(0.0, f64::max)
    }

    /// Whether the two cycles are the same orbit (as point sets).
    pub fn same_orbit(&self, other: &Cycle1D, tol: f64) -> bool {
        self.period == other.period && {
            let a = sorted(&self.points);
            let b = sorted(&other.points);
            a.iter().zip(&b).all(|(u, v)| (u - v).abs() <= tol)
        }
    }

    /// Whether any point of `self` lies within `tol` of a point of `other`.
    pub fn touches(&self, other: &Cycle1D, tol: f64) -> bool {
        self.points
            .iter()
            .any(|u| other.points.iter().any(|v| (u - v).abs() <= tol))
    }

    pub fn stability(&self) -> Stability {
        stability_of(&[self.multiplier])
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    s
}

fn multiplier_of(points: &[f64]) -> f64 {
    sorted(points).iter().map(|x| 2.0 * x).product()
}

pub(crate) fn stability_of(eigenvalues: &[f64]) -> Stability {
    if eigenvalues
        .iter()
        .any(|l| (l.abs() - 1.0).abs() <= UNIT_MODULUS_TOL)
    {
        Stability::Nonhyperbolic
    } else if eigenvalues.iter().all(|l| l.abs() < 1.0) {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

/// The conjugate cycles of `F` and `G` attached to a cycle of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateTriple {
    pub x: Cycle1D,
    /// `y_i = g(h(x_i))`.
    pub y: Cycle1D,
    /// `z_i = h(x_i)`.
    pub z: Cycle1D,
}

/// Forms the conjugate triple of `x`. With identity `f` and `g` both
/// conjugates are `x` shifted one step along the orbit; the stored shifted
/// points are used rather than re-evaluating `h`.
pub fn conjugate_of(x: &Cycle1D) -> ConjugateTriple {
    let mut shifted = x.points.clone();
    shifted.rotate_left(1 % x.period.max(1));
    let mut y = Cycle1D::from_points(shifted.clone(), x.params);
    y.degenerate = x.degenerate;
    let mut z = Cycle1D::from_points(shifted, x.params);
    z.degenerate = x.degenerate;
    ConjugateTriple { x: x.clone(), y, z }
}

/// The two fixed points of `H` in closed form, `x_{1,2} = 1/2 ± √(1 − 4b)/2`,
/// returned as `[x1, x2]`.
pub fn fixed_points_1d(params: Params) -> Result<[Cycle1D; 2]> {
    let disc = 1.0 - 4.0 * params.b;
    if disc < 0.0 {
        return Err(Error::NoRealFixedPoints { b: params.b });
    }
    let r = 0.5 * math::sqrt(disc);
    let mut x1 = Cycle1D::from_points(alloc::vec![0.5 + r], params);
    let mut x2 = Cycle1D::from_points(alloc::vec![0.5 - r], params);
    if 2.0 * r <= COLLISION_TOL {
        x1.degenerate = true;
        x2.degenerate = true;
    }
    Ok([x1, x2])
}

/// All cycles of `H` with minimal period `n` inside `interval`.
///
/// `Hⁿ(x) − x` is sampled on [`GRID_SAMPLES`] nodes, sign changes are
/// bracketed and refined, roots are grouped into orbits and orbits whose
/// minimal period is a proper divisor of `n` are discarded.
pub fn find_cycles_1d(params: Params, n: usize, interval: (f64, f64)) -> Result<Vec<Cycle1D>> {
    find_cycles_1d_with(params, n, interval, GRID_SAMPLES)
}

pub fn find_cycles_1d_with(
    params: Params,
    n: usize,
    interval: (f64, f64),
    samples: usize,
) -> Result<Vec<Cycle1D>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive"));
    }
    let (lo, hi) = interval;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument("interval must satisfy lo < hi"));
    }
    let roots = roots::periodic_roots(params, n, lo, hi, samples);
    Ok(group_into_cycles(&roots, params, n))
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |d| n % d == 0)
}

fn nearest(sorted_roots: &[f64], x: f64) -> Option<usize> {
    if sorted_roots.is_empty() {
        return None;
    }
    let i = sorted_roots.partition_point(|r| *r < x);
    let mut best = None;
    for j in [i.wrapping_sub(1), i] {
        if j < sorted_roots.len() {
            let d = (sorted_roots[j] - x).abs();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
    }
    best.map(|(j, _)| j)
}

fn group_into_cycles(roots: &[f64], params: Params, n: usize) -> Vec<Cycle1D> {
    const SNAP_TOL: f64 = 1e-6;
    let mut used = alloc::vec![false; roots.len()];
    let mut cycles: Vec<Cycle1D> = Vec::new();
    for start in 0..roots.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let r = roots[start];
        if proper_divisors(n).any(|d| (crate::map::h1d_n(r, params, d) - r).abs() < DIVISOR_TOL) {
            continue;
        }
        let mut points = Vec::with_capacity(n);
        points.push(r);
        let mut x = r;
        for _ in 1..n {
            x = h1d(x, params);
            if let Some(j) = nearest(roots, x) {
                if (roots[j] - x).abs() <= SNAP_TOL {
                    x = roots[j];
                    used[j] = true;
                }
            }
            points.push(x);
        }
        let candidate = Cycle1D::from_points(points, params).canonical();
        if !cycles.iter().any(|c| c.same_orbit(&candidate, DEDUP_TOL)) {
            cycles.push(candidate);
        }
    }
    flag_collisions(&mut cycles);
    cycles
}

fn flag_collisions(cycles: &mut [Cycle1D]) {
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if cycles[i].touches(&cycles[j], COLLISION_TOL) {
                cycles[i].degenerate = true;
                cycles[j].degenerate = true;
            }
        }
    }
}

/// Every cycle of `H` whose period divides `n`, including the fixed points.
pub fn cycles_dividing(params: Params, n: usize) -> Result<Vec<Cycle1D>> {
    let mut out = Vec::new();
    for d in (1..=n).filter(|d| n % d == 0) {
        out.extend(find_cycles_1d(params, d, DEFAULT_INTERVAL)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(b: f64) -> Params {
        Params::new(b).unwrap()
    }

    #[test]
    fn two_cycle_at_minus_one() {
        let c = find_cycles_1d(p(-1.0), 2, DEFAULT_INTERVAL).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].points, alloc::vec![-1.0, 0.0]);
        assert_eq!(c[0].multiplier, 0.0);
        assert_eq!(c[0].stability(), Stability::Stable);
    }

    #[test]
    fn no_two_cycle_before_flip() {
        assert!(find_cycles_1d(p(-0.5), 2, DEFAULT_INTERVAL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn two_cycle_matches_closed_form() {
        for b in [-0.8, -1.1, -1.6, -2.0] {
            let c = find_cycles_1d(p(b), 2, DEFAULT_INTERVAL).unwrap();
            assert_eq!(c.len(), 1, "b = {b}");
            let s = math::sqrt(-3.0 - 4.0 * b);
            let (v1, v2) = (-0.5 + 0.5 * s, -0.5 - 0.5 * s);
            assert!((c[0].points[0] - v2).abs() < 1e-12);
            assert!((c[0].points[1] - v1).abs() < 1e-12);
            assert!((c[0].multiplier - 4.0 * (b + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugates_share_multiplier() {
        let c = find_cycles_1d(p(-1.3), 4, DEFAULT_INTERVAL).unwrap();
        let t = conjugate_of(&c[0]);
        assert_eq!(t.x.multiplier, t.y.multiplier);
        assert_eq!(t.y.multiplier, t.z.multiplier);
        for i in 0..4 {
            assert_eq!(t.y.points[i], c[0].points[(i + 1) % 4]);
        }
    }

    #[test]
    fn conjugate_examples() {
        let [x1, _] = fixed_points_1d(p(-0.3)).unwrap();
        let t = conjugate_of(&x1);
        assert_eq!(t.y.points, x1.points);
        assert_eq!(t.z.points, x1.points);

        let c2 = &find_cycles_1d(p(-1.0), 2, DEFAULT_INTERVAL).unwrap()[0];
        let t = conjugate_of(c2);
        assert_eq!(t.y.points, alloc::vec![0.0, -1.0]);
        assert_eq!(t.z.points, alloc::vec![0.0, -1.0]);
    }

    #[test]
    fn fixed_points_reject_positive_discriminant() {
        assert!(matches!(
            fixed_points_1d(p(0.3)),
            Err(Error::NoRealFixedPoints { .. })
        ));
        let [a, b] = fixed_points_1d(p(0.25)).unwrap();
        assert!(a.degenerate && b.degenerate);
    }

    #[test]
    fn fold_pair_is_flagged_degenerate() {
        // Two period-3 cycles born at b = −7/4 are still almost coincident.
        let c = find_cycles_1d(p(-1.75 - 1e-15), 3, DEFAULT_INTERVAL).unwrap();
        assert!(!c.is_empty());
        assert!(c.iter().all(|c| c.degenerate), "{c:?}");
        let c = find_cycles_1d(p(-1.76), 3, DEFAULT_INTERVAL).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| !c.degenerate));
    }

    #[test]
    fn cycles_close_under_h() {
        for n in 1..=8 {
            for c in find_cycles_1d(p(-1.9), n, DEFAULT_INTERVAL).unwrap() {
                assert_eq!(c.period, n);
                assert!(c.closure_residual() < 1e-10, "n = {n}: {c:?}");
                let min = c.points.iter().copied().fold(f64::INFINITY, f64::min);
                assert_eq!(c.points[0], min);
            }
        }
    }

    #[test]
    fn cycle_counts_at_minus_two_match_the_full_shift() {
        // x² − 2 on [−2, 2] is conjugate to the doubling map: the number of
        // minimal period-n cycles is the necklace count (1/n) Σ μ(n/d) 2^d.
        let expected = [2, 1, 2, 3, 6, 9, 18, 30];
        for (i, want) in expected.iter().enumerate() {
            let n = i + 1;
            let found = find_cycles_1d(p(-2.0), n, DEFAULT_INTERVAL).unwrap();
            assert_eq!(found.len(), *want, "period {n}");
        }
    }
}
