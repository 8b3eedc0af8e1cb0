//! Fold, flip and transcritical bifurcations of cycles of `H`, multiplier
//! continuation, and bifurcation-diagram data for `T`.
//!
//! Folds are found by bisecting on the number of period-`n` cycles. Flips
//! are found by following a cycle branch in `b` and bisecting on the sign
//! of `λ + 1`.

use alloc::vec::Vec;

use crate::cycles::{find_cycles_1d, roots, Cycle1D, DEFAULT_INTERVAL};
use crate::error::{Error, Result};
use crate::map::{step_bounded, Params, Point3, ESCAPE_RADIUS};

/// Width at which bisection on `b` stops.
pub const B_TOL: f64 = 1e-11;
/// Grid steps used to follow a branch across a flip bracket.
pub const CONTINUATION_STEPS: usize = 32;
/// A branch may appear or vanish between grid points only near a fold,
/// i.e. with multiplier within this distance of `+1`. Near a fold `λ − 1`
/// scales like `√|b − b*|`, so one grid step can move it a long way.
pub const FOLD_WINDOW: f64 = 1.0;
pub const CLUSTER_TOL: f64 = 1e-6;
pub const DEFAULT_TRANSIENT: usize = 1000;
pub const DEFAULT_SAMPLES: usize = 200;
/// Initial state used for diagrams when none is given.
pub const DEFAULT_X0: Point3 = Point3::new(0.0, -0.5, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BifurcationKind {
    Fold,
    Flip,
    Transcritical,
}

impl BifurcationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BifurcationKind::Fold => "fold",
            BifurcationKind::Flip => "flip",
            BifurcationKind::Transcritical => "transcritical",
        }
    }

    /// Multiplier at the event.
    pub fn critical_multiplier(self) -> f64 {
        match self {
            BifurcationKind::Flip => -1.0,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationEvent {
    pub kind: BifurcationKind,
    pub period: usize,
    pub b_star: f64,
    pub x_star: f64,
}

impl BifurcationEvent {
    /// `(|Hⁿ(x*) − x*|, |λ ∓ 1|)` evaluated at `b*`.
    pub fn residuals(&self) -> (f64, f64) {
        let params = Params { b: self.b_star };
        let (g, dg) = roots::residual(self.x_star, params, self.period);
        let lambda = dg + 1.0;
        (g.abs(), (lambda - self.kind.critical_multiplier()).abs())
    }
}

fn check_bracket(bracket: (f64, f64)) -> Result<(f64, f64)> {
    let (lo, hi) = bracket;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::NonFinite("bracket"));
    }
    if lo >= hi {
        return Err(Error::InvalidArgument("bracket must satisfy lo < hi"));
    }
    Ok((lo, hi))
}

fn cycles_at(b: f64, n: usize) -> Result<Vec<Cycle1D>> {
    find_cycles_1d(Params::new(b)?, n, DEFAULT_INTERVAL)
}

/// Locates a fold of period-`n` cycles in `bracket` by bisection on the
/// cycle count, which changes across the event.
pub fn find_fold(n: usize, bracket: (f64, f64)) -> Result<BifurcationEvent> {
    let (x_star, b_star) = locate_count_change(n, bracket)?;
    Ok(BifurcationEvent {
        kind: BifurcationKind::Fold,
        period: n,
        b_star,
        x_star,
    })
}

/// The exchange of stability of the two fixed points where they collide
/// with common multiplier 1. For this family it coincides with the
/// period-1 fold.
pub fn find_transcritical(bracket: (f64, f64)) -> Result<BifurcationEvent> {
    let (x_star, b_star) = locate_count_change(1, bracket)?;
    Ok(BifurcationEvent {
        kind: BifurcationKind::Transcritical,
        period: 1,
        b_star,
        x_star,
    })
}

fn locate_count_change(n: usize, bracket: (f64, f64)) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive"));
    }
    let (lo, hi) = check_bracket(bracket)?;
    let count_lo = cycles_at(lo, n)?.len();
    let count_hi = cycles_at(hi, n)?.len();
    if count_lo == count_hi {
        return Err(Error::NoEventInBracket { lo, hi });
    }
    let (mut a, mut c) = (lo, hi);
    while c - a > B_TOL {
        let mid = 0.5 * (a + c);
        if mid <= a || mid >= c {
            break;
        }
        if cycles_at(mid, n)?.len() == count_lo {
            a = mid;
        } else {
            c = mid;
        }
    }
    let b_star = 0.5 * (a + c);
    // Side of the event on which the cycles exist.
    let exist = if count_lo > count_hi { a } else { c };
    let params = Params::new(b_star)?;
    let mut candidates =
        roots::unit_slope_points(params, n, DEFAULT_INTERVAL.0, DEFAULT_INTERVAL.1, 20_000);
    for cyc in cycles_at(exist, n)? {
        candidates.extend(cyc.points.iter().copied());
    }
    let score = |x: f64| {
        let (g, dg) = roots::residual(x, params, n);
        (g.abs() / 1e-9).max(dg.abs() / 1e-7)
    };
    let x_star = candidates
        .into_iter()
        .filter(|x| score(*x).is_finite())
        .min_by(|x, y| {
            score(*x)
                .partial_cmp(&score(*y))
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .ok_or(Error::NoEventInBracket { lo, hi })?;
    Ok((x_star, b_star))
}

/// Sup distance between the sorted points of two cycles of equal period.
fn cycle_distance(a: &Cycle1D, b: &Cycle1D) -> f64 {
    a.points
        .iter()
        .zip(&b.points)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

fn nearest_cycle<'a>(cycles: &'a [Cycle1D], target: &Cycle1D) -> Option<&'a Cycle1D> {
    cycles.iter().min_by(|x, y| {
        cycle_distance(x, target)
            .partial_cmp(&cycle_distance(y, target))
            .unwrap_or(core::cmp::Ordering::Equal)
    })
}

/// One continued branch: the cycle at each grid `b` where it exists.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub samples: Vec<(f64, Cycle1D)>,
}

impl Branch {
    pub fn multipliers(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|(b, c)| (*b, c.multiplier))
            .collect()
    }
}

/// Follows every period-`n` cycle over `steps` evenly spaced values of `b`
/// by nearest-point matching between consecutive grid values.
fn continue_branches(n: usize, range: (f64, f64), steps: usize) -> Result<Vec<Branch>> {
    let (lo, hi) = check_bracket(range)?;
    if steps < 2 {
        return Err(Error::InvalidArgument("steps must be at least 2"));
    }
    let mut finished: Vec<Branch> = Vec::new();
    let mut open: Vec<Branch> = Vec::new();
    for i in 0..steps {
        let b = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        let mut found: Vec<Option<Cycle1D>> = cycles_at(b, n)?.into_iter().map(Some).collect();
        // Greedy matching by increasing distance.
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (bi, br) in open.iter().enumerate() {
            let last = &br.samples.last().expect("open branches are non-empty").1;
            for (ci, c) in found.iter().enumerate() {
                if let Some(c) = c {
                    pairs.push((cycle_distance(last, c), bi, ci));
                }
            }
        }
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(core::cmp::Ordering::Equal));
        let mut matched = alloc::vec![false; open.len()];
        let mut extended: Vec<Option<Cycle1D>> = alloc::vec![None; open.len()];
        for (_, bi, ci) in pairs {
            if matched[bi] || found[ci].is_none() {
                continue;
            }
            matched[bi] = true;
            extended[bi] = found[ci].take();
        }
        let mut next_open = Vec::new();
        for (br, ext) in open.into_iter().zip(extended) {
            match ext {
                Some(c) => {
                    let mut br = br;
                    br.samples.push((b, c));
                    next_open.push(br);
                }
                None => {
                    let last = &br.samples.last().expect("open branches are non-empty").1;
                    if (last.multiplier - 1.0).abs() > FOLD_WINDOW {
                        return Err(Error::BranchLost { b });
                    }
                    finished.push(br);
                }
            }
        }
        for c in found.into_iter().flatten() {
            if i > 0 && (c.multiplier - 1.0).abs() > FOLD_WINDOW {
                return Err(Error::BranchLost { b });
            }
            next_open.push(Branch {
                samples: alloc::vec![(b, c)],
            });
        }
        open = next_open;
    }
    finished.extend(open);
    Ok(finished)
}

/// `(b, λ)` along every period-`n` branch over `steps` grid values of `b`.
pub fn multiplier_curve(n: usize, range: (f64, f64), steps: usize) -> Result<Vec<Vec<(f64, f64)>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive"));
    }
    Ok(continue_branches(n, range, steps)?
        .iter()
        .map(Branch::multipliers)
        .collect())
}

/// Locates the flip of a period-`n` branch in `bracket`: the branch is
/// continued across the bracket and the first grid cell where `λ + 1`
/// changes sign is bisected.
pub fn find_flip(n: usize, bracket: (f64, f64)) -> Result<BifurcationEvent> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be positive"));
    }
    let (lo, hi) = check_bracket(bracket)?;
    let branches = continue_branches(n, (lo, hi), CONTINUATION_STEPS)?;
    let sign = |c: &Cycle1D| c.multiplier + 1.0 > 0.0;
    let cell = branches.iter().find_map(|br| {
        br.samples
            .windows(2)
            .find_map(|w| (sign(&w[0].1) != sign(&w[1].1)).then(|| (w[0].clone(), w[1].0)))
    });
    let ((mut a, mut cyc), mut c) = cell.ok_or(Error::NoEventInBracket { lo, hi })?;
    let sign_a = sign(&cyc);
    while c - a > B_TOL {
        let mid = 0.5 * (a + c);
        if mid <= a || mid >= c {
            break;
        }
        let here = cycles_at(mid, n)?;
        let next = nearest_cycle(&here, &cyc)
            .ok_or(Error::BranchLost { b: mid })?
            .clone();
        if sign(&next) == sign_a {
            a = mid;
            cyc = next;
        } else {
            c = mid;
        }
    }
    let b_star = 0.5 * (a + c);
    let here = cycles_at(b_star, n)?;
    let at_star = nearest_cycle(&here, &cyc).ok_or(Error::BranchLost { b: b_star })?;
    Ok(BifurcationEvent {
        kind: BifurcationKind::Flip,
        period: n,
        b_star,
        x_star: at_star.points[0],
    })
}

/// The recorded x-coordinates of the orbit at one `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramRow {
    pub b: f64,
    /// Empty when the orbit diverged.
    pub samples: Vec<f64>,
    pub diverged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramDataset {
    pub rows: Vec<DiagramRow>,
}

/// The `i`-th of `steps` evenly spaced values over `range`.
pub fn grid_value(range: (f64, f64), steps: usize, i: usize) -> f64 {
    if steps < 2 {
        return range.0;
    }
    range.0 + (range.1 - range.0) * i as f64 / (steps - 1) as f64
}

/// One diagram row: `samples` x-coordinates after `transient` steps.
pub fn diagram_row(b: f64, p0: Point3, transient: usize, samples: usize) -> Result<DiagramRow> {
    let params = Params::new(b)?;
    if !p0.is_finite() {
        return Err(Error::NonFinite("initial point"));
    }
    let mut p = p0;
    let mut out = Vec::with_capacity(samples);
    for step in 1..=transient + samples {
        match step_bounded(p, params, ESCAPE_RADIUS, step) {
            Ok(q) => p = q,
            Err(_) => {
                return Ok(DiagramRow {
                    b,
                    samples: Vec::new(),
                    diverged: true,
                })
            }
        }
        if step > transient {
            out.push(p.x);
        }
    }
    Ok(DiagramRow {
        b,
        samples: out,
        diverged: false,
    })
}

pub fn bifurcation_diagram(
    range: (f64, f64),
    steps: usize,
    p0: Point3,
    transient: usize,
    samples: usize,
) -> Result<DiagramDataset> {
    check_bracket(range)?;
    if steps < 2 || samples == 0 {
        return Err(Error::InvalidArgument("need steps >= 2 and samples >= 1"));
    }
    let rows = (0..steps)
        .map(|i| diagram_row(grid_value(range, steps, i), p0, transient, samples))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagramDataset { rows })
}

/// Number of clusters after sorting, splitting wherever consecutive values
/// differ by more than `tol`.
pub fn distinct_count(samples: &[f64], tol: f64) -> usize {
    if samples.is_empty() {
        return 0;
    }
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    1 + s.windows(2).filter(|w| w[1] - w[0] > tol).count()
}
