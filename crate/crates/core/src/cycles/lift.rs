use alloc::vec::Vec;

use super::{
    conjugate_of, cycles_dividing, fixed_points_1d, stability_of, Cycle1D, CycleId, DEDUP_TOL,
};
use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::map::{apply_t, jacobian_t, Params, Point3};

/// Closure tolerance when validating a lifted seed by iteration.
const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    Nonhyperbolic,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Nonhyperbolic => "nonhyperbolic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    Homogeneous,
    Mixed,
}

impl CycleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CycleKind::Homogeneous => "homogeneous",
            CycleKind::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub kind: CycleKind,
    pub sources: Vec<CycleId>,
    pub seed: Point3,
}

/// A periodic orbit of `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle3D {
    pub period: usize,
    /// The orbit starting at the provenance seed.
    pub points: Vec<Point3>,
    /// Spectrum of the Jacobian of `T^L` along the orbit, `L = lcm(period, 3)`.
    pub eigenvalues: [f64; 3],
    pub stability: Stability,
    pub provenance: Provenance,
    pub params: Params,
}

impl Cycle3D {
    /// Points in lexicographic order; equal orbits give equal keys.
    pub fn canonical_points(&self) -> Vec<Point3> {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| a.lex_cmp(b));
        pts
    }

    pub fn same_orbit(&self, other: &Cycle3D, tol: f64) -> bool {
        self.period == other.period
            && self
                .canonical_points()
                .iter()
                .zip(other.canonical_points().iter())
                .all(|(a, b)| a.dist_inf(b) <= tol)
    }

    /// Largest `|T(p_i) − p_{i+1}|` over the orbit.
    pub fn closure_residual(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| match apply_t(self.points[i], self.params) {
                Ok(q) => q.dist_inf(&self.points[(i + 1) % n]),
                Err(_) => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

/// A seed produced by an index formula that failed validation.
#[derive(Debug, Clone, PartialEq)]
pub struct DroppedSeed {
    pub seed: Point3,
    pub expected_period: usize,
    pub found_period: Option<usize>,
}

/// Result of a lift: the distinct validated cycles plus the seeds that were rejected.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lift {
    pub cycles: Vec<Cycle3D>,
    pub dropped: Vec<DroppedSeed>,
}

/// Spectrum of the Jacobian product over `lcm(period, 3)` steps and the
/// resulting stability tag.
///
/// Every factor of the product is a scaled permutation matrix, so after a
/// multiple of three steps the product is diagonal and its eigenvalues are
/// real.
pub fn classify_stability(c: &Cycle3D) -> (Stability, [f64; 3]) {
    let ev = monodromy_spectrum(&c.points);
    (stability_of(&ev), ev)
}

fn monodromy_spectrum(points: &[Point3]) -> [f64; 3] {
    let n = points.len();
    let steps = if n % 3 == 0 { n } else { 3 * n };
    let mut m = Mat3::identity();
    for k in 0..steps {
        m = jacobian_t(points[k % n]) * m;
    }
    match m.real_eigenvalues() {
        Some(ev) => ev,
        // Unreachable for products over a multiple of three steps.
        None => m.diagonal(),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Iterates `seed` until it returns within [`CLOSURE_TOL`]; `None` if it does
/// not within `max_period` steps.
fn minimal_period(
    seed: Point3,
    params: Params,
    max_period: usize,
) -> Result<Option<(usize, Vec<Point3>)>> {
    let mut orbit = Vec::with_capacity(max_period);
    let mut p = seed;
    for k in 1..=max_period {
        orbit.push(p);
        p = apply_t(p, params)?;
        if p.dist_inf(&seed) <= CLOSURE_TOL {
            return Ok(Some((k, orbit)));
        }
    }
    Ok(None)
}

/// Replaces each coordinate by the nearest of the source cycle values.
fn snap(p: Point3, values: &[f64]) -> Point3 {
    let near = |v: f64| {
        values
            .iter()
            .copied()
            .min_by(|a, b| {
                (a - v)
                    .abs()
                    .partial_cmp(&(b - v).abs())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .filter(|s| (s - v).abs() <= CLOSURE_TOL)
            .unwrap_or(v)
    };
    Point3::new(near(p.x), near(p.y), near(p.z))
}

struct Lifter<'a> {
    sources: &'a [&'a Cycle1D],
    kind: CycleKind,
    expected_period: usize,
    params: Params,
    out: Lift,
}

impl<'a> Lifter<'a> {
    fn new(sources: &'a [&'a Cycle1D], kind: CycleKind, expected_period: usize) -> Self {
        Lifter {
            sources,
            kind,
            expected_period,
            params: sources[0].params,
            out: Lift::default(),
        }
    }

    fn values(&self) -> Vec<f64> {
        self.sources
            .iter()
            .flat_map(|c| c.points.iter().copied())
            .collect()
    }

    fn try_seed(&mut self, seed: Point3) -> Result<()> {
        let found = minimal_period(seed, self.params, self.expected_period)?;
        let (period, raw) = match found {
            Some((p, raw)) if p == self.expected_period => (p, raw),
            other => {
                self.out.dropped.push(DroppedSeed {
                    seed,
                    expected_period: self.expected_period,
                    found_period: other.map(|(p, _)| p),
                });
                return Ok(());
            }
        };
        let values = self.values();
        let points: Vec<Point3> = raw.into_iter().map(|q| snap(q, &values)).collect();
        let eigenvalues = monodromy_spectrum(&points);
        let cycle = Cycle3D {
            period,
            points,
            eigenvalues,
            stability: stability_of(&eigenvalues),
            provenance: Provenance {
                kind: self.kind,
                sources: self.sources.iter().map(|c| c.id()).collect(),
                seed,
            },
            params: self.params,
        };
        if !self
            .out
            .cycles
            .iter()
            .any(|c| c.same_orbit(&cycle, DEDUP_TOL))
        {
            self.out.cycles.push(cycle);
        }
        Ok(())
    }
}

/// Fixed points `X1 = (x1, x1, x1)` and `X2 = (x2, x2, x2)` of `T`.
pub fn fixed_points_t(params: Params) -> Result<[Cycle3D; 2]> {
    let [x1, x2] = fixed_points_1d(params)?;
    let lift = |c: &Cycle1D| -> Result<Cycle3D> {
        let v = c.points[0];
        let points = alloc::vec![Point3::splat(v)];
        let eigenvalues = monodromy_spectrum(&points);
        Ok(Cycle3D {
            period: 1,
            points,
            eigenvalues,
            stability: stability_of(&eigenvalues),
            provenance: Provenance {
                kind: CycleKind::Homogeneous,
                sources: alloc::vec![c.id()],
                seed: Point3::splat(v),
            },
            params,
        })
    };
    Ok([lift(&x1)?, lift(&x2)?])
}

/// The unique homogeneous cycle of period `n` (3 ∤ n) through a point with
/// first component `x1`: seed `(x1, y_{2s+1}, z_{s+1})` for `n = 3s + 1`,
/// `(x1, y_{s+1}, z_{2s+2})` for `n = 3s + 2`.
pub fn lift_homogeneous(x: &Cycle1D) -> Result<Cycle3D> {
    let n = x.period;
    if n % 3 == 0 {
        return Err(Error::PeriodDivisibleBy3 { period: n });
    }
    let t = conjugate_of(x);
    let s = (n / 3) as isize;
    let seed = if n % 3 == 1 {
        Point3::new(t.x.point(1), t.y.point(2 * s + 1), t.z.point(s + 1))
    } else {
        Point3::new(t.x.point(1), t.y.point(s + 1), t.z.point(2 * s + 2))
    };
    let sources = [x];
    let mut lifter = Lifter::new(&sources, CycleKind::Homogeneous, n);
    lifter.try_seed(seed)?;
    match lifter.out.cycles.pop() {
        Some(c) => Ok(c),
        None => Err(Error::LiftValidationFailed {
            expected_period: n,
            found_period: lifter.out.dropped.first().and_then(|d| d.found_period),
        }),
    }
}

/// All homogeneous cycles of period `3n` built from a cycle of period
/// `n ≥ 2`, from the seed families
/// `(x1, y_j, z_{j+h})`, `h ≤ j ≤ n − 2h`, `1 ≤ h ≤ ⌊n/3⌋` and
/// `(x1, y_j, z_{j+1−h})`, `2h − 1 ≤ j ≤ n − h`, `1 ≤ h ≤ ⌊(n+1)/3⌋`.
pub fn lift_homogeneous_3n(x: &Cycle1D) -> Result<Lift> {
    let n = x.period;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "period-3n lift needs a cycle of period at least 2",
        ));
    }
    let t = conjugate_of(x);
    let ni = n as isize;
    let mut seeds = Vec::new();
    for h in 1..=ni / 3 {
        for j in h..=ni - 2 * h {
            seeds.push(Point3::new(t.x.point(1), t.y.point(j), t.z.point(j + h)));
        }
    }
    for h in 1..=(ni + 1) / 3 {
        for j in (2 * h - 1)..=(ni - h) {
            seeds.push(Point3::new(
                t.x.point(1),
                t.y.point(j),
                t.z.point(j + 1 - h),
            ));
        }
    }
    let sources = [x];
    let mut lifter = Lifter::new(&sources, CycleKind::Homogeneous, 3 * n);
    for s in seeds {
        lifter.try_seed(s)?;
    }
    if lifter.out.cycles.is_empty() {
        return Err(Error::LiftValidationFailed {
            expected_period: 3 * n,
            found_period: None,
        });
    }
    Ok(lifter.out)
}

fn check_distinct(cycles: &[&Cycle1D]) -> Result<()> {
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if a.params != b.params {
                return Err(Error::InvalidArgument("cycles must coexist at the same b"));
            }
            if a.touches(b, DEDUP_TOL) {
                return Err(Error::InvalidArgument("cycles must be distinct"));
            }
        }
    }
    Ok(())
}

/// Mixed cycles of period `3s`, `s = lcm(n, m)`, from two coexisting cycles
/// `A` (period `n`) and `B` (period `m`). Seeds `(x1, b_j, z_l)` for
/// `1 ≤ j ≤ d`, `1 ≤ l ≤ n` and `(x1, b_j, c_l)` for `1 ≤ l ≤ m`, with
/// `d = gcd(n, m)`. The distinct count must be `(n + m)·nm/s`.
pub fn lift_mixed_pair(a: &Cycle1D, b: &Cycle1D) -> Result<Lift> {
    check_distinct(&[a, b])?;
    let (n, m) = (a.period, b.period);
    let s = lcm(n, m);
    let d = gcd(n, m) as isize;
    let (ta, tb) = (conjugate_of(a), conjugate_of(b));
    let mut seeds = Vec::new();
    for j in 1..=d {
        for l in 1..=n as isize {
            seeds.push(Point3::new(ta.x.point(1), tb.y.point(j), ta.z.point(l)));
        }
        for l in 1..=m as isize {
            seeds.push(Point3::new(ta.x.point(1), tb.y.point(j), tb.z.point(l)));
        }
    }
    let sources = [a, b];
    let mut lifter = Lifter::new(&sources, CycleKind::Mixed, 3 * s);
    for seed in seeds {
        lifter.try_seed(seed)?;
    }
    let expected = (n + m) * n * m / s;
    if lifter.out.cycles.len() != expected {
        return Err(Error::CountMismatch {
            expected,
            found: lifter.out.cycles.len(),
        });
    }
    Ok(lifter.out)
}

/// Mixed cycles of period `3S`, `S = lcm(n, m, p)`, using all three of the
/// coexisting cycles `A`, `B`, `C`. Seeds `(x1, b_j, γ_l)` and
/// `(x1, β_l, c_j)` for `1 ≤ j ≤ d = gcd(n, m)` and
/// `1 ≤ l ≤ p·lcm(m, n)/S`. The distinct count must be `2·nmp/S`.
pub fn lift_mixed_triple(a: &Cycle1D, b: &Cycle1D, c: &Cycle1D) -> Result<Lift> {
    check_distinct(&[a, b, c])?;
    let (n, m, p) = (a.period, b.period, c.period);
    let big_s = lcm(lcm(n, m), p);
    let d = gcd(n, m) as isize;
    let l_max = (p * lcm(m, n) / big_s) as isize;
    let (ta, tb, tc) = (conjugate_of(a), conjugate_of(b), conjugate_of(c));
    let mut seeds = Vec::new();
    for j in 1..=d {
        for l in 1..=l_max {
            seeds.push(Point3::new(ta.x.point(1), tb.y.point(j), tc.z.point(l)));
            seeds.push(Point3::new(ta.x.point(1), tc.y.point(l), tb.z.point(j)));
        }
    }
    let sources = [a, b, c];
    let mut lifter = Lifter::new(&sources, CycleKind::Mixed, 3 * big_s);
    for seed in seeds {
        lifter.try_seed(seed)?;
    }
    let expected = 2 * n * m * p / big_s;
    if lifter.out.cycles.len() != expected {
        return Err(Error::CountMismatch {
            expected,
            found: lifter.out.cycles.len(),
        });
    }
    Ok(lifter.out)
}

/// All cycles of `T` of one period at one `b`, grouped by construction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Census {
    pub period: usize,
    pub homogeneous: Vec<Cycle3D>,
    pub mixed_pairs: Vec<Cycle3D>,
    pub mixed_triples: Vec<Cycle3D>,
    pub dropped: Vec<DroppedSeed>,
}

impl Census {
    pub fn all(&self) -> impl Iterator<Item = &Cycle3D> {
        self.homogeneous
            .iter()
            .chain(&self.mixed_pairs)
            .chain(&self.mixed_triples)
    }

    pub fn len(&self) -> usize {
        self.homogeneous.len() + self.mixed_pairs.len() + self.mixed_triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Enumerates every cycle of `T` with the given period at `params`.
///
/// Periods not divisible by 3 only carry homogeneous cycles. For period
/// `3q` the census combines the period-`3q` homogeneous lifts of period-`q`
/// cycles of `H` with the mixed lifts of every pair and triple of cycles of
/// `H` whose periods have least common multiple `q`.
pub fn census(params: Params, period: usize) -> Result<Census> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive"));
    }
    let mut out = Census {
        period,
        ..Census::default()
    };
    if period % 3 != 0 {
        for c in super::find_cycles_1d(params, period, super::DEFAULT_INTERVAL)? {
            out.homogeneous.push(lift_homogeneous(&c)?);
        }
        return Ok(out);
    }
    let q = period / 3;
    let pool = cycles_dividing(params, q)?;
    for c in pool.iter().filter(|c| c.period == q && q >= 2) {
        let lift = lift_homogeneous_3n(c)?;
        out.homogeneous.extend(lift.cycles);
        out.dropped.extend(lift.dropped);
    }
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let pair = lcm(pool[i].period, pool[j].period);
            if pair == q {
                let lift = lift_mixed_pair(&pool[i], &pool[j])?;
                out.mixed_pairs.extend(lift.cycles);
                out.dropped.extend(lift.dropped);
            }
            for k in j + 1..pool.len() {
                if lcm(pair, pool[k].period) != q {
                    continue;
                }
                let lift = lift_mixed_triple(&pool[i], &pool[j], &pool[k])?;
                out.mixed_triples.extend(lift.cycles);
                out.dropped.extend(lift.dropped);
            }
        }
    }
    Ok(out)
}
