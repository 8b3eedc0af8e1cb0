//! Attractor catalogs and basin classification on 2D slices of state space.
//!
//! A catalog entry is either a cycle, detected exactly by recurrence, or a
//! bounded set without detected recurrence ("chaotic"). A chaotic entry
//! keeps a 512-point signature and a voxel footprint of a long orbit
//! segment, dilated by one voxel. An orbit tail belongs to a chaotic entry
//! when almost all of its points fall in the footprint; when several
//! entries accept a tail, the one with the smallest footprint wins, so an
//! invariant subset is told apart from the attractor that contains it.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::{step_bounded, Axis, Params, Point3, ESCAPE_RADIUS};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogOptions {
    /// Steps before a classified orbit's tail is compared with the catalog.
    pub max_iter: usize,
    /// Steps before a catalog seed's limit set is sampled.
    pub transient: usize,
    pub escape_radius: f64,
    /// Sup-distance tolerance for cycle matches; the voxel edge is twice this.
    pub match_tol: f64,
    pub signature_len: usize,
    /// Orbit points used to build a chaotic footprint.
    pub footprint_samples: usize,
    pub recurrence_tol: f64,
    pub max_period: usize,
    /// Tail points compared with the catalog.
    pub tail_len: usize,
    /// Fraction of tail points that must lie in a chaotic footprint.
    pub min_coverage: f64,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            max_iter: 5000,
            transient: 1000,
            escape_radius: ESCAPE_RADIUS,
            match_tol: 0.05,
            signature_len: 512,
            footprint_samples: 1 << 16,
            recurrence_tol: 1e-8,
            max_period: 64,
            tail_len: 128,
            min_coverage: 0.95,
        }
    }
}

impl CatalogOptions {
    fn voxel_edge(&self) -> f64 {
        2.0 * self.match_tol
    }

    fn validate(&self) -> Result<()> {
        if !(self.match_tol > 0.0) || !(self.escape_radius > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive"));
        }
        if self.signature_len == 0
            || self.footprint_samples < self.signature_len
            || self.tail_len == 0
        {
            return Err(Error::InvalidArgument("sample counts must be positive"));
        }
        if self.max_period == 0 {
            return Err(Error::InvalidArgument("max_period must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttractorKind {
    FixedPoint,
    Cycle(usize),
    Chaotic,
}

impl AttractorKind {
    pub fn name(&self) -> &'static str {
        match self {
            AttractorKind::FixedPoint => "fixed_point",
            AttractorKind::Cycle(_) => "cycle",
            AttractorKind::Chaotic => "chaotic",
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            AttractorKind::FixedPoint => Some(1),
            AttractorKind::Cycle(p) => Some(*p),
            AttractorKind::Chaotic => None,
        }
    }
}

type Voxel = [i64; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct Attractor {
    pub id: usize,
    pub kind: AttractorKind,
    /// Cycle points in orbit order, or a subsample of the chaotic orbit.
    pub signature: Vec<Point3>,
    footprint: BTreeSet<Voxel>,
    pub params: Params,
}

impl Attractor {
    /// Number of voxels in the dilated footprint (0 for cycles).
    pub fn footprint_size(&self) -> usize {
        self.footprint.len()
    }

    /// Axis-aligned bounding box of the signature.
    pub fn bounds(&self) -> (Point3, Point3) {
        let mut lo = Point3::splat(f64::INFINITY);
        let mut hi = Point3::splat(f64::NEG_INFINITY);
        for p in &self.signature {
            lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        (lo, hi)
    }

    fn covers(&self, pts: &[Point3], edge: f64) -> f64 {
        let hit = pts
            .iter()
            .filter(|p| self.footprint.contains(&voxel(p, edge)))
            .count();
        hit as f64 / pts.len() as f64
    }

    fn near_cycle(&self, pts: &[Point3], tol: f64) -> bool {
        pts.iter()
            .all(|p| self.signature.iter().any(|q| q.dist_inf(p) <= tol))
    }
}

fn voxel(p: &Point3, edge: f64) -> Voxel {
    let f = |v: f64| math::floor(v / edge) as i64;
    [f(p.x), f(p.y), f(p.z)]
}

fn dilated_footprint(pts: &[Point3], edge: f64) -> BTreeSet<Voxel> {
    let core: BTreeSet<Voxel> = pts.iter().map(|p| voxel(p, edge)).collect();
    let mut out = BTreeSet::new();
    for [a, b, c] in core {
        for da in -1..=1 {
            for db in -1..=1 {
                for dc in -1..=1 {
                    out.insert([a + da, b + db, c + dc]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Attractor(usize),
    Divergent,
    Undecided,
}

impl Label {
    /// Catalog id, `-1` for divergent and `-2` for undecided.
    pub fn code(&self) -> i64 {
        match self {
            Label::Attractor(id) => *id as i64,
            Label::Divergent => -1,
            Label::Undecided => -2,
        }
    }

    pub fn from_code(code: i64) -> Option<Label> {
        match code {
            -1 => Some(Label::Divergent),
            -2 => Some(Label::Undecided),
            c if c >= 0 => Some(Label::Attractor(c as usize)),
            _ => None,
        }
    }
}

/// Runs `steps` bounded steps from `p`. `None` on escape.
fn advance(mut p: Point3, params: Params, steps: usize, radius: f64) -> Option<Point3> {
    for k in 1..=steps {
        p = step_bounded(p, params, radius, k).ok()?;
    }
    Some(p)
}

fn record(mut p: Point3, params: Params, n: usize, radius: f64) -> Option<Vec<Point3>> {
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        p = step_bounded(p, params, radius, k).ok()?;
        out.push(p);
    }
    Some(out)
}

/// The limit set reached from `seed`, before an id is assigned.
fn limit_set(seed: Point3, params: Params, opts: &CatalogOptions) -> Option<Attractor> {
    if !seed.is_finite() {
        return None;
    }
    let p = advance(seed, params, opts.transient, opts.escape_radius)?;
    let probe = record(p, params, opts.max_period, opts.escape_radius)?;
    if let Some(k) = probe
        .iter()
        .position(|q| q.dist_inf(&p) <= opts.recurrence_tol)
    {
        let mut signature = Vec::with_capacity(k + 1);
        signature.push(p);
        signature.extend_from_slice(&probe[..k]);
        let kind = if k == 0 {
            AttractorKind::FixedPoint
        } else {
            AttractorKind::Cycle(k + 1)
        };
        return Some(Attractor {
            id: 0,
            kind,
            signature,
            footprint: BTreeSet::new(),
            params,
        });
    }
    let pts = record(p, params, opts.footprint_samples, opts.escape_radius)?;
    let stride = opts.footprint_samples / opts.signature_len;
    let signature = pts
        .iter()
        .step_by(stride)
        .take(opts.signature_len)
        .copied()
        .collect();
    let footprint = dilated_footprint(&pts, opts.voxel_edge());
    Some(Attractor {
        id: 0,
        kind: AttractorKind::Chaotic,
        signature,
        footprint,
        params,
    })
}

fn same_attractor(a: &Attractor, b: &Attractor, opts: &CatalogOptions) -> bool {
    match (a.kind, b.kind) {
        (AttractorKind::Chaotic, AttractorKind::Chaotic) => {
            let edge = opts.voxel_edge();
            a.covers(&b.signature, edge) >= opts.min_coverage
                && b.covers(&a.signature, edge) >= opts.min_coverage
        }
        (ka, kb) if ka == kb => a.near_cycle(&b.signature, opts.match_tol),
        _ => false,
    }
}

/// Iterates every seed and keeps one entry per distinct bounded limit set,
/// in order of first discovery. Divergent seeds contribute nothing.
pub fn build_catalog(
    params: Params,
    seeds: &[Point3],
    opts: &CatalogOptions,
) -> Result<Vec<Attractor>> {
    opts.validate()?;
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("catalog needs at least one seed"));
    }
    let mut catalog: Vec<Attractor> = Vec::new();
    for seed in seeds {
        if let Some(mut a) = limit_set(*seed, params, opts) {
            if !catalog.iter().any(|c| same_attractor(c, &a, opts)) {
                a.id = catalog.len();
                catalog.push(a);
            }
        }
    }
    Ok(catalog)
}

fn classify_once(
    p0: Point3,
    params: Params,
    catalog: &[Attractor],
    opts: &CatalogOptions,
    max_iter: usize,
) -> Label {
    if !p0.is_finite() {
        return Label::Divergent;
    }
    let Some(p) = advance(p0, params, max_iter, opts.escape_radius) else {
        return Label::Divergent;
    };
    let Some(tail) = record(p, params, opts.tail_len, opts.escape_radius) else {
        return Label::Divergent;
    };
    if let Some(a) = catalog
        .iter()
        .find(|a| a.kind != AttractorKind::Chaotic && a.near_cycle(&tail, opts.match_tol))
    {
        return Label::Attractor(a.id);
    }
    let edge = opts.voxel_edge();
    catalog
        .iter()
        .filter(|a| a.kind == AttractorKind::Chaotic && a.covers(&tail, edge) >= opts.min_coverage)
        .min_by_key(|a| (a.footprint_size(), a.id))
        .map_or(Label::Undecided, |a| Label::Attractor(a.id))
}

/// Label of `p0`: divergent on escape, otherwise the catalog entry matching
/// the tail after `max_iter` steps. An undecided orbit is re-run once with
/// four times as many steps.
pub fn classify_point(
    p0: Point3,
    params: Params,
    catalog: &[Attractor],
    opts: &CatalogOptions,
) -> Label {
    match classify_once(p0, params, catalog, opts, opts.max_iter) {
        Label::Undecided => classify_once(p0, params, catalog, opts, 4 * opts.max_iter),
        l => l,
    }
}

/// One swept axis of a slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub resolution: usize,
}

impl SweepAxis {
    /// Center of cell `k`.
    pub fn center(&self, k: usize) -> f64 {
        self.min + (k as f64 + 0.5) * (self.max - self.min) / self.resolution as f64
    }
}

/// A plane `fixed_axis = fixed_value` swept along `u` (columns) and `v` (rows).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceSpec {
    pub fixed_axis: Axis,
    pub fixed_value: f64,
    pub u: SweepAxis,
    pub v: SweepAxis,
}

impl SliceSpec {
    /// Fixes `axis` at `value`; the remaining axes in x, y, z order become
    /// `u` and `v`, both over `[min, max]`.
    pub fn square(axis: Axis, value: f64, min: f64, max: f64, resolution: usize) -> Result<Self> {
        let mut free = Axis::ALL.iter().copied().filter(|a| *a != axis);
        let (ua, va) = (
            free.next().expect("two free axes"),
            free.next().expect("two free axes"),
        );
        let spec = SliceSpec {
            fixed_axis: axis,
            fixed_value: value,
            u: SweepAxis {
                axis: ua,
                min,
                max,
                resolution,
            },
            v: SweepAxis {
                axis: va,
                min,
                max,
                resolution,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let axes = [self.fixed_axis, self.u.axis, self.v.axis];
        if axes[0] == axes[1] || axes[0] == axes[2] || axes[1] == axes[2] {
            return Err(Error::InvalidArgument("slice axes must be distinct"));
        }
        for s in [&self.u, &self.v] {
            if s.resolution < 2 {
                return Err(Error::InvalidArgument("resolution must be at least 2"));
            }
            if !(s.min < s.max) || !s.min.is_finite() || !s.max.is_finite() {
                return Err(Error::InvalidArgument("swept range must satisfy min < max"));
            }
        }
        if !self.fixed_value.is_finite() {
            return Err(Error::NonFinite("slice value"));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.v.resolution
    }

    pub fn cols(&self) -> usize {
        self.u.resolution
    }

    /// Cell center for `row` (0 is the top, largest `v`) and `col`.
    pub fn point(&self, row: usize, col: usize) -> Point3 {
        let mut p = Point3::default();
        p.set_coord(self.fixed_axis, self.fixed_value);
        p.set_coord(self.u.axis, self.u.center(col));
        p.set_coord(self.v.axis, self.v.center(self.v.resolution - 1 - row));
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasinGrid {
    pub spec: SliceSpec,
    /// Row-major, top row first.
    pub labels: Vec<Label>,
    pub params: Params,
}

impl BasinGrid {
    pub fn label(&self, row: usize, col: usize) -> Label {
        self.labels[row * self.spec.cols() + col]
    }

    /// Distinct attractor ids present in the grid.
    pub fn attractor_ids(&self) -> BTreeSet<usize> {
        self.labels
            .iter()
            .filter_map(|l| match l {
                Label::Attractor(id) => Some(*id),
                _ => None,
            })
            .collect()
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|l| **l == label).count()
    }
}

/// Labels of one grid row.
pub fn classify_row(
    params: Params,
    spec: &SliceSpec,
    catalog: &[Attractor],
    opts: &CatalogOptions,
    row: usize,
) -> Vec<Label> {
    (0..spec.cols())
        .map(|col| classify_point(spec.point(row, col), params, catalog, opts))
        .collect()
}

/// Classifies every cell center of the slice, row by row.
pub fn basin_slice(
    params: Params,
    spec: &SliceSpec,
    catalog: &[Attractor],
    opts: &CatalogOptions,
) -> Result<BasinGrid> {
    spec.validate()?;
    opts.validate()?;
    let mut labels = Vec::with_capacity(spec.rows() * spec.cols());
    for row in 0..spec.rows() {
        labels.extend(classify_row(params, spec, catalog, opts, row));
    }
    Ok(BasinGrid {
        spec: *spec,
        labels,
        params,
    })
}

/// Seeds used by default: the given points plus an `n × n` lattice of cell
/// centers of the slice.
pub fn default_seeds(spec: &SliceSpec, extra: &[Point3], n: usize) -> Vec<Point3> {
    let mut seeds = extra.to_vec();
    let lattice = SliceSpec {
        u: SweepAxis {
            resolution: n,
            ..spec.u
        },
        v: SweepAxis {
            resolution: n,
            ..spec.v
        },
        ..*spec
    };
    for row in 0..n {
        for col in 0..n {
            seeds.push(lattice.point(row, col));
        }
    }
    seeds
}
