//! CSV writers and JSON documents for every subcommand.
//!
//! Floats are written in shortest round-trip form, so reading a file back
//! reproduces the computed values bit for bit.

use std::fmt::Write as _;

use serde::Serialize;

use sdmap_core::basin::{Attractor, BasinGrid, CatalogOptions};
use sdmap_core::bifurcation::{BifurcationEvent, DiagramDataset};
use sdmap_core::critical::{AxisPlane, PlaneSideStats, Preimage};
use sdmap_core::cycles::{Census, Cycle1D, Cycle3D, DroppedSeed};
use sdmap_core::lyapunov::LyapunovResult;
use sdmap_core::Point3;

/// Shortest representation that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:?}")
    }
}

fn arr(p: Point3) -> [f64; 3] {
    p.to_array()
}

pub fn diagram_csv(d: &DiagramDataset) -> String {
    let mut s = String::from("b,x\n");
    for row in &d.rows {
        if row.diverged {
            let _ = writeln!(s, "{},nan", num(row.b));
        }
        for x in &row.samples {
            let _ = writeln!(s, "{},{}", num(row.b), num(*x));
        }
    }
    s
}

pub fn events_csv(events: &[BifurcationEvent]) -> String {
    let mut s = String::from("kind,period,b_star,x_star\n");
    for e in events {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            e.kind.as_str(),
            e.period,
            num(e.b_star),
            num(e.x_star)
        );
    }
    s
}

pub fn multipliers_csv(curves: &[Vec<(f64, f64)>]) -> String {
    let mut s = String::from("branch,b,lambda\n");
    for (i, c) in curves.iter().enumerate() {
        for (b, l) in c {
            let _ = writeln!(s, "{i},{},{}", num(*b), num(*l));
        }
    }
    s
}

pub fn lyapunov_csv(b: f64, r: &LyapunovResult) -> String {
    let [l1, l2, l3] = r.exponents;
    format!(
        "b,l1,l2,l3,n_iter\n{},{},{},{},{}\n",
        num(b),
        num(l1),
        num(l2),
        num(l3),
        r.n_used
    )
}

pub fn planes_csv(planes: &[AxisPlane]) -> String {
    let mut s = String::from("k,axis,offset\n");
    for p in planes {
        let _ = writeln!(s, "{},{},{}", p.index, p.axis.name(), num(p.offset));
    }
    s
}

pub fn preimages_csv(pre: &[Preimage]) -> String {
    let mut s = String::from("x,y,z,region\n");
    for q in pre {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            num(q.point.x),
            num(q.point.y),
            num(q.point.z),
            q.region.as_str()
        );
    }
    s
}

pub fn orbit_csv(first_step: usize, pts: &[Point3]) -> String {
    let mut s = String::from("step,x,y,z\n");
    for (i, p) in pts.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            first_step + i,
            num(p.x),
            num(p.y),
            num(p.z)
        );
    }
    s
}

pub fn bounds_csv(stats: &[PlaneSideStats]) -> String {
    let mut s = String::from("k,axis,offset,below,on,above,min_distance,max_distance\n");
    for r in stats {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.plane.index,
            r.plane.axis.name(),
            num(r.plane.offset),
            num(r.below),
            num(r.on),
            num(r.above),
            num(r.min_signed_distance),
            num(r.max_signed_distance)
        );
    }
    s
}

pub fn cycles_1d_csv(cycles: &[Cycle1D]) -> String {
    let mut s = String::from("cycle,i,x,multiplier,degenerate\n");
    for (c, cyc) in cycles.iter().enumerate() {
        for (i, x) in cyc.points.iter().enumerate() {
            let _ = writeln!(
                s,
                "{c},{},{},{},{}",
                i + 1,
                num(*x),
                num(cyc.multiplier),
                cyc.degenerate
            );
        }
    }
    s
}

/// Header `i,j,<u>,<v>,label`; `i` is the row (0 at the top), `j` the column.
pub fn basin_csv(grid: &BasinGrid) -> String {
    let spec = &grid.spec;
    let mut s = format!("i,j,{},{},label\n", spec.u.axis.name(), spec.v.axis.name());
    for i in 0..spec.rows() {
        for j in 0..spec.cols() {
            let p = spec.point(i, j);
            let (u, v) = (p.coord(spec.u.axis), p.coord(spec.v.axis));
            let _ = writeln!(
                s,
                "{i},{j},{},{},{}",
                num(u),
                num(v),
                grid.label(i, j).code()
            );
        }
    }
    s
}

#[derive(Debug, Serialize)]
pub struct SourceOut {
    pub period: usize,
    pub anchor: f64,
}

#[derive(Debug, Serialize)]
pub struct CycleOut {
    pub group: &'static str,
    pub kind: &'static str,
    pub period: usize,
    pub stability: &'static str,
    pub eigenvalues: [f64; 3],
    pub sources: Vec<SourceOut>,
    pub seed: [f64; 3],
    pub points: Vec<[f64; 3]>,
}

impl CycleOut {
    pub fn new(group: &'static str, c: &Cycle3D) -> Self {
        CycleOut {
            group,
            kind: c.provenance.kind.as_str(),
            period: c.period,
            stability: c.stability.as_str(),
            eigenvalues: c.eigenvalues,
            sources: c
                .provenance
                .sources
                .iter()
                .map(|s| SourceOut {
                    period: s.period,
                    anchor: s.anchor,
                })
                .collect(),
            seed: arr(c.provenance.seed),
            points: c.points.iter().copied().map(arr).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DroppedOut {
    pub seed: [f64; 3],
    pub expected_period: usize,
    pub found_period: Option<usize>,
}

impl From<&DroppedSeed> for DroppedOut {
    fn from(d: &DroppedSeed) -> Self {
        DroppedOut {
            seed: arr(d.seed),
            expected_period: d.expected_period,
            found_period: d.found_period,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CensusCounts {
    pub homogeneous: usize,
    pub mixed_pairs: usize,
    pub mixed_triples: usize,
    pub mixed: usize,
    pub total: usize,
}

#[derive(Debug, Serialize)]
pub struct CensusOut {
    pub b: f64,
    pub period: usize,
    pub counts: CensusCounts,
    pub cycles: Vec<CycleOut>,
    pub dropped: Vec<DroppedOut>,
}

impl CensusOut {
    pub fn new(b: f64, c: &Census) -> Self {
        let mut cycles: Vec<CycleOut> = c
            .homogeneous
            .iter()
            .map(|x| CycleOut::new("homogeneous", x))
            .collect();
        cycles.extend(c.mixed_pairs.iter().map(|x| CycleOut::new("mixed_pair", x)));
        cycles.extend(
            c.mixed_triples
                .iter()
                .map(|x| CycleOut::new("mixed_triple", x)),
        );
        CensusOut {
            b,
            period: c.period,
            counts: CensusCounts {
                homogeneous: c.homogeneous.len(),
                mixed_pairs: c.mixed_pairs.len(),
                mixed_triples: c.mixed_triples.len(),
                mixed: c.mixed_pairs.len() + c.mixed_triples.len(),
                total: c.len(),
            },
            cycles,
            dropped: c.dropped.iter().map(DroppedOut::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AttractorOut {
    pub id: usize,
    pub kind: &'static str,
    pub period: Option<usize>,
    pub footprint_voxels: usize,
    pub bounds: [[f64; 3]; 2],
    /// Cycle points; empty for chaotic entries.
    pub points: Vec<[f64; 3]>,
}

impl From<&Attractor> for AttractorOut {
    fn from(a: &Attractor) -> Self {
        let (lo, hi) = a.bounds();
        let points = if a.kind.period().is_some() {
            a.signature.iter().copied().map(arr).collect()
        } else {
            Vec::new()
        };
        AttractorOut {
            id: a.id,
            kind: a.kind.name(),
            period: a.kind.period(),
            footprint_voxels: a.footprint_size(),
            bounds: [arr(lo), arr(hi)],
            points,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SliceOut {
    pub fixed_axis: &'static str,
    pub fixed_value: f64,
    pub u_axis: &'static str,
    pub u_range: [f64; 2],
    pub v_axis: &'static str,
    pub v_range: [f64; 2],
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Serialize)]
pub struct ToleranceOut {
    pub max_iter: usize,
    pub transient: usize,
    pub escape_radius: f64,
    pub match_tol: f64,
    pub signature_len: usize,
    pub footprint_samples: usize,
    pub recurrence_tol: f64,
    pub tail_len: usize,
    pub min_coverage: f64,
}

impl From<&CatalogOptions> for ToleranceOut {
    fn from(o: &CatalogOptions) -> Self {
        ToleranceOut {
            max_iter: o.max_iter,
            transient: o.transient,
            escape_radius: o.escape_radius,
            match_tol: o.match_tol,
            signature_len: o.signature_len,
            footprint_samples: o.footprint_samples,
            recurrence_tol: o.recurrence_tol,
            tail_len: o.tail_len,
            min_coverage: o.min_coverage,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LabelCount {
    pub label: i64,
    pub cells: usize,
}

#[derive(Debug, Serialize)]
pub struct BasinMeta {
    pub b: f64,
    pub slice: SliceOut,
    pub tolerances: ToleranceOut,
    pub catalog: Vec<AttractorOut>,
    pub label_counts: Vec<LabelCount>,
}

impl BasinMeta {
    pub fn new(grid: &BasinGrid, catalog: &[Attractor], opts: &CatalogOptions) -> Self {
        let s = &grid.spec;
        let mut counts = std::collections::BTreeMap::new();
        for l in &grid.labels {
            *counts.entry(l.code()).or_insert(0usize) += 1;
        }
        BasinMeta {
            b: grid.params.b,
            slice: SliceOut {
                fixed_axis: s.fixed_axis.name(),
                fixed_value: s.fixed_value,
                u_axis: s.u.axis.name(),
                u_range: [s.u.min, s.u.max],
                v_axis: s.v.axis.name(),
                v_range: [s.v.min, s.v.max],
                rows: s.rows(),
                cols: s.cols(),
            },
            tolerances: opts.into(),
            catalog: catalog.iter().map(AttractorOut::from).collect(),
            label_counts: counts
                .into_iter()
                .map(|(label, cells)| LabelCount { label, cells })
                .collect(),
        }
    }
}
