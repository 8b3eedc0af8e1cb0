//! Critical planes, zones and the two inverse branches of `T`.
//!
//! `det J = 2x`, so the Jacobian is singular on `PC₋₁ = {x = 0}`. Its
//! images `PC_k = T^{k+1}(PC₋₁)` are again axis-aligned planes whose
//! offsets run along the `H`-orbit of the critical point 0.
//!
//! A point has two preimages when `z > b` (zone `Z2`) and none when
//! `z < b` (zone `Z0`); `PC₀ = {z = b}` separates them.

use alloc::vec::Vec;

use crate::map::{apply_t, h1d_n, Axis, Params, Point3};
use crate::math;

/// Tie tolerance for zone and region tests.
pub const TIE_TOL: f64 = 1e-12;
pub const DEFAULT_K_MAX: i64 = 8;

/// The plane `{p : p.axis = offset}` with its rank index `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisPlane {
    pub index: i64,
    pub axis: Axis,
    pub offset: f64,
}

impl AxisPlane {
    /// `p.axis − offset`.
    pub fn signed_distance(&self, p: &Point3) -> f64 {
        p.coord(self.axis) - self.offset
    }

    pub fn contains(&self, p: &Point3, tol: f64) -> bool {
        self.signed_distance(p).abs() <= tol
    }

    /// Same axis and offsets within `tol`, regardless of index.
    pub fn same_plane(&self, other: &AxisPlane, tol: f64) -> bool {
        self.axis == other.axis && (self.offset - other.offset).abs() <= tol
    }
}

/// `PC_k` in closed form. `k = −1` is `{x = 0}`; for `k = 3m + r` the
/// offset is `H^{m+1}(0)` on axis `z`, `y`, `x` for `r = 0, 1, 2`.
///
/// # Panics
/// If `k < −1`.
pub fn critical_plane(k: i64, params: Params) -> AxisPlane {
    assert!(k >= -1, "critical plane index must be at least -1");
    if k == -1 {
        return AxisPlane {
            index: -1,
            axis: Axis::X,
            offset: 0.0,
        };
    }
    let m = (k / 3) as usize;
    let axis = match k % 3 {
        0 => Axis::Z,
        1 => Axis::Y,
        _ => Axis::X,
    };
    AxisPlane {
        index: k,
        axis,
        offset: h1d_n(0.0, params, m + 1),
    }
}

/// The image of an axis-aligned plane under `T`, computed by mapping three
/// non-collinear points of the plane and reading off the coordinate they
/// share. `None` if the images do not lie on a common axis-aligned plane
/// (which happens only for planes not of the form produced here).
pub fn image_plane(plane: &AxisPlane, params: Params) -> Option<AxisPlane> {
    let base = [(0.3, -0.7), (1.1, 0.2), (-0.4, 0.9)];
    let mut pts = [Point3::default(); 3];
    for (q, (u, v)) in pts.iter_mut().zip(base) {
        let mut p = Point3::splat(0.0);
        let others: Vec<Axis> = Axis::ALL
            .iter()
            .copied()
            .filter(|a| *a != plane.axis)
            .collect();
        p.set_coord(plane.axis, plane.offset);
        p.set_coord(others[0], u);
        p.set_coord(others[1], v);
        *q = apply_t(p, params).ok()?;
    }
    Axis::ALL.iter().copied().find_map(|axis| {
        let c = pts[0].coord(axis);
        let common = pts.iter().all(|q| q.coord(axis) == c);
        common.then_some(AxisPlane {
            index: plane.index + 1,
            axis,
            offset: c,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Z0,
    Z2,
    OnPc0,
}

impl Zone {
    pub fn as_str(self) -> &'static str {
        match self {
            Zone::Z0 => "Z0",
            Zone::Z2 => "Z2",
            Zone::OnPc0 => "on_PC0",
        }
    }
}

pub fn zone_of(p: &Point3, params: Params) -> Zone {
    let s = p.z - params.b;
    if s.abs() <= TIE_TOL {
        Zone::OnPc0
    } else if s > 0.0 {
        Zone::Z2
    } else {
        Zone::Z0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    R1,
    R2,
    OnPcMinus1,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::OnPcMinus1 => "on_PC_minus1",
        }
    }
}

pub fn region_of(p: &Point3) -> Region {
    if p.x.abs() <= TIE_TOL {
        Region::OnPcMinus1
    } else if p.x > 0.0 {
        Region::R1
    } else {
        Region::R2
    }
}

/// A preimage with the region it lies in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preimage {
    pub point: Point3,
    pub region: Region,
}

/// Rank-one preimages of `p`: `(±√(z − b), x, y)` in `Z2`, the merged
/// `(0, x, y)` on `PC₀`, none in `Z0`. The `R1` branch comes first.
pub fn preimages(p: &Point3, params: Params) -> Vec<Preimage> {
    match zone_of(p, params) {
        Zone::Z0 => Vec::new(),
        Zone::OnPc0 => alloc::vec![Preimage {
            point: Point3::new(0.0, p.x, p.y),
            region: Region::OnPcMinus1
        }],
        Zone::Z2 => {
            let u = math::sqrt(p.z - params.b);
            alloc::vec![
                Preimage {
                    point: Point3::new(u, p.x, p.y),
                    region: Region::R1
                },
                Preimage {
                    point: Point3::new(-u, p.x, p.y),
                    region: Region::R2
                },
            ]
        }
    }
}

/// Containment statistics of an orbit with respect to one critical plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneSideStats {
    pub plane: AxisPlane,
    /// Fractions of points strictly below, on (within [`TIE_TOL`]) and
    /// strictly above the plane along its axis.
    pub below: f64,
    pub on: f64,
    pub above: f64,
    pub min_signed_distance: f64,
    pub max_signed_distance: f64,
}

/// Side statistics of `orbit` for `PC₋₁ … PC_{k_max}`. Empty if the orbit is empty.
pub fn attractor_bounds_report(
    orbit: &[Point3],
    params: Params,
    k_max: i64,
) -> Vec<PlaneSideStats> {
    if orbit.is_empty() {
        return Vec::new();
    }
    let n = orbit.len() as f64;
    (-1..=k_max)
        .map(|k| {
            let plane = critical_plane(k, params);
            let (mut below, mut on, mut above) = (0usize, 0usize, 0usize);
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for p in orbit {
                let d = plane.signed_distance(p);
                lo = lo.min(d);
                hi = hi.max(d);
                if d.abs() <= TIE_TOL {
                    on += 1;
                } else if d < 0.0 {
                    below += 1;
                } else {
                    above += 1;
                }
            }
            PlaneSideStats {
                plane,
                below: below as f64 / n,
                on: on as f64 / n,
                above: above as f64 / n,
                min_signed_distance: lo,
                max_signed_distance: hi,
            }
        })
        .collect()
}
