//! Parallel versions of the parameter and basin sweeps.
//!
//! Work is split per `b` value or per grid row; rayon's indexed collect
//! keeps the canonical order, so the output matches the sequential core
//! functions exactly.

use rayon::prelude::*;

use sdmap_core::basin::{classify_row, Attractor, BasinGrid, CatalogOptions, SliceSpec};
use sdmap_core::bifurcation::{diagram_row, grid_value, DiagramDataset};
use sdmap_core::{Error, Params, Point3, Result};

pub fn diagram(
    range: (f64, f64),
    steps: usize,
    p0: Point3,
    transient: usize,
    samples: usize,
) -> Result<DiagramDataset> {
    if !(range.0 < range.1) {
        return Err(Error::InvalidArgument("b range must satisfy min < max"));
    }
    if steps < 2 || samples == 0 {
        return Err(Error::InvalidArgument("need steps >= 2 and samples >= 1"));
    }
    let rows = (0..steps)
        .into_par_iter()
        .map(|i| diagram_row(grid_value(range, steps, i), p0, transient, samples))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagramDataset { rows })
}

pub fn basin(
    params: Params,
    spec: &SliceSpec,
    catalog: &[Attractor],
    opts: &CatalogOptions,
) -> Result<BasinGrid> {
    spec.validate()?;
    let rows: Vec<_> = (0..spec.rows())
        .into_par_iter()
        .map(|row| classify_row(params, spec, catalog, opts, row))
        .collect();
    Ok(BasinGrid {
        spec: *spec,
        labels: rows.into_iter().flatten().collect(),
        params,
    })
}

/// Runs `f` on a pool with at most `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> std::io::Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(std::io::Error::other)?;
            Ok(pool.install(f))
        }
    }
}
