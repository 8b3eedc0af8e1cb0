//! Argument parsing and dispatch for the `sdmap` binary.
//!
//! Results go to `--out` or stdout. When `--out` is given, a sidecar
//! `<out>.meta.json` echoes the full configuration (and, for basins, the
//! slice, tolerances and attractor catalog).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sdmap_core::basin::{build_catalog, default_seeds, CatalogOptions, Label, SliceSpec};
use sdmap_core::bifurcation::{self, find_flip, find_fold, find_transcritical, multiplier_curve};
use sdmap_core::critical::{attractor_bounds_report, critical_plane, preimages, zone_of};
use sdmap_core::cycles::{
    census, find_cycles_1d, fixed_points_t, lift_homogeneous, lift_homogeneous_3n, lift_mixed_pair,
    lift_mixed_triple, Cycle1D, DEFAULT_INTERVAL,
};
use sdmap_core::lyapunov::{self, lyapunov_spectrum_with, LyapunovOptions};
use sdmap_core::{orbit, Axis, Params, Point3};

use crate::error::CliError;
use crate::output::{self, num, BasinMeta, CensusOut, CycleOut, DroppedOut};
use crate::render::{render_grid, render_labels, Palette};
use crate::sweep;

#[derive(Debug, Parser)]
#[command(
    name = "sdmap",
    version,
    about = "Cycles, bifurcations, Lyapunov spectra, critical planes and basins of T(x, y, z) = (y, z, x^2 + b)"
)]
pub struct Cli {
    /// Cap on worker threads for parallel sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pair(pub f64, pub f64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triple(pub f64, pub f64, pub f64);

impl From<Triple> for Point3 {
    fn from(t: Triple) -> Point3 {
        Point3::new(t.0, t.1, t.2)
    }
}

fn floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(format!(
            "expected {n} comma-separated numbers, got {}",
            v.len()
        ));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".to_string());
    }
    Ok(v)
}

fn parse_pair(s: &str) -> Result<Pair, String> {
    let v = floats(s, 2)?;
    Ok(Pair(v[0], v[1]))
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    let v = floats(s, 3)?;
    Ok(Triple(v[0], v[1], v[2]))
}

/// `period:index`, the index counting cycles in ascending order of their smallest point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleRef {
    pub period: usize,
    pub index: usize,
}

fn parse_cycle_ref(s: &str) -> Result<CycleRef, String> {
    let (p, i) = s
        .split_once(':')
        .ok_or_else(|| format!("'{s}': expected period:index"))?;
    let period = p.trim().parse().map_err(|e| format!("'{p}': {e}"))?;
    let index = i.trim().parse().map_err(|e| format!("'{i}': {e}"))?;
    if period == 0 {
        return Err("period must be positive".to_string());
    }
    Ok(CycleRef { period, index })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftMode {
    Homogeneous,
    Homogeneous3n,
    Pair,
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    Fold,
    Flip,
    Transcritical,
    /// Multiplier along every continued branch instead of a single event.
    Multiplier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisArg {
    X,
    Y,
    Z,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Axis {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Y => Axis::Y,
            AxisArg::Z => Axis::Z,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// The two fixed points of T with eigenvalues and stability.
    FixedPoints(FixedPointsArgs),
    /// Cycles of H = x^2 + b with a given minimal period.
    #[command(name = "cycles-1d")]
    Cycles1d(Cycles1dArgs),
    /// Lift cycles of H to cycles of T.
    Lift(LiftArgs),
    /// Every cycle of T with a given period.
    Census(CensusArgs),
    /// Locate a fold, flip or transcritical bifurcation, or trace multipliers.
    Bifurcations(BifurcationsArgs),
    /// Bifurcation diagram samples as CSV `b,x`.
    Diagram(DiagramArgs),
    /// Lyapunov spectrum of T along an orbit.
    Lyapunov(LyapunovArgs),
    /// Critical planes PC_-1 .. PC_kmax.
    CriticalPlanes(CriticalPlanesArgs),
    /// Rank-one preimages of a point.
    Preimages(PreimagesArgs),
    /// Orbit samples, or their position relative to the critical planes.
    Orbit(OrbitArgs),
    /// Classify a 2D slice of initial conditions into basins.
    Basin(BasinArgs),
    /// Render a basin CSV as a binary PPM image.
    Render(RenderArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FixedPointsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct Cycles1dArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long)]
    pub period: usize,
    /// Search interval `lo,hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pair, default_value = "-2.5,2.5")]
    pub interval: Pair,
}

#[derive(Debug, Args, Serialize)]
pub struct LiftArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, value_enum)]
    pub mode: LiftMode,
    /// Source cycle as `period:index` (index in ascending order of smallest point); repeat per cycle.
    #[arg(long = "cycle", value_parser = parse_cycle_ref, required = true)]
    pub cycles: Vec<CycleRef>,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long)]
    pub period: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct BifurcationsArgs {
    #[arg(long, value_enum)]
    pub kind: EventKind,
    #[arg(long, default_value_t = 1)]
    pub period: usize,
    /// Parameter bracket `b_lo,b_hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
    pub bracket: Pair,
    /// Grid size for `--kind multiplier`.
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct DiagramArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = -1.99)]
    pub b_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = -0.3)]
    pub b_max: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = bifurcation::DEFAULT_TRANSIENT)]
    pub transient: usize,
    #[arg(long, default_value_t = bifurcation::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple, default_value = "0,-0.5,0")]
    pub x0: Triple,
}

#[derive(Debug, Args, Serialize)]
pub struct LyapunovArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple, default_value = "0,-0.5,0.5")]
    pub x0: Triple,
    #[arg(long, default_value_t = lyapunov::DEFAULT_ITERS)]
    pub iters: usize,
    #[arg(long, default_value_t = lyapunov::DEFAULT_TRANSIENT)]
    pub transient: usize,
    #[arg(long, default_value_t = 1)]
    pub reorth_every: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct CriticalPlanesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 8)]
    pub k_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct PreimagesArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
    pub point: Triple,
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_triple, default_value = "0,-0.5,0.5")]
    pub x0: Triple,
    #[arg(long, default_value_t = 30_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub transient: usize,
    /// Emit per-plane side statistics instead of the points.
    #[arg(long)]
    pub bounds_report: bool,
    #[arg(long, default_value_t = 8)]
    pub k_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct BasinArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    /// Axis held fixed.
    #[arg(long, value_enum, default_value = "z")]
    pub axis: AxisArg,
    /// Value of the fixed axis.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub value: f64,
    /// Range `min,max` of both swept axes.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pair, default_value = "-2.5,2.5")]
    pub range: Pair,
    /// Cells per swept axis.
    #[arg(long, default_value_t = 200)]
    pub res: usize,
    /// Extra catalog seed `x,y,z`; repeatable.
    #[arg(long = "seed-point", allow_hyphen_values = true, value_parser = parse_triple)]
    pub seed_points: Vec<Triple>,
    /// Side of the lattice of slice points added to the catalog seeds.
    #[arg(long, default_value_t = 8)]
    pub lattice: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1000)]
    pub transient: usize,
    #[arg(long, default_value_t = 0.05)]
    pub match_tol: f64,
    /// Also write the label image here.
    #[arg(long)]
    pub ppm: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct RenderArgs {
    /// Basin CSV written by `sdmap basin`.
    #[arg(long)]
    pub input: PathBuf,
    /// `label=rrggbb,...` with labels as ids, `divergent` or `undecided`.
    #[arg(long)]
    pub palette: Option<String>,
}

#[derive(Serialize)]
struct Meta<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<T>,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match sweep::with_threads(cli.threads, || execute(&cli)) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn write_meta<T: Serialize>(cli: &Cli, result: Option<T>) -> Result<(), CliError> {
    if let Some(out) = &cli.out {
        let meta = Meta {
            tool: "sdmap",
            version: env!("CARGO_PKG_VERSION"),
            command: &cli.command,
            result,
        };
        let mut text = serde_json::to_string_pretty(&meta)?;
        text.push('\n');
        std::fs::write(sidecar_path(out), text)?;
    }
    Ok(())
}

fn json_text<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn params(b: f64) -> Result<Params, CliError> {
    Ok(Params::new(b)?)
}

fn select(b: f64, r: CycleRef) -> Result<Cycle1D, CliError> {
    let mut found = find_cycles_1d(params(b)?, r.period, DEFAULT_INTERVAL)?;
    if r.index >= found.len() {
        return Err(CliError::Usage(format!(
            "no cycle {}:{} at b = {b} ({} cycles of period {})",
            r.period,
            r.index,
            found.len(),
            r.period
        )));
    }
    Ok(found.swap_remove(r.index))
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::FixedPoints(a) => {
            let fps = fixed_points_t(params(a.b)?)?;
            let text = match a.format {
                Format::Json => {
                    let v: Vec<CycleOut> = fps
                        .iter()
                        .map(|c| CycleOut::new("fixed_point", c))
                        .collect();
                    json_text(&v)?
                }
                Format::Csv => {
                    let mut s = String::from("name,x,y,z,eig1,eig2,eig3,stability\n");
                    for (name, c) in ["X1", "X2"].iter().zip(&fps) {
                        let p = c.points[0];
                        let [e1, e2, e3] = c.eigenvalues;
                        s.push_str(&format!(
                            "{name},{},{},{},{},{},{},{}\n",
                            num(p.x),
                            num(p.y),
                            num(p.z),
                            num(e1),
                            num(e2),
                            num(e3),
                            c.stability.as_str()
                        ));
                    }
                    s
                }
            };
            emit(out, text.as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Cycles1d(a) => {
            let cycles = find_cycles_1d(params(a.b)?, a.period, (a.interval.0, a.interval.1))?;
            emit(out, output::cycles_1d_csv(&cycles).as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Lift(a) => {
            let src: Vec<Cycle1D> = a
                .cycles
                .iter()
                .map(|r| select(a.b, *r))
                .collect::<Result<_, _>>()?;
            let need = match a.mode {
                LiftMode::Homogeneous | LiftMode::Homogeneous3n => 1,
                LiftMode::Pair => 2,
                LiftMode::Triple => 3,
            };
            if src.len() != need {
                return Err(CliError::Usage(format!(
                    "mode needs exactly {need} --cycle argument(s)"
                )));
            }
            let (cycles, dropped) = match a.mode {
                LiftMode::Homogeneous => (vec![lift_homogeneous(&src[0])?], Vec::new()),
                LiftMode::Homogeneous3n => {
                    let l = lift_homogeneous_3n(&src[0])?;
                    (l.cycles, l.dropped)
                }
                LiftMode::Pair => {
                    let l = lift_mixed_pair(&src[0], &src[1])?;
                    (l.cycles, l.dropped)
                }
                LiftMode::Triple => {
                    let l = lift_mixed_triple(&src[0], &src[1], &src[2])?;
                    (l.cycles, l.dropped)
                }
            };
            #[derive(Serialize)]
            struct LiftOut {
                b: f64,
                cycles: Vec<CycleOut>,
                dropped: Vec<DroppedOut>,
            }
            let group = match a.mode {
                LiftMode::Homogeneous | LiftMode::Homogeneous3n => "homogeneous",
                LiftMode::Pair => "mixed_pair",
                LiftMode::Triple => "mixed_triple",
            };
            let doc = LiftOut {
                b: a.b,
                cycles: cycles.iter().map(|c| CycleOut::new(group, c)).collect(),
                dropped: dropped.iter().map(DroppedOut::from).collect(),
            };
            emit(out, json_text(&doc)?.as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Census(a) => {
            let c = census(params(a.b)?, a.period)?;
            let doc = CensusOut::new(a.b, &c);
            let text = match a.format {
                Format::Json => json_text(&doc)?,
                Format::Csv => {
                    let mut s = String::from("orbit,group,i,x,y,z\n");
                    for (k, cyc) in doc.cycles.iter().enumerate() {
                        for (i, p) in cyc.points.iter().enumerate() {
                            s.push_str(&format!(
                                "{k},{},{i},{},{},{}\n",
                                cyc.group,
                                num(p[0]),
                                num(p[1]),
                                num(p[2])
                            ));
                        }
                    }
                    s
                }
            };
            emit(out, text.as_bytes())?;
            write_meta(cli, Some(&doc.counts))
        }
        Command::Bifurcations(a) => {
            let bracket = (a.bracket.0, a.bracket.1);
            let text = match a.kind {
                EventKind::Fold => output::events_csv(&[find_fold(a.period, bracket)?]),
                EventKind::Flip => output::events_csv(&[find_flip(a.period, bracket)?]),
                EventKind::Transcritical => output::events_csv(&[find_transcritical(bracket)?]),
                EventKind::Multiplier => {
                    output::multipliers_csv(&multiplier_curve(a.period, bracket, a.steps)?)
                }
            };
            emit(out, text.as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Diagram(a) => {
            let d = sweep::diagram(
                (a.b_min, a.b_max),
                a.steps,
                a.x0.into(),
                a.transient,
                a.samples,
            )?;
            emit(out, output::diagram_csv(&d).as_bytes())?;
            let diverged: Vec<f64> = d.rows.iter().filter(|r| r.diverged).map(|r| r.b).collect();
            #[derive(Serialize)]
            struct DiagramMeta {
                diverged_b: Vec<f64>,
            }
            write_meta(
                cli,
                Some(DiagramMeta {
                    diverged_b: diverged,
                }),
            )
        }
        Command::Lyapunov(a) => {
            let opts = LyapunovOptions {
                reorth_every: a.reorth_every,
                ..LyapunovOptions::default()
            };
            let r = lyapunov_spectrum_with(a.x0.into(), params(a.b)?, a.iters, a.transient, opts)?;
            emit(out, output::lyapunov_csv(a.b, &r).as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::CriticalPlanes(a) => {
            if a.k_max < -1 {
                return Err(CliError::Usage("--k-max must be at least -1".to_string()));
            }
            let par = params(a.b)?;
            let planes: Vec<_> = (-1..=a.k_max).map(|k| critical_plane(k, par)).collect();
            emit(out, output::planes_csv(&planes).as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Preimages(a) => {
            let par = params(a.b)?;
            let p: Point3 = a.point.into();
            let pre = preimages(&p, par);
            emit(out, output::preimages_csv(&pre).as_bytes())?;
            #[derive(Serialize)]
            struct Zone {
                zone: &'static str,
            }
            write_meta(
                cli,
                Some(Zone {
                    zone: zone_of(&p, par).as_str(),
                }),
            )
        }
        Command::Orbit(a) => {
            let par = params(a.b)?;
            let pts = orbit(a.x0.into(), par, a.n, a.transient)?;
            let text = if a.bounds_report {
                output::bounds_csv(&attractor_bounds_report(&pts, par, a.k_max))
            } else {
                output::orbit_csv(a.transient + 1, &pts)
            };
            emit(out, text.as_bytes())?;
            write_meta::<()>(cli, None)
        }
        Command::Basin(a) => run_basin(cli, a),
        Command::Render(a) => {
            let text = std::fs::read_to_string(&a.input)?;
            let (rows, cols, labels) = read_basin_csv(&text)?;
            let palette = match &a.palette {
                Some(s) => Palette::parse(s)?,
                None => Palette::covering(&labels),
            };
            let img = render_labels(rows, cols, &labels, &palette)?;
            emit(out, &img)?;
            write_meta::<()>(cli, None)
        }
    }
}

fn run_basin(cli: &Cli, a: &BasinArgs) -> Result<(), CliError> {
    let par = params(a.b)?;
    let axis: Axis = a.axis.into();
    let spec = SliceSpec::square(axis, a.value, a.range.0, a.range.1, a.res)?;
    let opts = CatalogOptions {
        max_iter: a.max_iter,
        transient: a.transient,
        match_tol: a.match_tol,
        ..CatalogOptions::default()
    };
    let extra: Vec<Point3> = if a.seed_points.is_empty() {
        vec![Point3::new(0.0, -0.5, 0.5), bifurcation::DEFAULT_X0]
    } else {
        a.seed_points.iter().map(|t| (*t).into()).collect()
    };
    let seeds = default_seeds(&spec, &extra, a.lattice);
    let catalog = build_catalog(par, &seeds, &opts)?;
    let grid = sweep::basin(par, &spec, &catalog, &opts)?;
    emit(cli.out.as_deref(), output::basin_csv(&grid).as_bytes())?;
    if let Some(ppm) = &a.ppm {
        std::fs::write(ppm, render_grid(&grid, &Palette::covering(&grid.labels))?)?;
    }
    write_meta(cli, Some(BasinMeta::new(&grid, &catalog, &opts)))
}

/// Rows, columns and row-major labels of a basin CSV.
pub fn read_basin_csv(text: &str) -> Result<(usize, usize, Vec<Label>), CliError> {
    let bad = |line: usize, what: &str| CliError::Usage(format!("basin csv line {line}: {what}"));
    let mut cells = Vec::new();
    for (n, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(bad(n + 1, "expected 5 fields"));
        }
        let i: usize = f[0].parse().map_err(|_| bad(n + 1, "bad row index"))?;
        let j: usize = f[1].parse().map_err(|_| bad(n + 1, "bad column index"))?;
        let code: i64 = f[4].parse().map_err(|_| bad(n + 1, "bad label"))?;
        let label = Label::from_code(code).ok_or_else(|| bad(n + 1, "unknown label code"))?;
        cells.push((i, j, label));
    }
    if cells.is_empty() {
        return Err(CliError::Usage("basin csv has no cells".to_string()));
    }
    let rows = cells.iter().map(|c| c.0).max().unwrap_or(0) + 1;
    let cols = cells.iter().map(|c| c.1).max().unwrap_or(0) + 1;
    let mut labels = vec![None; rows * cols];
    for (i, j, l) in cells {
        labels[i * cols + j] = Some(l);
    }
    let labels = labels
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CliError::Usage("basin csv does not cover a full grid".to_string()))?;
    Ok((rows, cols, labels))
}
