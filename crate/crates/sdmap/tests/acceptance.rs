//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sdmap_core::bifurcation::{diagram_row, distinct_count, CLUSTER_TOL, DEFAULT_X0};
use sdmap_core::critical::{critical_plane, image_plane, preimages, zone_of, Zone};
use sdmap_core::cycles::{
    find_cycles_1d, fixed_points_t, lift_mixed_pair, lift_mixed_triple, Cycle1D, DEFAULT_INTERVAL,
};
use sdmap_core::{apply_t, apply_t_n, Params, Point3};

type Outcome = Result<String, String>;

fn p(b: f64) -> Params {
    Params::new(b).unwrap()
}

fn sdmap(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sdmap"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "sdmap {} exited {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(row: &[String], i: usize) -> Result<f64, String> {
    row.get(i)
        .ok_or("short row")?
        .parse()
        .map_err(|e| format!("{e}"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
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

fn fixed_point_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let b = rng.gen_range(-10.0..=0.25);
        let [x1, x2] = fixed_points_t(p(b)).map_err(|e| e.to_string())?;
        let r = 0.5 * (1.0 - 4.0 * b).sqrt();
        for (c, want) in [(&x1, 0.5 + r), (&x2, 0.5 - r)] {
            let q = c.points[0];
            for v in [q.x, q.y, q.z] {
                worst = worst.max((v - want).abs());
            }
        }
    }
    ensure(worst <= 1e-12, format!("max error {worst:e}"))?;
    Ok(format!("50 values of b, max error {worst:e}"))
}

fn event(kind: &str, period: usize, bracket: &str) -> Result<f64, String> {
    let text = sdmap(&[
        "bifurcations",
        "--kind",
        kind,
        "--period",
        &period.to_string(),
        "--bracket",
        bracket,
    ])?;
    let rows = csv_rows(&text);
    field(rows.first().ok_or("no event")?, 2)
}

fn bifurcation_constants() -> Outcome {
    let cases: [(&str, usize, &str, f64, f64); 6] = [
        ("fold", 1, "0,0.5", 0.25, 1e-9),
        ("flip", 1, "-1,-0.5", -0.75, 1e-9),
        ("flip", 2, "-1.3,-1.2", -1.25, 1e-9),
        ("fold", 3, "-1.8,-1.7", -1.75, 1e-8),
        ("flip", 3, "-1.8,-1.75", -1.768529152, 1e-6),
        ("transcritical", 1, "0,0.5", 0.25, 1e-9),
    ];
    let mut found = Vec::new();
    for (kind, period, bracket, want, tol) in cases {
        let b = event(kind, period, bracket)?;
        ensure(
            (b - want).abs() <= tol,
            format!("{kind}({period}) = {b}, want {want} ± {tol:e}"),
        )?;
        found.push(format!("{kind}({period})={b}"));
    }
    Ok(found.join(" "))
}

fn period_four_window() -> Outcome {
    let b = event("flip", 4, "-1.40,-1.30")?;
    ensure(
        (-1.40..=-1.35).contains(&b),
        format!("flip(4) = {b} outside [-1.40, -1.35]"),
    )?;
    ensure(
        (b + 1.368_098_939).abs() < 1e-8,
        format!("flip(4) = {b} moved from -1.368098939"),
    )?;
    Ok(format!("flip(4) = {b}"))
}

fn census_period_six() -> Outcome {
    let b = -1.0;
    let text = sdmap(&["census", "--b", "-1", "--period", "6"])?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let cycles = doc["cycles"].as_array().ok_or("no cycles array")?;
    let x1 = 0.5 + 0.5 * 5f64.sqrt();
    let x2 = 0.5 - 0.5 * 5f64.sqrt();

    let (mut homogeneous, mut triples, mut with_x1, mut with_x2) = (0, 0, 0, 0);
    let mut orbits: Vec<Vec<Point3>> = Vec::new();
    for c in cycles {
        let pts: Vec<Point3> = c["points"]
            .as_array()
            .ok_or("no points")?
            .iter()
            .map(|q| {
                Point3::new(
                    q[0].as_f64().unwrap(),
                    q[1].as_f64().unwrap(),
                    q[2].as_f64().unwrap(),
                )
            })
            .collect();
        ensure(pts.len() == 6, "cycle without six points")?;
        // Validated by direct iteration: closes after 6 steps and not before.
        let q = pts[0];
        let back = apply_t_n(q, p(b), 6).map_err(|e| e.to_string())?;
        ensure(back.dist_inf(&q) < 1e-9, format!("{q:?} does not close"))?;
        for d in 1..6 {
            ensure(
                apply_t_n(q, p(b), d).unwrap().dist_inf(&q) > 1e-9,
                format!("{q:?} has period {d}"),
            )?;
        }
        orbits.push(pts);
        let fixed_anchor = |a: f64| {
            c["sources"]
                .as_array()
                .unwrap()
                .iter()
                .any(|s| s["period"] == 1 && (s["anchor"].as_f64().unwrap() - a).abs() < 1e-9)
        };
        match c["group"].as_str().unwrap() {
            "homogeneous" => homogeneous += 1,
            "mixed_triple" => triples += 1,
            "mixed_pair" if fixed_anchor(x1) => with_x1 += 1,
            "mixed_pair" if fixed_anchor(x2) => with_x2 += 1,
            g => return Err(format!("unexpected group {g}")),
        }
    }
    for (i, a) in orbits.iter().enumerate() {
        for c in &orbits[i + 1..] {
            ensure(
                !a.iter().any(|q| q.dist_inf(&c[0]) < 1e-9),
                "duplicate orbit",
            )?;
        }
    }
    ensure(orbits.len() == 9, format!("{} orbits", orbits.len()))?;
    ensure(
        (homogeneous, triples, with_x1, with_x2) == (1, 2, 3, 3),
        format!("groups homogeneous {homogeneous}, triples {triples}, pairs with x1 {with_x1}, pairs with x2 {with_x2}"),
    )?;

    // Brute force over every point built from {x1, x2, 0, -1}.
    let values = [x1, x2, 0.0, -1.0];
    let mut missing = 0;
    let mut total = 0;
    for &x in &values {
        for &y in &values {
            for &z in &values {
                let q = Point3::new(x, y, z);
                let closes = apply_t_n(q, p(b), 6).unwrap().dist_inf(&q) < 1e-9;
                let minimal = (1..6).all(|d| apply_t_n(q, p(b), d).unwrap().dist_inf(&q) > 1e-9);
                if closes && minimal {
                    total += 1;
                    if !orbits.iter().flatten().any(|r| r.dist_inf(&q) < 1e-9) {
                        missing += 1;
                    }
                }
            }
        }
    }
    ensure(
        total == 54 && missing == 0,
        format!("{total} period-6 points by enumeration, {missing} missing"),
    )?;
    Ok("9 orbits: 1 homogeneous, 2 + 3 + 3 mixed; 54 enumerated points all covered".to_string())
}

fn distinct(cycles: Vec<Cycle1D>, taken: &[Cycle1D]) -> Option<Cycle1D> {
    cycles
        .into_iter()
        .find(|c| !taken.iter().any(|d| d.same_orbit(c, 1e-9)))
}

fn count_formulas() -> Outcome {
    let mut checked = 0;
    for (b, n, m) in [
        (-1.0, 1, 2),
        (-1.3, 2, 4),
        (-1.9, 1, 3),
        (-1.9, 2, 3),
        (-1.9, 3, 3),
        (-1.9, 2, 4),
        (-1.9, 3, 5),
        (-2.0, 4, 6),
    ] {
        let a = find_cycles_1d(p(b), n, DEFAULT_INTERVAL)
            .map_err(|e| e.to_string())?
            .remove(0);
        let c = distinct(
            find_cycles_1d(p(b), m, DEFAULT_INTERVAL).unwrap(),
            std::slice::from_ref(&a),
        )
        .ok_or("no second cycle")?;
        let lift = lift_mixed_pair(&a, &c).map_err(|e| e.to_string())?;
        let want = (n + m) * n * m / lcm(n, m);
        ensure(
            lift.cycles.len() == want,
            format!(
                "pair ({n},{m}) at b={b}: {} cycles, want {want}",
                lift.cycles.len()
            ),
        )?;
        checked += 1;
    }
    for (b, per) in [
        (-1.0, [1, 1, 2]),
        (-1.9, [1, 2, 3]),
        (-1.9, [2, 3, 4]),
        (-1.9, [3, 3, 2]),
        (-2.0, [1, 4, 5]),
    ] {
        let mut chosen: Vec<Cycle1D> = Vec::new();
        for k in per {
            let next = distinct(find_cycles_1d(p(b), k, DEFAULT_INTERVAL).unwrap(), &chosen)
                .ok_or("not enough cycles")?;
            chosen.push(next);
        }
        let lift =
            lift_mixed_triple(&chosen[0], &chosen[1], &chosen[2]).map_err(|e| e.to_string())?;
        let want = 2 * per[0] * per[1] * per[2] / lcm(lcm(per[0], per[1]), per[2]);
        ensure(
            lift.cycles.len() == want,
            format!(
                "triple {per:?} at b={b}: {} cycles, want {want}",
                lift.cycles.len()
            ),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} families"))
}

fn spectrum(b: &str) -> Result<[f64; 3], String> {
    let text = sdmap(&[
        "lyapunov",
        "--b",
        b,
        "--x0",
        "0,-0.5,0.5",
        "--iters",
        "1000000",
    ])?;
    let row = csv_rows(&text).into_iter().next().ok_or("no row")?;
    Ok([field(&row, 1)?, field(&row, 2)?, field(&row, 3)?])
}

fn lyapunov() -> Outcome {
    let a = spectrum("-2")?;
    let c = spectrum("-1.864")?;
    let detail = format!("b=-2 {a:?}; b=-1.864 {c:?}");
    ensure(
        a.iter().all(|l| (l - 0.23105).abs() <= 0.005),
        format!("b=-2 outside 0.23105 ± 0.005: {detail}"),
    )?;
    ensure(
        c.iter().all(|l| *l > 0.0 && (l - 0.153).abs() <= 0.010),
        format!("b=-1.864 outside 0.153 ± 0.010: {detail}"),
    )?;
    Ok(detail)
}

fn critical_planes() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in [-2.0, -1.864, -1.3, -0.5, 0.0, 0.25] {
        let mut plane = critical_plane(-1, p(b));
        for k in 0..=12 {
            plane =
                image_plane(&plane, p(b)).ok_or(format!("image of PC_{} is not a plane", k - 1))?;
            let closed = critical_plane(k, p(b));
            ensure(
                plane.axis == closed.axis && plane.index == k,
                format!("PC_{k} axis mismatch at b={b}"),
            )?;
            worst = worst.max((plane.offset - closed.offset).abs());
        }
    }
    ensure(worst <= 1e-12, format!("max offset error {worst:e}"))?;
    let at0: Vec<_> = [-1, 2, 5, 8]
        .iter()
        .map(|k| critical_plane(*k, p(0.0)))
        .collect();
    ensure(
        at0.iter().all(|q| q.same_plane(&at0[0], 0.0)),
        "PC_-1, PC_2, PC_5, PC_8 differ at b = 0",
    )?;
    Ok(format!(
        "k <= 12 max error {worst:e}; PC_-1 = PC_2 = PC_5 = PC_8 at b = 0"
    ))
}

fn preimage_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut z2, mut z0) = (0, 0);
    let mut worst: f64 = 0.0;
    while z2 < 10_000 {
        let par = p(rng.gen_range(-2.0..=0.25));
        let q = Point3::new(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        );
        let pre = preimages(&q, par);
        match zone_of(&q, par) {
            Zone::Z2 => {
                z2 += 1;
                ensure(
                    pre.len() == 2,
                    format!("{q:?} in Z2 has {} preimages", pre.len()),
                )?;
                for r in pre {
                    worst = worst.max(apply_t(r.point, par).unwrap().dist_inf(&q));
                }
            }
            Zone::Z0 => {
                z0 += 1;
                ensure(pre.is_empty(), format!("{q:?} in Z0 has preimages"))?;
            }
            Zone::OnPc0 => {}
        }
    }
    ensure(worst <= 1e-12, format!("max round-trip error {worst:e}"))?;
    Ok(format!(
        "{z2} Z2 points, max error {worst:e}; {z0} Z0 points without preimages"
    ))
}

fn diagram_narrative() -> Outcome {
    let mut counts = Vec::new();
    for b in [-0.4, -0.78, -1.25, -1.6] {
        let row = diagram_row(b, DEFAULT_X0, 1000, 200).map_err(|e| e.to_string())?;
        counts.push(distinct_count(&row.samples, CLUSTER_TOL));
    }
    let detail = format!("counts at -0.4, -0.78, -1.25, -1.6: {counts:?}");
    ensure(
        counts[0] == 1 && counts[1] == 2 && counts[2] == 4 && counts[3] > 64,
        detail.clone(),
    )?;
    Ok(detail)
}

fn basin_labels(dir: &Path, b: &str) -> Result<(usize, usize), String> {
    let out = dir.join(format!("basin{b}.csv"));
    let out_s = out.to_str().ok_or("non-utf8 path")?;
    sdmap(&["basin", "--b", b, "--res", "200", "--out", out_s])?;
    let meta = std::fs::read_to_string(format!("{out_s}.meta.json")).map_err(|e| e.to_string())?;
    let meta: Value = serde_json::from_str(&meta).map_err(|e| e.to_string())?;
    let counts = meta["result"]["label_counts"]
        .as_array()
        .ok_or("no label counts")?;
    let bounded: BTreeSet<i64> = counts
        .iter()
        .filter(|c| c["cells"].as_u64().unwrap_or(0) > 0)
        .map(|c| c["label"].as_i64().unwrap())
        .filter(|l| *l >= 0)
        .collect();
    let divergent = counts
        .iter()
        .find(|c| c["label"] == -1)
        .and_then(|c| c["cells"].as_u64())
        .unwrap_or(0) as usize;
    Ok((bounded.len(), divergent))
}

fn basin_coexistence() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (l1, d1) = basin_labels(dir.path(), "-1.864")?;
    let (l2, d2) = basin_labels(dir.path(), "-2")?;
    let detail = format!("b=-1.864: {l1} bounded labels, {d1} divergent cells; b=-2: {l2} bounded labels, {d2} divergent cells");
    ensure(l1 >= 2 && d1 > 0 && l2 >= 1 && d2 > 0, detail.clone())?;
    Ok(detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("fixed-point closed form", fixed_point_closed_form),
        ("bifurcation constants", bifurcation_constants),
        ("period-4 window", period_four_window),
        ("period-6 cycle census", census_period_six),
        ("lift count formulas", count_formulas),
        ("Lyapunov spectra", lyapunov),
        ("critical planes", critical_planes),
        ("preimage round trip", preimage_round_trip),
        ("diagram narrative", diagram_narrative),
        ("basin coexistence", basin_coexistence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
