//! Brute-force enumeration of cycles of `T` whose coordinates are drawn from
//! given cycles of `H`, compared with the lift operations.
//!
//! A point with all coordinates on cycles of `H` is periodic for `T`, and
//! `T` acts on it combinatorially: `(i, j, k) ↦ (j, k, succ(i))` on indices
//! into the list of cycle values. Orbits are enumerated on indices, so the
//! oracle never relies on the seed formulas.

use std::collections::BTreeSet;

use sdmap_core::cycles::{
    census, find_cycles_1d, lift_homogeneous_3n, lift_mixed_pair, lift_mixed_triple, Cycle1D,
    Cycle3D, DEFAULT_INTERVAL,
};
use sdmap_core::{apply_t_n, Params, Point3};

type Orbit = BTreeSet<[usize; 3]>;

struct Pool {
    values: Vec<f64>,
    owner: Vec<usize>,
    succ: Vec<usize>,
}

impl Pool {
    fn new(cycles: &[&Cycle1D], params: Params) -> Self {
        let mut values = Vec::new();
        let mut owner = Vec::new();
        for (c, cyc) in cycles.iter().enumerate() {
            values.extend(cyc.points.iter().copied());
            owner.extend(std::iter::repeat(c).take(cyc.period));
        }
        let mut pool = Pool {
            succ: Vec::new(),
            values,
            owner,
        };
        pool.succ = (0..pool.values.len())
            .map(|i| {
                let h = pool.values[i] * pool.values[i] + params.b;
                pool.index_of(h)
            })
            .collect();
        pool
    }

    fn index_of(&self, v: f64) -> usize {
        let (i, d) = self
            .values
            .iter()
            .enumerate()
            .map(|(i, u)| (i, (u - v).abs()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        assert!(d < 1e-9, "value {v} is not on a pooled cycle");
        i
    }

    fn orbit(&self, start: [usize; 3]) -> Vec<[usize; 3]> {
        let mut out = vec![start];
        let mut p = start;
        loop {
            p = [p[1], p[2], self.succ[p[0]]];
            if p == start {
                return out;
            }
            out.push(p);
        }
    }

    /// All orbits whose points use exactly the cycles in `required` (every one
    /// of them at least once, nothing else).
    fn orbits_using(&self, required: &BTreeSet<usize>) -> BTreeSet<Orbit> {
        let n = self.values.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let used: BTreeSet<usize> = [i, j, k].iter().map(|t| self.owner[*t]).collect();
                    if &used == required {
                        out.insert(self.orbit([i, j, k]).into_iter().collect());
                    }
                }
            }
        }
        out
    }

    fn indices_of(&self, c: &Cycle3D) -> Orbit {
        c.points
            .iter()
            .map(|p| [self.index_of(p.x), self.index_of(p.y), self.index_of(p.z)])
            .collect()
    }
}

fn p(b: f64) -> Params {
    Params::new(b).unwrap()
}

fn cycles(b: f64, n: usize) -> Vec<Cycle1D> {
    find_cycles_1d(p(b), n, DEFAULT_INTERVAL).unwrap()
}

fn period_of(orbit: &Orbit) -> usize {
    orbit.len()
}

#[test]
fn period_six_census_against_brute_force() {
    // Closed-form coordinates: fixed points (1 ± √5)/2 and the 2-cycle {0, −1}.
    let b = -1.0;
    let s5 = 5f64.sqrt();
    let values = [0.5 + 0.5 * s5, 0.5 - 0.5 * s5, 0.0, -1.0];
    let mut period6 = Vec::new();
    for &x in &values {
        for &y in &values {
            for &z in &values {
                let q = Point3::new(x, y, z);
                let back = apply_t_n(q, p(b), 6).unwrap();
                let minimal = (1..6).all(|d| apply_t_n(q, p(b), d).unwrap().dist_inf(&q) > 1e-9);
                if back.dist_inf(&q) < 1e-9 && minimal {
                    period6.push(q);
                }
            }
        }
    }
    assert_eq!(period6.len(), 54);
    assert_eq!(period6.len() / 6, 9);

    let cen = census(p(b), 6).unwrap();
    assert_eq!(cen.homogeneous.len(), 1);
    // ({x1}, {x2}) mixes into period 3, so only the two pairs with c2 count.
    assert_eq!(cen.mixed_pairs.len(), 6);
    assert_eq!(cen.mixed_triples.len(), 2);
    assert!(cen.dropped.is_empty());
    let lifted: Vec<Point3> = cen.all().flat_map(|c| c.points.iter().copied()).collect();
    assert_eq!(lifted.len(), 54);
    for q in &period6 {
        assert!(
            lifted.iter().any(|r| r.dist_inf(q) < 1e-12),
            "missing {q:?}"
        );
    }
}

#[test]
fn pair_counts_match_enumeration() {
    // (b, period of A, period of B)
    let families: [(f64, usize, usize); 6] = [
        (-1.0, 1, 2),
        (-1.3, 2, 4),
        (-1.9, 1, 3),
        (-1.9, 2, 3),
        (-1.9, 3, 3),
        (-1.9, 2, 4),
    ];
    for (b, n, m) in families {
        let ca = cycles(b, n);
        let cb = cycles(b, m);
        let (a, bb) = (&ca[0], if n == m { &cb[1] } else { &cb[0] });
        let lift = lift_mixed_pair(a, bb).unwrap();
        let pool = Pool::new(&[a, bb], p(b));
        let want = pool.orbits_using(&[0, 1].into_iter().collect());
        let got: BTreeSet<Orbit> = lift.cycles.iter().map(|c| pool.indices_of(c)).collect();
        assert_eq!(got, want, "b = {b}, periods {n}, {m}");
        let s = num_lcm(n, m);
        assert_eq!(lift.cycles.len(), (n + m) * n * m / s);
        for o in &want {
            assert_eq!(period_of(o), 3 * s);
        }
    }
}

#[test]
fn triple_counts_match_enumeration() {
    let families: [(f64, [usize; 3]); 4] = [
        (-1.0, [1, 1, 2]),
        (-1.9, [1, 2, 3]),
        (-1.9, [2, 3, 4]),
        (-1.9, [3, 3, 2]),
    ];
    for (b, periods) in families {
        let mut chosen: Vec<Cycle1D> = Vec::new();
        for per in periods {
            let next = cycles(b, per)
                .into_iter()
                .find(|c| !chosen.iter().any(|d| d.same_orbit(c, 1e-9)))
                .unwrap();
            chosen.push(next);
        }
        let lift = lift_mixed_triple(&chosen[0], &chosen[1], &chosen[2]).unwrap();
        let refs: Vec<&Cycle1D> = chosen.iter().collect();
        let pool = Pool::new(&refs, p(b));
        let want = pool.orbits_using(&[0, 1, 2].into_iter().collect());
        let got: BTreeSet<Orbit> = lift.cycles.iter().map(|c| pool.indices_of(c)).collect();
        assert_eq!(got, want, "b = {b}, periods {periods:?}");
        let big = num_lcm(num_lcm(periods[0], periods[1]), periods[2]);
        assert_eq!(
            lift.cycles.len(),
            2 * periods[0] * periods[1] * periods[2] / big
        );
    }
}

#[test]
fn homogeneous_3n_against_enumeration() {
    for (b, n) in [
        (-1.0, 2),
        (-1.3, 4),
        (-1.9, 4),
        (-1.9, 5),
        (-1.9, 7),
        (-2.0, 8),
    ] {
        for c in cycles(b, n) {
            let lift = lift_homogeneous_3n(&c).unwrap();
            let pool = Pool::new(&[&c], p(b));
            let want: BTreeSet<Orbit> = pool
                .orbits_using(&[0].into_iter().collect())
                .into_iter()
                .filter(|o| o.len() == 3 * n)
                .collect();
            assert_eq!(want.len(), (n * n * n - n) / (3 * n));
            let got: BTreeSet<Orbit> = lift.cycles.iter().map(|c| pool.indices_of(c)).collect();
            assert_eq!(got, want, "b = {b}, n = {n}");
        }
    }
}

#[test]
fn census_for_period_twelve() {
    // Period 12 = 3·4: homogeneous lifts of 4-cycles plus every pair and
    // triple of cycles with periods dividing 4 whose lcm is 4.
    let b = -1.9;
    let cen = census(p(b), 12).unwrap();
    let pool_cycles: Vec<Cycle1D> = [1, 2, 4].iter().flat_map(|n| cycles(b, *n)).collect();
    let refs: Vec<&Cycle1D> = pool_cycles.iter().collect();
    let pool = Pool::new(&refs, p(b));
    let n = pool.values.len();
    let mut want: BTreeSet<Orbit> = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let o: Orbit = pool.orbit([i, j, k]).into_iter().collect();
                if o.len() == 12 {
                    want.insert(o);
                }
            }
        }
    }
    let got: BTreeSet<Orbit> = cen.all().map(|c| pool.indices_of(c)).collect();
    assert_eq!(got.len(), cen.len(), "census returned duplicate orbits");
    assert_eq!(got, want);
}

fn num_lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
