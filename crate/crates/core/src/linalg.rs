//! Fixed-size 3×3 linear algebra: products, determinants, real spectra of
//! small matrices and Gram–Schmidt re-orthonormalisation.

use core::ops::Mul;

use crate::math;

/// Row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub m: [[f64; 3]; 3],
}

impl Mat3 {
    pub const fn new(m: [[f64; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub const fn identity() -> Self {
        Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub const fn diag(d: [f64; 3]) -> Self {
        Mat3::new([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn diagonal(&self) -> [f64; 3] {
        [self.m[0][0], self.m[1][1], self.m[2][2]]
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn column(&self, j: usize) -> [f64; 3] {
        [self.m[0][j], self.m[1][j], self.m[2][j]]
    }

    pub fn set_column(&mut self, j: usize, c: [f64; 3]) {
        for (i, v) in c.into_iter().enumerate() {
            self.m[i][j] = v;
        }
    }

    pub fn max_abs_diff(&self, other: &Mat3) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }

    fn is_upper_triangular(&self) -> bool {
        self.m[1][0] == 0.0 && self.m[2][0] == 0.0 && self.m[2][1] == 0.0
    }

    fn is_lower_triangular(&self) -> bool {
        self.m[0][1] == 0.0 && self.m[0][2] == 0.0 && self.m[1][2] == 0.0
    }

    /// Coefficients `(c2, c1, c0)` of the characteristic polynomial
    /// `λ³ + c2 λ² + c1 λ + c0 = det(λI − M)`.
    pub fn characteristic(&self) -> (f64, f64, f64) {
        let m = &self.m;
        let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
        (-self.trace(), minors, -self.det())
    }

    /// The three eigenvalues when all of them are real, `None` otherwise.
    ///
    /// Triangular matrices (in particular the diagonal Jacobian products of
    /// `T^{3k}`) are read off exactly; anything else goes through the
    /// characteristic cubic.
    pub fn real_eigenvalues(&self) -> Option<[f64; 3]> {
        if self.is_upper_triangular() || self.is_lower_triangular() {
            return Some(self.diagonal());
        }
        let (c2, c1, c0) = self.characteristic();
        real_cubic_roots(c2, c1, c0)
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[i][0] * rhs.m[0][j]
                    + self.m[i][1] * rhs.m[1][j]
                    + self.m[i][2] * rhs.m[2][j];
            }
        }
        Mat3::new(out)
    }
}

/// Real roots of `t³ + a t² + b t + c`, ascending, if all three are real.
pub fn real_cubic_roots(a: f64, b: f64, c: f64) -> Option<[f64; 3]> {
    // Depressed cubic s³ + p s + q with t = s − a/3.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let scale = 1.0 + a.abs().max(math::sqrt(b.abs())).max(math::cbrt(c.abs()));
    let eps = 1e-12 * scale * scale;
    let mut roots = if p.abs() <= eps && q.abs() <= eps * scale {
        [0.0; 3]
    } else {
        let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
        if disc > eps * eps * scale * scale {
            return None;
        }
        if p >= 0.0 {
            // Only reachable with disc ≈ 0 and p ≈ 0 handled above; a triple root.
            let s = math::cbrt(-q);
            [s, s, s]
        } else {
            let r = math::sqrt(-p / 3.0);
            let cos_arg = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
            let phi = math::acos(cos_arg) / 3.0;
            let tau = 2.0 * core::f64::consts::PI / 3.0;
            [
                2.0 * r * math::cos(phi),
                2.0 * r * math::cos(phi - tau),
                2.0 * r * math::cos(phi + tau),
            ]
        }
    };
    for s in roots.iter_mut() {
        *s -= shift;
        // One Newton polish on the original cubic where the derivative is usable.
        let t = *s;
        let f = ((t + a) * t + b) * t + c;
        let df = (3.0 * t + 2.0 * a) * t + b;
        if df.abs() > 1e-8 * scale * scale {
            let next = t - f / df;
            if next.is_finite() {
                *s = next;
            }
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    Some(roots)
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn axpy(alpha: f64, x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        y[0] + alpha * x[0],
        y[1] + alpha * x[1],
        y[2] + alpha * x[2],
    ]
}

/// Replaces the columns of `q` with an orthonormal basis obtained by
/// modified Gram–Schmidt (with one re-orthogonalisation pass) and returns
/// the diagonal of the triangular factor, i.e. the norms removed from each
/// column. A column that collapses onto the span of its predecessors gets
/// norm 0 and is replaced by a unit vector completing the basis.
pub fn orthonormalize(q: &mut Mat3) -> [f64; 3] {
    let mut r = [0.0; 3];
    let mut basis: [[f64; 3]; 3] = [[0.0; 3]; 3];
    for j in 0..3 {
        let mut v = q.column(j);
        let orig = math::sqrt(dot(v, v));
        for _pass in 0..2 {
            for e in basis.iter().take(j) {
                v = axpy(-dot(*e, v), *e, v);
            }
        }
        let norm = math::sqrt(dot(v, v));
        if norm > 1e-14 * orig && norm > 0.0 {
            r[j] = norm;
            basis[j] = [v[0] / norm, v[1] / norm, v[2] / norm];
        } else {
            r[j] = 0.0;
            basis[j] = completion(&basis, j);
        }
    }
    for (j, e) in basis.into_iter().enumerate() {
        q.set_column(j, e);
    }
    r
}

/// A unit vector orthogonal to the first `j` basis vectors.
fn completion(basis: &[[f64; 3]; 3], j: usize) -> [f64; 3] {
    if j == 2 {
        return cross(basis[0], basis[1]);
    }
    let units = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut best = units[0];
    let mut best_norm = -1.0;
    for u in units {
        let mut v = u;
        for e in basis.iter().take(j) {
            v = axpy(-dot(*e, v), *e, v);
        }
        let n = math::sqrt(dot(v, v));
        if n > best_norm {
            best_norm = n;
            best = [v[0] / n, v[1] / n, v[2] / n];
        }
    }
    best
}
