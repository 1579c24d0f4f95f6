//! Quadrature and root-finding helpers shared by the potential and fiber
//! solvers: fourth-order cumulative integration on a uniform grid, cubic
//! Hermite interpolation and Brent's method.

use crate::error::{Error, Result};

/// Cumulative integral of nodal samples `f` on a uniform grid with spacing
/// `dx`, returned at every node (first entry 0).
///
/// Each step integrates the cubic through four neighbouring nodes, so the
/// nodal values are O(dx^4) accurate (one order better than composite
/// Simpson restricted to even nodes, and available at every node).
pub fn cumulative_integral(f: &[f64], dx: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 4, "cumulative_integral needs at least 4 nodes");
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    let c = dx / 24.0;
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let step = if i == 0 {
            c * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
        } else if i == n - 2 {
            c * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4])
        } else {
            c * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2])
        };
        acc += step;
        out.push(acc);
    }
    out
}

/// Trapezoid rule over nodal samples.
pub fn trapezoid(f: &[f64], dx: f64) -> f64 {
    if f.len() < 2 {
        return 0.0;
    }
    let interior: f64 = f[1..f.len() - 1].iter().sum();
    dx * (0.5 * (f[0] + f[f.len() - 1]) + interior)
}

/// Cubic Hermite evaluation on one cell: values `y0, y1` and derivatives
/// `d0, d1` at the cell ends, `t` in [0, 1], cell width `dx`.
pub fn hermite(y0: f64, y1: f64, d0: f64, d1: f64, t: f64, dx: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * y0 + h10 * dx * d0 + h01 * y1 + h11 * dx * d1
}

/// Brent's method on `[a, b]` with `fa = f(a)`, `fb = f(b)` of opposite sign.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::internal(format!(
            "brent: root not bracketed on [{a}, {b}]"
        )));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else if xm > 0.0 {
            tol1
        } else {
            -tol1
        };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::internal("brent: no convergence"))
}
