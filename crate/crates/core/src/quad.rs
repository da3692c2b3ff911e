//! Numerical integration: adaptive Gauss-Kronrod on intervals, Gauss-Legendre
//! rules, and a polar product rule for integrals over the plane.

use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 15-point Kronrod panel: (estimate, error estimate).
pub fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> (C64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-12, max_panels: 4000 }
    }
}

/// Globally adaptive Gauss-Kronrod quadrature of a complex integrand on `[a, b]`.
pub fn integrate<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<C64> {
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    let mut panels: Vec<(f64, f64, C64, f64)> = Vec::new();
    let (v, e) = gk15(&mut f, a, b);
    panels.push((a, b, v, e));
    let mut total = v;
    let mut err = e;
    loop {
        if err <= opts.abs_tol.max(opts.rel_tol * total.norm()) {
            return Ok(total);
        }
        if panels.len() >= opts.max_panels {
            return Err(Error::Quadrature(format!(
                "[{a}, {b}]: error estimate {err:e} after {} panels (value {total})",
                panels.len()
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at double resolution; accept what we have
            panels.push((lo, hi, pv, 0.0));
            err -= pe;
            continue;
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
        // recompute occasionally to shed accumulated rounding in the running sums
        if panels.len() % 64 == 0 {
            total = panels.iter().map(|p| p.2).sum();
            err = panels.iter().map(|p| p.3).sum();
        }
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    integrate(|x| C64::new(f(x), 0.0), a, b, opts).map(|v| v.re)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Product rule for `int f(z) d^2 z` over the disk `|z - center| <= r_max`.
///
/// The radial direction uses Gauss-Legendre panels graded geometrically toward
/// the center (so integrable `|z|^nu` singularities there are resolved), the
/// angular direction uses the trapezoid rule, which converges geometrically for
/// smooth periodic integrands.
#[derive(Debug, Clone)]
pub struct PolarRule {
    pub nodes: Vec<(C64, f64)>,
}

impl PolarRule {
    pub fn new(center: C64, r_max: f64, graded_levels: usize, gl_order: usize, n_angle: usize) -> Self {
        let (gx, gw) = gauss_legendre(gl_order);
        let mut edges = vec![0.0];
        for l in (0..graded_levels).rev() {
            edges.push(r_max * 0.5f64.powi(l as i32 + 1));
        }
        // uniform panels over the outer half
        let outer = 8;
        for k in 1..=outer {
            edges.push(r_max * (0.5 + 0.5 * k as f64 / outer as f64));
        }
        let mut nodes = Vec::new();
        let dt = 2.0 * PI / n_angle as f64;
        for win in edges.windows(2) {
            let (a, b) = (win[0], win[1]);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for (xi, wi) in gx.iter().zip(&gw) {
                let r = c + h * xi;
                let wr = h * wi * r * dt;
                for k in 0..n_angle {
                    let t = (k as f64 + 0.5) * dt;
                    nodes.push((center + C64::from_polar(r, t), wr));
                }
            }
        }
        Self { nodes }
    }

    pub fn integrate<F: FnMut(C64) -> C64>(&self, mut f: F) -> C64 {
        self.nodes.iter().map(|&(z, w)| f(z) * w).sum()
    }
}
