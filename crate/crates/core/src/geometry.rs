//! The limiting droplet: an ellipse with foci at 0 and 4 tau, the equilibrium
//! density on it, and the conformal maps and potentials attached to it.

use crate::{Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default width of the boundary band in the ellipse metric.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DropletGeometry {
    pub tau: f64,
    pub center: f64,
    pub semi_axis_x: f64,
    pub semi_axis_y: f64,
    pub e_minus: f64,
    pub e_plus: f64,
}

impl DropletGeometry {
    pub fn new(tau: f64) -> Result<Self> {
        check_tau(tau)?;
        let (e_minus, e_plus) = edge_points(tau);
        Ok(Self {
            tau,
            center: 2.0 * tau,
            semi_axis_x: 1.0 + tau * tau,
            semi_axis_y: 1.0 - tau * tau,
            e_minus,
            e_plus,
        })
    }

    /// `((x - 2tau)/(1+tau^2))^2 + (y/(1-tau^2))^2`; equals 1 on the boundary.
    pub fn ellipse_metric(&self, z: C64) -> f64 {
        let u = (z.re - self.center) / self.semi_axis_x;
        let v = z.im / self.semi_axis_y;
        u * u + v * v
    }

    /// Boundary point `gamma(theta) = e^{i theta} + tau^2 e^{-i theta} + 2 tau`.
    pub fn boundary_point(&self, theta: f64) -> C64 {
        boundary_point(theta, self.tau)
    }

    /// Fraction of the circle `|z| = r` lying inside the droplet.
    pub fn angular_fraction_inside(&self, r: f64) -> f64 {
        let n = 4096;
        let inside = (0..n)
            .filter(|k| {
                let t = (*k as f64 + 0.5) * 2.0 * PI / n as f64;
                self.ellipse_metric(C64::from_polar(r, t)) <= 1.0
            })
            .count();
        inside as f64 / n as f64
    }

    /// Probability that an eigenvalue has modulus in `[r1, r2]` under mu.
    ///
    /// mu has density `1/(2(1-tau^2)|z|)` against `d^2z/pi`, so the radial
    /// density is `fraction_inside(r) / (1 - tau^2)`.
    pub fn radial_mass(&self, r1: f64, r2: f64) -> f64 {
        let m = 64;
        let h = (r2 - r1) / m as f64;
        (0..m)
            .map(|k| self.angular_fraction_inside(r1 + (k as f64 + 0.5) * h) * h)
            .sum::<f64>()
            / (1.0 - self.tau * self.tau)
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::Domain(format!("tau must lie in [0, 1), got {tau}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZoomKind {
    Bulk,
    Edge,
}

/// A base point for microscopic rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoomPoint {
    pub p: C64,
    pub location: ZoomKind,
    pub normal: C64,
    pub delta: f64,
}

pub fn droplet_classify(z: C64, g: &DropletGeometry, tol: f64) -> Location {
    let q = g.ellipse_metric(z);
    if (q - 1.0).abs() <= tol {
        Location::Boundary
    } else if q < 1.0 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Density of the equilibrium measure with respect to `dA = d^2z / pi`.
pub fn density_mu(z: C64, tau: f64) -> Result<f64> {
    let g = DropletGeometry::new(tau)?;
    if z.norm() == 0.0 {
        return Err(Error::Singular("density_mu at z = 0".into()));
    }
    Ok(match droplet_classify(z, &g, BOUNDARY_TOL) {
        Location::Exterior => 0.0,
        _ => mean_density(z, tau),
    })
}

/// `delta(p) = 1/(2(1-tau^2)|p|)`.
pub fn mean_density(p: C64, tau: f64) -> f64 {
    1.0 / (2.0 * (1.0 - tau * tau) * p.norm())
}

pub fn edge_points(tau: f64) -> (f64, f64) {
    (2.0 * tau - (1.0 + tau * tau), 2.0 * tau + (1.0 + tau * tau))
}

pub fn boundary_point(theta: f64, tau: f64) -> C64 {
    C64::from_polar(1.0, theta) + tau * tau * C64::from_polar(1.0, -theta) + 2.0 * tau
}

/// Shifted Joukowsky map `phi(u) = u + tau^2/u + 2 tau`.
pub fn phi(u: C64, tau: f64) -> C64 {
    u + tau * tau / u + 2.0 * tau
}

fn on_cut(z: C64, tau: f64) -> bool {
    let tol = 1e-12 * (1.0 + tau);
    z.im.abs() <= tol && z.re >= -tol && z.re <= 4.0 * tau + tol
}

/// `R(z) = sqrt((z - 2tau)^2 - 4tau^2)` with the branch `R(z) ~ z` at infinity
/// and cut on `[0, 4 tau]`.
fn root(z: C64, tau: f64) -> C64 {
    let s = z - 2.0 * tau;
    if tau == 0.0 {
        return s;
    }
    s * (1.0 - 4.0 * tau * tau / (s * s)).sqrt()
}

fn check_cut(z: C64, tau: f64) -> Result<()> {
    check_tau(tau)?;
    if on_cut(z, tau) {
        return Err(Error::BranchCut(format!("{z}")));
    }
    Ok(())
}

/// Inverse of [`phi`]: maps the complement of `[0, 4tau]` onto `|u| > tau`.
pub fn psi(z: C64, tau: f64) -> Result<C64> {
    check_cut(z, tau)?;
    Ok(psi_unchecked(z, tau))
}

fn psi_unchecked(z: C64, tau: f64) -> C64 {
    0.5 * ((z - 2.0 * tau) + root(z, tau))
}

/// `psi'(z) = psi(z) / R(z)`.
pub fn psi_prime(z: C64, tau: f64) -> Result<C64> {
    check_cut(z, tau)?;
    Ok(psi_unchecked(z, tau) / root(z, tau))
}

/// Schwarz function of the boundary: `S(z) = tau^2 psi(z) + 1/psi(z) + 2 tau`,
/// so that `S(p) = conj(p)` on the ellipse.
pub fn schwarz(z: C64, tau: f64) -> Result<C64> {
    check_cut(z, tau)?;
    let u = psi_unchecked(z, tau);
    Ok(tau * tau * u + 1.0 / u + 2.0 * tau)
}

/// Cauchy transform of mu outside the droplet, `C(z) = (1 + tau/psi(z)) / z`.
pub fn cauchy_c(z: C64, tau: f64) -> Result<C64> {
    check_cut(z, tau)?;
    if z.norm() == 0.0 {
        return Err(Error::Singular("cauchy_c at z = 0".into()));
    }
    let u = psi_unchecked(z, tau);
    Ok((1.0 + tau / u) / z)
}

/// `g_tau(z) = 2z/(z + R(z)) + log((z - 2tau + R(z))/2)`, principal logarithm.
pub fn g_tau(z: C64, tau: f64) -> Result<C64> {
    check_cut(z, tau)?;
    if z.norm() == 0.0 {
        return Err(Error::Singular("g_tau at z = 0".into()));
    }
    let u = psi_unchecked(z, tau);
    Ok(u.ln() + tau / u + 1.0)
}

/// `Omega(z) = 2 Re[(|z| - tau z)/(1 - tau^2) - g_tau(z)]`, extended
/// continuously across the cut. Nonnegative, zero exactly on the boundary.
pub fn omega(z: C64, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    if tau == 0.0 && z.norm() == 0.0 {
        return Ok(f64::INFINITY);
    }
    let u = if on_cut(z, tau) {
        // both boundary values of psi on the cut have modulus tau and the same Re(tau/psi)
        let s = z.re - 2.0 * tau;
        let r = C64::new(0.0, (4.0 * tau * tau - s * s).max(0.0).sqrt());
        0.5 * (s + r)
    } else {
        psi_unchecked(z, tau)
    };
    let re_g = u.norm().ln() + (tau / u).re + 1.0;
    Ok(2.0 * ((z.norm() - tau * z.re) / (1.0 - tau * tau) - re_g))
}

/// Outward unit normal `n(p) = psi(p) |psi'(p)| / psi'(p)` at a boundary point.
pub fn normal_vector(p: C64, tau: f64) -> Result<C64> {
    let g = DropletGeometry::new(tau)?;
    normal_vector_tol(p, &g, BOUNDARY_TOL)
}

pub fn normal_vector_tol(p: C64, g: &DropletGeometry, tol: f64) -> Result<C64> {
    if droplet_classify(p, g, tol) != Location::Boundary {
        return Err(Error::NotOnBoundary(format!("{p}")));
    }
    let u = psi(p, g.tau)?;
    let d = psi_prime(p, g.tau)?;
    let n = u * d.norm() / d;
    Ok(n / n.norm())
}

/// Classify `p` and attach its normal and mean density.
pub fn zoom_point(p: C64, tau: f64) -> Result<ZoomPoint> {
    let g = DropletGeometry::new(tau)?;
    if p.norm() == 0.0 {
        return Err(Error::Singular("zoom point at the origin".into()));
    }
    let delta = mean_density(p, tau);
    match droplet_classify(p, &g, BOUNDARY_TOL) {
        Location::Interior => Ok(ZoomPoint { p, location: ZoomKind::Bulk, normal: C64::new(1.0, 0.0), delta }),
        Location::Boundary => Ok(ZoomPoint { p, location: ZoomKind::Edge, normal: normal_vector_tol(p, &g, BOUNDARY_TOL)?, delta }),
        Location::Exterior => Err(Error::Domain(format!("zoom point {p} lies outside the droplet"))),
    }
}

/// Samples of Omega on a rectangular grid (rows of `(x, y, omega)`), skipping
/// nothing: the cut is handled by continuous extension.
pub fn omega_grid(tau: f64, x_range: (f64, f64), y_range: (f64, f64), n: usize) -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = x_range.0 + (x_range.1 - x_range.0) * i as f64 / (n - 1).max(1) as f64;
        for j in 0..n {
            let y = y_range.0 + (y_range.1 - y_range.0) * j as f64 / (n - 1).max(1) as f64;
            out.push((x, y, omega(C64::new(x, y), tau)?));
        }
    }
    Ok(out)
}
