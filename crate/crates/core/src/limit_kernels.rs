//! Limiting kernels at strong and weak non-Hermiticity and the correlation
//! functions they induce.
//!
//! Complex-class kernels `K(z, w)` already carry their Gaussian factors, so the
//! k-point function is `det[K(z_j, z_l)]`. Symplectic pre-kernels `kappa(z, w)`
//! enter as `prod (conj z_j - z_j) Pf[e^{-|u_a|^2 - |u_b|^2} kappa(u_a, u_b)]`
//! over `u = (z_1, conj z_1, ...)`.

use crate::finite_kernels::{determinant, pfaffian, KernelMatrix, MatrixSymmetry, SymmetryClass};
use crate::quad::{gauss_legendre, integrate, QuadOptions};
use crate::specfun::{airy_ai_scaled, erf_complex, erfc_complex, ScaledComplex};
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    StrongBulk,
    StrongEdge,
    WeakBulk,
    WeakEdge,
}

impl std::str::FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "strong-bulk" => Ok(Self::StrongBulk),
            "strong-edge" => Ok(Self::StrongEdge),
            "weak-bulk" => Ok(Self::WeakBulk),
            "weak-edge" => Ok(Self::WeakEdge),
            _ => Err(Error::Invalid(format!("unknown regime '{s}'"))),
        }
    }
}

/// Tolerances for the kernels defined by integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Integrand level below which a semi-infinite tail is dropped.
    pub tail_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, tail_tol: 1e-14, max_panels: 4000 }
    }
}

impl QuadSettings {
    fn options(&self) -> QuadOptions {
        QuadOptions { abs_tol: self.abs_tol, rel_tol: self.rel_tol, max_panels: self.max_panels }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitKernelSpec {
    pub class: SymmetryClass,
    pub regime: Regime,
    /// Non-Hermiticity parameter of the weak regimes (0 otherwise).
    pub c: f64,
    /// Half-width parameter of `E_a = (-2a, 2a)` in the weak bulk (0 otherwise).
    pub a: f64,
    pub quad: QuadSettings,
}

impl LimitKernelSpec {
    pub fn strong(class: SymmetryClass, regime: Regime) -> Result<Self> {
        if !matches!(regime, Regime::StrongBulk | Regime::StrongEdge) {
            return Err(Error::Invalid(format!("{regime:?} is not a strong regime")));
        }
        Ok(Self { class, regime, c: 0.0, a: 0.0, quad: QuadSettings::default() })
    }

    /// Weak bulk at base point `p` in (0, 4): `a = pi c sqrt(p) sigma_MP(p)`.
    pub fn weak_bulk(class: SymmetryClass, c: f64, p: f64) -> Result<Self> {
        let a = interval_a(p, c)?;
        Ok(Self { class, regime: Regime::WeakBulk, c, a, quad: QuadSettings::default() })
    }

    pub fn weak_edge(class: SymmetryClass, c: f64) -> Result<Self> {
        check_c(c)?;
        Ok(Self { class, regime: Regime::WeakEdge, c, a: 0.0, quad: QuadSettings::default() })
    }

    /// The parameter actually passed to the kernel: `2^{1/6} c` for the
    /// symplectic weak edge, `c` otherwise.
    pub fn kernel_c(&self) -> f64 {
        match (self.class, self.regime) {
            (SymmetryClass::Symplectic, Regime::WeakEdge) => 2f64.powf(1.0 / 6.0) * self.c,
            _ => self.c,
        }
    }

    /// `K(z, w)` for the complex class, `kappa(z, w)` for the symplectic class.
    pub fn kernel(&self, z: C64, w: C64) -> Result<C64> {
        match self.class {
            SymmetryClass::Complex => self.complex_kernel(z, w),
            SymmetryClass::Symplectic => self.kappa_parts(z, w).map(|(v, e)| v * e.exp()),
        }
    }

    fn complex_kernel(&self, z: C64, w: C64) -> Result<C64> {
        match self.regime {
            Regime::StrongBulk => Ok(ginue_bulk(z, w)),
            Regime::StrongEdge => Ok(ginue_edge(z, w)),
            Regime::WeakBulk => weak_bulk_c(z, w, self.a),
            Regime::WeakEdge => weak_edge_c(z, w, self.c, &self.quad),
        }
    }

    /// `kappa = v * exp(e)`, split so that the Gaussian factors of the
    /// correlation functions can be combined with `e` before exponentiating.
    fn kappa_parts(&self, z: C64, w: C64) -> Result<(C64, C64)> {
        let e = z * z + w * w;
        let v = match self.regime {
            Regime::StrongBulk => PI.sqrt() * erf_complex(z - w),
            Regime::StrongEdge => PI.sqrt() * ginse_wronskian(z, w, 0.0, &self.quad)?,
            Regime::WeakBulk => weak_bulk_s_integral(z - w, self.a)? / PI.sqrt(),
            Regime::WeakEdge => PI.sqrt() * weak_edge_s_integral(z, w, self.kernel_c(), &self.quad)?,
        };
        Ok((v, e))
    }
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("c must be positive, got {c}")));
    }
    Ok(())
}

/// Marchenko-Pastur density `(1/2pi) sqrt((4-x)/x)` on `[0, 4]`.
pub fn sigma_mp(xi: f64) -> f64 {
    if xi > 0.0 && xi <= 4.0 {
        ((4.0 - xi) / xi).sqrt() / (2.0 * PI)
    } else {
        0.0
    }
}

/// `a(p) = pi c sqrt(p) sigma_MP(p) = (c/2) sqrt(4 - p)`.
pub fn interval_a(p: f64, c: f64) -> Result<f64> {
    if !(p > 0.0 && p < 4.0) {
        return Err(Error::Domain(format!("weak bulk needs p in (0, 4), got {p}")));
    }
    check_c(c)?;
    Ok(0.5 * c * (4.0 - p).sqrt())
}

fn gauss_factor(z: C64, w: C64) -> C64 {
    (z * w.conj() - 0.5 * z.norm_sqr() - 0.5 * w.norm_sqr()).exp()
}

/// `K_b(z, w) = exp(z conj(w) - |z|^2/2 - |w|^2/2)`.
pub fn ginue_bulk(z: C64, w: C64) -> C64 {
    gauss_factor(z, w)
}

/// `K_e(z, w) = K_b(z, w) erfc((z + conj w)/sqrt 2) / 2`.
pub fn ginue_edge(z: C64, w: C64) -> C64 {
    gauss_factor(z, w) * 0.5 * erfc_complex((z + w.conj()) / SQRT_2)
}

/// `K_b(z, w) (2pi)^{-1/2} int_{-inf}^{upper} exp(-(z + conj w - t)^2 / 2) dt`;
/// `upper = 0` is the edge kernel and `upper = inf` the bulk kernel.
pub fn ginue_unified(z: C64, w: C64, upper: f64, quad: &QuadSettings) -> Result<C64> {
    let s = z + w.conj();
    let f = |t: f64| (-0.5 * (s - t) * (s - t)).exp();
    let ln_mag = |t: f64| (-0.5 * (s - t) * (s - t)).re;
    let lo = tail_cut(s.re.min(upper), -1.0, ln_mag, quad.tail_tol)?;
    let hi = if upper.is_finite() { upper } else { tail_cut(s.re, 1.0, ln_mag, quad.tail_tol)? };
    Ok(gauss_factor(z, w) * integrate(f, lo, hi, quad.options())? / (2.0 * PI).sqrt())
}

/// `kappa_b(z, w) = sqrt(pi) e^{z^2 + w^2} erf(z - w)`.
pub fn ginse_bulk(z: C64, w: C64) -> C64 {
    PI.sqrt() * (z * z + w * w).exp() * erf_complex(z - w)
}

/// `kappa_e(z, w) = sqrt(pi) e^{z^2 + w^2} int_{-inf}^0 W(f_w, f_z)(u) du` with
/// `f_z(u) = erfc(sqrt2 (z - u)) / 2`.
pub fn ginse_edge(z: C64, w: C64, quad: &QuadSettings) -> Result<C64> {
    Ok(PI.sqrt() * (z * z + w * w).exp() * ginse_wronskian(z, w, 0.0, quad)?)
}

/// `int_{-inf}^{upper} W(f_w, f_z)(u) du`; `upper = inf` reproduces the bulk.
pub fn ginse_wronskian(z: C64, w: C64, upper: f64, quad: &QuadSettings) -> Result<C64> {
    let f = |x: C64, u: f64| 0.5 * erfc_complex(SQRT_2 * (x - u));
    let fp = |x: C64, u: f64| (2.0 / PI).sqrt() * (-2.0 * (x - u) * (x - u)).exp();
    let wr = |u: f64| f(w, u) * fp(z, u) - f(z, u) * fp(w, u);
    let ln_mag = |u: f64| wr(u).norm().ln();
    let lo = tail_cut(z.re.min(w.re).min(upper), -1.0, ln_mag, quad.tail_tol)?;
    let hi = if upper.is_finite() { upper } else { tail_cut(z.re.max(w.re), 1.0, ln_mag, quad.tail_tol)? };
    integrate(wr, lo, hi, quad.options())
}

/// Weak-bulk complex kernel
/// `K_b(z, w) (2pi)^{-1/2} int_{-2a}^{2a} exp((z - conj w - i t)^2 / 2) dt`.
pub fn weak_bulk_c(z: C64, w: C64, a: f64) -> Result<C64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    let s = z - w.conj();
    let f = |t: f64| {
        let q = s - C64::new(0.0, t);
        (0.5 * q * q).exp()
    };
    let v = integrate(f, -2.0 * a, 2.0 * a, QuadSettings::default().options())?;
    Ok(gauss_factor(z, w) * v / (2.0 * PI).sqrt())
}

/// `int_{-2a}^{2a} e^{-u^2} sin(2ux)/u du`.
fn weak_bulk_s_integral(x: C64, a: f64) -> Result<C64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    let f = |u: f64| {
        let s = if u.abs() < 1e-4 {
            let y = 2.0 * u * x;
            2.0 * x * (1.0 - y * y / 6.0 + y * y * y * y / 120.0)
        } else {
            (2.0 * u * x).sin() / u
        };
        s * (-u * u).exp()
    };
    // the integrand is even
    Ok(2.0 * integrate(f, 0.0, 2.0 * a, QuadSettings::default().options())?)
}

/// Weak-bulk symplectic pre-kernel
/// `pi^{-1/2} e^{z^2 + w^2} int_{-2a}^{2a} e^{-u^2} sin(2u(z - w))/u du`.
pub fn weak_bulk_s(z: C64, w: C64, a: f64) -> Result<C64> {
    Ok((z * z + w * w).exp() * weak_bulk_s_integral(z - w, a)? / PI.sqrt())
}

/// Weak-edge complex kernel: `2c^2 sqrt(2pi) e^{-(Im z)^2 - (Im w)^2}` times
/// `int_{-inf}^0 e^{(c^3/sqrt2)(z + conj w - 2u) + c^6/6} Ai(sqrt2 c (z-u) + c^4/4) Ai(sqrt2 c (conj w - u) + c^4/4) du`.
pub fn weak_edge_c(z: C64, w: C64, c: f64, quad: &QuadSettings) -> Result<C64> {
    check_c(c)?;
    let wb = w.conj();
    let c3 = c.powi(3);
    let c4 = c.powi(4);
    let term = |u: f64| {
        let e = ScaledComplex::exp(c3 / SQRT_2 * (z + wb - 2.0 * u) + c.powi(6) / 6.0);
        e * airy_ai_scaled(SQRT_2 * c * (z - u) + c4 / 4.0) * airy_ai_scaled(SQRT_2 * c * (wb - u) + c4 / 4.0)
    };
    let lo = tail_cut(z.re.min(w.re).min(0.0), -1.0, |u| term(u).ln_abs(), quad.tail_tol)?;
    let v = integrate(|u| term(u).to_c64(), lo, 0.0, quad.options())?;
    Ok(2.0 * c * c * (2.0 * PI).sqrt() * (-z.im * z.im - w.im * w.im).exp() * v)
}

/// Weak-edge symplectic pre-kernel `sqrt(pi) e^{z^2+w^2} int_{-inf}^0 W(f_{w,c}, f_{z,c})(u) du`
/// with `f_{z,c}(u) = 2c int_0^u e^{c^3(z-t) + c^6/12} Ai(2c(z-t) + c^4/4) dt`.
///
/// `c` is used as given; the symplectic limit uses `2^{1/6} c`, see
/// [`LimitKernelSpec::kernel_c`].
pub fn weak_edge_s(z: C64, w: C64, c: f64, quad: &QuadSettings) -> Result<C64> {
    Ok(PI.sqrt() * (z * z + w * w).exp() * weak_edge_s_integral(z, w, c, quad)?)
}

/// `f'_{x,c}(u)`.
fn edge_density(x: C64, u: f64, c: f64) -> ScaledComplex {
    let e = ScaledComplex::exp(c.powi(3) * (x - u) + c.powi(6) / 12.0);
    (e * airy_ai_scaled(2.0 * c * (x - u) + c.powi(4) / 4.0)).scale(2.0 * c)
}

const PANEL_ORDER: usize = 20;

/// Gauss-Legendre rule on [-1, 1] and `S[i][j] = int_{x_i}^{1} l_j(s) ds` for the
/// Lagrange basis `l_j` on the same nodes.
fn panel_rule() -> &'static (Vec<f64>, Vec<f64>, Vec<Vec<f64>>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let (x, w) = gauss_legendre(PANEL_ORDER);
        let n = x.len();
        let lagrange = |j: usize, y: f64| {
            (0..n).filter(|&m| m != j).map(|m| (y - x[m]) / (x[j] - x[m])).product::<f64>()
        };
        let s = (0..n)
            .map(|i| {
                let (c, h) = (0.5 * (x[i] + 1.0), 0.5 * (1.0 - x[i]));
                (0..n)
                    .map(|j| (0..n).map(|k| h * w[k] * lagrange(j, c + h * x[k])).sum())
                    .collect()
            })
            .collect();
        (x, w, s)
    })
}

/// `int_{lo}^0 W(f_w, f_z)` on `panels` equal panels, with `f` integrated
/// spectrally inside each panel.
fn wronskian_on_panels(z: C64, w: C64, c: f64, lo: f64, panels: usize) -> C64 {
    let (x, wts, s) = panel_rule();
    let n = x.len();
    let h = -lo / panels as f64;
    let mut tail_z = C64::new(0.0, 0.0);
    let mut tail_w = C64::new(0.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..panels {
        let b = -(p as f64) * h;
        let mid = b - 0.5 * h;
        let half = 0.5 * h;
        let gz: Vec<C64> = x.iter().map(|t| edge_density(z, mid + half * t, c).to_c64()).collect();
        let gw: Vec<C64> = x.iter().map(|t| edge_density(w, mid + half * t, c).to_c64()).collect();
        for i in 0..n {
            // f(u_i) = -int_{u_i}^0 g
            let inner = |g: &[C64]| -> C64 { (0..n).map(|j| g[j] * s[i][j]).sum::<C64>() * half };
            let fz = -(inner(&gz) + tail_z);
            let fw = -(inner(&gw) + tail_w);
            acc += (fw * gz[i] - fz * gw[i]) * (wts[i] * half);
        }
        tail_z += (0..n).map(|j| gz[j] * wts[j]).sum::<C64>() * half;
        tail_w += (0..n).map(|j| gw[j] * wts[j]).sum::<C64>() * half;
    }
    acc
}

fn weak_edge_s_integral(z: C64, w: C64, c: f64, quad: &QuadSettings) -> Result<C64> {
    check_c(c)?;
    let ln_mag = |u: f64| edge_density(z, u, c).ln_abs().max(edge_density(w, u, c).ln_abs());
    let lo = tail_cut(z.re.min(w.re).min(0.0), -1.0, ln_mag, quad.tail_tol)?;
    // Airy oscillation scale in u is ~ 1/(2c sqrt|arg|)
    let arg = 2.0 * c * (z.norm().max(w.norm()) + lo.abs()) + c.powi(4) / 4.0;
    let mut panels = ((-lo) * 2.0 * c * (1.0 + arg.sqrt()) / 8.0).ceil().max(2.0) as usize;
    let mut prev = wronskian_on_panels(z, w, c, lo, panels);
    let mut diff = f64::INFINITY;
    while panels <= quad.max_panels {
        panels *= 2;
        let next = wronskian_on_panels(z, w, c, lo, panels);
        diff = (next - prev).norm();
        if diff <= quad.abs_tol.max(quad.rel_tol * next.norm()) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!(
        "weak-edge Wronskian at z={z}, w={w}, c={c}: panel refinement stalled at {panels} panels, last change {diff:e}"
    )))
}

/// Walk from `start` in direction `dir` until the integrand magnitude falls
/// below `tol` and is still decaying by at least a factor e per unit step.
fn tail_cut(start: f64, dir: f64, ln_mag: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let target = tol.ln();
    let mut u = start;
    let mut step = 0.5;
    for _ in 0..200 {
        u += dir * step;
        let here = ln_mag(u);
        if here < target && (here == f64::NEG_INFINITY || ln_mag(u + dir) < here - 1.0) {
            return Ok(u);
        }
        step = (step * 1.25).min(8.0);
    }
    Err(Error::Truncation(format!("integrand still at e^{:.1} at u = {u}", ln_mag(u))))
}

/// Limiting k-point correlation function: `det[K(z_j, z_l)]` or
/// `prod (conj z_j - z_j) Pf[e^{-|u_a|^2 - |u_b|^2} kappa(u_a, u_b)]`.
pub fn limit_corr(points: &[C64], spec: &LimitKernelSpec) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Invalid("no points".into()));
    }
    match spec.class {
        SymmetryClass::Complex => {
            let k = points.len();
            let mut vals = vec![C64::new(0.0, 0.0); k * k];
            for i in 0..k {
                for j in 0..k {
                    vals[i * k + j] = spec.complex_kernel(points[i], points[j])?;
                }
            }
            Ok(determinant(&KernelMatrix::from_c64(k, MatrixSymmetry::Hermitian, &vals)).re())
        }
        SymmetryClass::Symplectic => {
            let u: Vec<C64> = points.iter().flat_map(|z| [*z, z.conj()]).collect();
            let dim = u.len();
            let mut m = KernelMatrix::from_fn(dim, MatrixSymmetry::Antisymmetric, |_, _| ScaledComplex::ZERO);
            for a in 0..dim {
                for b in a + 1..dim {
                    let (v, e) = spec.kappa_parts(u[a], u[b])?;
                    let entry = ScaledComplex::exp(e - u[a].norm_sqr() - u[b].norm_sqr()).scale_c(v);
                    m.set(a, b, entry);
                    m.set(b, a, -entry);
                }
            }
            let pre = points.iter().fold(ScaledComplex::ONE, |acc, z| acc.scale_c(z.conj() - z));
            Ok((pfaffian(&m)? * pre).re())
        }
    }
}
