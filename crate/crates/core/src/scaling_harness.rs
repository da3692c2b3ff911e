//! Microscopic rescaling around a base point, convergence of the finite-N
//! correlation functions to their limits, and checks of the large-degree
//! Laguerre asymptotics.

use crate::error::{Error, Result};
use crate::finite_kernels::{corr, kernel_knc, ModelParams, SymmetryClass};
use crate::geometry::{g_tau, mean_density, psi, psi_prime, zoom_point, ZoomKind, ZoomPoint};
use crate::limit_kernels::{limit_corr, LimitKernelSpec, Regime};
use crate::specfun::{airy_ai, airy_ai_prime, laguerre_scaled, log_gamma, ScaledComplex};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How `tau` depends on `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "kebab-case")]
pub enum RegimeSchedule {
    /// Fixed `tau`.
    Strong { tau: f64 },
    /// `tau = 1 - c^2/N`.
    WeakBulk { c: f64 },
    /// `tau = 1 - c^2/(2N)^{1/3}`.
    WeakEdge { c: f64 },
}

impl RegimeSchedule {
    pub fn tau_of(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let tau = match *self {
            Self::Strong { tau } => tau,
            Self::WeakBulk { c } => 1.0 - c * c / nf,
            Self::WeakEdge { c } => 1.0 - c * c / (2.0 * nf).cbrt(),
        };
        let weak = !matches!(self, Self::Strong { .. });
        let ok = if weak { tau > 0.0 && tau < 1.0 } else { (0.0..1.0).contains(&tau) };
        if !ok || n == 0 {
            return Err(Error::Domain(format!("schedule {self:?} gives tau = {tau} at N = {n}")));
        }
        Ok(tau)
    }

    pub fn c(&self) -> f64 {
        match *self {
            Self::Strong { .. } => 0.0,
            Self::WeakBulk { c } | Self::WeakEdge { c } => c,
        }
    }
}

/// `z = p + n(p) zeta / sqrt(N delta)`.
pub fn rescale_map(zoom: &ZoomPoint, n: usize, zeta: C64) -> C64 {
    zoom.p + zoom.normal * zeta / (n as f64 * zoom.delta).sqrt()
}

/// A rescaling experiment: symmetry class, schedule, base point and `nu`.
///
/// For the weak edge the base point is always `(1 + tau)^2` and the `p`
/// field is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSetup {
    pub class: SymmetryClass,
    pub schedule: RegimeSchedule,
    pub p: C64,
    pub nu: f64,
}

impl ScalingSetup {
    pub fn new(class: SymmetryClass, schedule: RegimeSchedule, p: C64, nu: f64) -> Self {
        Self { class, schedule, p, nu }
    }

    /// Base point, normal and mean density at size `N`.
    pub fn zoom(&self, n: usize) -> Result<ZoomPoint> {
        let tau = self.schedule.tau_of(n)?;
        let one = C64::new(1.0, 0.0);
        match self.schedule {
            RegimeSchedule::Strong { .. } => zoom_point(self.p, tau),
            RegimeSchedule::WeakBulk { .. } => {
                let p = self.weak_bulk_p()?;
                let p = C64::new(p, 0.0);
                Ok(ZoomPoint { p, location: ZoomKind::Bulk, normal: one, delta: mean_density(p, tau) })
            }
            RegimeSchedule::WeakEdge { .. } => {
                let p = C64::new((1.0 + tau) * (1.0 + tau), 0.0);
                Ok(ZoomPoint { p, location: ZoomKind::Edge, normal: one, delta: mean_density(p, tau) })
            }
        }
    }

    fn weak_bulk_p(&self) -> Result<f64> {
        if self.p.im != 0.0 || !(self.p.re > 0.0 && self.p.re < 4.0) {
            return Err(Error::Domain(format!("weak bulk base point must lie in (0, 4), got {}", self.p)));
        }
        Ok(self.p.re)
    }

    pub fn params(&self, n: usize) -> Result<ModelParams> {
        ModelParams::new(self.class, n, self.nu, self.schedule.tau_of(n)?)
    }

    /// The limiting kernel this setup should converge to.
    pub fn limit_spec(&self) -> Result<LimitKernelSpec> {
        match self.schedule {
            RegimeSchedule::Strong { tau } => {
                let regime = match zoom_point(self.p, tau)?.location {
                    ZoomKind::Bulk => Regime::StrongBulk,
                    ZoomKind::Edge => Regime::StrongEdge,
                };
                LimitKernelSpec::strong(self.class, regime)
            }
            RegimeSchedule::WeakBulk { c } => LimitKernelSpec::weak_bulk(self.class, c, self.weak_bulk_p()?),
            RegimeSchedule::WeakEdge { c } => LimitKernelSpec::weak_edge(self.class, c),
        }
    }

    pub fn regime(&self) -> Result<Regime> {
        Ok(self.limit_spec()?.regime)
    }
}

/// `(N delta)^{-k}` times the k-point function at the mapped points.
pub fn rescaled_corr(setup: &ScalingSetup, n: usize, zetas: &[C64]) -> Result<f64> {
    let zoom = setup.zoom(n)?;
    let params = setup.params(n)?;
    let points: Vec<C64> = zetas.iter().map(|&zeta| rescale_map(&zoom, n, zeta)).collect();
    let scale = (n as f64 * zoom.delta).powi(zetas.len() as i32);
    Ok(corr(&points, &params)? / scale)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub tau: f64,
    pub p: C64,
    pub regime: Regime,
    pub zetas: Vec<C64>,
    pub finite_value: f64,
    pub limit_value: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Rescaled correlations at every `N` and every point set, against the limit.
/// Records come back sorted by `N`, then by point set.
pub fn convergence_experiment(setup: &ScalingSetup, zeta_sets: &[Vec<C64>], n_list: &[usize]) -> Result<Vec<ConvergenceRecord>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("N list must be strictly increasing".into()));
    }
    let spec = setup.limit_spec()?;
    let limits = zeta_sets.par_iter().map(|z| limit_corr(z, &spec)).collect::<Result<Vec<f64>>>()?;
    let jobs: Vec<(usize, usize)> = n_list.iter().flat_map(|&n| (0..zeta_sets.len()).map(move |j| (n, j))).collect();
    jobs.par_iter()
        .map(|&(n, j)| {
            let finite_value = rescaled_corr(setup, n, &zeta_sets[j])?;
            let limit_value = limits[j];
            let abs_error = (finite_value - limit_value).abs();
            Ok(ConvergenceRecord {
                n,
                tau: setup.schedule.tau_of(n)?,
                p: setup.zoom(n)?.p,
                regime: spec.regime,
                zetas: zeta_sets[j].clone(),
                finite_value,
                limit_value,
                abs_error,
                rel_error: if limit_value != 0.0 { abs_error / limit_value.abs() } else { abs_error },
            })
        })
        .collect()
}

/// Largest error among the records at size `n` (`None` if there are none).
pub fn max_error_at(records: &[ConvergenceRecord], n: usize) -> Option<f64> {
    records.iter().filter(|r| r.n == n).map(|r| r.abs_error).fold(None, |m, e| Some(m.map_or(e, |m: f64| m.max(e))))
}

/// One-point density `rho_1(z)/N` next to the equilibrium density at `z`
/// (zero outside the droplet).
pub fn density_check(z: C64, params: &ModelParams) -> Result<(f64, f64)> {
    let finite = corr(&[z], params)? / params.n as f64;
    let limit = crate::geometry::density_mu(z, params.tau)?;
    Ok((finite, limit))
}

/// `ln( sqrt(K(z,z) K(w,w)) / |K(z,w)| )` for the complex kernel, a gauge
/// invariant measure of off-diagonal decay.
pub fn offdiag_decay(z: C64, w: C64, params: &ModelParams) -> Result<f64> {
    let p = params.with_class(SymmetryClass::Complex)?;
    let kzz = kernel_knc(z, z, &p)?;
    let kww = kernel_knc(w, w, &p)?;
    let kzw = kernel_knc(z, w, &p)?;
    Ok(0.5 * (kzz.ln_abs() + kww.ln_abs()) - kzw.ln_abs())
}

// ---------------------------------------------------------------------------
// Large-degree Laguerre asymptotics

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymRegime {
    /// `L_{N+r}(N z / tau)` with `z` off `[0, 4 tau]`.
    Exponential,
    /// `L_N(4 N z)` with `0 < Re z < 1` and small `Im z`.
    Oscillatory,
    /// `e^{-x/2} L_{N+r}(x)` at `x = 4N + 2 (2N)^{1/3} xi`.
    Critical,
}

impl std::str::FromStr for AsymRegime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" => Ok(Self::Exponential),
            "oscillatory" => Ok(Self::Oscillatory),
            "critical" => Ok(Self::Critical),
            _ => Err(Error::Invalid(format!("unknown asymptotic regime '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymInput {
    pub n: usize,
    pub r: usize,
    pub nu: f64,
    /// Only used by the exponential regime.
    pub tau: f64,
    /// `z` for the exponential and oscillatory regimes, `xi` for the critical one.
    pub point: C64,
}

/// Prediction and exact value, both divided by `exp(scale_ln)`.
///
/// The scale is the modulus of the prediction (exponential), the amplitude
/// in front of the cosine (oscillatory) or `2^{-nu-1/3} N^{-1/3}` (critical),
/// so `deviation` is a relative error that stays meaningful near zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymReport {
    pub regime: AsymRegime,
    pub n: usize,
    pub point: C64,
    pub scale_ln: f64,
    pub prediction: C64,
    pub exact: C64,
    pub deviation: f64,
    /// Cosine of the phase (oscillatory regime only).
    pub phase_cos: Option<f64>,
}

pub fn laguerre_asym(regime: AsymRegime, input: &AsymInput) -> Result<AsymReport> {
    if input.n == 0 || !input.nu.is_finite() || input.nu <= -1.0 {
        return Err(Error::Invalid(format!("need N > 0 and nu > -1, got N = {}, nu = {}", input.n, input.nu)));
    }
    let (pred, exact, scale_ln, phase_cos) = match regime {
        AsymRegime::Exponential => exponential(input)?,
        AsymRegime::Oscillatory => oscillatory(input)?,
        AsymRegime::Critical => critical(input)?,
    };
    let norm = |s: ScaledComplex| s.mul_exp(-scale_ln).to_c64();
    let (prediction, exact) = (norm(pred), norm(exact));
    Ok(AsymReport {
        regime,
        n: input.n,
        point: input.point,
        scale_ln,
        prediction,
        exact,
        deviation: (prediction - exact).norm(),
        phase_cos,
    })
}

type AsymParts = (ScaledComplex, ScaledComplex, f64, Option<f64>);

fn exponential(input: &AsymInput) -> Result<AsymParts> {
    let AsymInput { n, r, nu, tau, point: z } = *input;
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!("exponential regime needs tau in (0, 1), got {tau}")));
    }
    if z.norm() == 0.0 {
        return Err(Error::Singular("exponential regime at z = 0".into()));
    }
    let nf = n as f64;
    let m = n + r;
    let u = psi(z, tau)?;
    let dpsi = psi_prime(z, tau)?;
    let g = g_tau(z, tau)?;
    // e^{N g} (-1)^{N+r} tau^{-(N+r)} psi^{r+nu/2} sqrt(psi') z^{-nu/2} / sqrt(2 pi N)
    let log = nf * g - m as f64 * tau.ln() + (r as f64 + nu / 2.0) * u.ln() + 0.5 * dpsi.ln()
        - (nu / 2.0) * z.ln()
        - 0.5 * (2.0 * PI * nf).ln();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pred = ScaledComplex::exp(log).scale(sign);
    let exact = laguerre_scaled(m, nu, z * nf / tau);
    Ok((pred, exact, pred.ln_abs(), None))
}

fn oscillatory(input: &AsymInput) -> Result<AsymParts> {
    let AsymInput { n, r, nu, point: z, .. } = *input;
    if r != 0 {
        return Err(Error::Invalid("the oscillatory regime is stated for r = 0 only".into()));
    }
    if !(z.re > 0.0 && z.re < 1.0) || z.im.abs() > 0.1 {
        return Err(Error::Domain(format!("oscillatory regime needs 0 < Re z < 1 and |Im z| <= 0.1, got {z}")));
    }
    let nf = n as f64;
    let one = C64::new(1.0, 0.0);
    let s = (z * (one - z)).sqrt();
    // (4Nz)^{-nu/2} e^{2Nz} (2 pi sqrt(z(1-z)))^{-1/2} N^{-1/2} sqrt((N+nu)!/N!)
    let amp_log = -(nu / 2.0) * (4.0 * nf * z).ln() + 2.0 * nf * z - 0.5 * (2.0 * PI * s).ln() - 0.5 * nf.ln()
        + 0.5 * (log_gamma(nf + nu + 1.0)? - log_gamma(nf + 1.0)?);
    let phase = 2.0 * nf * s - (2.0 * nf + nu + 1.0) * z.sqrt().acos() + PI / 4.0;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let amp = ScaledComplex::exp(amp_log).scale(sign);
    let cos = phase.cos();
    let pred = amp.scale_c(cos);
    let exact = laguerre_scaled(n, nu, 4.0 * nf * z);
    Ok((pred, exact, amp.ln_abs(), Some(cos.re)))
}

fn critical(input: &AsymInput) -> Result<AsymParts> {
    let AsymInput { n, r, nu, point, .. } = *input;
    let xi = point.re;
    if point.im != 0.0 || xi.abs() > 10.0 {
        return Err(Error::Domain(format!("critical regime needs real xi with |xi| <= 10, got {point}")));
    }
    let nf = n as f64;
    let m = n + r;
    let t = (2.0 * nf).cbrt();
    let x = 4.0 * nf + 2.0 * t * xi;
    let scale_ln = -(nu + 1.0 / 3.0) * std::f64::consts::LN_2 - nf.ln() / 3.0;
    let xc = C64::new(xi, 0.0);
    let lead = airy_ai(xc) - (2.0 * r as f64 + nu + 1.0) / t * airy_ai_prime(xc);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pred = ScaledComplex::new(lead * sign, scale_ln);
    let exact = laguerre_scaled(m, nu, C64::new(x, 0.0)).mul_exp(-x / 2.0);
    Ok((pred, exact, scale_ln, None))
}

/// Mean deviation at `2N` over mean deviation at `N` across the given points.
/// Oscillatory points with `|cos| <= 0.3` at either size are skipped.
pub fn asym_decay_ratio(regime: AsymRegime, base: &AsymInput, points: &[C64]) -> Result<f64> {
    let (mut d1, mut d2, mut used) = (0.0, 0.0, 0usize);
    for &point in points {
        let a = laguerre_asym(regime, &AsymInput { point, ..*base })?;
        let b = laguerre_asym(regime, &AsymInput { point, n: 2 * base.n, ..*base })?;
        let nodal = |r: &AsymReport| r.phase_cos.is_some_and(|c| c.abs() <= 0.3);
        if nodal(&a) || nodal(&b) {
            continue;
        }
        d1 += a.deviation;
        d2 += b.deviation;
        used += 1;
    }
    if used == 0 || d1 == 0.0 {
        return Err(Error::Invalid("no admissible points for the decay ratio".into()));
    }
    Ok(d2 / d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn schedules() {
        assert_eq!(RegimeSchedule::Strong { tau: 0.5 }.tau_of(10).unwrap(), 0.5);
        assert!((RegimeSchedule::WeakBulk { c: 1.0 }.tau_of(100).unwrap() - 0.99).abs() < 1e-15);
        assert!((RegimeSchedule::WeakEdge { c: 1.0 }.tau_of(4).unwrap() - 0.5).abs() < 1e-15);
        assert!(RegimeSchedule::WeakBulk { c: 2.0 }.tau_of(4).is_err());
        assert!(RegimeSchedule::WeakEdge { c: 2.0 }.tau_of(32).is_err());
        assert!(RegimeSchedule::Strong { tau: 1.0 }.tau_of(5).is_err());
    }

    #[test]
    fn rescale_examples() {
        let zoom = zoom_point(c(1.0, 0.0), 0.5).unwrap();
        assert_eq!(rescale_map(&zoom, 100, C64::new(0.0, 0.0)), zoom.p);
        let z = rescale_map(&zoom, 100, c(1.0, 0.0));
        assert!((z - c(1.0 + 1.0 / (200.0f64 / 3.0).sqrt(), 0.0)).norm() < 1e-14);
        assert!((z.re - 1.1225).abs() < 1e-4);
        let zi = rescale_map(&zoom, 100, c(0.0, 1.0));
        assert!((zi - zoom.p - c(0.0, 1.0) / (200.0f64 / 3.0).sqrt()).norm() < 1e-14);
    }

    #[test]
    fn weak_edge_base_point_tracks_n() {
        let s = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::WeakEdge { c: 1.0 }, c(9.0, 9.0), 1.0);
        for n in [50, 400] {
            let tau = s.schedule.tau_of(n).unwrap();
            let z = s.zoom(n).unwrap();
            assert_eq!(z.p, c((1.0 + tau).powi(2), 0.0));
            assert_eq!(z.location, ZoomKind::Edge);
        }
        assert_eq!(s.regime().unwrap(), Regime::WeakEdge);
    }

    #[test]
    fn strong_bulk_and_edge_one_point() {
        let bulk = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, c(1.0, 0.0), 1.0);
        let errs: Vec<f64> = [50, 100, 200, 400]
            .iter()
            .map(|&n| (rescaled_corr(&bulk, n, &[c(0.0, 0.0)]).unwrap() - 1.0).abs())
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        assert!(errs[3] < 0.05);
        let (_, ep) = crate::geometry::edge_points(0.5);
        let edge = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, c(ep, 0.0), 1.0);
        assert_eq!(edge.regime().unwrap(), Regime::StrongEdge);
        let v = rescaled_corr(&edge, 400, &[c(0.0, 0.0)]).unwrap();
        assert!((v - 0.5).abs() < 0.05, "{v}");
    }

    #[test]
    fn weak_bulk_one_point() {
        let s = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::WeakBulk { c: 1.0 }, c(2.0, 0.0), 1.0);
        let v = rescaled_corr(&s, 400, &[c(0.0, 0.0)]).unwrap();
        assert!((v - crate::specfun::erf(1.0)).abs() < 0.05, "{v}");
    }

    #[test]
    fn experiment_records_are_sorted() {
        let s = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, c(1.0, 0.0), 1.0);
        let sets = vec![vec![c(0.0, 0.0)], vec![c(0.3, 0.2)], vec![c(0.0, 0.0), c(0.5, 0.0)]];
        let recs = convergence_experiment(&s, &sets, &[25, 50, 100]).unwrap();
        assert_eq!(recs.len(), 9);
        assert!(recs.windows(2).all(|w| w[0].n <= w[1].n));
        assert!(recs.iter().all(|r| r.abs_error >= 0.0 && r.rel_error >= 0.0));
        assert!(max_error_at(&recs, 100).unwrap() < max_error_at(&recs, 25).unwrap());
        assert!(convergence_experiment(&s, &sets, &[50, 25]).is_err());
    }

    #[test]
    fn exponential_asymptotics() {
        let inp = AsymInput { n: 150, r: 0, nu: 1.0, tau: 0.5, point: c(3.0, 1.0) };
        let rep = laguerre_asym(AsymRegime::Exponential, &inp).unwrap();
        assert!(rep.deviation <= 5.0 / 150.0, "{}", rep.deviation);
        // against mpmath: |pred - exact| / |pred|
        assert!((rep.deviation - 5.430507858561678e-4).abs() < 1e-9);
        assert!(laguerre_asym(AsymRegime::Exponential, &AsymInput { point: c(1.0, 0.0), ..inp }).is_err());
    }

    #[test]
    fn oscillatory_asymptotics() {
        let inp = AsymInput { n: 200, r: 0, nu: 0.5, tau: 0.0, point: c(0.4, 0.0) };
        let rep = laguerre_asym(AsymRegime::Oscillatory, &inp).unwrap();
        assert!(rep.phase_cos.unwrap().abs() > 0.3);
        assert!(rep.deviation <= 10.0 / 200.0, "{}", rep.deviation);
        assert!(laguerre_asym(AsymRegime::Oscillatory, &AsymInput { point: c(1.2, 0.0), ..inp }).is_err());
    }

    #[test]
    fn critical_asymptotics() {
        let inp = AsymInput { n: 200, r: 0, nu: 1.0, tau: 0.0, point: c(0.5, 0.0) };
        let rep = laguerre_asym(AsymRegime::Critical, &inp).unwrap();
        assert!(rep.deviation <= 10.0 * 200f64.powf(-2.0 / 3.0));
        // against mpmath: |pred - exact| / (2^{-nu-1/3} N^{-1/3})
        assert!((rep.deviation - 2.423891644831745e-3).abs() < 1e-8, "{}", rep.deviation);
        assert!(laguerre_asym(AsymRegime::Critical, &AsymInput { point: c(0.5, 0.1), ..inp }).is_err());
    }

    #[test]
    fn asymptotic_errors_shrink_on_doubling() {
        let pts = |f: &dyn Fn(f64) -> C64| (0..20).map(|j| f(j as f64 / 19.0)).collect::<Vec<_>>();
        let base = AsymInput { n: 100, r: 0, nu: 1.0, tau: 0.5, point: c(0.0, 0.0) };
        let exp_pts = pts(&|t| C64::from_polar(3.0 + t, 0.3 + 2.5 * t));
        let osc_pts = pts(&|t| c(0.1 + 0.8 * t, 0.0));
        let crit_pts = pts(&|t| c(-2.0 + 4.0 * t, 0.0));
        for (regime, p) in [(AsymRegime::Exponential, exp_pts), (AsymRegime::Oscillatory, osc_pts), (AsymRegime::Critical, crit_pts)] {
            let ratio = asym_decay_ratio(regime, &base, &p).unwrap();
            assert!(ratio <= 0.75, "{regime:?}: {ratio}");
        }
    }

    #[test]
    fn density_and_decay() {
        let params = ModelParams::new(SymmetryClass::Complex, 200, 1.0, 0.5).unwrap();
        let (f, l) = density_check(c(1.0, 0.3), &params).unwrap();
        assert!((f - l).abs() < 2e-2, "{f} {l}");
        let (f, l) = density_check(c(3.5, 1.5), &params).unwrap();
        assert_eq!(l, 0.0);
        assert!(f < 1e-3, "{f}");
        let d = offdiag_decay(c(1.0, 0.2), c(1.5, 0.2), &params).unwrap();
        assert!(d >= 0.01 * 200.0, "{d}");
    }
}
