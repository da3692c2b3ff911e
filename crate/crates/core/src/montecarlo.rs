//! Sampling `X = X1 X2*` and the eigenvalue statistics of the droplet.
//!
//! Randomness: every trial owns a ChaCha20 generator keyed by the master seed.
//! Matrix `P` of trial `t` is drawn from stream `2t`, `Q` from stream `2t + 1`,
//! entries in row-major order. Samples are therefore reproducible and
//! independent of how trials are scheduled across threads.

use crate::error::{Error, Result};
use crate::finite_kernels::{ModelParams, SymmetryClass};
use crate::geometry::DropletGeometry;
use crate::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Parameters of the matrix model. Unlike [`ModelParams`], `nu` must be a
/// nonnegative integer and `tau = 1` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixModel {
    pub class: SymmetryClass,
    pub n: usize,
    pub nu: usize,
    pub tau: f64,
}

impl MatrixModel {
    pub fn new(class: SymmetryClass, n: usize, nu: usize, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::Domain(format!("tau must lie in [0, 1], got {tau}")));
        }
        Ok(Self { class, n, nu, tau })
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        if p.nu < 0.0 || p.nu.fract() != 0.0 {
            return Err(Error::Domain(format!("the matrix model needs a nonnegative integer nu, got {}", p.nu)));
        }
        Self::new(p.class, p.n, p.nu as usize, p.tau)
    }

    /// Size of the complex matrix that is diagonalized.
    pub fn dim(&self) -> usize {
        match self.class {
            SymmetryClass::Complex => self.n,
            SymmetryClass::Symplectic => 2 * self.n,
        }
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }

    /// `self * other^H`.
    pub fn mul_adjoint(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.cols);
        let mut out = CMat::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = &self.data[i * self.cols..(i + 1) * self.cols];
            for j in 0..other.rows {
                let b = &other.data[j * other.cols..(j + 1) * other.cols];
                *out.at_mut(i, j) = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
            }
        }
        out
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Gaussian factors and the product for one trial.
#[derive(Debug, Clone)]
pub struct WishartMatrices {
    pub p: CMat,
    pub q: CMat,
    pub x: CMat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WishartSample {
    pub model: MatrixModel,
    pub seed: u64,
    pub trial: u64,
    /// All N eigenvalues (complex class), or one representative with
    /// `Im >= 0` of each conjugate pair (symplectic class).
    pub eigenvalues: Vec<C64>,
    pub paired: bool,
    /// Largest `|lambda - conj(mu)|` over matched pairs (0 for the complex class).
    pub pair_defect: f64,
}

impl WishartSample {
    /// The full spectrum, with conjugates restored for the symplectic class.
    pub fn spectrum(&self) -> Vec<C64> {
        if !self.paired {
            return self.eigenvalues.clone();
        }
        self.eigenvalues.iter().flat_map(|&z| [z, z.conj()]).collect()
    }
}

fn gaussian_matrix(model: &MatrixModel, rng: &mut ChaCha20Rng) -> CMat {
    let (n, m) = (model.n, model.n + model.nu);
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    match model.class {
        SymmetryClass::Complex => {
            let s = 0.5 / (n as f64).sqrt();
            let mut a = CMat::zeros(n, m);
            for z in a.data.iter_mut() {
                *z = C64::new(g(), g()) * s;
            }
            a
        }
        SymmetryClass::Symplectic => {
            // q = a + b j as the block [[a, b], [-conj b, conj a]]
            let s = (8.0 * n as f64).sqrt().recip();
            let mut a = CMat::zeros(2 * n, 2 * m);
            for i in 0..n {
                for j in 0..m {
                    let qa = C64::new(g(), g()) * s;
                    let qb = C64::new(g(), g()) * s;
                    *a.at_mut(2 * i, 2 * j) = qa;
                    *a.at_mut(2 * i, 2 * j + 1) = qb;
                    *a.at_mut(2 * i + 1, 2 * j) = -qb.conj();
                    *a.at_mut(2 * i + 1, 2 * j + 1) = qa.conj();
                }
            }
            a
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `P`, `Q` and `X = X1 X2*` with `X1 = sqrt(1+tau) P + sqrt(1-tau) Q`,
/// `X2 = sqrt(1+tau) P - sqrt(1-tau) Q`.
pub fn wishart_matrices(model: &MatrixModel, seed: u64, trial: u64) -> WishartMatrices {
    let p = gaussian_matrix(model, &mut stream_rng(seed, 2 * trial));
    let q = gaussian_matrix(model, &mut stream_rng(seed, 2 * trial + 1));
    let (sp, sq) = ((1.0 + model.tau).sqrt(), (1.0 - model.tau).max(0.0).sqrt());
    let combine = |sign: f64| CMat {
        rows: p.rows,
        cols: p.cols,
        data: p.data.iter().zip(&q.data).map(|(a, b)| a * sp + b * (sign * sq)).collect(),
    };
    let x = combine(1.0).mul_adjoint(&combine(-1.0));
    WishartMatrices { p, q, x }
}

pub fn sample_wishart(model: &MatrixModel, seed: u64) -> Result<WishartSample> {
    sample_trial(model, seed, 0)
}

pub fn sample_trial(model: &MatrixModel, seed: u64, trial: u64) -> Result<WishartSample> {
    let m = wishart_matrices(model, seed, trial);
    let eigs = eigenvalues(&m.x)?;
    let (eigenvalues, paired, pair_defect) = match model.class {
        SymmetryClass::Complex => (eigs, false, 0.0),
        SymmetryClass::Symplectic => {
            let (reps, defect) = pair_conjugates(&eigs, 1e-6)?;
            (reps, true, defect)
        }
    };
    Ok(WishartSample { model: *model, seed, trial, eigenvalues, paired, pair_defect })
}

/// Trials `0..trials` in parallel, returned in trial order.
pub fn sample_many(model: &MatrixModel, seed: u64, trials: usize) -> Result<Vec<WishartSample>> {
    (0..trials as u64).into_par_iter().map(|t| sample_trial(model, seed, t)).collect()
}

/// Greedy nearest-conjugate matching. Returns one representative per pair,
/// with `Im >= 0`, and the largest mismatch.
pub fn pair_conjugates(eigs: &[C64], tol: f64) -> Result<(Vec<C64>, f64)> {
    if eigs.len() % 2 != 0 {
        return Err(Error::Invalid(format!("odd spectrum size {} cannot be paired", eigs.len())));
    }
    let mut order: Vec<usize> = (0..eigs.len()).collect();
    order.sort_by(|&a, &b| eigs[b].im.abs().total_cmp(&eigs[a].im.abs()));
    let mut used = vec![false; eigs.len()];
    let mut reps = Vec::with_capacity(eigs.len() / 2);
    let mut defect = 0f64;
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = eigs[i].conj();
        let j = (0..eigs.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (eigs[a] - target).norm().total_cmp(&(eigs[b] - target).norm()))
            .expect("even count leaves a partner");
        used[j] = true;
        let d = (eigs[j] - target).norm();
        let scale = 1f64.max(eigs[i].norm());
        if d > tol * scale {
            return Err(Error::Invalid(format!("eigenvalue {} has no conjugate partner within {tol:e}", eigs[i])));
        }
        defect = defect.max(d);
        let mid = 0.5 * (eigs[i] + eigs[j].conj());
        reps.push(C64::new(mid.re, mid.im.abs()));
    }
    Ok((reps, defect))
}

// ---------------------------------------------------------------------------
// Eigenvalues: Householder reduction to Hessenberg form, then single-shift
// complex QR with Givens rotations.

pub fn eigenvalues(a: &CMat) -> Result<Vec<C64>> {
    if a.rows != a.cols {
        return Err(Error::Invalid(format!("eigenvalues of a {}x{} matrix", a.rows, a.cols)));
    }
    if a.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Invalid("matrix has non-finite entries".into()));
    }
    let mut h = a.clone();
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

pub fn hessenberg(a: &mut CMat) {
    let n = a.rows;
    if n < 3 {
        return;
    }
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 2 {
        let alpha: f64 = (k + 1..n).map(|i| a.at(i, k).norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = a.at(k + 1, k);
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase * alpha * e1, H = I - 2 v v^H / (v^H v)
        for i in k + 1..n {
            v[i] = a.at(i, k);
        }
        v[k + 1] += phase * alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i].norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // A <- H A
        for j in k..n {
            let s: C64 = (k + 1..n).map(|i| v[i].conj() * a.at(i, j)).sum::<C64>() * beta;
            for i in k + 1..n {
                *a.at_mut(i, j) -= v[i] * s;
            }
        }
        // A <- A H
        for i in 0..n {
            let s: C64 = (k + 1..n).map(|j| a.at(i, j) * v[j]).sum::<C64>() * beta;
            for j in k + 1..n {
                *a.at_mut(i, j) -= s * v[j].conj();
            }
        }
        for i in k + 2..n {
            *a.at_mut(i, k) = C64::new(0.0, 0.0);
        }
    }
}

fn givens(a: C64, b: C64) -> (C64, C64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    } else {
        (a / r, b / r)
    }
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    let (l1, l2) = (tr + disc, tr - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr(h: &mut CMat) -> Result<Vec<C64>> {
    let n = h.rows;
    let mut eigs = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eigs);
    }
    let max_iter = 30 * n.max(10);
    let (mut total, mut since) = (0usize, 0usize);
    let mut hi = n - 1;
    let mut rot = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eigs.push(h.at(0, 0));
            break;
        }
        // look for a negligible subdiagonal entry
        let mut lo = 0;
        for k in (1..=hi).rev() {
            let s = h.at(k - 1, k - 1).norm() + h.at(k, k).norm();
            if h.at(k, k - 1).norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                *h.at_mut(k, k - 1) = C64::new(0.0, 0.0);
                lo = k;
                break;
            }
        }
        if lo == hi {
            eigs.push(h.at(hi, hi));
            hi -= 1;
            since = 0;
            continue;
        }
        total += 1;
        since += 1;
        if total > max_iter {
            return Err(Error::NoConvergence(total));
        }
        let shift = if since % 11 == 10 {
            // exceptional shift to break cycles
            h.at(hi, hi) + C64::new(h.at(hi, hi - 1).norm(), 0.0) * 0.75
        } else {
            wilkinson(h.at(hi - 1, hi - 1), h.at(hi - 1, hi), h.at(hi, hi - 1), h.at(hi, hi))
        };
        for k in lo..=hi {
            *h.at_mut(k, k) -= shift;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h.at(k, k), h.at(k + 1, k));
            for j in k..=hi {
                let (x, y) = (h.at(k, j), h.at(k + 1, j));
                *h.at_mut(k, j) = c.conj() * x + s.conj() * y;
                *h.at_mut(k + 1, j) = -s * x + c * y;
            }
            rot.push((c, s));
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 2).min(hi) {
                let (x, y) = (h.at(i, k), h.at(i, k + 1));
                *h.at_mut(i, k) = x * c + y * s;
                *h.at_mut(i, k + 1) = -x * s.conj() + y * c.conj();
            }
        }
        for k in lo..=hi {
            *h.at_mut(k, k) += shift;
        }
    }
    Ok(eigs)
}

// ---------------------------------------------------------------------------
// Statistics

/// Fraction of eigenvalues inside the droplet with both semi-axes enlarged by `band`.
pub fn ellipse_fraction(samples: &[WishartSample], geometry: &DropletGeometry, band: f64) -> f64 {
    let (ax, ay) = (geometry.semi_axis_x + band, geometry.semi_axis_y + band);
    let (mut inside, mut total) = (0usize, 0usize);
    for z in samples.iter().flat_map(|s| s.spectrum()) {
        let (u, v) = ((z.re - geometry.center) / ax, z.im / ay);
        total += 1;
        if u * u + v * v <= 1.0 {
            inside += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        inside as f64 / total as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBin {
    pub r_lo: f64,
    pub r_hi: f64,
    /// Fraction of all eigenvalues with modulus in the bin.
    pub observed: f64,
    /// The same fraction under the equilibrium measure.
    pub predicted: f64,
}

/// Histogram of `|z|` over `[0, r_max]` next to the prediction of mu.
pub fn radial_density(samples: &[WishartSample], geometry: &DropletGeometry, bins: usize, r_max: f64) -> Vec<RadialBin> {
    let mut counts = vec![0usize; bins];
    let mut total = 0usize;
    for z in samples.iter().flat_map(|s| s.spectrum()) {
        total += 1;
        let k = (z.norm() / r_max * bins as f64) as usize;
        if k < bins {
            counts[k] += 1;
        }
    }
    let h = r_max / bins as f64;
    (0..bins)
        .map(|k| {
            let (r_lo, r_hi) = (k as f64 * h, (k + 1) as f64 * h);
            RadialBin {
                r_lo,
                r_hi,
                observed: if total == 0 { 0.0 } else { counts[k] as f64 / total as f64 },
                predicted: geometry.radial_mass(r_lo, r_hi),
            }
        })
        .collect()
}

/// Density of eigenvalues with `|Im z|` in the outer band divided by the
/// density in `|Im z| < inner`, counting only `Re z` in `re_range`.
/// Large values mean repulsion from the real axis.
///
/// Keep `re_range` away from the origin: there the `1/|z|` density piles
/// eigenvalues up along the axis for both classes.
pub fn near_axis_depletion(samples: &[WishartSample], inner: f64, outer: (f64, f64), re_range: (f64, f64)) -> f64 {
    let (mut n_in, mut n_out) = (0usize, 0usize);
    for z in samples.iter().flat_map(|s| s.spectrum()) {
        if z.re < re_range.0 || z.re > re_range.1 {
            continue;
        }
        let y = z.im.abs();
        if y < inner {
            n_in += 1;
        } else if y > outer.0 && y < outer.1 {
            n_out += 1;
        }
    }
    let d_in = n_in as f64 / inner;
    let d_out = n_out as f64 / (outer.1 - outer.0);
    if d_in == 0.0 {
        f64::INFINITY
    } else {
        d_out / d_in
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    /// Largest distance from each of `a` to the nearest unused element of `b`.
    fn match_dist(a: &[C64], b: &[C64]) -> f64 {
        let mut used = vec![false; b.len()];
        let mut worst = 0f64;
        for x in a {
            let j = (0..b.len()).filter(|&j| !used[j]).min_by(|&i, &j| (b[i] - x).norm().total_cmp(&(b[j] - x).norm())).unwrap();
            used[j] = true;
            worst = worst.max((b[j] - x).norm());
        }
        worst
    }

    #[test]
    fn small_spectra() {
        let d = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0)],
        ]);
        let e = eigenvalues(&d).unwrap();
        assert!(match_dist(&e, &[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]) < 1e-14);
        let r = CMat::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.0)]]);
        let e = eigenvalues(&r).unwrap();
        assert!(match_dist(&e, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-14);
        assert!(eigenvalues(&CMat::zeros(2, 3)).is_err());
    }

    #[test]
    fn agrees_with_nalgebra() {
        let model = MatrixModel::new(SymmetryClass::Complex, 50, 3, 0.4).unwrap();
        let m = wishart_matrices(&model, 11, 0);
        let ours = eigenvalues(&m.x).unwrap();
        let na = DMatrix::from_row_slice(50, 50, &m.x.data);
        let theirs: Vec<C64> = na.schur().eigenvalues().unwrap().iter().copied().collect();
        assert!(match_dist(&ours, &theirs) < 1e-10, "{}", match_dist(&ours, &theirs));
    }

    #[test]
    fn backward_error_of_eigenpairs() {
        let model = MatrixModel::new(SymmetryClass::Complex, 40, 1, 0.5).unwrap();
        let x = wishart_matrices(&model, 5, 3).x;
        let eigs = eigenvalues(&x).unwrap();
        let na = DMatrix::from_row_slice(40, 40, &x.data);
        for &lam in eigs.iter().step_by(4).take(10) {
            // one step of inverse iteration from a fixed start vector
            let shifted = &na - DMatrix::<C64>::identity(40, 40) * lam;
            let b = nalgebra::DVector::from_element(40, c(1.0, 0.0));
            let v = shifted.lu().solve(&b).unwrap().normalize();
            let r = (&na * &v - v.clone() * lam).norm() / x.norm_fro();
            assert!(r <= 1e-8, "{lam}: {r}");
        }
    }

    #[test]
    fn dimensions_and_determinism() {
        let model = MatrixModel::new(SymmetryClass::Complex, 5, 2, 0.3).unwrap();
        let m = wishart_matrices(&model, 1, 0);
        assert_eq!((m.p.rows, m.p.cols, m.x.rows, m.x.cols), (5, 7, 5, 5));
        let a = sample_wishart(&model, 99).unwrap();
        let b = sample_wishart(&model, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.eigenvalues, sample_wishart(&model, 100).unwrap().eigenvalues);
        let many = sample_many(&model, 99, 4).unwrap();
        assert_eq!(many[0], a);
        assert!(MatrixModel::from_params(&ModelParams::new(SymmetryClass::Complex, 5, 0.5, 0.3).unwrap()).is_err());
    }

    #[test]
    fn tau_one_gives_positive_hermitian() {
        let model = MatrixModel::new(SymmetryClass::Complex, 20, 1, 1.0).unwrap();
        let m = wishart_matrices(&model, 4, 0);
        for i in 0..20 {
            for j in 0..20 {
                assert!((m.x.at(i, j) - m.x.at(j, i).conj()).norm() < 1e-14);
            }
        }
        let s = sample_wishart(&model, 4).unwrap();
        assert!(s.eigenvalues.iter().all(|z| z.im.abs() < 1e-10 && z.re > -1e-10));
    }

    #[test]
    fn quaternion_structure() {
        let model = MatrixModel::new(SymmetryClass::Symplectic, 10, 1, 0.5).unwrap();
        let x = wishart_matrices(&model, 8, 0).x;
        // J conj(X) J^{-1} = X, with J = diag([[0, 1], [-1, 0]])
        for i in 0..10 {
            for j in 0..10 {
                let (a, b) = (x.at(2 * i, 2 * j), x.at(2 * i, 2 * j + 1));
                assert!((x.at(2 * i + 1, 2 * j + 1) - a.conj()).norm() < 1e-14);
                assert!((x.at(2 * i + 1, 2 * j) + b.conj()).norm() < 1e-14);
            }
        }
        let s = sample_wishart(&model, 8).unwrap();
        assert_eq!(s.eigenvalues.len(), 10);
        assert!(s.paired && s.pair_defect < 1e-8);
        assert!(s.eigenvalues.iter().all(|z| z.im >= 0.0));
        let full = sorted(eigenvalues(&x).unwrap());
        assert!(match_dist(&s.spectrum(), &full) < 1e-8);
    }

    #[test]
    fn entry_variance() {
        // 10^6 complex entries: E|g|^2 = 1/(2N), sd of the mean = 1/(2N sqrt(10^6))
        let n = 50;
        let model = MatrixModel::new(SymmetryClass::Complex, n, 0, 0.5).unwrap();
        let mut sum = 0.0;
        let mut count = 0usize;
        for t in 0..200 {
            let m = wishart_matrices(&model, 3, t);
            sum += m.p.data.iter().chain(&m.q.data).map(|z| z.norm_sqr()).sum::<f64>();
            count += 2 * n * n;
        }
        let target = 1.0 / (2.0 * n as f64);
        assert_eq!(count, 1_000_000);
        assert!((sum / count as f64 - target).abs() < 3.0 * target / 1000.0);
        let qm = MatrixModel::new(SymmetryClass::Symplectic, n, 0, 0.5).unwrap();
        let p = wishart_matrices(&qm, 3, 0).p;
        // each quaternion shows up twice in its 2x2 block
        let e = p.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / (2 * n * n) as f64;
        assert!((e - target).abs() < 0.05 * target);
    }

    #[test]
    fn droplet_statistics_small() {
        let model = MatrixModel::new(SymmetryClass::Complex, 60, 1, 0.5).unwrap();
        let samples = sample_many(&model, 7, 10).unwrap();
        let g = DropletGeometry::new(0.5).unwrap();
        let f = ellipse_fraction(&samples, &g, 1.0 / (60f64).sqrt());
        assert!(f > 0.95, "{f}");
        let bins = radial_density(&samples, &g, 10, 3.0);
        let obs: f64 = bins.iter().map(|b| b.observed).sum();
        let pred: f64 = bins.iter().map(|b| b.predicted).sum();
        assert!((obs - 1.0).abs() < 0.02 && (pred - 1.0).abs() < 0.01, "{obs} {pred}");
        let d = near_axis_depletion(&samples, 0.02, (0.1, 0.12), (0.5, 2.5));
        assert!(d < 3.0, "{d}");
        let sm = MatrixModel::new(SymmetryClass::Symplectic, 60, 1, 0.5).unwrap();
        let ss = sample_many(&sm, 7, 10).unwrap();
        let d = near_axis_depletion(&ss, 0.03, (0.15, 0.18), (0.5, 2.5));
        assert!(d >= 3.0, "{d}");
    }
}
