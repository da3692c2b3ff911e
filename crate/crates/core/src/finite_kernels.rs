//! Finite-N weights, planar (skew-)orthogonal Laguerre polynomials, the
//! determinantal kernel `K_N^c`, the Pfaffian pre-kernel `varkappa_N` and the
//! correlation functions built from them.
//!
//! Every kernel is summed term by term in [`ScaledComplex`] arithmetic.

use crate::specfun::{bessel_i_entire, bessel_k, laguerre_scaled, laguerre_seq_scaled, log_gamma, ScaledComplex};
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Complex,
    Symplectic,
}

impl std::str::FromStr for SymmetryClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" | "c" => Ok(Self::Complex),
            "symplectic" | "s" => Ok(Self::Symplectic),
            _ => Err(Error::Invalid(format!("unknown symmetry class '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub class: SymmetryClass,
    pub n: usize,
    pub nu: f64,
    pub tau: f64,
    /// `A = 2/(1 - tau^2)`
    pub a: f64,
    /// `B = 2 tau/(1 - tau^2)`
    pub b: f64,
}

impl ModelParams {
    pub fn new(class: SymmetryClass, n: usize, nu: f64, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::Domain(format!("tau must lie in [0, 1), got {tau}")));
        }
        let nu_min = match class {
            SymmetryClass::Complex => -1.0,
            SymmetryClass::Symplectic => -0.5,
        };
        if !(nu > nu_min) || !nu.is_finite() {
            return Err(Error::Domain(format!("nu must exceed {nu_min} for the {class:?} class, got {nu}")));
        }
        let d = 1.0 - tau * tau;
        Ok(Self { class, n, nu, tau, a: 2.0 / d, b: 2.0 * tau / d })
    }

    pub fn with_class(&self, class: SymmetryClass) -> Result<Self> {
        Self::new(class, self.n, self.nu, self.tau)
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixSymmetry {
    Hermitian,
    Antisymmetric,
    General,
}

/// A square matrix of scaled kernel values (row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    pub dim: usize,
    pub entries: Vec<ScaledComplex>,
    pub symmetry: MatrixSymmetry,
}

impl KernelMatrix {
    pub fn from_fn(dim: usize, symmetry: MatrixSymmetry, mut f: impl FnMut(usize, usize) -> ScaledComplex) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries, symmetry }
    }

    pub fn from_c64(dim: usize, symmetry: MatrixSymmetry, values: &[C64]) -> Self {
        Self::from_fn(dim, symmetry, |i, j| ScaledComplex::from_c64(values[i * dim + j]))
    }

    pub fn get(&self, i: usize, j: usize) -> ScaledComplex {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScaledComplex) {
        self.entries[i * self.dim + j] = v;
    }

    /// Largest `|M_ij + M_ji|` relative to the largest entry.
    pub fn antisymmetry_defect(&self) -> f64 {
        let max = self.entries.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        let mut d: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                d = d.max((self.get(i, j) + self.get(j, i)).abs());
            }
        }
        d / max
    }
}

/// `|z|^mu K_mu(c|z|) e^{b Re z}` with the finite limit at the origin for mu > 0.
fn weight_generic(z: C64, mu: f64, c: f64, b: f64) -> Result<ScaledComplex> {
    let r = z.norm();
    if r == 0.0 {
        if mu > 0.0 {
            // |z|^mu K_mu(c|z|) -> Gamma(mu) 2^{mu-1} c^{-mu}
            let l = log_gamma(mu)? + (mu - 1.0) * std::f64::consts::LN_2 - mu * c.ln();
            return Ok(ScaledComplex::from_log(l, 1.0));
        }
        return Err(Error::Singular(format!("weight at z = 0 diverges for order {mu}")));
    }
    let k = bessel_k(mu, c * r)?;
    Ok(k.mul_exp(mu * r.ln() + b * z.re))
}

/// Weight function of the ensemble (`omega^c` or `omega^s` according to the class).
pub fn weight(z: C64, params: &ModelParams) -> Result<ScaledComplex> {
    let n = params.nf();
    match params.class {
        SymmetryClass::Complex => weight_generic(z, params.nu, params.a * n, params.b * n),
        SymmetryClass::Symplectic => weight_generic(z, 2.0 * params.nu, 2.0 * params.a * n, 2.0 * params.b * n),
    }
}

/// Monic planar orthogonal polynomial `p_n(z) = (-1)^n n! (tau/N)^n L_n^{(nu)}(Nz/tau)`.
pub fn poly_p(n: usize, z: C64, params: &ModelParams) -> ScaledComplex {
    let big_n = params.nf();
    if params.tau == 0.0 {
        return ScaledComplex::from_c64(z).powi(n);
    }
    let tau = params.tau;
    let l = laguerre_scaled(n, params.nu, z * big_n / tau);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let lc = log_gamma(n as f64 + 1.0).unwrap_or(0.0) + n as f64 * (tau / big_n).ln();
    l * ScaledComplex::from_log(lc, sign)
}

/// Squared norm `h_n = (1-tau^2)/2 * n! Gamma(n+nu+1) / N^{nu+2n+2}`.
pub fn norm_h(n: usize, params: &ModelParams) -> ScaledComplex {
    let nf = n as f64;
    let l = (0.5 * (1.0 - params.tau * params.tau)).ln() + crate::specfun::log_gamma(nf + 1.0).unwrap_or(0.0)
        + log_gamma(nf + params.nu + 1.0).unwrap_or(0.0)
        - (params.nu + 2.0 * nf + 2.0) * params.nf().ln();
    ScaledComplex::from_log(l, 1.0)
}

/// Skew-orthogonal polynomial `q_k` for the symplectic weight.
pub fn poly_q(k: usize, z: C64, params: &ModelParams) -> ScaledComplex {
    let big_n = params.nf();
    let nu = params.nu;
    let tau = params.tau;
    let two_n = 2.0 * big_n;
    if k % 2 == 1 {
        if tau == 0.0 {
            return ScaledComplex::from_c64(z).powi(k);
        }
        let l = laguerre_scaled(k, 2.0 * nu, z * two_n / tau);
        let lc = log_gamma(k as f64 + 1.0).unwrap_or(0.0) + k as f64 * (tau / two_n).ln();
        return l * ScaledComplex::from_log(lc, -1.0);
    }
    let m = k / 2;
    let lead = (2.0 * m as f64) * 2f64.ln() + log_gamma(m as f64 + 1.0).unwrap_or(0.0)
        + log_gamma(m as f64 + nu + 1.0).unwrap_or(0.0)
        - 2.0 * m as f64 * two_n.ln();
    let mut sum = ScaledComplex::ZERO;
    if tau == 0.0 {
        // sum_j (2N z)^{2j} / (4^j j! Gamma(j+nu+1))
        let x = ScaledComplex::from_c64(z * two_n);
        for j in 0..=m {
            let jf = j as f64;
            let c = -(jf * 4f64.ln() + log_gamma(jf + 1.0).unwrap_or(0.0) + log_gamma(jf + nu + 1.0).unwrap_or(0.0));
            sum = sum + x.powi(2 * j) * ScaledComplex::from_log(c, 1.0);
        }
    } else {
        let ls = laguerre_seq_scaled(2 * m, 2.0 * nu, z * two_n / tau);
        for j in 0..=m {
            let jf = j as f64;
            // tau^{2j} (2j)! / (2^{2j} j! Gamma(j+nu+1))
            let c = 2.0 * jf * tau.ln() + log_gamma(2.0 * jf + 1.0).unwrap_or(0.0)
                - 2.0 * jf * 2f64.ln()
                - log_gamma(jf + 1.0).unwrap_or(0.0)
                - log_gamma(jf + nu + 1.0).unwrap_or(0.0);
            sum = sum + ls[2 * j] * ScaledComplex::from_log(c, 1.0);
        }
    }
    sum * ScaledComplex::from_log(lead, 1.0)
}

/// Skew norm `r_k = (1-tau^2)^2 (2k+1)! Gamma(2k+2nu+2) / (2N)^{4k+2nu+4}`.
pub fn skew_norm_r(k: usize, params: &ModelParams) -> ScaledComplex {
    let kf = k as f64;
    let nu = params.nu;
    let l = 2.0 * (1.0 - params.tau * params.tau).ln()
        + log_gamma(2.0 * kf + 2.0).unwrap_or(0.0)
        + log_gamma(2.0 * kf + 2.0 * nu + 2.0).unwrap_or(0.0)
        - (4.0 * kf + 2.0 * nu + 4.0) * (2.0 * params.nf()).ln();
    ScaledComplex::from_log(l, 1.0)
}

impl ScaledComplex {
    /// Integer power by repeated squaring.
    pub fn powi(&self, n: usize) -> Self {
        let mut result = ScaledComplex::ONE;
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }
}

/// Per-point data for the complex kernel: `S_N(z, w) = sum_j U_j(z) U_j(w)`
/// with the coefficients folded symmetrically into `U`.
#[derive(Debug, Clone)]
pub struct ComplexVectors {
    pub u: Vec<ScaledComplex>,
}

impl ComplexVectors {
    pub fn new(z: C64, params: &ModelParams) -> Self {
        let n = params.n;
        let big_n = params.nf();
        let nu = params.nu;
        let tau = params.tau;
        // c_j = 2 N^{nu+2}/(1-tau^2) * j! tau^{2j} / Gamma(j+nu+1), folded as sqrt(c_j)
        let mut log_c = (2.0 / (1.0 - tau * tau)).ln() + (nu + 2.0) * big_n.ln() - log_gamma(nu + 1.0).unwrap_or(0.0);
        let mut u = Vec::with_capacity(n);
        if tau == 0.0 {
            // S_N = 2 N^{nu+2} sum_j (N^2 z w)^j / (j! Gamma(j+nu+1))
            let x = ScaledComplex::from_c64(z * big_n);
            let mut p = ScaledComplex::ONE;
            for j in 0..n {
                if j > 0 {
                    log_c -= (j as f64).ln() + (j as f64 + nu).ln();
                    p = p * x;
                }
                u.push(p.mul_exp(0.5 * log_c));
            }
        } else {
            let ls = laguerre_seq_scaled(n - 1, nu, z * big_n / tau);
            let l2t = 2.0 * tau.ln();
            for (j, l) in ls.into_iter().enumerate() {
                if j > 0 {
                    log_c += (j as f64).ln() + l2t - (j as f64 + nu).ln();
                }
                u.push(l.mul_exp(0.5 * log_c));
            }
        }
        Self { u }
    }

    /// `sum_j U_j(z) conj(U_j(w))`, which is `S_N(z, conj(w))`.
    pub fn pair_conj(&self, other: &Self) -> ScaledComplex {
        self.u.iter().zip(&other.u).map(|(a, b)| *a * b.conj()).sum()
    }

    /// `sum_j U_j(z) U_j(w) = S_N(z, w)`.
    pub fn pair(&self, other: &Self) -> ScaledComplex {
        self.u.iter().zip(&other.u).map(|(a, b)| *a * *b).sum()
    }
}

/// `S_N(z, w) = sum_{j<N} p_j(z) p_j(w) / h_j`.
pub fn kernel_sn(z: C64, w: C64, params: &ModelParams) -> ScaledComplex {
    let p = params.with_class(SymmetryClass::Complex).unwrap_or(*params);
    ComplexVectors::new(z, &p).pair(&ComplexVectors::new(w, &p))
}

/// `K_N^c(z, w) = sqrt(omega(z) omega(w)) S_N(z, conj(w))`.
pub fn kernel_knc(z: C64, w: C64, params: &ModelParams) -> Result<ScaledComplex> {
    let p = params.with_class(SymmetryClass::Complex)?;
    let s = ComplexVectors::new(z, &p).pair_conj(&ComplexVectors::new(w, &p));
    Ok(s * (weight(z, &p)? * weight(w, &p)?).sqrt())
}

/// `S_infinity(z, w)` from the Hardy-Hille formula:
/// `2N^{nu+2}/(1-tau^2) * (1-tau^2)^{-nu-1} exp(-tau N (z+w)/(1-tau^2)) E_nu(N^2 z w/(1-tau^2)^2)`
/// where `E_nu(s) = sum s^k/(k! Gamma(k+nu+1))`.
pub fn kernel_sn_hardy_hille(z: C64, w: C64, params: &ModelParams) -> ScaledComplex {
    let big_n = params.nf();
    let nu = params.nu;
    let d = 1.0 - params.tau * params.tau;
    let e = bessel_i_entire(nu, z * w * big_n * big_n / (d * d));
    let pre = (2.0 / d).ln() + (nu + 2.0) * big_n.ln() - (nu + 1.0) * d.ln();
    e * ScaledComplex::exp(-params.tau * big_n * (z + w) / d).mul_exp(pre)
}

/// Per-point data for the pre-kernel:
/// `varkappa_N(z, w) = sum_k [O_k(z) E_k(w) - O_k(w) E_k(z)]`.
#[derive(Debug, Clone)]
pub struct SkewVectors {
    pub odd: Vec<ScaledComplex>,
    pub even: Vec<ScaledComplex>,
}

impl SkewVectors {
    pub fn new(z: C64, params: &ModelParams) -> Self {
        let n = params.n;
        let big_n = params.nf();
        let two_n = 2.0 * big_n;
        let nu = params.nu;
        let tau = params.tau;
        let mut odd = Vec::with_capacity(n);
        let mut even = Vec::with_capacity(n);
        if tau == 0.0 {
            // O_k = z^{2k+1}/r_k, E_k = q_{2k}(z)
            let zs = ScaledComplex::from_c64(z);
            let z2 = zs * zs;
            let x2 = ScaledComplex::from_c64(z * two_n) * ScaledComplex::from_c64(z * two_n);
            let mut zpow = zs;
            let mut xpow = ScaledComplex::ONE;
            let mut cum = ScaledComplex::ZERO;
            for k in 0..n {
                let kf = k as f64;
                if k > 0 {
                    zpow = zpow * z2;
                    xpow = xpow * x2;
                }
                odd.push(zpow / skew_norm_r(k, params));
                let c = -(kf * 4f64.ln() + log_gamma(kf + 1.0).unwrap_or(0.0) + log_gamma(kf + nu + 1.0).unwrap_or(0.0));
                cum = cum + xpow.mul_exp(c);
                let lead = kf * 4f64.ln() + log_gamma(kf + 1.0).unwrap_or(0.0) + log_gamma(kf + nu + 1.0).unwrap_or(0.0)
                    - 2.0 * kf * two_n.ln();
                even.push(cum.mul_exp(lead));
            }
            return Self { odd, even };
        }
        let ls = laguerre_seq_scaled(2 * n - 1, 2.0 * nu, z * two_n / tau);
        // prefactor P = -sqrt(pi) (2N)^{2nu+3} / (2^{2nu+1} (1-tau^2)^2)
        let log_p = 0.5 * PI.ln() + (2.0 * nu + 3.0) * two_n.ln() - (2.0 * nu + 1.0) * 2f64.ln() - 2.0 * (1.0 - tau * tau).ln();
        // a_k = k! tau^{2k+1} / Gamma(k+nu+3/2), b_j = (2j-1)!! tau^{2j} / (2^j Gamma(j+nu+1))
        let mut log_a = tau.ln() - log_gamma(nu + 1.5).unwrap_or(0.0) + log_p;
        let mut log_b = -log_gamma(nu + 1.0).unwrap_or(0.0);
        let t2 = 2.0 * tau.ln();
        let mut cum = ScaledComplex::ZERO;
        for k in 0..n {
            let kf = k as f64;
            if k > 0 {
                log_a += kf.ln() + t2 - (kf + nu + 0.5).ln();
                log_b += (2.0 * kf - 1.0).ln() + t2 - 2f64.ln() - (kf + nu).ln();
            }
            odd.push(-ls[2 * k + 1].mul_exp(log_a));
            cum = cum + ls[2 * k].mul_exp(log_b);
            even.push(cum);
        }
        Self { odd, even }
    }

    /// `G_N(z, w) = sum_k O_k(z) E_k(w)`.
    pub fn g(&self, other: &Self) -> ScaledComplex {
        self.odd.iter().zip(&other.even).map(|(a, b)| *a * *b).sum()
    }

    /// `varkappa_N(z, w) = G_N(z, w) - G_N(w, z)`, summed termwise.
    pub fn varkappa(&self, other: &Self) -> ScaledComplex {
        let mut s = ScaledComplex::ZERO;
        for k in 0..self.odd.len() {
            s = s + (self.odd[k] * other.even[k] - other.odd[k] * self.even[k]);
        }
        s
    }

    pub fn conj(&self) -> Self {
        Self { odd: self.odd.iter().map(|v| v.conj()).collect(), even: self.even.iter().map(|v| v.conj()).collect() }
    }
}

/// `G_N(z, w) = sum_{k<N} q_{2k+1}(z) q_{2k}(w) / r_k`.
pub fn kernel_gn(z: C64, w: C64, params: &ModelParams) -> ScaledComplex {
    SkewVectors::new(z, params).g(&SkewVectors::new(w, params))
}

/// Pre-kernel `varkappa_N(z, w) = G_N(z, w) - G_N(w, z)`.
pub fn prekernel_varkappa(z: C64, w: C64, params: &ModelParams) -> ScaledComplex {
    SkewVectors::new(z, params).varkappa(&SkewVectors::new(w, params))
}

/// The 2x2 matrix kernel
/// `sqrt(omega(z) omega(w)) [[k(z,w), k(z,conj w)], [k(conj z,w), k(conj z,conj w)]]`.
pub fn kernel_kns(z: C64, w: C64, params: &ModelParams) -> Result<KernelMatrix> {
    let p = params.with_class(SymmetryClass::Symplectic)?;
    let vz = SkewVectors::new(z, &p);
    let vw = SkewVectors::new(w, &p);
    let vzc = vz.conj();
    let vwc = vw.conj();
    let s = (weight(z, &p)? * weight(w, &p)?).sqrt();
    Ok(KernelMatrix {
        dim: 2,
        entries: vec![vz.varkappa(&vw) * s, vz.varkappa(&vwc) * s, vzc.varkappa(&vw) * s, vzc.varkappa(&vwc) * s],
        symmetry: MatrixSymmetry::General,
    })
}

/// Pfaffian of an antisymmetric matrix: recursive cofactor expansion along the
/// first row for dimension <= 8, Parlett-Reid style elimination otherwise.
pub fn pfaffian(m: &KernelMatrix) -> Result<ScaledComplex> {
    let defect = m.antisymmetry_defect();
    if defect > 1e-10 {
        return Err(Error::Asymmetric(defect));
    }
    if m.dim % 2 == 1 {
        return Ok(ScaledComplex::ZERO);
    }
    if m.dim <= 8 {
        let idx: Vec<usize> = (0..m.dim).collect();
        Ok(pf_cofactor(m, &idx))
    } else {
        Ok(pf_elimination(m))
    }
}

fn pf_cofactor(m: &KernelMatrix, idx: &[usize]) -> ScaledComplex {
    if idx.is_empty() {
        return ScaledComplex::ONE;
    }
    let first = idx[0];
    let mut total = ScaledComplex::ZERO;
    for pos in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != idx[pos]).collect();
        let term = m.get(first, idx[pos]) * pf_cofactor(m, &rest);
        // sign (-1)^{pos+1} with 1-based position j = pos + 1 in the cofactor convention
        if pos % 2 == 1 {
            total = total + term;
        } else {
            total = total - term;
        }
    }
    total
}

fn pf_elimination(m: &KernelMatrix) -> ScaledComplex {
    let n = m.dim;
    let mut a = m.entries.clone();
    let at = |a: &Vec<ScaledComplex>, i: usize, j: usize| a[i * n + j];
    let mut pf = ScaledComplex::ONE;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest entry in row k beyond the diagonal
        let mut piv = k + 1;
        let mut best = at(&a, k, k + 1).ln_abs();
        for j in k + 2..n {
            let v = at(&a, k, j).ln_abs();
            if v > best {
                best = v;
                piv = j;
            }
        }
        if piv != k + 1 {
            for r in 0..n {
                a.swap(r * n + k + 1, r * n + piv);
            }
            for c in 0..n {
                a.swap((k + 1) * n + c, piv * n + c);
            }
            pf = -pf;
        }
        let p = at(&a, k, k + 1);
        if p.is_zero() {
            return ScaledComplex::ZERO;
        }
        pf = pf * p;
        // eliminate rows/cols k+2.. using rows k and k+1
        for i in k + 2..n {
            let ti = at(&a, k, i) / p;
            for j in k + 2..n {
                let tj = at(&a, k, j) / p;
                let v = at(&a, i, j) + tj * at(&a, k + 1, i) - ti * at(&a, k + 1, j);
                a[i * n + j] = v;
            }
        }
        k += 2;
    }
    pf
}

/// Determinant by LU with partial pivoting.
pub fn determinant(m: &KernelMatrix) -> ScaledComplex {
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut det = ScaledComplex::ONE;
    for k in 0..n {
        let mut piv = k;
        let mut best = a[k * n + k].ln_abs();
        for r in k + 1..n {
            let v = a[r * n + k].ln_abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if a[piv * n + k].is_zero() {
            return ScaledComplex::ZERO;
        }
        if piv != k {
            for c in 0..n {
                a.swap(k * n + c, piv * n + c);
            }
            det = -det;
        }
        let p = a[k * n + k];
        det = det * p;
        for r in k + 1..n {
            let f = a[r * n + k] / p;
            for c in k + 1..n {
                a[r * n + c] = a[r * n + c] - f * a[k * n + c];
            }
        }
    }
    det
}

fn check_points(points: &[C64], params: &ModelParams) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Invalid("at least one point is required".into()));
    }
    if points.len() > params.n {
        return Err(Error::Invalid(format!("k = {} exceeds N = {}", points.len(), params.n)));
    }
    for (i, p) in points.iter().enumerate() {
        if p.norm() == 0.0 {
            return Err(Error::Singular("correlation point at the origin".into()));
        }
        if points[..i].contains(p) {
            return Err(Error::Invalid(format!("repeated point {p}")));
        }
    }
    Ok(())
}

/// `[K_N^c(z_j, z_l)]_{j,l}`.
pub fn kernel_matrix_c(points: &[C64], params: &ModelParams) -> Result<KernelMatrix> {
    let p = params.with_class(SymmetryClass::Complex)?;
    let vecs: Vec<ComplexVectors> = points.iter().map(|z| ComplexVectors::new(*z, &p)).collect();
    let ws: Vec<ScaledComplex> = points.iter().map(|z| weight(*z, &p).map(|w| w.sqrt())).collect::<Result<_>>()?;
    Ok(KernelMatrix::from_fn(points.len(), MatrixSymmetry::Hermitian, |i, j| vecs[i].pair_conj(&vecs[j]) * ws[i] * ws[j]))
}

/// The `2k x 2k` antisymmetric matrix with entries
/// `sqrt(omega(u_a) omega(u_b)) varkappa_N(u_a, u_b)` over `u = (z_1, conj z_1, ...)`.
pub fn kernel_matrix_s(points: &[C64], params: &ModelParams) -> Result<KernelMatrix> {
    let p = params.with_class(SymmetryClass::Symplectic)?;
    let mut vecs = Vec::with_capacity(2 * points.len());
    let mut ws = Vec::with_capacity(2 * points.len());
    for z in points {
        let v = SkewVectors::new(*z, &p);
        let w = weight(*z, &p)?.sqrt();
        vecs.push(v.conj());
        vecs.push(v);
        ws.push(w);
        ws.push(w);
    }
    // order (z, conj z): the vector for z is pushed second above, so swap
    for k in 0..points.len() {
        vecs.swap(2 * k, 2 * k + 1);
    }
    let dim = vecs.len();
    let mut m = KernelMatrix::from_fn(dim, MatrixSymmetry::Antisymmetric, |_, _| ScaledComplex::ZERO);
    for i in 0..dim {
        for j in i + 1..dim {
            let v = vecs[i].varkappa(&vecs[j]) * ws[i] * ws[j];
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    Ok(m)
}

/// Complex-class k-point correlation `det[K_N^c(z_j, z_l)]`.
pub fn corr_c(points: &[C64], params: &ModelParams) -> Result<f64> {
    check_points(points, params)?;
    Ok(determinant(&kernel_matrix_c(points, params)?).re())
}

/// Symplectic-class k-point correlation `prod (conj z_j - z_j) Pf[K_N^s(z_j, z_l)]`.
pub fn corr_s(points: &[C64], params: &ModelParams) -> Result<f64> {
    check_points(points, params)?;
    let pf = pfaffian(&kernel_matrix_s(points, params)?)?;
    let pre: ScaledComplex = points.iter().fold(ScaledComplex::ONE, |acc, z| acc.scale_c(z.conj() - z));
    Ok((pf * pre).re())
}

/// Correlation function for whichever class `params` carries.
pub fn corr(points: &[C64], params: &ModelParams) -> Result<f64> {
    match params.class {
        SymmetryClass::Complex => corr_c(points, params),
        SymmetryClass::Symplectic => corr_s(points, params),
    }
}
