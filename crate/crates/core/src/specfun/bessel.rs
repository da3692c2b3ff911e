use super::gamma::lgamma_pos;
use super::ScaledComplex;
use crate::{Error, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

// Taylor coefficients of 1/Gamma(z) around 0: 1/Gamma(z) = sum c_k z^k, starting at c_1.
const RGAMMA: [f64; 30] = [
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
];

/// Returns (gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu)) for |mu| <= 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Gamma(1 + mu) = sum_k RGAMMA[k] mu^k
    let mut even = 0.0;
    let mut odd = 0.0;
    let m2 = mu * mu;
    let mut p = 1.0;
    for k in (0..RGAMMA.len()).step_by(2) {
        even += RGAMMA[k] * p;
        if k + 1 < RGAMMA.len() {
            odd += RGAMMA[k + 1] * p;
        }
        p *= m2;
    }
    // even(mu^2) + mu * odd(mu^2) = 1/Gamma(1+mu)
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}

/// Returns (K_mu(x), K_{mu+1}(x)) times exp(x) when `scaled`, for |mu| <= 1/2.
fn k_pair(mu: f64, x: f64) -> (f64, f64, bool) {
    let eps = 1e-17;
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < 1e-15 { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mu2 = mu * mu;
        for i in 1..500 {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * eps {
                break;
            }
        }
        (sum, sum1 * 2.0 / x, false)
    } else {
        // Steed's continued fraction CF2 with Temme's normalization
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..100_000 {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < eps {
                break;
            }
        }
        h *= a1;
        let kmu = (PI / (2.0 * x)).sqrt() / s;
        let k1 = kmu * (mu + x + 0.5 - h) / x;
        (kmu, k1, true)
    }
}

/// Modified Bessel function of the second kind `K_nu(x)` for real order and
/// `x > 0`, returned in scaled form so large `x` does not underflow.
///
/// Uses Temme's series for `x < 2` and Steed's continued fraction otherwise,
/// followed by upward recurrence in the order; integer orders need no special
/// treatment.
pub fn bessel_k(nu: f64, x: f64) -> Result<ScaledComplex> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let nu = nu.abs();
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (mut kmu, mut k1, scaled) = k_pair(mu, x);
    let mut log_shift = if scaled { -x } else { 0.0 };
    let xi2 = 2.0 / x;
    for i in 1..=(nl as usize) {
        let t = (mu + i as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = t;
        if k1.abs() > 1e250 {
            kmu *= 1e-250;
            k1 *= 1e-250;
            log_shift += 250.0 * std::f64::consts::LN_10;
        }
    }
    Ok(ScaledComplex::from_real(kmu).mul_exp(log_shift))
}

/// Entire part of the modified Bessel function:
/// `E_nu(s) = sum_k s^k / (k! Gamma(k + nu + 1))`, so that
/// `I_nu(z) = (z/2)^nu E_nu(z^2/4)`.
pub fn bessel_i_entire(nu: f64, s: C64) -> ScaledComplex {
    let lg0 = lgamma_pos(nu + 1.0);
    let mut term = C64::new((-lg0).exp(), 0.0);
    let mut sum = term;
    // large |s|: shift the starting scale so exp(-lg0) cannot underflow the terms
    let mut shift = 0.0;
    if !term.re.is_normal() {
        term = C64::new(1.0, 0.0);
        sum = term;
        shift = -lg0;
    }
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= s / (k * (k + nu));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && k > s.norm().sqrt() {
            break;
        }
        if sum.norm() > 1e250 {
            sum *= 1e-250;
            term *= 1e-250;
            shift += 250.0 * std::f64::consts::LN_10;
        }
        if k > 1e6 {
            break;
        }
    }
    ScaledComplex::new(sum, shift)
}

/// Modified Bessel function of the first kind `I_nu(z)` (principal branch) via
/// its power series.
pub fn bessel_i(nu: f64, z: C64) -> C64 {
    if z.norm() == 0.0 {
        return if nu == 0.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
    }
    let e = bessel_i_entire(nu, z * z / 4.0);
    (e * ScaledComplex::from_c64(z / 2.0).powf(nu)).to_c64()
}
