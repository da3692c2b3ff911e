use super::ddouble::{Dd, DdC};
use super::ScaledComplex;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Radius below which the Maclaurin series (in double-double) is used.
pub const AIRY_SERIES_RADIUS: f64 = 8.5;

const AI0: Dd = Dd { hi: 0.3550280538878172, lo: 2.05233632436212e-17 };
const AIP0: Dd = Dd { hi: 0.2588194037928068, lo: -2.522243111610832e-17 };

/// `Ai(z)` for complex `z`.
pub fn airy_ai(z: C64) -> C64 {
    airy_pair(z).0.to_c64()
}

/// `Ai'(z)` for complex `z`.
pub fn airy_ai_prime(z: C64) -> C64 {
    airy_pair(z).1.to_c64()
}

/// `Ai(z)` in scaled form (no underflow for large positive real part).
pub fn airy_ai_scaled(z: C64) -> ScaledComplex {
    airy_pair(z).0
}

/// `(Ai(z), Ai'(z))`.
pub fn airy_pair(z: C64) -> (ScaledComplex, ScaledComplex) {
    if z.norm() <= AIRY_SERIES_RADIUS {
        let (a, b) = maclaurin(z);
        (ScaledComplex::from_c64(a), ScaledComplex::from_c64(b))
    } else if z.arg().abs() <= 2.0 * PI / 3.0 {
        exponential_sector(z)
    } else {
        let (a, b) = oscillatory_sector(-z);
        (ScaledComplex::from_c64(a), ScaledComplex::from_c64(b))
    }
}

fn maclaurin(z: C64) -> (C64, C64) {
    let zd = DdC::from_c64(z);
    let z3 = zd.mul(zd).mul(zd);
    let one = DdC::from_c64(C64::new(1.0, 0.0));
    // f = sum z^{3k} / ((2*3)(5*6)...), g = z + sum ..., and their derivatives
    let mut f = one;
    let mut g = zd;
    let mut fp = DdC::ZERO;
    let mut gp = one;
    let mut tf = one;
    let mut tg = zd;
    let mut tfp = zd.mul(zd).div_f64(2.0);
    let mut tgp = one;
    fp = fp.add(tfp);
    let mut max_term = 1.0f64.max(z.norm());
    for k in 1..400 {
        let kf = k as f64;
        tf = tf.mul(z3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        tg = tg.mul(z3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        if k > 1 {
            tfp = tfp.mul(z3).div_f64((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            fp = fp.add(tfp);
        }
        tgp = tgp.mul(z3).div_f64((3.0 * kf - 2.0) * (3.0 * kf));
        f = f.add(tf);
        g = g.add(tg);
        gp = gp.add(tgp);
        let m = tf.norm_approx().max(tg.norm_approx()).max(tfp.norm_approx()).max(tgp.norm_approx());
        max_term = max_term.max(m);
        if m < 1e-34 * max_term {
            break;
        }
    }
    let ai = f.mul_dd(AI0).sub(g.mul_dd(AIP0));
    let aip = fp.mul_dd(AI0).sub(gp.mul_dd(AIP0));
    (ai.to_c64(), aip.to_c64())
}

/// Coefficients u_k, v_k of the Airy asymptotic expansions.
fn uv_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    for k in 1..n {
        let kf = k as f64;
        let uk = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        u.push(uk);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk);
    }
    (u, v)
}

/// Sum the asymptotic series with alternating sign in powers of 1/zeta,
/// truncating at the smallest term.
fn asym_sum(c: &[f64], inv_zeta: C64, sign: f64, start: usize, step: usize) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    let mut p = C64::new(1.0, 0.0);
    for _ in 0..start {
        p *= inv_zeta;
    }
    let mut last = f64::INFINITY;
    let mut k = start;
    let mut j = 0;
    while k < c.len() {
        let t = p * c[k] * if j % 2 == 1 { sign } else { 1.0 };
        let tn = t.norm();
        if tn > last {
            break;
        }
        s += t;
        last = tn;
        if tn < 1e-17 * s.norm() {
            break;
        }
        for _ in 0..step {
            p *= inv_zeta;
        }
        k += step;
        j += 1;
    }
    s
}

fn exponential_sector(z: C64) -> (ScaledComplex, ScaledComplex) {
    let (u, v) = uv_coeffs(80);
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    let inv = 1.0 / zeta;
    let su = asym_sum(&u, -inv, 1.0, 0, 1);
    let sv = asym_sum(&v, -inv, 1.0, 0, 1);
    let z14 = z.powf(0.25);
    let pref = 1.0 / (2.0 * PI.sqrt());
    let e = ScaledComplex::exp(-zeta);
    let ai = e.scale_c(su * pref / z14);
    let aip = e.scale_c(-sv * pref * z14);
    (ai, aip)
}

/// Ai(-w), Ai'(-w) for |arg w| < pi/3.
fn oscillatory_sector(w: C64) -> (C64, C64) {
    let (u, v) = uv_coeffs(80);
    let zeta = w.powf(1.5) * (2.0 / 3.0);
    let inv = 1.0 / zeta;
    let inv2 = inv * inv;
    // even and odd parts with (-1)^k signs
    let ue = sum_parity(&u, inv2, C64::new(1.0, 0.0));
    let uo = sum_parity(&u[1..], inv2, inv);
    let ve = sum_parity(&v, inv2, C64::new(1.0, 0.0));
    let vo = sum_parity(&v[1..], inv2, inv);
    let th = zeta - PI / 4.0;
    let (s, c) = (th.sin(), th.cos());
    let w14 = w.powf(0.25);
    let sp = PI.sqrt();
    let ai = (c * ue + s * uo) / (sp * w14);
    let aip = w14 / sp * (s * ve - c * vo);
    (ai, aip)
}

/// sum_k (-1)^k c[2k] x^k * lead, truncated at the smallest term.
fn sum_parity(c: &[f64], x: C64, lead: C64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    let mut p = lead;
    let mut last = f64::INFINITY;
    let mut k = 0;
    let mut sign = 1.0;
    while 2 * k < c.len() {
        let t = p * c[2 * k] * sign;
        let tn = t.norm();
        if tn > last {
            break;
        }
        s += t;
        last = tn;
        if tn < 1e-17 * s.norm() {
            break;
        }
        p *= x;
        sign = -sign;
        k += 1;
    }
    s
}
