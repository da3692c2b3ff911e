use super::ScaledComplex;
use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// zeta(2), zeta(3), ... zeta(23)
const ZETA: [f64; 22] = [
    1.6449340668482264,
    1.2020569031595942,
    1.0823232337111381,
    1.03692775514337,
    1.0173430619844492,
    1.008349277381923,
    1.0040773561979444,
    1.0020083928260821,
    1.000994575127818,
    1.0004941886041194,
    1.000246086553308,
    1.0001227133475785,
    1.0000612481350588,
    1.000030588236307,
    1.0000152822594086,
    1.0000076371976379,
    1.000003817293265,
    1.0000019082127165,
    1.0000009539620338,
    1.0000004769329869,
    1.0000002384505027,
    1.000000119219926,
];

fn zeta_int(k: usize) -> f64 {
    if k - 2 < ZETA.len() {
        ZETA[k - 2]
    } else {
        let k = k as i32;
        1.0 + 2f64.powi(-k) + 3f64.powi(-k) + 4f64.powi(-k) + 5f64.powi(-k)
    }
}

/// `ln Gamma(1 + e)` for |e| <= 0.3 via the zeta series.
fn lgamma1p_small(e: f64) -> f64 {
    let mut s = -EULER_GAMMA * e;
    let mut p = -e;
    for k in 2..60 {
        p *= -e;
        let t = zeta_int(k) * p / k as f64;
        s += t;
        if t.abs() < 1e-18 * s.abs().max(1e-300) {
            break;
        }
    }
    s
}

fn stirling(x: f64) -> f64 {
    // Bernoulli corrections B_2k / (2k (2k-1) x^(2k-1))
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in C {
        corr += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}

/// Natural logarithm of Gamma(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma_pos(x))
}

pub(crate) fn lgamma_pos(x: f64) -> f64 {
    if x < 0.7 {
        // Gamma(x) = Gamma(x + 1) / x
        return lgamma_pos(x + 1.0) - x.ln();
    }
    if (x - 1.0).abs() <= 0.3 {
        return lgamma1p_small(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.3 {
        let e = x - 2.0;
        return e.ln_1p() + lgamma1p_small(e);
    }
    if x >= 12.0 {
        return stirling(x);
    }
    let mut prod = 1.0;
    let mut y = x;
    while y < 12.0 {
        prod *= y;
        y += 1.0;
    }
    stirling(y) - prod.ln()
}

/// Gamma(x) for x > 0 (overflows to infinity above x ~ 171.6).
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Result<ScaledComplex> {
    if n < -1 {
        return Err(Error::Domain(format!("double_factorial requires n >= -1, got {n}")));
    }
    if n <= 1 {
        return Ok(ScaledComplex::ONE);
    }
    if n <= 280 {
        let mut p = 1.0f64;
        let mut k = n;
        while k > 1 {
            p *= k as f64;
            k -= 2;
        }
        return Ok(ScaledComplex::from_real(p));
    }
    let m = (n / 2) as f64;
    let log = if n % 2 == 0 {
        m * std::f64::consts::LN_2 + lgamma_pos(m + 1.0)
    } else {
        // (2m+1)!! = 2^(m+1) Gamma(m + 3/2) / sqrt(pi)
        (m + 1.0) * std::f64::consts::LN_2 + lgamma_pos(m + 1.5) - 0.5 * std::f64::consts::PI.ln()
    };
    Ok(ScaledComplex::from_log(log, 1.0))
}
