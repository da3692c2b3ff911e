use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;

/// Complementary error function of complex argument.
///
/// Taylor series for `erf` when the real part is below 1 or `|z| < 1.5`,
/// Laplace continued fraction (modified Lentz) otherwise; the left half-plane
/// is reached through `erfc(z) = 2 - erfc(-z)`.
pub fn erfc_complex(z: C64) -> C64 {
    if z.re < 0.0 {
        return 2.0 - erfc_complex(-z);
    }
    if z.re < 1.0 || z.norm() < 1.5 {
        return 1.0 - erf_taylor(z);
    }
    erfc_cf(z)
}

/// `erf(z) = 1 - erfc(z)`; uses the series directly near the origin to keep
/// relative accuracy for small `|z|`.
pub fn erf_complex(z: C64) -> C64 {
    if z.norm() < 1.5 || z.re.abs() < 1.0 {
        return erf_taylor(z);
    }
    1.0 - erfc_complex(z)
}

/// Real error function.
pub fn erf(x: f64) -> f64 {
    erf_complex(C64::new(x, 0.0)).re
}

/// Imaginary error function `erfi(x) = -i erf(ix)`.
pub fn erfi(x: f64) -> f64 {
    erf_taylor(C64::new(0.0, x)).im
}

fn erf_taylor(z: C64) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= -z2 / n;
        let t = term / (2.0 * n + 1.0);
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() && n > z2.norm() {
            break;
        }
        if n > 5000.0 {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

fn erfc_cf(z: C64) -> C64 {
    // erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    let tiny = 1e-300;
    let mut f = z;
    let mut c = z;
    let mut d = C64::new(0.0, 0.0);
    for k in 1..20000 {
        let a = k as f64 * 0.5;
        d = z + a * d;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        c = z + a / c;
        if c.norm() < tiny {
            c = C64::new(tiny, 0.0);
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / (PI.sqrt() * f)
}
