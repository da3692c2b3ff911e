use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A complex number `mantissa * exp(log_scale)`.
///
/// The mantissa has modulus in `[1, e)` (or is exactly zero with
/// `log_scale == 0`), and `log_scale` is kept integer-valued so that products
/// add exponents exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    pub mantissa: C64,
    pub log_scale: f64,
}

impl Default for ScaledComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

// e^{-k} for k = -3..=3 as double-double (hi, lo)
const EXP_NEG: [(f64, f64); 7] = [
    (20.085536923187668, -1.8275625525512858e-16),
    (7.38905609893065, -1.7971139497839148e-16),
    (2.718281828459045, 1.4456468917292502e-16),
    (1.0, 0.0),
    (0.36787944117144233, -1.2428753672788363e-17),
    (0.1353352832366127, -1.042381423288669e-17),
    (0.049787068367863944, -1.4831389691394365e-18),
];

/// `m * e^{-k}` for integer-valued `k`, correctly rounded for small |k|.
fn mul_exp_neg(m: C64, k: f64) -> C64 {
    if k.abs() <= 3.0 {
        let (hi, lo) = EXP_NEG[(k as i64 + 3) as usize];
        C64::new(m.re.mul_add(hi, m.re * lo), m.im.mul_add(hi, m.im * lo))
    } else {
        m * (-k).exp()
    }
}

/// Complex product with fused multiply-adds.
fn cmul(a: C64, b: C64) -> C64 {
    let bd = a.im * b.im;
    let bc = a.im * b.re;
    C64::new(a.re.mul_add(b.re, -bd), a.re.mul_add(b.im, bc))
}

impl ScaledComplex {
    pub const ZERO: Self = Self { mantissa: C64 { re: 0.0, im: 0.0 }, log_scale: 0.0 };
    pub const ONE: Self = Self { mantissa: C64 { re: 1.0, im: 0.0 }, log_scale: 0.0 };

    /// Build from an unnormalized pair.
    pub fn new(mantissa: C64, log_scale: f64) -> Self {
        if mantissa.re == 0.0 && mantissa.im == 0.0 {
            return Self::ZERO;
        }
        if !mantissa.re.is_finite() || !mantissa.im.is_finite() || !log_scale.is_finite() {
            return Self { mantissa: C64::new(f64::NAN, f64::NAN), log_scale: 0.0 };
        }
        // split any fractional part of log_scale into the mantissa
        let int_part = log_scale.floor();
        let mut m = mantissa;
        let frac = log_scale - int_part;
        if frac != 0.0 {
            m *= frac.exp();
        }
        let mut s = int_part;
        let r = m.norm();
        // subnormal or near-overflow moduli are brought into range in two steps
        if r < 1e-290 {
            m *= 1e290;
            s -= 290.0 * std::f64::consts::LN_10;
            return Self::new(m, s);
        }
        if r > 1e290 {
            m *= 1e-290;
            s += 290.0 * std::f64::consts::LN_10;
            return Self::new(m, s);
        }
        let k = r.ln().floor();
        if k != 0.0 {
            m = mul_exp_neg(m, k);
            s += k;
        }
        // rounding in ln/floor can leave the modulus a hair outside [1, e)
        let r2 = m.norm();
        if r2 < 1.0 {
            m = mul_exp_neg(m, -1.0);
            s -= 1.0;
        } else if r2 >= std::f64::consts::E {
            m = mul_exp_neg(m, 1.0);
            s += 1.0;
        }
        Self { mantissa: m, log_scale: s }
    }

    pub fn from_c64(z: C64) -> Self {
        Self::new(z, 0.0)
    }

    pub fn from_real(x: f64) -> Self {
        Self::new(C64::new(x, 0.0), 0.0)
    }

    /// `exp(w)` for complex `w`, without overflow.
    pub fn exp(w: C64) -> Self {
        Self::new(C64::from_polar(1.0, w.im), w.re)
    }

    /// `sign * exp(log_abs)` for a real value known through its logarithm.
    pub fn from_log(log_abs: f64, sign: f64) -> Self {
        Self::new(C64::new(sign, 0.0), log_abs)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite() && self.log_scale.is_finite()
    }

    /// Convert to an ordinary complex number (may overflow to infinity or underflow to zero).
    pub fn to_c64(&self) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        if self.log_scale > 700.0 || self.log_scale < -700.0 {
            let half = (0.5 * self.log_scale).exp();
            return self.mantissa * half * half;
        }
        self.mantissa * self.log_scale.exp()
    }

    pub fn re(&self) -> f64 {
        self.to_c64().re
    }

    pub fn im(&self) -> f64 {
        self.to_c64().im
    }

    /// Natural log of the modulus (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.log_scale
        }
    }

    pub fn abs(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.ln_abs().exp()
        }
    }

    pub fn conj(&self) -> Self {
        Self { mantissa: self.mantissa.conj(), log_scale: self.log_scale }
    }

    pub fn scale(&self, f: f64) -> Self {
        Self::new(self.mantissa * f, self.log_scale)
    }

    pub fn scale_c(&self, f: C64) -> Self {
        Self::new(self.mantissa * f, self.log_scale)
    }

    /// Multiply by `exp(t)` for real `t`.
    pub fn mul_exp(&self, t: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::new(self.mantissa, self.log_scale + t)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self::new(self.mantissa.sqrt(), 0.5 * self.log_scale)
    }

    /// Principal power with real exponent.
    pub fn powf(&self, p: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        let lm = self.mantissa.ln();
        Self::new(C64::from_polar(1.0, p * lm.im), p * (lm.re + self.log_scale))
    }

    /// Relative difference `|a - b| / max(|a|, |b|)`.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let d = (*self - *other).ln_abs();
        let m = self.ln_abs().max(other.ln_abs());
        if m == f64::NEG_INFINITY {
            0.0
        } else {
            (d - m).exp()
        }
    }
}

impl From<C64> for ScaledComplex {
    fn from(z: C64) -> Self {
        Self::from_c64(z)
    }
}

impl From<f64> for ScaledComplex {
    fn from(x: f64) -> Self {
        Self::from_real(x)
    }
}

impl Mul for ScaledComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(cmul(self.mantissa, rhs.mantissa), self.log_scale + rhs.log_scale)
    }
}

impl Div for ScaledComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.mantissa / rhs.mantissa, self.log_scale - rhs.log_scale)
    }
}

impl Add for ScaledComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_scale >= rhs.log_scale { (self, rhs) } else { (rhs, self) };
        let d = small.log_scale - big.log_scale;
        if d < -80.0 {
            return big;
        }
        Self::new(big.mantissa + small.mantissa * d.exp(), big.log_scale)
    }
}

impl Sub for ScaledComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ScaledComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, log_scale: self.log_scale }
    }
}

impl std::iter::Sum for ScaledComplex {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}
