//! Complex arithmetic at two working precisions: double-double with a binary
//! exponent (fast path) and arbitrary-precision binary floats.

use crate::specfun::ddouble::{DdC, Xc};
use crate::specfun::ScaledComplex;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_complex::Complex64 as C64;
use std::f64::consts::LN_2;

pub(crate) trait Field: Clone + Send + Sync {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_scaled(&self) -> ScaledComplex;
}

/// Source of constants at a fixed working precision. Inputs given as `f64`
/// are taken as exact binary values.
pub(crate) trait Ctx: Sync {
    type T: Field;
    fn c(&self, z: C64) -> Self::T;
    fn r(&self, x: f64) -> Self::T {
        self.c(C64::new(x, 0.0))
    }
    fn zero(&self) -> Self::T {
        self.r(0.0)
    }
    /// Working precision in bits.
    fn bits(&self) -> u32;
}

pub(crate) struct DdCtx;

impl Ctx for DdCtx {
    type T = Xc;
    fn c(&self, z: C64) -> Xc {
        Xc::from_ddc(DdC::from_c64(z))
    }
    fn bits(&self) -> u32 {
        104
    }
}

impl Field for Xc {
    fn add(&self, o: &Self) -> Self {
        Xc::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        Xc::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Xc::mul(*self, *o)
    }
    fn div(&self, o: &Self) -> Self {
        let b = o.m;
        let den = b.re.mul(b.re).add(b.im.mul(b.im));
        let conj = DdC { re: b.re, im: b.im.neg() };
        Xc::new(self.m.mul(conj).div_dd(den), self.e - o.e)
    }
    fn neg(&self) -> Self {
        Xc::neg(*self)
    }
    fn to_scaled(&self) -> ScaledComplex {
        Xc::to_scaled(*self)
    }
}

type F = FBig<HalfEven, 2>;

/// Complex number with arbitrary-precision binary parts.
#[derive(Clone, Debug)]
pub(crate) struct Mc {
    re: F,
    im: F,
}

pub(crate) struct MpCtx {
    pub bits: u32,
}

impl MpCtx {
    fn f(&self, x: f64) -> F {
        F::try_from(x).expect("finite input").with_precision(self.bits as usize).value()
    }
}

impl Ctx for MpCtx {
    type T = Mc;
    fn c(&self, z: C64) -> Mc {
        Mc { re: self.f(z.re), im: self.f(z.im) }
    }
    fn bits(&self) -> u32 {
        self.bits
    }
}

impl Field for Mc {
    fn add(&self, o: &Self) -> Self {
        Mc { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Mc { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Mc { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn div(&self, o: &Self) -> Self {
        if o.im == F::ZERO {
            return Mc { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let den = &o.re * &o.re + &o.im * &o.im;
        let re = (&self.re * &o.re + &self.im * &o.im) / &den;
        let im = (&self.im * &o.re - &self.re * &o.im) / &den;
        Mc { re, im }
    }
    fn neg(&self) -> Self {
        Mc { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn to_scaled(&self) -> ScaledComplex {
        // common binary exponent of the two parts, then f64 mantissas
        let top = |x: &F| {
            let r = x.repr();
            if r.is_zero() {
                None
            } else {
                Some(r.exponent() + r.digits() as isize)
            }
        };
        let e = match (top(&self.re), top(&self.im)) {
            (None, None) => return ScaledComplex::ZERO,
            (a, b) => a.unwrap_or(isize::MIN).max(b.unwrap_or(isize::MIN)),
        };
        let part = |x: &F| {
            let r = x.repr();
            if r.is_zero() {
                0.0
            } else {
                F::from_parts(IBig::clone(r.significand()), r.exponent() - e).to_f64().value()
            }
        };
        ScaledComplex::new(C64::new(part(&self.re), part(&self.im)), e as f64 * LN_2)
    }
}
