//! Minimal double-double arithmetic, used where Maclaurin series cancel badly.

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (s, e) = quick_two_sum(s, e + f);
        Dd { hi: s, lo: e }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (p, e) = quick_two_sum(p, e);
        Dd { hi: p, lo: e }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (p, e) = quick_two_sum(p, e);
        Dd { hi: p, lo: e }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.sub(Dd::from_f64(b).mul_f64(q1));
        let q2 = r.hi / b;
        let r = r.sub(Dd::from_f64(b).mul_f64(q2));
        let q3 = r.hi / b;
        let (q, e) = quick_two_sum(q1, q2);
        Dd { hi: q, lo: e }.add(Dd::from_f64(q3))
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (q, e) = quick_two_sum(q1, q2);
        Dd { hi: q, lo: e }.add(Dd::from_f64(q3))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub const ZERO: DdC = DdC { re: Dd::ZERO, im: Dd::ZERO };

    pub fn from_c64(z: num_complex::Complex64) -> Self {
        DdC { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub fn add(self, o: DdC) -> DdC {
        DdC { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn sub(self, o: DdC) -> DdC {
        DdC { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    pub fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn mul_dd(self, b: Dd) -> DdC {
        DdC { re: self.re.mul(b), im: self.im.mul(b) }
    }

    pub fn div_f64(self, b: f64) -> DdC {
        DdC { re: self.re.div_f64(b), im: self.im.div_f64(b) }
    }

    pub fn div_dd(self, b: Dd) -> DdC {
        DdC { re: self.re.div(b), im: self.im.div(b) }
    }

    pub fn neg(self) -> DdC {
        DdC { re: self.re.neg(), im: self.im.neg() }
    }

    /// Multiply by `2^k` (exact barring over/underflow).
    pub fn ldexp(self, k: i32) -> DdC {
        let f = 2f64.powi(k);
        DdC { re: Dd { hi: self.re.hi * f, lo: self.re.lo * f }, im: Dd { hi: self.im.hi * f, lo: self.im.lo * f } }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_approx(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

/// Complex double-double with a binary exponent: `m * 2^e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Xc {
    pub m: DdC,
    pub e: i32,
}

impl Xc {
    pub const ZERO: Xc = Xc { m: DdC::ZERO, e: 0 };

    pub fn new(m: DdC, e: i32) -> Xc {
        let mx = m.re.hi.abs().max(m.im.hi.abs());
        if mx == 0.0 {
            return Xc::ZERO;
        }
        let k = mx.log2().floor() as i32;
        if k == 0 {
            return Xc { m, e };
        }
        Xc { m: m.ldexp(-k), e: e + k }
    }

    pub fn from_ddc(m: DdC) -> Xc {
        Xc::new(m, 0)
    }

    pub fn mul(self, o: Xc) -> Xc {
        Xc::new(self.m.mul(o.m), self.e + o.e)
    }

    pub fn neg(self) -> Xc {
        Xc { m: self.m.neg(), e: self.e }
    }

    pub fn add(self, o: Xc) -> Xc {
        if self.m == DdC::ZERO {
            return o;
        }
        if o.m == DdC::ZERO {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = small.e - big.e;
        if d < -230 {
            return big;
        }
        Xc::new(big.m.add(small.m.ldexp(d)), big.e)
    }

    pub fn sub(self, o: Xc) -> Xc {
        self.add(o.neg())
    }

    pub fn to_scaled(self) -> crate::specfun::ScaledComplex {
        crate::specfun::ScaledComplex::new(self.m.to_c64(), self.e as f64 * std::f64::consts::LN_2)
    }
}
