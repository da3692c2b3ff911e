//! Machine checks of the Christoffel-Darboux type differential identities
//! satisfied by the finite-N kernels.
//!
//! Derivatives are exact: `d/dz L_j^{(a)}(z/tau) = -(1/tau) L_{j-1}^{(a+1)}(z/tau)`.
//!
//! Both sides of an identity can be many orders of magnitude smaller than the
//! terms that produce them, so each residual is first computed in
//! double-double and, if the two sides disagree, recomputed with
//! arbitrary-precision floats at increasing working precision until either
//! the sides agree or both have stopped moving.

mod arith;

use crate::finite_kernels::{ModelParams, SymmetryClass};
use crate::specfun::{log_gamma, ScaledComplex};
use crate::{Error, Result};
use arith::{Ctx, DdCtx, Field, MpCtx};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

/// Guard for the relative-residual denominator.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

/// Working precisions (bits) tried after double-double.
pub const PRECISION_LADDER: [u32; 6] = [192, 320, 576, 1088, 2112, 4160];

/// Two sides, or two precisions, agreeing to this relative level end the escalation.
const AGREE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    ThmI,
    ThmIi,
    Rescaled,
    Varkappa,
    Gn,
}

impl std::str::FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm-i" => Ok(Self::ThmI),
            "thm-ii" => Ok(Self::ThmIi),
            "rescaled" => Ok(Self::Rescaled),
            "varkappa" => Ok(Self::Varkappa),
            "gn" => Ok(Self::Gn),
            _ => Err(Error::Invalid(format!("unknown identity '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeResidualReport {
    pub identity: Identity,
    pub params: ModelParams,
    /// Doubling index for the rescaled identity (1 otherwise).
    pub m: usize,
    pub point: (C64, C64),
    pub lhs: ScaledComplex,
    pub rhs: ScaledComplex,
    pub abs_residual: f64,
    /// `|lhs - rhs| / max(|lhs|, |rhs|, RESIDUAL_FLOOR)`
    pub rel_residual: f64,
    /// Sum of the moduli of the operator terms and right-hand side pieces.
    pub term_scale: f64,
    /// `|lhs - rhs| / max(term_scale, RESIDUAL_FLOOR)`
    pub scaled_residual: f64,
    /// Working precision of the reported values.
    pub precision_bits: u32,
}

/// One evaluation of both sides, before the global factor is applied.
struct Eval {
    l: ScaledComplex,
    r: ScaledComplex,
    diff: ScaledComplex,
    terms: Vec<ScaledComplex>,
    bits: u32,
}

impl Eval {
    fn at<C: Ctx>(ctx: &C, p: &Problem) -> Self {
        let (lhs, rhs) = p.pieces(ctx);
        let sum = |v: &[C::T]| v.iter().fold(ctx.zero(), |a, b| a.add(b));
        let (l, r) = (sum(&lhs), sum(&rhs));
        Self {
            l: l.to_scaled(),
            r: r.to_scaled(),
            diff: l.sub(&r).to_scaled(),
            terms: lhs.iter().chain(&rhs).map(|t| t.to_scaled()).collect(),
            bits: ctx.bits(),
        }
    }

    fn ratio(&self, ln_den: f64) -> f64 {
        if self.diff.is_zero() {
            0.0
        } else {
            (self.diff.ln_abs() - ln_den).exp()
        }
    }

    fn rel(&self, ln_factor: f64) -> f64 {
        let size = self.l.ln_abs().max(self.r.ln_abs());
        self.ratio((size + ln_factor).max(RESIDUAL_FLOOR.ln()) - ln_factor)
    }

    fn stable_against(&self, prev: &Eval) -> bool {
        self.l.rel_diff(&prev.l) <= AGREE && self.r.rel_diff(&prev.r) <= AGREE
    }
}

/// Which identity, at which parameters and points.
#[derive(Debug, Clone, Copy)]
struct Problem {
    identity: Identity,
    z: C64,
    w: C64,
    n: usize,
    nu: f64,
    tau: f64,
    m: usize,
}

impl Problem {
    fn params(&self) -> Result<ModelParams> {
        check(self.n, self.tau)?;
        match self.identity {
            Identity::ThmI => ModelParams::new(SymmetryClass::Complex, self.n, self.nu, self.tau),
            Identity::Rescaled => {
                ModelParams::new(SymmetryClass::Complex, self.m * self.n, self.m as f64 * self.nu, self.tau)
            }
            _ => ModelParams::new(SymmetryClass::Symplectic, self.n, self.nu, self.tau),
        }
    }

    /// Log of the constant stripped from every piece.
    fn ln_factor(&self) -> Result<f64> {
        let (nu, tau) = (self.nu, self.tau);
        let d = (1.0 - tau * tau).ln();
        Ok(match self.identity {
            Identity::ThmI | Identity::Gn => -log_gamma(nu + 1.0)?,
            Identity::ThmIi => -log_gamma(2.0 * nu + 1.0)?,
            Identity::Rescaled => {
                let mu = self.m as f64 * nu;
                let mm = (self.m * self.n) as f64;
                LN_2 + (mu + 2.0) * mm.ln() - d - log_gamma(mu + 1.0)?
            }
            Identity::Varkappa => {
                (2.0 * nu + 3.0) * (2.0 * self.n as f64).ln() - 2.0 * d - log_gamma(2.0 * nu + 1.0)?
            }
        })
    }

    fn pieces<C: Ctx>(&self, ctx: &C) -> (Vec<C::T>, Vec<C::T>) {
        let (z, w) = (ctx.c(self.z), ctx.c(self.w));
        let (nu, tau) = (ctx.r(self.nu), ctx.r(self.tau));
        match self.identity {
            Identity::ThmI => thm_i_pieces(ctx, &z, &w, self.n, &nu, &tau),
            Identity::ThmIi => thm_ii_pieces(ctx, &z, &w, self.n, &nu, &tau),
            Identity::Rescaled => rescaled_pieces(ctx, &z, &w, self.n, self.m, &ctx.r(self.m as f64 * self.nu), &tau),
            Identity::Varkappa => varkappa_pieces(ctx, &z, &w, self.n, &nu, &tau),
            Identity::Gn => gn_pieces(ctx, &w, self.n, &nu, &tau),
        }
    }

    fn point(&self) -> (C64, C64) {
        match self.identity {
            Identity::Gn => (self.w, self.w),
            _ => (self.z, self.w),
        }
    }

    fn report_m(&self) -> usize {
        match self.identity {
            Identity::Rescaled => self.m,
            Identity::Varkappa => 2,
            _ => 1,
        }
    }
}

/// Evaluate in double-double, escalating the precision while the two sides
/// disagree and are still changing.
fn evaluate(p: &Problem) -> Result<OdeResidualReport> {
    let params = p.params()?;
    let lnf = p.ln_factor()?;
    let mut e = Eval::at(&DdCtx, p);
    for bits in PRECISION_LADDER {
        if e.rel(lnf) <= AGREE {
            break;
        }
        let next = Eval::at(&MpCtx { bits }, p);
        let stable = next.stable_against(&e);
        e = next;
        if stable {
            break;
        }
    }
    let size_ln = e.terms.iter().map(|t| t.ln_abs()).fold(f64::NEG_INFINITY, f64::max);
    Ok(OdeResidualReport {
        identity: p.identity,
        params,
        m: p.report_m(),
        point: p.point(),
        lhs: e.l.mul_exp(lnf),
        rhs: e.r.mul_exp(lnf),
        abs_residual: e.diff.mul_exp(lnf).abs(),
        rel_residual: e.rel(lnf),
        term_scale: e.terms.iter().map(|t| t.mul_exp(lnf).abs()).sum(),
        scaled_residual: e.ratio(size_ln),
        precision_bits: e.bits,
    })
}

fn check(n: usize, tau: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain(format!("tau must lie in (0, 1) for the identities, got {tau}")));
    }
    Ok(())
}

fn zeros3<C: Ctx>(ctx: &C) -> [C::T; 3] {
    std::array::from_fn(|_| ctx.zero())
}

/// `L_j^{(a)}(x)` for `j = 0..=n` by the three-term recurrence.
fn lag_seq<C: Ctx>(ctx: &C, n: usize, a: &C::T, x: &C::T) -> Vec<C::T> {
    let one = ctx.r(1.0);
    let mut v = Vec::with_capacity(n + 1);
    v.push(one.clone());
    if n >= 1 {
        v.push(one.add(a).sub(x));
    }
    for k in 1..n {
        let kf = k as f64;
        let c1 = ctx.r(2.0 * kf + 1.0).add(a).sub(x);
        let c2 = ctx.r(kf).add(a);
        let next = c1.mul(&v[k]).sub(&c2.mul(&v[k - 1])).div(&ctx.r(kf + 1.0));
        v.push(next);
    }
    v
}

/// `d^d/dz^d L_j^{(a)}(z/tau) = (-1/tau)^d L_{j-d}^{(a+d)}(z/tau)` for
/// `d = 0, 1, 2` and `j = 0..=n`.
fn lag_derivs<C: Ctx>(ctx: &C, n: usize, a: &C::T, tau: &C::T, z: &C::T) -> [Vec<C::T>; 3] {
    let x = z.div(tau);
    let minus_inv_tau = ctx.r(-1.0).div(tau);
    let mut f = ctx.r(1.0);
    std::array::from_fn(|order| {
        let seq = lag_seq(ctx, n, &a.add(&ctx.r(order as f64)), &x);
        let v = (0..=n).map(|j| if j < order { ctx.zero() } else { seq[j - order].mul(&f) }).collect();
        f = f.mul(&minus_inv_tau);
        v
    })
}

/// `Gamma(nu+1) K_N^{(nu)}` and its first two z-derivatives:
/// `sum_{j<N} j! tau^{2j} / prod_{i=1}^{j} (i+nu) L_j(z/tau) L_j(w/tau)`.
fn calk_rel<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> [C::T; 3] {
    let lz = lag_derivs(ctx, n - 1, nu, tau, z);
    let lw = lag_seq(ctx, n - 1, nu, &w.div(tau));
    let t2 = tau.mul(tau);
    let mut c = ctx.r(1.0);
    let mut out = zeros3(ctx);
    for j in 0..n {
        if j > 0 {
            let jf = ctx.r(j as f64);
            c = c.mul(&t2).mul(&jf).div(&nu.add(&jf));
        }
        for (d, o) in out.iter_mut().enumerate() {
            *o = o.add(&lz[d][j].mul(&lw[j]).mul(&c));
        }
    }
    out
}

/// Symplectic coefficients without their Gamma-function constants:
/// `a'_k = k! tau^{2k+1} / prod_{i=0}^{k} (i+nu+1/2)` for `k < n`,
/// `b'_j = (2j-1)!! tau^{2j} / (2^j prod_{i=1}^{j} (i+nu))` for `j <= n`.
fn skew_coefficients<C: Ctx>(ctx: &C, n: usize, nu: &C::T, tau: &C::T) -> (Vec<C::T>, Vec<C::T>) {
    let t2 = tau.mul(tau);
    let half = nu.add(&ctx.r(0.5));
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n + 1);
    let mut ak = tau.div(&half);
    let mut bk = ctx.r(1.0);
    for k in 0..=n {
        let kf = k as f64;
        if k > 0 {
            ak = ak.mul(&t2).mul(&ctx.r(kf)).div(&half.add(&ctx.r(kf)));
            bk = bk.mul(&t2).mul(&ctx.r(2.0 * kf - 1.0)).div(&nu.add(&ctx.r(kf)).mul(&ctx.r(2.0)));
        }
        if k < n {
            a.push(ak.clone());
        }
        b.push(bk.clone());
    }
    (a, b)
}

/// `kappa_N / G0` with `G0 = sqrt(pi) / (2^{2nu} Gamma(nu+1/2) Gamma(nu+1)) = 1/Gamma(2nu+1)`,
/// and its first two z-derivatives.
fn kappa_rel<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> [C::T; 3] {
    let (a, b) = skew_coefficients(ctx, n, nu, tau);
    let nu2 = nu.mul(&ctx.r(2.0));
    let lz = lag_derivs(ctx, 2 * n - 1, &nu2, tau, z);
    let lw = lag_seq(ctx, 2 * n - 1, &nu2, &w.div(tau));
    let minus_half = ctx.r(-0.5);
    std::array::from_fn(|d| {
        // G(z, w): derivative on the odd factor; G(w, z): on the inner even sum
        let mut cum_w = ctx.zero();
        let mut cum_z = ctx.zero();
        let mut s = ctx.zero();
        for k in 0..n {
            cum_w = cum_w.add(&lw[2 * k].mul(&b[k]));
            cum_z = cum_z.add(&lz[d][2 * k].mul(&b[k]));
            s = s.add(&lz[d][2 * k + 1].mul(&cum_w).sub(&lw[2 * k + 1].mul(&cum_z)).mul(&a[k]));
        }
        s.mul(&minus_half)
    })
}

/// `Gamma(nu+1) g(w)` with `g(w) = sum_{j<N} b_j L_{2j}^{(2nu)}(s w/tau)`, and its
/// first two derivatives in `w`.
fn g_rel<C: Ctx>(ctx: &C, w: &C::T, n: usize, nu: &C::T, tau: &C::T, s: f64) -> [C::T; 3] {
    let (_, b) = skew_coefficients(ctx, n, nu, tau);
    let lw = lag_derivs(ctx, 2 * n, &nu.mul(&ctx.r(2.0)), tau, &w.mul(&ctx.r(s)));
    let mut f = ctx.r(1.0);
    std::array::from_fn(|order| {
        let acc = (0..n).fold(ctx.zero(), |acc, j| acc.add(&lw[order][2 * j].mul(&b[j])));
        let v = acc.mul(&f);
        f = f.mul(&ctx.r(s));
        v
    })
}

/// `N! / prod_{i=1}^{N-1} (i+nu)`, i.e. `Gamma(nu+1) N!/Gamma(N+nu)`.
fn factorial_ratio<C: Ctx>(ctx: &C, n: usize, nu: &C::T) -> C::T {
    (1..n).fold(ctx.r(n as f64), |r, i| r.mul(&ctx.r(i as f64)).div(&nu.add(&ctx.r(i as f64))))
}

fn tau_pow<C: Ctx>(ctx: &C, tau: &C::T, k: usize) -> C::T {
    (0..k).fold(ctx.r(1.0), |t, _| t.mul(tau))
}

/// Right-hand side of the complex identity at Laguerre arguments `x = z/tau`, `y = w/tau`.
fn thm_i_rhs<C: Ctx>(ctx: &C, x: &C::T, y: &C::T, n: usize, nu: &C::T, tau: &C::T) -> Vec<C::T> {
    let t2 = tau.mul(tau);
    let d = ctx.r(1.0).sub(&t2);
    let lz = lag_seq(ctx, n, nu, x);
    let lw = lag_seq(ctx, n, nu, y);
    let pre = factorial_ratio(ctx, n, nu).mul(&tau_pow(ctx, tau, 2 * n - 1)).div(&d);
    vec![lz[n - 1].mul(&lw[n]).mul(&pre), lz[n].mul(&lw[n - 1]).mul(&pre.mul(&t2).neg())]
}

/// Operator pieces and right-hand side of the complex identity at (z, w),
/// all divided by `1/Gamma(nu+1)`.
fn thm_i_pieces<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> (Vec<C::T>, Vec<C::T>) {
    let one = ctx.r(1.0);
    let t2 = tau.mul(tau);
    let d = one.sub(&t2);
    let [k0, k1, k2] = calk_rel(ctx, z, w, n, nu, tau);
    let nu1 = nu.add(&one);
    let lhs = vec![
        k2.mul(&z.mul(&d)),
        k1.mul(&d.mul(&nu1).add(&z.mul(&tau.mul(&ctx.r(2.0))))),
        k0.mul(&z.mul(&t2).sub(w).div(&d).add(&nu1.mul(tau))),
    ];
    (lhs, thm_i_rhs(ctx, &z.div(tau), &w.div(tau), n, nu, tau))
}

/// Right-hand side of the symplectic identity divided by `G0`.
fn thm_ii_rhs<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> Vec<C::T> {
    let nu2 = nu.mul(&ctx.r(2.0));
    let first = calk_rel(ctx, z, w, 2 * n, &nu2, tau)[0].clone();
    let g = g_rel(ctx, w, n, nu, tau, 1.0)[0].clone();
    // N! tau^{2N} / prod_{i=0}^{N-1} (i+nu+1/2)
    let c = (0..n).fold(tau_pow(ctx, tau, 2 * n), |c, i| {
        c.mul(&ctx.r((i + 1) as f64)).div(&nu.add(&ctx.r(i as f64 + 0.5)))
    });
    let l2n = lag_seq(ctx, 2 * n, &nu2, &z.div(tau))[2 * n].clone();
    vec![first, l2n.mul(&g).mul(&c.neg())]
}

/// Operator pieces and right-hand side of the symplectic identity, divided by `G0`.
fn thm_ii_pieces<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> (Vec<C::T>, Vec<C::T>) {
    let one = ctx.r(1.0);
    let d = one.sub(&tau.mul(tau));
    let nu21 = nu.mul(&ctx.r(2.0)).add(&one);
    let [k0, k1, k2] = kappa_rel(ctx, z, w, n, nu, tau);
    let lhs = vec![
        k2.mul(&z.mul(&d)),
        k1.mul(&nu21.mul(&d).add(&z.mul(&tau.mul(&ctx.r(2.0))))),
        k0.mul(&tau.mul(&nu21).sub(z)),
    ];
    (lhs, thm_ii_rhs(ctx, z, w, n, nu, tau))
}

/// Rescaled identity for `S_M^{(mu)}`, `M = mN`, with
/// `S_M(z, w) = 2 M^{mu+2} / ((1-tau^2) Gamma(mu+1)) * [Gamma(mu+1) K_M(Mz, Mw)]`.
fn rescaled_pieces<C: Ctx>(
    ctx: &C,
    z: &C::T,
    w: &C::T,
    n: usize,
    m: usize,
    mu: &C::T,
    tau: &C::T,
) -> (Vec<C::T>, Vec<C::T>) {
    let big_m = m * n;
    let mm = ctx.r(big_m as f64);
    let one = ctx.r(1.0);
    let t2 = tau.mul(tau);
    let d = one.sub(&t2);
    let (zs, ws) = (z.mul(&mm), w.mul(&mm));
    let [k0, k1, k2] = calk_rel(ctx, &zs, &ws, big_m, mu, tau);
    let mu1 = mu.add(&one);
    let lhs = vec![
        k2.mul(&mm.mul(&mm)).mul(&z.mul(&d).div(&mm)),
        k1.mul(&mm).mul(&d.mul(&mu1).div(&mm).add(&z.mul(&tau.mul(&ctx.r(2.0))))),
        k0.mul(&z.mul(&t2).sub(w).mul(&mm).div(&d).add(&mu1.mul(tau))),
    ];
    (lhs, thm_i_rhs(ctx, &zs.div(tau), &ws.div(tau), big_m, mu, tau))
}

/// Rescaled identity for `varkappa_N(z, w) = (2N)^{2nu+3}/(1-tau^2)^2 kappa_N(2Nz, 2Nw)`.
fn varkappa_pieces<C: Ctx>(ctx: &C, z: &C::T, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> (Vec<C::T>, Vec<C::T>) {
    let two_n = ctx.r(2.0 * n as f64);
    let one = ctx.r(1.0);
    let d = one.sub(&tau.mul(tau));
    let nu21 = nu.mul(&ctx.r(2.0)).add(&one);
    let (zs, ws) = (z.mul(&two_n), w.mul(&two_n));
    let [k0, k1, k2] = kappa_rel(ctx, &zs, &ws, n, nu, tau);
    let lhs = vec![
        k2.mul(&two_n.mul(&two_n)).mul(&z.mul(&d).div(&two_n)),
        k1.mul(&two_n).mul(&nu21.mul(&d).div(&two_n).add(&z.mul(&tau.mul(&ctx.r(2.0))))),
        k0.mul(&tau.mul(&nu21).sub(&zs)),
    ];
    (lhs, thm_ii_rhs(ctx, &zs, &ws, n, nu, tau))
}

/// Second-order equation for `g_N(w) = sum_{j<N} b_j L_{2j}^{(2nu)}(2Nw/tau)`.
fn gn_pieces<C: Ctx>(ctx: &C, w: &C::T, n: usize, nu: &C::T, tau: &C::T) -> (Vec<C::T>, Vec<C::T>) {
    let two_n_f = 2.0 * n as f64;
    let two_n = ctx.r(two_n_f);
    let one = ctx.r(1.0);
    let d = one.sub(&tau.mul(tau));
    let nu21 = nu.mul(&ctx.r(2.0)).add(&one);
    let g = g_rel(ctx, w, n, nu, tau, two_n_f);
    let lhs = vec![
        g[2].mul(&w.mul(&d).div(&two_n)),
        g[1].mul(&d.mul(&nu21).div(&two_n).add(&w.mul(&tau.mul(&ctx.r(2.0))))),
        g[0].mul(&w.sub(&tau.mul(&nu21).div(&two_n)).mul(&two_n.neg())),
    ];
    // (2N-1)!! tau^{2N-1} / (2^{N-1} prod_{i=1}^{N-1} (i+nu))
    let c = (1..n).fold(tau_pow(ctx, tau, 2 * n - 1), |c, i| {
        c.mul(&ctx.r((2 * i + 1) as f64)).div(&nu.add(&ctx.r(i as f64)).mul(&ctx.r(2.0)))
    });
    let l = lag_seq(ctx, 2 * n - 1, &nu.mul(&ctx.r(2.0)), &w.mul(&two_n).div(tau))[2 * n - 1].clone();
    (lhs, vec![l.mul(&c)])
}

fn globalize<T: Field>(v: [T; 3], ln_factor: f64) -> [ScaledComplex; 3] {
    v.map(|x| x.to_scaled().mul_exp(ln_factor))
}

/// `[K, dK/dz, d2K/dz2]` for
/// `K_N(z, w) = sum_{j<N} j! tau^{2j}/Gamma(j+nu+1) L_j^{(nu)}(z/tau) L_j^{(nu)}(w/tau)`.
pub fn kernel_calk(z: C64, w: C64, n: usize, nu: f64, tau: f64) -> Result<[ScaledComplex; 3]> {
    check(n, tau)?;
    if !(nu > -1.0) {
        return Err(Error::Domain(format!("nu must exceed -1, got {nu}")));
    }
    let c = DdCtx;
    Ok(globalize(calk_rel(&c, &c.c(z), &c.c(w), n, &c.r(nu), &c.r(tau)), -log_gamma(nu + 1.0)?))
}

/// `[kappa, d kappa/dz, d2 kappa/dz2]` for the unscaled symplectic pre-kernel
/// `kappa_N(z, w) = G_N(z, w) - G_N(w, z)`.
pub fn kernel_kappa(z: C64, w: C64, n: usize, nu: f64, tau: f64) -> Result<[ScaledComplex; 3]> {
    check(n, tau)?;
    if !(nu > -0.5) {
        return Err(Error::Domain(format!("nu must exceed -1/2, got {nu}")));
    }
    let c = DdCtx;
    Ok(globalize(kappa_rel(&c, &c.c(z), &c.c(w), n, &c.r(nu), &c.r(tau)), -log_gamma(2.0 * nu + 1.0)?))
}

fn run(identity: Identity, z: C64, w: C64, n: usize, nu: f64, tau: f64, m: usize) -> Result<OdeResidualReport> {
    evaluate(&Problem { identity, z, w, n, nu, tau, m })
}

/// Residual of the complex-class identity for `K_N^{(nu)}`.
pub fn residual_thm_i(z: C64, w: C64, n: usize, nu: f64, tau: f64) -> Result<OdeResidualReport> {
    run(Identity::ThmI, z, w, n, nu, tau, 1)
}

/// Residual of the symplectic-class identity for `kappa_N^{(nu)}`.
pub fn residual_thm_ii(z: C64, w: C64, n: usize, nu: f64, tau: f64) -> Result<OdeResidualReport> {
    run(Identity::ThmIi, z, w, n, nu, tau, 1)
}

/// Residual of the rescaled identity for `S_{mN}^{(m nu)}`, m in {1, 2}.
pub fn residual_rescaled(z: C64, w: C64, n: usize, nu: f64, tau: f64, m: usize) -> Result<OdeResidualReport> {
    if m != 1 && m != 2 {
        return Err(Error::Invalid(format!("m must be 1 or 2, got {m}")));
    }
    run(Identity::Rescaled, z, w, n, nu, tau, m)
}

/// Residual of the rescaled identity for the pre-kernel
/// `varkappa_N(z, w) = (2N)^{2nu+3}/(1-tau^2)^2 kappa_N(2Nz, 2Nw)`.
pub fn residual_varkappa(z: C64, w: C64, n: usize, nu: f64, tau: f64) -> Result<OdeResidualReport> {
    run(Identity::Varkappa, z, w, n, nu, tau, 1)
}

/// Residual of the second-order equation for
/// `g_N(w) = sum_{j<N} b_j L_{2j}^{(2nu)}(2Nw/tau)`.
pub fn residual_gn(w: C64, n: usize, nu: f64, tau: f64) -> Result<OdeResidualReport> {
    run(Identity::Gn, w, w, n, nu, tau, 1)
}

/// Bounds for the randomized sweep.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepConfig {
    pub identity: Identity,
    pub cases: usize,
    pub seed: u64,
    pub n_max: usize,
    pub tau_range: (f64, f64),
    pub nu_max: f64,
    pub radius: f64,
}

impl SweepConfig {
    pub fn new(identity: Identity, cases: usize, seed: u64) -> Self {
        Self { identity, cases, seed, n_max: 60, tau_range: (0.1, 0.95), nu_max: 4.0, radius: 10.0 }
    }
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

/// Evaluate one identity at `cases` random parameter/point draws. Case `i` uses
/// its own ChaCha stream, so results do not depend on thread scheduling.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<OdeResidualReport>> {
    (0..cfg.cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let n = rng.gen_range(1..=cfg.n_max);
            let tau = rng.gen_range(cfg.tau_range.0..=cfg.tau_range.1);
            let m = if cfg.identity == Identity::Rescaled { rng.gen_range(1..=2) } else { 1 };
            let nu_min = match cfg.identity {
                Identity::ThmI | Identity::Rescaled => -0.9 / m as f64,
                _ => -0.45,
            };
            let nu = rng.gen_range(nu_min..=cfg.nu_max);
            let z = random_point(&mut rng, cfg.radius);
            let w = random_point(&mut rng, cfg.radius);
            match cfg.identity {
                Identity::ThmI => residual_thm_i(z, w, n, nu, tau),
                Identity::ThmIi => residual_thm_ii(z, w, n, nu, tau),
                // the rescaled variables live on the droplet scale
                Identity::Rescaled => residual_rescaled(z / (m * n) as f64, w / (m * n) as f64, n, nu, tau, m),
                Identity::Varkappa => residual_varkappa(z / (2 * n) as f64, w / (2 * n) as f64, n, nu, tau),
                Identity::Gn => residual_gn(w / (2 * n) as f64, n, nu, tau),
            }
        })
        .collect()
}
