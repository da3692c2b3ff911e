use super::ScaledComplex;
use num_complex::Complex64 as C64;

const RESCALE_HI: f64 = 1e100;
const RESCALE_LN: f64 = 230.258_509_299_404_56; // ln(1e100)

/// `L_j^{(nu)}(z)` as a plain complex number.
pub fn laguerre_l(j: usize, nu: f64, z: C64) -> C64 {
    laguerre_scaled(j, nu, z).to_c64()
}

/// `L_j^{(nu)}(z)` in scaled form.
pub fn laguerre_scaled(j: usize, nu: f64, z: C64) -> ScaledComplex {
    let mut out = ScaledComplex::ONE;
    run_recurrence(j, nu, z, |_, v| out = v);
    out
}

/// `L_0 .. L_j` at fixed `z` (may overflow for large degree; see
/// [`laguerre_seq_scaled`]).
pub fn laguerre_seq(j: usize, nu: f64, z: C64) -> Vec<C64> {
    laguerre_seq_scaled(j, nu, z).iter().map(|v| v.to_c64()).collect()
}

/// `L_0 .. L_j` at fixed `z` in scaled form.
pub fn laguerre_seq_scaled(j: usize, nu: f64, z: C64) -> Vec<ScaledComplex> {
    let mut out = Vec::with_capacity(j + 1);
    run_recurrence(j, nu, z, |_, v| out.push(v));
    out
}

/// Three-term recurrence
/// `(k+1) L_{k+1} = (2k + nu + 1 - z) L_k - (k + nu) L_{k-1}`
/// in ordinary arithmetic with a shared running exponent.
fn run_recurrence(j: usize, nu: f64, z: C64, mut emit: impl FnMut(usize, ScaledComplex)) {
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    let mut shift = 0.0f64;
    emit(0, ScaledComplex::ONE);
    for k in 0..j {
        let kf = k as f64;
        let next = ((2.0 * kf + nu + 1.0 - z) * cur - (kf + nu) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.norm().max(prev.norm());
        if m > RESCALE_HI {
            cur /= RESCALE_HI;
            prev /= RESCALE_HI;
            shift += RESCALE_LN;
        } else if m < 1.0 / RESCALE_HI && m > 0.0 {
            cur *= RESCALE_HI;
            prev *= RESCALE_HI;
            shift -= RESCALE_LN;
        }
        emit(k + 1, ScaledComplex::new(cur, shift));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::lgamma_pos;
    use proptest::prelude::*;

    fn series(j: usize, nu: f64, z: C64) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        let mut zk = C64::new(1.0, 0.0);
        for k in 0..=j {
            let lc = lgamma_pos(j as f64 + nu + 1.0) - lgamma_pos((j - k) as f64 + 1.0) - lgamma_pos(nu + k as f64 + 1.0) - lgamma_pos(k as f64 + 1.0);
            s += zk * lc.exp();
            zk *= -z;
        }
        s
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(laguerre_l(0, 0.7, C64::new(3.0, 2.0)), C64::new(1.0, 0.0));
        assert!((laguerre_l(2, 0.0, C64::new(1.0, 0.0)) - C64::new(-0.5, 0.0)).norm() < 1e-15);
        let z = C64::new(0.3, -1.1);
        assert!((laguerre_l(1, 2.5, z) - (3.5 - z)).norm() < 1e-15);
    }

    #[test]
    fn mpmath_series_values() {
        let v = laguerre_l(5, 0.5, C64::new(1.25, 0.0));
        assert!((v.re - -0.7872314453125).abs() < 1e-14);
        let v = laguerre_l(7, -0.3, C64::new(2.0, -1.5));
        let e = C64::new(3.1515961834920634921, 2.996368847619047619);
        assert!((v - e).norm() / e.norm() < 1e-13);
        let v = laguerre_l(30, 2.0, C64::new(40.0, 0.0));
        assert!(((v.re - 38048337.268049366535) / 38048337.268049366535).abs() < 1e-11);
    }

    #[test]
    fn huge_degree_stays_finite() {
        let seq = laguerre_seq_scaled(2000, 1.0, C64::new(-50.0, 3.0));
        assert!(seq.iter().all(|v| v.is_finite()));
        assert!(seq[2000].ln_abs() > 300.0);
    }

    proptest! {
        #[test]
        fn recurrence_matches_series(j in 0usize..25, nu in -0.9f64..5.0, x in -5.0f64..5.0, y in -5.0f64..5.0) {
            let z = C64::new(x, y);
            let a = laguerre_l(j, nu, z);
            let b = series(j, nu, z);
            let scale: f64 = (0..=j).map(|k| {
                let lc = lgamma_pos(j as f64 + nu + 1.0) - lgamma_pos((j - k) as f64 + 1.0) - lgamma_pos(nu + k as f64 + 1.0) - lgamma_pos(k as f64 + 1.0);
                lc.exp() * z.norm().powi(k as i32)
            }).sum();
            prop_assert!((a - b).norm() <= 1e-12 * scale);
        }

        #[test]
        fn index_lowering_identity(j in 1usize..=60, nu in -0.9f64..5.0, r in 0.0f64..20.0, t in 0.0f64..6.3) {
            let z = C64::from_polar(r, t);
            let lhs = laguerre_scaled(j, nu, z);
            let up = laguerre_seq_scaled(j, nu + 1.0, z);
            let rhs = up[j] - up[j - 1];
            let denom = up[j].abs().max(up[j - 1].abs());
            prop_assert!((lhs - rhs).abs() <= 1e-9 * denom);
        }

        #[test]
        fn derivative_rule(j in 1usize..=30, nu in -0.9f64..5.0, r in 0.1f64..10.0, t in 0.0f64..6.3) {
            let z = C64::from_polar(r, t);
            let h = 1e-5;
            let fd = (laguerre_l(j, nu, z + h) - laguerre_l(j, nu, z - h)) / (2.0 * h);
            let exact = -laguerre_l(j - 1, nu + 1.0, z);
            // rounding in the difference quotient scales with |L|/h
            let noise = laguerre_l(j, nu, z).norm().max(exact.norm()) * 1e-10 / h;
            prop_assert!((fd - exact).norm() <= 1e-6 * exact.norm() + noise);
        }

        #[test]
        fn laguerre_ode(j in 2usize..=60, nu in -0.9f64..5.0, r in 0.1f64..20.0, t in 0.0f64..6.3) {
            let z = C64::from_polar(r, t);
            let l = laguerre_scaled(j, nu, z);
            let d1 = -laguerre_scaled(j - 1, nu + 1.0, z);
            let d2 = laguerre_scaled(j - 2, nu + 2.0, z);
            let a = d2.scale_c(z);
            let b = d1.scale_c(nu + 1.0 - z);
            let c = l.scale(j as f64);
            let res = a + b + c;
            let size = a.abs() + b.abs() + c.abs();
            prop_assert!(res.abs() <= 1e-8 * size);
        }
    }
}
