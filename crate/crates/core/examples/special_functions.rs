//! Laguerre polynomials, Bessel K and Airy values, including arguments where
//! the plain f64 result would overflow.

use wkl::specfun::{airy_ai, airy_ai_scaled, bessel_k, erf_complex, laguerre_l, laguerre_scaled};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let z = C64::new(3.0, 1.5);
    println!("L_10^(1/2)({z}) = {}", laguerre_l(10, 0.5, z));

    // degree 2000 at a large argument: only the log-scaled form is finite
    let big = laguerre_scaled(2000, 1.0, C64::new(5000.0, 0.0));
    println!("ln|L_2000^(1)(5000)| = {:.6}", big.ln_abs());

    for x in [0.5, 5.0, 800.0] {
        let k = bessel_k(0.5, x)?;
        println!("K_1/2({x}) = {:.6e} (ln {:.6})", k.to_c64().re, k.ln_abs());
    }

    println!("Ai(1+i) = {}", airy_ai(C64::new(1.0, 1.0)));
    println!("ln|Ai(400)| = {:.6}", airy_ai_scaled(C64::new(400.0, 0.0)).ln_abs());
    println!("erf(1-i) = {}", erf_complex(C64::new(1.0, -1.0)));
    Ok(())
}
