//! Large-degree asymptotics of Laguerre polynomials in three regimes.

use wkl::scaling_harness::{asym_decay_ratio, laguerre_asym, AsymInput, AsymRegime};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let cases = [
        (AsymRegime::Exponential, AsymInput { n: 100, r: 0, nu: 1.0, tau: 0.5, point: C64::new(1.0, 0.5) }),
        (AsymRegime::Oscillatory, AsymInput { n: 100, r: 0, nu: 1.0, tau: 0.0, point: C64::new(0.4, 0.0) }),
        (AsymRegime::Critical, AsymInput { n: 100, r: 0, nu: 1.0, tau: 0.0, point: C64::new(-1.5, 0.0) }),
    ];
    for (regime, input) in &cases {
        let rep = laguerre_asym(*regime, input)?;
        println!("{regime:?} at {}: deviation {:.3e}", input.point, rep.deviation);
        let points: Vec<C64> = (0..8).map(|k| input.point + C64::new(0.03 * k as f64, 0.0)).collect();
        let ratio = asym_decay_ratio(*regime, input, &points)?;
        println!("  deviation(2N)/deviation(N) = {ratio:.3}");
    }
    Ok(())
}
