//! Random sweep of the differential identities satisfied by the kernels.

use wkl::cd_verifier::{residual_thm_i, sweep, Identity, SweepConfig};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let r = residual_thm_i(C64::new(1.2, 0.4), C64::new(0.7, -0.3), 30, 1.5, 0.6)?;
    println!("single point: lhs {:.6e}, rhs {:.6e}, rel {:.2e}", r.lhs.to_c64(), r.rhs.to_c64(), r.rel_residual);

    for identity in [Identity::ThmI, Identity::ThmIi, Identity::Rescaled, Identity::Varkappa, Identity::Gn] {
        let reports = sweep(&SweepConfig::new(identity, 50, 7))?;
        let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
        println!("{identity:?}: {} cases, worst rel residual {worst:.2e}", reports.len());
    }
    Ok(())
}
