//! Limiting kernels at strong and weak non-Hermiticity.

use wkl::finite_kernels::SymmetryClass;
use wkl::limit_kernels::{ginse_bulk, ginue_bulk, limit_corr, LimitKernelSpec, Regime};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let (z, w) = (C64::new(0.3, 0.1), C64::new(-0.2, 0.4));
    println!("Ginibre bulk kernel {:.6}", ginue_bulk(z, w));
    println!("symplectic bulk kernel {:.6}", ginse_bulk(z, w));

    let zetas = [C64::new(0.0, 0.6), C64::new(0.5, 0.8)];
    for class in [SymmetryClass::Complex, SymmetryClass::Symplectic] {
        for regime in [Regime::StrongBulk, Regime::StrongEdge] {
            let spec = LimitKernelSpec::strong(class, regime)?;
            println!("{class:?} {regime:?}: density {:.5}, two-point {:.5}", limit_corr(&zetas[..1], &spec)?, limit_corr(&zetas, &spec)?);
        }
    }

    // weak non-Hermiticity interpolates between the real line and the plane
    let zetas = [C64::new(0.0, 0.0)];
    for c in [0.3, 1.0, 3.0] {
        let bulk = LimitKernelSpec::weak_bulk(SymmetryClass::Complex, c, 2.0)?;
        let edge = LimitKernelSpec::weak_edge(SymmetryClass::Complex, c)?;
        println!(
            "c = {c}: weak bulk density {:.5}, weak edge density {:.5}",
            limit_corr(&zetas, &bulk)?,
            limit_corr(&zetas, &edge)?
        );
    }
    Ok(())
}
