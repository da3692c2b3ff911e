//! Finite-N correlation functions for both symmetry classes.

use wkl::finite_kernels::{corr, kernel_sn, kernel_sn_hardy_hille, ModelParams, SymmetryClass};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let n = 40;
    let complex = ModelParams::new(SymmetryClass::Complex, n, 1.0, 0.5)?;
    let symplectic = ModelParams::new(SymmetryClass::Symplectic, n, 1.0, 0.5)?;

    let z = C64::new(1.0, 0.2);
    let w = C64::new(1.05, 0.25);
    println!("density at {z}: complex {:.5}, symplectic {:.5}", corr(&[z], &complex)?, corr(&[z], &symplectic)?);
    println!("two-point at {z}, {w}: complex {:.5}, symplectic {:.5}", corr(&[z, w], &complex)?, corr(&[z, w], &symplectic)?);

    // the summed kernel agrees with its closed form for large N
    let big = ModelParams::new(SymmetryClass::Complex, 2000, 0.0, 0.3)?;
    let (a, b) = (C64::new(0.004, 0.001), C64::new(-0.002, 0.003));
    println!("S_N sum {:.10}", kernel_sn(a, b, &big).to_c64());
    println!("S_N limit {:.10}", kernel_sn_hardy_hille(a, b, &big).to_c64());

    // symplectic eigenvalues repel the real axis
    for y in [0.0, 0.02, 0.1] {
        println!("symplectic density at 1+{y}i: {:.5}", corr(&[C64::new(1.0, y)], &symplectic)?);
    }
    Ok(())
}
