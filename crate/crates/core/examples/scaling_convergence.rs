//! How fast rescaled finite-N correlations approach their limits.

use wkl::finite_kernels::SymmetryClass;
use wkl::scaling_harness::{convergence_experiment, max_error_at, RegimeSchedule, ScalingSetup};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let zetas = vec![vec![C64::new(0.0, 0.5)], vec![C64::new(0.0, 0.5), C64::new(0.4, 0.8)]];
    let n_list = [25, 50, 100, 200];
    let setups = [
        ("complex strong bulk", ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, C64::new(1.0, 0.2), 1.0)),
        ("complex strong edge", ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, C64::new(2.25, 0.0), 1.0)),
        ("symplectic weak bulk", ScalingSetup::new(SymmetryClass::Symplectic, RegimeSchedule::WeakBulk { c: 1.0 }, C64::new(2.0, 0.0), 1.0)),
        ("complex weak edge", ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::WeakEdge { c: 1.0 }, C64::new(4.0, 0.0), 1.0)),
    ];
    for (name, setup) in &setups {
        let records = convergence_experiment(setup, &zetas, &n_list)?;
        let errs: Vec<String> = n_list.iter().map(|&n| format!("{:.2e}", max_error_at(&records, n).unwrap())).collect();
        println!("{name:>22}: {}", errs.join("  "));
    }
    Ok(())
}
