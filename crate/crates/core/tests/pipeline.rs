//! Cross-module checks: sampled eigenvalues against the kernel density, and
//! rescaled two-point functions against their limits.

use wkl::finite_kernels::{corr, ModelParams, SymmetryClass};
use wkl::limit_kernels::limit_corr;
use wkl::montecarlo::{sample_many, MatrixModel};
use wkl::scaling_harness::{rescaled_corr, RegimeSchedule, ScalingSetup};
use wkl::C64;

/// Expected number of eigenvalues in the disc `|z - center| < r` from the
/// one-point function, by a polar midpoint rule (dA = d^2z / pi).
fn expected_count(center: C64, r: f64, params: &ModelParams) -> f64 {
    let (nr, nt) = (40, 64);
    let mut s = 0.0;
    for i in 0..nr {
        let rho = (i as f64 + 0.5) * r / nr as f64;
        for j in 0..nt {
            let t = (j as f64 + 0.5) * std::f64::consts::TAU / nt as f64;
            s += corr(&[center + C64::from_polar(rho, t)], params).unwrap() * rho;
        }
    }
    s * (r / nr as f64) * (std::f64::consts::TAU / nt as f64) / std::f64::consts::PI
}

#[test]
fn sampled_counts_match_kernel_density() {
    let (n, trials) = (20, 400);
    let params = ModelParams::new(SymmetryClass::Complex, n, 1.0, 0.5).unwrap();
    let model = MatrixModel::from_params(&params).unwrap();
    let samples = sample_many(&model, 31, trials).unwrap();
    for (center, r) in [(C64::new(1.0, 0.0), 0.3), (C64::new(0.5, 0.4), 0.25), (C64::new(2.2, 0.0), 0.3)] {
        let observed = samples.iter().flat_map(|s| s.eigenvalues.iter()).filter(|z| (*z - center).norm() < r).count() as f64;
        let expected = expected_count(center, r, &params) * trials as f64;
        // Poisson bound; eigenvalue counts fluctuate less than that
        assert!((observed - expected).abs() < 4.0 * expected.sqrt(), "{center}: {observed} vs {expected}");
    }
}

#[test]
fn two_point_function_converges() {
    let setup = ScalingSetup::new(SymmetryClass::Complex, RegimeSchedule::Strong { tau: 0.5 }, C64::new(1.0, 0.2), 1.0);
    let zetas = [C64::new(0.0, 0.0), C64::new(0.7, -0.4)];
    let limit = limit_corr(&zetas, &setup.limit_spec().unwrap()).unwrap();
    let exact = 1.0 - (-(zetas[0] - zetas[1]).norm_sqr()).exp();
    assert!((limit - exact).abs() < 1e-12);
    let e1 = (rescaled_corr(&setup, 50, &zetas).unwrap() - limit).abs();
    let e2 = (rescaled_corr(&setup, 200, &zetas).unwrap() - limit).abs();
    // off-centre points converge at rate N^-1/2
    assert!((1.6..2.5).contains(&(e1 / e2)) && e2 < 0.05, "{e1} {e2}");
}

#[test]
fn symplectic_two_point_function_converges() {
    let setup = ScalingSetup::new(SymmetryClass::Symplectic, RegimeSchedule::Strong { tau: 0.5 }, C64::new(1.0, 0.0), 1.0);
    let zetas = [C64::new(0.0, 0.4), C64::new(0.5, 0.8)];
    let limit = limit_corr(&zetas, &setup.limit_spec().unwrap()).unwrap();
    let e1 = (rescaled_corr(&setup, 50, &zetas).unwrap() - limit).abs();
    let e2 = (rescaled_corr(&setup, 200, &zetas).unwrap() - limit).abs();
    assert!((1.6..2.5).contains(&(e1 / e2)) && e2 < 0.05, "{e1} {e2} (limit {limit})");
}
