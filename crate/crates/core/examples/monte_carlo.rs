//! Sample the product matrix model and compare the spectrum with the droplet.

use wkl::finite_kernels::SymmetryClass;
use wkl::geometry::DropletGeometry;
use wkl::montecarlo::{ellipse_fraction, near_axis_depletion, radial_density, sample_many, MatrixModel};

fn main() -> wkl::Result<()> {
    let tau = 0.5;
    let g = DropletGeometry::new(tau)?;
    for class in [SymmetryClass::Complex, SymmetryClass::Symplectic] {
        let model = MatrixModel::new(class, 60, 1, tau)?;
        let samples = sample_many(&model, 2024, 40)?;
        println!("{class:?}: {} eigenvalues per sample", samples[0].eigenvalues.len());
        println!("  fraction inside droplet {:.4}", ellipse_fraction(&samples, &g, 0.05));
        println!("  near-axis depletion {:.2}", near_axis_depletion(&samples, 0.05, (0.1, 0.3), (0.5, 2.5)));
        for bin in radial_density(&samples, &g, 6, 2.4) {
            println!("  r in [{:.1}, {:.1}): observed {:.4}, predicted {:.4}", bin.r_lo, bin.r_hi, bin.observed, bin.predicted);
        }
    }
    Ok(())
}
