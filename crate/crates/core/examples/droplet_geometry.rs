//! Shape of the limiting eigenvalue support and the obstacle function around it.

use wkl::geometry::{density_mu, droplet_classify, edge_points, omega, zoom_point, DropletGeometry};
use wkl::C64;

fn main() -> wkl::Result<()> {
    let tau = 0.5;
    let g = DropletGeometry::new(tau)?;
    let (lo, hi) = edge_points(tau);
    println!("tau = {tau}: support is an ellipse centred at {:.4}, semi-axes {:.4} x {:.4}", g.center, g.semi_axis_x, g.semi_axis_y);
    println!("real edges {lo:.4} and {hi:.4}");

    for z in [C64::new(1.0, 0.0), C64::new(0.2, 0.1), hi.into(), C64::new(3.0, 1.0)] {
        let loc = droplet_classify(z, &g, 1e-9);
        let rho = density_mu(z, tau).unwrap_or(0.0);
        println!("{z:>12}: {loc:?}, density {rho:.4}, omega {:.3e}", omega(z, tau)?);
    }

    for p in [C64::new(1.0, 0.3), C64::new(hi, 0.0)] {
        let zp = zoom_point(p, tau)?;
        println!("zoom at {p}: {:?}, normal {:.4}, delta {:.4}", zp.location, zp.normal, zp.delta);
    }
    Ok(())
}
