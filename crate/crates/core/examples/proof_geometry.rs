//! The staircase between the decoding curves, cut into triangles.

use iterlab::bounds::{area_quadrature, family_area, ldpc_triangles};
use iterlab::degree_dist::{EdgeDist, Ensemble};
use iterlab::density_evolution::DeConfig;

fn main() -> iterlab::Result<()> {
    let e = Ensemble::ldpc(EdgeDist::from_pairs(&[(2, 0.25), (3, 0.75)])?, EdgeDist::regular(6)?);
    let p = 0.3;
    println!(
        "area between curves: {:.10} closed form, {:.10} by quadrature",
        family_area(&e, p)?,
        area_quadrature(&e, p, 1e-12)?
    );
    let d = ldpc_triangles(&e, &DeConfig::new(p, 1e-6, 100_000)?)?;
    let used: f64 = d.a_areas.iter().zip(&d.b_areas).map(|(a, b)| a + b).sum();
    println!(
        "{} steps, triangles cover {:.6} of {:.6}; prefix inequality {}, Cauchy-Schwarz {}",
        d.v_lengths.len(),
        used,
        d.total_area,
        d.prefix_inequality_holds(),
        d.cauchy_schwarz_holds()
    );
    Ok(())
}
