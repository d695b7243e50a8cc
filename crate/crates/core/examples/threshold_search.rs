//! Erasure thresholds by bisection on density evolution.

use iterlab::degree_dist::{build_right_regular, right_regular_design_p, EdgeDist, Ensemble};
use iterlab::density_evolution::threshold_search;

fn main() -> iterlab::Result<()> {
    for (dv, dc) in [(3, 6), (4, 8), (3, 5)] {
        let e = Ensemble::ldpc(EdgeDist::regular(dv)?, EdgeDist::regular(dc)?);
        println!("({dv},{dc}): {:.6}", threshold_search(&e, 1e-7)?);
    }
    // convergence near the design point is too slow for the probe budget,
    // so the search lands a little below it
    let e = build_right_regular(6, 50)?;
    println!(
        "right-regular a = 6, D = 50: {:.6} (design point {:.6}, capacity {:.6})",
        threshold_search(&e, 1e-7)?,
        right_regular_design_p(6, 50)?,
        1.0 - e.design_rate()?
    );
    Ok(())
}
