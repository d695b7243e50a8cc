//! Density evolution for the (3,6) ensemble on both sides of its threshold.

use iterlab::degree_dist::{EdgeDist, Ensemble};
use iterlab::density_evolution::{ldpc_de_run, stability_check, DeConfig};

fn main() -> iterlab::Result<()> {
    let e = Ensemble::ldpc(EdgeDist::regular(3)?, EdgeDist::regular(6)?);
    for p in [0.40, 0.42, 0.44] {
        let t = ldpc_de_run(e.lambda(), e.rho(), &DeConfig::new(p, 1e-6, 10_000)?);
        println!(
            "p = {p}: {} after {} iterations, final P_b = {:.3e}, stability margin {:.3}",
            t.terminal.name(),
            t.len(),
            t.last_pb(),
            stability_check(&e, p)?.margin
        );
    }
    Ok(())
}
