//! Iterations and complexity as the gap to capacity shrinks.

use iterlab::bounds::{verify_bound, VerifyStatus};
use iterlab::degree_dist::{build_right_regular, mix_degree_two, Ensemble};
use iterlab::density_evolution::DeConfig;

fn main() -> iterlab::Result<()> {
    let base = build_right_regular(6, 50)?;
    let e = Ensemble::ldpc(mix_degree_two(base.lambda(), 0.002)?, base.rho().clone());
    let rate = e.design_rate()?;
    let complexity = e.graphical_complexity()?;
    println!("{:>7} {:>8} {:>6} {:>8} {:>7} {:>7}", "eps", "p", "l", "bound", "l*eps", "Delta");
    for eps in [0.1, 0.05, 0.025] {
        let p = 1.0 - rate / (1.0 - eps);
        let r = verify_bound(&e, &DeConfig::new(p, 1e-6, 1_000_000)?)?;
        let l = r.measured_l.unwrap_or(0);
        println!(
            "{eps:>7} {p:>8.5} {l:>6} {:>8.2} {:>7.2} {complexity:>7.3}{}",
            r.bound_l,
            l as f64 * eps,
            if r.status == VerifyStatus::Violated { "  VIOLATED" } else { "" }
        );
    }
    Ok(())
}
