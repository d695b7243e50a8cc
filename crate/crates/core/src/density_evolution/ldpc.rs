use super::{drive, DeConfig, Trajectory};
use crate::degree_dist::{EdgeDist, NodeDist};
use crate::error::{check_unit, Result};
use crate::numeric::inverse_monotone;

#[inline]
pub(crate) fn step(lambda: &EdgeDist, rho: &EdgeDist, p: f64, x: f64) -> f64 {
    p * lambda.at(1.0 - rho.at(1.0 - x))
}

#[inline]
pub(crate) fn bit_erasure(left: &NodeDist, rho: &EdgeDist, p: f64, x: f64) -> f64 {
    p * left.at(1.0 - rho.at(1.0 - x))
}

/// One flooding iteration: `x ↦ p λ(1 - ρ(1 - x))`.
pub fn ldpc_de_step(lambda: &EdgeDist, rho: &EdgeDist, p: f64, x: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("x", x)?;
    Ok(step(lambda, rho, p, x))
}

/// Bit erasure probability `p L(1 - ρ(1 - x))` given variable-to-check
/// erasure probability `x`.
pub fn ldpc_bit_erasure(left: &NodeDist, rho: &EdgeDist, p: f64, x: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("x", x)?;
    Ok(bit_erasure(left, rho, p, x))
}

/// Runs the LDPC recursion from `x^{(0)} = p`.
pub fn ldpc_de_run(lambda: &EdgeDist, rho: &EdgeDist, cfg: &DeConfig) -> Trajectory<f64> {
    let left = lambda.to_node();
    let p = cfg.p;
    let mut t = drive(
        cfg,
        p,
        p,
        |&x| step(lambda, rho, p, x),
        |&x| bit_erasure(&left, rho, p, x),
    );
    if cfg.target_pb <= p {
        t.fixed_point_target =
            inverse_monotone(|x| bit_erasure(&left, rho, p, x), cfg.target_pb, 0.0).ok();
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density_evolution::Terminal;

    fn reg36() -> (EdgeDist, EdgeDist) {
        (EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap())
    }

    #[test]
    fn step_values() {
        let (l, r) = reg36();
        // 0.4 (1 - 0.6^5)^2
        let expected = 0.4 * (1.0 - 0.6f64.powi(5)).powi(2);
        let got = ldpc_de_step(&l, &r, 0.4, 0.4).unwrap();
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.340_210_65).abs() < 1e-8);
        assert_eq!(ldpc_de_step(&l, &r, 0.4, 0.0).unwrap(), 0.0);
        assert_eq!(ldpc_de_step(&l, &r, 0.0, 0.7).unwrap(), 0.0);
        assert!(ldpc_de_step(&l, &r, 0.4, 1.2).is_err());
    }

    #[test]
    fn bit_erasure_values() {
        let (l, r) = reg36();
        let left = l.to_node();
        assert_eq!(ldpc_bit_erasure(&left, &r, 0.4, 0.0).unwrap(), 0.0);
        let got = ldpc_bit_erasure(&left, &r, 0.4, 0.4).unwrap();
        assert!((got - 0.4 * 0.92224f64.powi(3)).abs() < 1e-15);
        assert!((got - 0.313_755_87).abs() < 1e-8);
        assert_eq!(ldpc_bit_erasure(&left, &r, 0.0, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn runs_below_and_above_threshold() {
        let (l, r) = reg36();
        let below = ldpc_de_run(&l, &r, &DeConfig::new(0.40, 1e-6, 100_000).unwrap());
        assert_eq!(below.terminal, Terminal::TargetReached);
        assert_eq!(below.iterations_to_target, Some(below.len()));
        assert!(below.pb_per_iter.windows(2).all(|w| w[1] <= w[0]));

        let above = ldpc_de_run(&l, &r, &DeConfig::new(0.45, 1e-6, 100_000).unwrap());
        assert_eq!(above.terminal, Terminal::FixedPoint);
        assert!(above.iterations_to_target.is_none());
        assert!(*above.states.last().unwrap() > 0.3);

        let perfect = ldpc_de_run(&l, &r, &DeConfig::new(0.0, 1e-6, 10).unwrap());
        assert_eq!(perfect.iterations_to_target, Some(0));
        assert_eq!(perfect.len(), 1);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let (l, r) = reg36();
        let t = ldpc_de_run(&l, &r, &DeConfig::new(0.42, 1e-12, 5).unwrap());
        assert_eq!(t.terminal, Terminal::IterationCap);
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn stopping_point_solves_bit_erasure_equation() {
        let (l, r) = reg36();
        let t = ldpc_de_run(&l, &r, &DeConfig::new(0.4, 1e-3, 1000).unwrap());
        let x_star = t.fixed_point_target.unwrap();
        let pb = ldpc_bit_erasure(&l.to_node(), &r, 0.4, x_star).unwrap();
        assert!((pb - 1e-3).abs() < 1e-12);
    }
}
