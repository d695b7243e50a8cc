//! IRA ensembles. Absorbing the accumulator chain into the check nodes gives an
//! LDPC-like recursion in which `ρ` is replaced by its tilted form `ρ̃`. The
//! information bits are transmitted in the systematic case and punctured
//! otherwise.

use super::tilted::TiltedEnsemble;
use super::{drive, DeConfig, Trajectory};
use crate::degree_dist::{Ensemble, Family};
use crate::error::{check_unit, Error, Result};
use crate::numeric::inverse_monotone;

fn require_ira(e: &Ensemble) -> Result<f64> {
    match e.family() {
        Family::IraSystematic => Ok(1.0),
        Family::IraNonsystematic => Ok(0.0),
        other => Err(Error::WrongFamily {
            expected: "ira",
            found: other.name(),
        }),
    }
}

/// Channel factor applied at the information bits: `p` if they are sent,
/// 1 if they are punctured.
fn info_factor(e: &Ensemble, p: f64) -> f64 {
    if e.family() == Family::IraSystematic {
        p
    } else {
        1.0
    }
}

/// One iteration, `x ↦ q λ(1 - ρ̃(1 - x))` with `q = p` (systematic) or 1.
pub fn ira_de_step(e: &Ensemble, p: f64, x: f64) -> Result<f64> {
    require_ira(e)?;
    check_unit("x", x)?;
    let t = TiltedEnsemble::new(e, p)?;
    Ok(info_factor(e, p) * e.lambda().at(1.0 - t.rho_t(1.0 - x)))
}

/// Information-bit erasure probability `q L(1 - ρ̃(1 - x))`.
pub fn ira_bit_erasure(e: &Ensemble, p: f64, x: f64) -> Result<f64> {
    require_ira(e)?;
    check_unit("x", x)?;
    let t = TiltedEnsemble::new(e, p)?;
    Ok(info_factor(e, p) * e.left().at(1.0 - t.rho_t(1.0 - x)))
}

/// Runs the recursion from `x = p` (systematic) or `x = 1` (non-systematic).
pub fn ira_de_run(e: &Ensemble, cfg: &DeConfig) -> Result<Trajectory<f64>> {
    require_ira(e)?;
    let p = cfg.p;
    let t = TiltedEnsemble::new(e, p)?;
    let q = info_factor(e, p);
    let pb = |x: &f64| q * e.left().at(1.0 - t.rho_t(1.0 - x));
    let mut traj = drive(
        cfg,
        q,
        q,
        |&x| q * e.lambda().at(1.0 - t.rho_t(1.0 - x)),
        pb,
    );
    if q > 0.0 && cfg.target_pb <= q {
        traj.fixed_point_target = inverse_monotone(|x| pb(&x), cfg.target_pb, 0.0).ok();
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_dist::EdgeDist;
    use crate::density_evolution::Terminal;

    fn ira(family: Family) -> Ensemble {
        Ensemble::new(
            family,
            EdgeDist::from_pairs(&[(2, 0.2), (3, 0.5), (8, 0.3)]).unwrap(),
            EdgeDist::from_pairs(&[(1, 0.2), (3, 0.8)]).unwrap(),
        )
    }

    #[test]
    fn nonsystematic_stuck_at_one() {
        let e = Ensemble::new(
            Family::IraNonsystematic,
            EdgeDist::regular(3).unwrap(),
            EdgeDist::regular(3).unwrap(),
        );
        assert!((ira_de_step(&e, 0.3, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn systematic_perfect_channel() {
        let e = ira(Family::IraSystematic);
        assert_eq!(ira_de_step(&e, 0.0, 0.7).unwrap(), 0.0);
        let t = ira_de_run(&e, &DeConfig::new(0.0, 1e-9, 10).unwrap()).unwrap();
        assert_eq!(t.iterations_to_target, Some(0));
    }

    #[test]
    fn hand_value_for_cycle_ensemble() {
        // λ = ρ = x, R = x², p = 0.3, x = 0.5:
        // ρ̃(0.5) = (0.7 / (1 - 0.3 · 0.25))² · 0.5
        let e = Ensemble::new(
            Family::IraSystematic,
            EdgeDist::regular(2).unwrap(),
            EdgeDist::regular(2).unwrap(),
        );
        let rt = (0.7f64 / 0.925).powi(2) * 0.5;
        let got = ira_de_step(&e, 0.3, 0.5).unwrap();
        assert!((got - 0.3 * (1.0 - rt)).abs() < 1e-15);
    }

    #[test]
    fn step_is_monotone_and_bounded() {
        let e = ira(Family::IraSystematic);
        let mut prev = 0.0;
        for k in 0..=100 {
            let y = ira_de_step(&e, 0.35, k as f64 / 100.0).unwrap();
            assert!(y >= prev && y <= 0.35);
            prev = y;
        }
    }

    #[test]
    fn runs_below_threshold() {
        for fam in [Family::IraSystematic, Family::IraNonsystematic] {
            let e = ira(fam);
            let t = ira_de_run(&e, &DeConfig::new(0.1, 1e-8, 10_000).unwrap()).unwrap();
            assert_eq!(t.terminal, Terminal::TargetReached, "{fam}");
            assert!(t.pb_per_iter.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn rejects_ldpc() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(ira_de_step(&e, 0.3, 0.5).is_err());
    }
}
