use serde::Serialize;

use super::ara::require_ara;
use super::tilted::TiltedEnsemble;
use crate::degree_dist::{Ensemble, Family};
use crate::error::{check_unit, Result};

/// Small-erasure stability of the zero-erasure fixed point. `margin` is one
/// minus the slope of the recursion at zero, so `satisfied ⇔ margin ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stability {
    pub satisfied: bool,
    pub margin: f64,
}

impl Stability {
    fn from_margin(margin: f64) -> Self {
        Self {
            satisfied: margin >= 0.0,
            margin,
        }
    }
}

/// `ρ̃'(1) = ρ'(1) + 2p R'(1) / (1-p)`.
fn tilted_rho_slope(e: &Ensemble, p: f64) -> f64 {
    if p >= 1.0 {
        return f64::INFINITY;
    }
    e.rho().derivative_at_one() + 2.0 * p * e.right().derivative_at_one() / (1.0 - p)
}

pub fn stability_check(e: &Ensemble, p: f64) -> Result<Stability> {
    check_unit("p", p)?;
    let l2 = e.lambda().coeff(2);
    if l2 == 0.0 {
        return Ok(Stability::from_margin(1.0));
    }
    let slope = match e.family() {
        Family::Ldpc => p * l2 * e.rho().derivative_at_one(),
        Family::AraSystematic => p * p * l2 * tilted_rho_slope(e, p),
        Family::IraSystematic => p * l2 * tilted_rho_slope(e, p),
        Family::IraNonsystematic => l2 * tilted_rho_slope(e, p),
    };
    Ok(Stability::from_margin(1.0 - slope))
}

/// ARA margin computed on the reduced ensemble, `1 - p² λ_2 ρ̃'(1)`, with
/// `ρ̃'` differentiated directly rather than through the closed form.
pub fn ara_stability_margin_tilted(e: &Ensemble, p: f64) -> Result<f64> {
    require_ara(e)?;
    let l2 = e.lambda().coeff(2);
    if l2 == 0.0 {
        return Ok(1.0);
    }
    let t = TiltedEnsemble::new(e, p)?;
    Ok(1.0 - t.lambda_t_slope_at_zero() * t.rho_t_derivative(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_dist::EdgeDist;

    #[test]
    fn no_degree_two_is_always_stable() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        for p in [0.0, 0.5, 1.0] {
            assert_eq!(stability_check(&e, p).unwrap(), Stability::from_margin(1.0));
        }
    }

    #[test]
    fn ldpc_boundary() {
        let e = Ensemble::ldpc(
            EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap(),
            EdgeDist::regular(6).unwrap(),
        );
        let s = stability_check(&e, 0.4).unwrap();
        assert!(s.margin.abs() < 1e-15);
        assert!(!stability_check(&e, 0.41).unwrap().satisfied);
    }

    #[test]
    fn ara_closed_form_matches_tilted() {
        let e = Ensemble::ara(
            EdgeDist::from_pairs(&[(2, 0.4), (3, 0.3), (5, 0.3)]).unwrap(),
            EdgeDist::from_pairs(&[(1, 0.1), (3, 0.6), (5, 0.3)]).unwrap(),
        );
        for p in [0.1, 0.3, 0.6, 0.9] {
            let a = stability_check(&e, p).unwrap().margin;
            let b = ara_stability_margin_tilted(&e, p).unwrap();
            assert!((a - b).abs() < 1e-10, "p = {p}: {a} vs {b}");
        }
    }
}
