//! Systematic ARA ensembles: the six-message recursion, the one-dimensional
//! tilted recursion obtained by graph reduction, and the turbo-like schedule
//! that alternates between the outer and inner constituent decoders.

use super::tilted::TiltedEnsemble;
use super::{drive, DeConfig, DeState, Trajectory};
use crate::degree_dist::{Ensemble, Family};
use crate::error::{check_unit, Error, Result};
use crate::numeric::inverse_monotone;

/// Erasure probabilities of the six message types, in schedule order.
///
/// `x0`: systematic bit to repetition node, `x1`: repetition node to the
/// interleaver, `x2`: upper accumulator check to punctured bit, `x3`: punctured
/// bit to the upper accumulator chain, `x4`: lower check to the interleaver,
/// `x5`: repetition node back to the systematic bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AraState(pub [f64; 6]);

impl AraState {
    pub const ONES: AraState = AraState([1.0; 6]);

    pub fn x(&self, i: usize) -> f64 {
        self.0[i]
    }
}

impl DeState for AraState {
    fn sup_distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn columns() -> &'static [&'static str] {
        &["x0", "x1", "x2", "x3", "x4", "x5"]
    }

    fn values(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

pub(crate) fn require_ara(e: &Ensemble) -> Result<()> {
    if e.family() == Family::AraSystematic {
        Ok(())
    } else {
        Err(Error::WrongFamily {
            expected: Family::AraSystematic.name(),
            found: e.family().name(),
        })
    }
}

fn step(e: &Ensemble, p: f64, s: &AraState) -> AraState {
    let [_, _, _, x3_prev, x4_prev, x5_prev] = s.0;
    let x0 = 1.0 - (1.0 - x5_prev) * (1.0 - p);
    let x1 = x0 * x0 * e.lambda().at(x4_prev);
    let x2 = 1.0 - e.right().at(1.0 - x1) * (1.0 - x3_prev);
    let x3 = p * x2;
    let x4 = 1.0 - (1.0 - x3) * (1.0 - x3) * e.rho().at(1.0 - x1);
    let x5 = x0 * e.left().at(x4);
    AraState([x0, x1, x2, x3, x4, x5])
}

#[inline]
fn bit_erasure(p: f64, x5: f64) -> f64 {
    p * (1.0 - (1.0 - x5) * (1.0 - x5))
}

/// One decoding iteration of the six-message recursion.
pub fn ara_de_step(s: &AraState, e: &Ensemble, p: f64) -> Result<AraState> {
    require_ara(e)?;
    check_unit("p", p)?;
    for &v in &s.0 {
        check_unit("state", v)?;
    }
    Ok(step(e, p, s))
}

/// Erasure probability of a systematic bit: `p [1 - (1 - x5)²]`.
pub fn ara_bit_erasure(s: &AraState, p: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("x5", s.0[5])?;
    Ok(bit_erasure(p, s.0[5]))
}

/// Inverts `L̃(1 - ρ̃(1 - x)) = 1 - √(1 - P_b / p)` for the stopping point.
fn stopping_point(t: &TiltedEnsemble, target: f64) -> Option<f64> {
    let p = t.p();
    if p <= 0.0 || target > p {
        return None;
    }
    let y = 1.0 - (1.0 - target / p).sqrt();
    inverse_monotone(|x| t.left_t(1.0 - t.rho_t(1.0 - x)), y, 0.0).ok()
}

/// Runs the recursion from the state in which every message is erased.
pub fn ara_de_run(e: &Ensemble, cfg: &DeConfig) -> Result<Trajectory<AraState>> {
    require_ara(e)?;
    let p = cfg.p;
    let first = step(e, p, &AraState::ONES);
    let mut t = drive(
        cfg,
        p,
        first,
        |s| step(e, p, s),
        |s| bit_erasure(p, s.0[5]),
    );
    t.fixed_point_target = stopping_point(&TiltedEnsemble::new(e, p)?, cfg.target_pb);
    Ok(t)
}

/// Runs `x ↦ λ̃(1 - ρ̃(1 - x))` from `x = 1`.
pub fn tilted_recursion_run(e: &Ensemble, cfg: &DeConfig) -> Result<Trajectory<f64>> {
    require_ara(e)?;
    let t = TiltedEnsemble::new(e, cfg.p)?;
    let p = cfg.p;
    let pb = |x: &f64| bit_erasure(p, t.left_t(1.0 - t.rho_t(1.0 - x)));
    let mut traj = drive(cfg, p, 1.0, |&x| t.lambda_t(1.0 - t.rho_t(1.0 - x)), pb);
    traj.fixed_point_target = stopping_point(&t, cfg.target_pb);
    Ok(traj)
}

/// Fixed point of the outer (repetition plus systematic) decoder seen by the
/// punctured bits, given incoming erasure probability `x`.
fn outer_to_punctured(e: &Ensemble, p: f64, x: f64) -> f64 {
    let den = 1.0 - (1.0 - p) * e.left().at(x);
    if den <= 0.0 {
        1.0
    } else {
        p / den
    }
}

/// Fixed point of the outer decoder for the systematic bits.
fn outer_to_systematic(e: &Ensemble, p: f64, x: f64) -> f64 {
    let l = e.left().at(x);
    let den = 1.0 - (1.0 - p) * l;
    if den <= 0.0 {
        0.0
    } else {
        p * l / den
    }
}

/// Fixed point of the inner accumulator chain for the punctured bits.
fn inner_to_punctured(e: &Ensemble, p: f64, x: f64) -> f64 {
    let r = e.right().at(1.0 - x);
    let den = 1.0 - p * r;
    if den <= 0.0 {
        0.0
    } else {
        p * (1.0 - r) / den
    }
}

/// Turbo-like schedule: each half-iteration runs one constituent decoder to
/// its fixed point. The recorded state is the erasure probability `x0` of
/// messages from the outer to the inner decoder.
pub fn turbo_de_run(e: &Ensemble, cfg: &DeConfig) -> Result<Trajectory<f64>> {
    require_ara(e)?;
    let p = cfg.p;
    let outer = |x1: f64| {
        let a = outer_to_punctured(e, p, x1);
        a * a * e.lambda().at(x1)
    };
    let inner = |x0: f64| {
        let b = 1.0 - inner_to_punctured(e, p, x0);
        1.0 - b * b * e.rho().at(1.0 - x0)
    };
    let pb = |x0: &f64| bit_erasure(p, outer_to_systematic(e, p, inner(*x0)));
    let mut traj = drive(cfg, p, outer(1.0), |&x0| outer(inner(x0)), pb);
    traj.fixed_point_target = stopping_point(&TiltedEnsemble::new(e, p)?, cfg.target_pb);
    Ok(traj)
}
