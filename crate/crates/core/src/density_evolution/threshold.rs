//! Family dispatch and bisection for the erasure threshold.

use super::{ara_de_run, ira_de_run, ldpc_de_run, AraState, DeConfig, Terminal, Trajectory};
use crate::degree_dist::{Ensemble, Family};
use crate::error::{Error, Result};

/// Bit erasure probability regarded as successful decoding during a search.
pub const CONVERGENCE_PB: f64 = 1e-8;
/// Iteration budget per probe.
pub const PROBE_MAX_ITER: usize = 50_000;
const MAX_PROBES: usize = 60;

/// A trajectory of whichever recursion the family uses.
#[derive(Clone, Debug)]
pub enum FamilyTrajectory {
    Scalar(Trajectory<f64>),
    Ara(Trajectory<AraState>),
}

impl FamilyTrajectory {
    pub fn iterations_to_target(&self) -> Option<usize> {
        match self {
            Self::Scalar(t) => t.iterations_to_target,
            Self::Ara(t) => t.iterations_to_target,
        }
    }

    pub fn terminal(&self) -> Terminal {
        match self {
            Self::Scalar(t) => t.terminal,
            Self::Ara(t) => t.terminal,
        }
    }

    pub fn pb_per_iter(&self) -> &[f64] {
        match self {
            Self::Scalar(t) => &t.pb_per_iter,
            Self::Ara(t) => &t.pb_per_iter,
        }
    }

    pub fn fixed_point_target(&self) -> Option<f64> {
        match self {
            Self::Scalar(t) => t.fixed_point_target,
            Self::Ara(t) => t.fixed_point_target,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Scalar(t) => t.len(),
            Self::Ara(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_csv(&self) -> String {
        match self {
            Self::Scalar(t) => t.to_csv(),
            Self::Ara(t) => t.to_csv(),
        }
    }
}

/// Runs the density evolution appropriate to the ensemble's family.
pub fn run_family(e: &Ensemble, cfg: &DeConfig) -> Result<FamilyTrajectory> {
    Ok(match e.family() {
        Family::Ldpc => FamilyTrajectory::Scalar(ldpc_de_run(e.lambda(), e.rho(), cfg)),
        Family::AraSystematic => FamilyTrajectory::Ara(ara_de_run(e, cfg)?),
        Family::IraSystematic | Family::IraNonsystematic => {
            FamilyTrajectory::Scalar(ira_de_run(e, cfg)?)
        }
    })
}

/// Whether density evolution reaches [`CONVERGENCE_PB`] within
/// [`PROBE_MAX_ITER`] iterations at erasure probability `p`.
pub fn converges(e: &Ensemble, p: f64) -> Result<bool> {
    let cfg = DeConfig::new(p, CONVERGENCE_PB, PROBE_MAX_ITER)?;
    Ok(run_family(e, &cfg)?.terminal() == Terminal::TargetReached)
}

/// Bisects on `p` until the bracket is narrower than `tol` and returns its
/// midpoint, so decoding converges at `p* - tol` and fails at `p* + tol`.
pub fn threshold_search(e: &Ensemble, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..MAX_PROBES {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if converges(e, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 {
        return Err(Error::NoThreshold);
    }
    Ok(0.5 * (lo + hi))
}
