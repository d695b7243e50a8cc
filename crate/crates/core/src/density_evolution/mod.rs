//! Infinite-block-length density evolution on the binary erasure channel.
//!
//! Every recursion counts iterations from zero. A run stops at the smallest
//! `l` with `P_b^{(l-1)} <= target`, where `P_b^{(-1)}` is the bit erasure
//! probability before decoding (`p` for transmitted bits, 1 for punctured
//! information bits).

mod ara;
mod curves;
mod ira;
mod ldpc;
mod stability;
mod threshold;
mod tilted;

pub use ara::{
    ara_bit_erasure, ara_de_run, ara_de_step, tilted_recursion_run, turbo_de_run, AraState,
};
pub use curves::{condition_curves, curves_predict_success, CurvePoint};
pub use ira::{ira_bit_erasure, ira_de_run, ira_de_step};
pub use ldpc::{ldpc_bit_erasure, ldpc_de_run, ldpc_de_step};
pub use stability::{ara_stability_margin_tilted, stability_check, Stability};
pub use threshold::{
    converges, run_family, threshold_search, FamilyTrajectory, CONVERGENCE_PB, PROBE_MAX_ITER,
};
pub use tilted::TiltedEnsemble;

use serde::Serialize;

use crate::error::{check_unit, Error, Result};

pub const DEFAULT_FP_TOL: f64 = 1e-12;
/// Consecutive sub-tolerance steps required to declare a fixed point.
pub const FIXED_POINT_STREAK: usize = 3;

/// Parameters of one density-evolution run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeConfig {
    pub p: f64,
    pub target_pb: f64,
    pub max_iter: usize,
    pub fp_tol: f64,
}

impl DeConfig {
    pub fn new(p: f64, target_pb: f64, max_iter: usize) -> Result<Self> {
        Self::with_tolerance(p, target_pb, max_iter, DEFAULT_FP_TOL)
    }

    pub fn with_tolerance(p: f64, target_pb: f64, max_iter: usize, fp_tol: f64) -> Result<Self> {
        check_unit("p", p)?;
        check_unit("target_pb", target_pb)?;
        if max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        if !(fp_tol > 0.0) {
            return Err(Error::InvalidParameter("fp_tol must be positive".into()));
        }
        Ok(Self {
            p,
            target_pb,
            max_iter,
            fp_tol,
        })
    }
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    TargetReached,
    FixedPoint,
    IterationCap,
}

impl Terminal {
    pub fn name(self) -> &'static str {
        match self {
            Terminal::TargetReached => "target_reached",
            Terminal::FixedPoint => "fixed_point",
            Terminal::IterationCap => "iteration_cap",
        }
    }
}

/// A state tracked by density evolution.
pub trait DeState: Clone {
    fn sup_distance(&self, other: &Self) -> f64;
    fn columns() -> &'static [&'static str];
    fn values(&self) -> Vec<f64>;
}

impl DeState for f64 {
    fn sup_distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }

    fn columns() -> &'static [&'static str] {
        &["x"]
    }

    fn values(&self) -> Vec<f64> {
        vec![*self]
    }
}

/// Per-iteration record of a density-evolution run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<S> {
    /// `states[l]` is the state after iteration `l`.
    pub states: Vec<S>,
    /// `pb_per_iter[l]` is `P_b^{(l)}`.
    pub pb_per_iter: Vec<f64>,
    /// Bit erasure probability before the first iteration.
    pub initial_pb: f64,
    pub iterations_to_target: Option<usize>,
    pub terminal: Terminal,
    /// Solution `x*` of the stopping equation, when it has one in `[0, 1]`.
    pub fixed_point_target: Option<f64>,
}

impl<S: DeState> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last_pb(&self) -> f64 {
        self.pb_per_iter.last().copied().unwrap_or(self.initial_pb)
    }

    /// CSV with columns `l, <state columns>, pb` at 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l");
        for c in S::columns() {
            out.push(',');
            out.push_str(c);
        }
        out.push_str(",pb\n");
        for (l, (s, pb)) in self.states.iter().zip(&self.pb_per_iter).enumerate() {
            out.push_str(&l.to_string());
            for v in s.values() {
                out.push_str(&format!(",{v:.16e}"));
            }
            out.push_str(&format!(",{pb:.16e}\n"));
        }
        out
    }
}

/// Shared iteration loop. `first` is the state at `l = 0`.
pub(crate) fn drive<S, F, P>(
    cfg: &DeConfig,
    initial_pb: f64,
    first: S,
    mut step: F,
    bit_erasure: P,
) -> Trajectory<S>
where
    S: DeState,
    F: FnMut(&S) -> S,
    P: Fn(&S) -> f64,
{
    let mut states = vec![first];
    let mut pbs = vec![bit_erasure(&states[0])];
    if initial_pb <= cfg.target_pb {
        return Trajectory {
            states,
            pb_per_iter: pbs,
            initial_pb,
            iterations_to_target: Some(0),
            terminal: Terminal::TargetReached,
            fixed_point_target: None,
        };
    }
    let mut calm = 0;
    let (iterations_to_target, terminal) = loop {
        let l = states.len() - 1;
        if pbs[l] <= cfg.target_pb {
            break (Some(l + 1), Terminal::TargetReached);
        }
        if calm >= FIXED_POINT_STREAK {
            break (None, Terminal::FixedPoint);
        }
        if states.len() >= cfg.max_iter {
            break (None, Terminal::IterationCap);
        }
        let next = step(&states[l]);
        if next.sup_distance(&states[l]) < cfg.fp_tol {
            calm += 1;
        } else {
            calm = 0;
        }
        pbs.push(bit_erasure(&next));
        states.push(next);
    };
    Trajectory {
        states,
        pb_per_iter: pbs,
        initial_pb,
        iterations_to_target,
        terminal,
        fixed_point_target: None,
    }
}
