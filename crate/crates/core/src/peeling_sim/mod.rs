//! Finite-length validation: sampled Tanner graphs, BEC transmission, erasure
//! decoding and comparison against density evolution.

mod decode;
mod graph;

pub use decode::{bec_transmit, flooding_decode, DecodeOutcome};
pub use graph::{
    sample_ara_graph, sample_graph, sample_ira_graph, sample_ldpc_graph, EdgeClass, Layer,
    TannerGraph,
};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::degree_dist::{Ensemble, Family};
use crate::density_evolution::Terminal;
use crate::error::{check_unit, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimConfig {
    /// Number of counted bits per graph: code bits for LDPC, information
    /// bits for IRA and ARA.
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub max_iter: usize,
    pub target_pb: f64,
}

impl SimConfig {
    pub fn new(n: usize, p: f64, trials: usize, master_seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            p,
            trials,
            master_seed,
            max_iter: 1000,
            target_pb: 0.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("p", self.p)?;
        check_unit("target_pb", self.target_pb)?;
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.n < 10 {
            return Err(Error::InvalidParameter(format!("n = {} is below 10", self.n)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// One decoding trial on a freshly sampled graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub edges: usize,
    /// Fraction of counted bits erased before decoding.
    pub initial_fraction: f64,
    /// `residual_fraction[l]` after iteration `l`.
    pub residual_fraction: Vec<f64>,
    pub iterations_to_target: Option<usize>,
    pub terminal: Terminal,
    pub message_updates: u64,
}

impl TrialRecord {
    pub fn iterations(&self) -> usize {
        self.residual_fraction.len()
    }

    /// Residual after iteration `l`; a finished run keeps its last value.
    pub fn residual_at(&self, l: usize) -> f64 {
        self.residual_fraction
            .get(l)
            .or(self.residual_fraction.last())
            .copied()
            .unwrap_or(self.initial_fraction)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub family: Family,
    pub n: usize,
    pub p: f64,
    pub trials: Vec<TrialRecord>,
    /// Mean residual fraction per iteration across trials.
    pub mean_residual: Vec<f64>,
    /// Sample standard deviation per iteration.
    pub std_residual: Vec<f64>,
    pub mean_iterations: f64,
}

impl SimResult {
    /// Aggregates trials; runs that stopped early contribute their final
    /// residual to later iterations.
    pub fn from_trials(family: Family, n: usize, p: f64, trials: Vec<TrialRecord>) -> Result<Self> {
        if trials.is_empty() {
            return Err(Error::InvalidParameter("no trials to aggregate".into()));
        }
        let horizon = trials.iter().map(TrialRecord::iterations).max().unwrap_or(0);
        let k = trials.len() as f64;
        let mut mean_residual = Vec::with_capacity(horizon);
        let mut std_residual = Vec::with_capacity(horizon);
        for l in 0..horizon {
            let mean = trials.iter().map(|t| t.residual_at(l)).sum::<f64>() / k;
            let var = if trials.len() > 1 {
                trials.iter().map(|t| (t.residual_at(l) - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            mean_residual.push(mean);
            std_residual.push(var.sqrt());
        }
        let mean_iterations = trials.iter().map(|t| t.iterations() as f64).sum::<f64>() / k;
        Ok(Self {
            family,
            n,
            p,
            trials,
            mean_residual,
            std_residual,
            mean_iterations,
        })
    }

    /// CSV `trial,l,residual_fraction`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,l,residual_fraction\n");
        for t in &self.trials {
            for (l, r) in t.residual_fraction.iter().enumerate() {
                out.push_str(&format!("{},{l},{r:.16e}\n", t.trial));
            }
        }
        out
    }
}

fn trial_rng(master_seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(e: &Ensemble, cfg: &SimConfig, trial: usize) -> Result<TrialRecord> {
    let mut rng = trial_rng(cfg.master_seed, trial);
    let graph = sample_graph(e, cfg.n, rng.next_u64())?;
    let erased = bec_transmit(&graph, cfg.p, &mut rng);
    let out = flooding_decode(&graph, &erased, cfg.max_iter, cfg.target_pb);
    let n = graph.n_counted() as f64;
    Ok(TrialRecord {
        trial,
        edges: graph.n_edges(),
        initial_fraction: out.initial_residual as f64 / n,
        residual_fraction: out.residual.iter().map(|&r| r as f64 / n).collect(),
        iterations_to_target: out.iterations_to_target,
        terminal: out.terminal,
        message_updates: out.message_updates,
    })
}

/// Runs `cfg.trials` independent trials in parallel. Trial `k` draws from
/// stream `k` of a generator keyed by the master seed, so the result does not
/// depend on scheduling.
pub fn simulate(e: &Ensemble, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|k| run_trial(e, cfg, k))
        .collect::<Result<Vec<_>>>()?;
    SimResult::from_trials(e.family(), cfg.n, cfg.p, trials)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub l: usize,
    pub sim_mean: f64,
    /// Half-width of the normal 95% confidence interval of the mean.
    pub ci_half_width: f64,
    pub de_pb: f64,
    pub deviation: f64,
    /// The whole confidence interval lies within `tolerance` of the DE value.
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub trials: usize,
    pub tolerance: f64,
    pub rows: Vec<ConcentrationRow>,
    /// Iterations whose row is not `within`.
    pub flagged: Vec<usize>,
    pub fraction_within: f64,
    pub max_deviation: f64,
}

/// Compares the per-iteration mean residual with density evolution over the
/// first `iterations` iterations. `de_pb[l]` is the DE bit erasure probability
/// after iteration `l`; past its end the last value is reused.
pub fn concentration_report(
    sim: &SimResult,
    de_pb: &[f64],
    iterations: usize,
    tolerance: f64,
) -> Result<ConcentrationReport> {
    if sim.trials.is_empty() {
        return Err(Error::InvalidParameter("simulation has no trials".into()));
    }
    if de_pb.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let k = sim.trials.len() as f64;
    let rows: Vec<ConcentrationRow> = (0..iterations)
        .map(|l| {
            let sim_mean = sim.trials.iter().map(|t| t.residual_at(l)).sum::<f64>() / k;
            let sd = sim.std_residual.get(l).or(sim.std_residual.last()).copied().unwrap_or(0.0);
            let ci_half_width = 1.96 * sd / k.sqrt();
            let de = de_pb.get(l).or(de_pb.last()).copied().unwrap_or(0.0);
            let deviation = (sim_mean - de).abs();
            ConcentrationRow {
                l,
                sim_mean,
                ci_half_width,
                de_pb: de,
                deviation,
                within: deviation + ci_half_width <= tolerance,
            }
        })
        .collect();
    let flagged: Vec<usize> = rows.iter().filter(|r| !r.within).map(|r| r.l).collect();
    let fraction_within = if rows.is_empty() {
        1.0
    } else {
        1.0 - flagged.len() as f64 / rows.len() as f64
    };
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(ConcentrationReport {
        n: sim.n,
        trials: sim.trials.len(),
        tolerance,
        rows,
        flagged,
        fraction_within,
        max_deviation,
    })
}
