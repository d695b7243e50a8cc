//! Lower bounds on the number of iterations needed to reach a target bit
//! erasure probability, the area identities behind them, and the triangle
//! construction that turns the area identity into an iteration count.

use serde::{Deserialize, Serialize};

use crate::degree_dist::{Channel, Ensemble, Family};
use crate::density_evolution::{
    ldpc_de_run, run_family, CurvePoint, tilted_recursion_run, turbo_de_run, DeConfig,
    TiltedEnsemble, Terminal, Trajectory,
};
use crate::error::{check_unit, Error, Result};
use crate::numeric::{integrate, inverse_clamped};

/// Report schema version for JSON and CSV records.
pub const SCHEMA_VERSION: u32 = 1;

/// Slack allowed when comparing accumulated floating-point sums against
/// closed forms.
const GEOMETRY_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub epsilon: f64,
    pub p: f64,
    pub pb: f64,
    pub l2: f64,
}

impl BoundInput {
    pub fn new(epsilon: f64, p: f64, pb: f64, l2: f64) -> Result<Self> {
        let b = Self { epsilon, p, pb, l2 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("epsilon", self.epsilon)?;
        check_unit("p", self.p)?;
        check_unit("pb", self.pb)?;
        check_unit("l2", self.l2)?;
        if self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub value: f64,
    pub applicable: bool,
    pub precondition: &'static str,
    pub inputs: BoundInput,
}

impl BoundResult {
    fn new(inputs: BoundInput, precondition: &'static str, value: Option<f64>) -> Self {
        match value {
            Some(v) => Self {
                value: v.max(0.0),
                applicable: true,
                precondition,
                inputs,
            },
            None => Self {
                value: 0.0,
                applicable: false,
                precondition,
                inputs,
            },
        }
    }
}

/// LDPC: `l ≥ (2/(1-p)) (√(p L_2) - √P_b)² / ε` when `P_b < p L_2`.
pub fn ldpc_bound(b: BoundInput) -> Result<BoundResult> {
    b.validate()?;
    if b.p >= 1.0 {
        return Err(Error::InvalidParameter("bound undefined at p = 1".into()));
    }
    let pl2 = b.p * b.l2;
    let value = (b.pb < pl2)
        .then(|| 2.0 / (1.0 - b.p) * (pl2.sqrt() - b.pb.sqrt()).powi(2) / b.epsilon);
    Ok(BoundResult::new(b, "pb < p*l2", value))
}

/// `1 - √(1 - P_b/p)`, the erasure probability seen on the reduced graph.
fn ara_reduced_pb(p: f64, pb: f64) -> f64 {
    1.0 - (1.0 - pb / p).max(0.0).sqrt()
}

/// Systematic ARA:
/// `l ≥ 2p(1-ε) (√(p L_2) - √(1 - √(1 - P_b/p)))² / ε` when the reduced
/// erasure probability is below `p L_2`.
pub fn ara_bound(b: BoundInput) -> Result<BoundResult> {
    b.validate()?;
    if b.pb > b.p {
        return Err(Error::InvalidParameter(format!(
            "pb = {} exceeds p = {}",
            b.pb, b.p
        )));
    }
    const TAG: &str = "1-sqrt(1-pb/p) < p*l2";
    if b.p == 0.0 {
        return Ok(BoundResult::new(b, TAG, None));
    }
    let pl2 = b.p * b.l2;
    let y = ara_reduced_pb(b.p, b.pb);
    let value = (y < pl2)
        .then(|| 2.0 * b.p * (1.0 - b.epsilon) * (pl2.sqrt() - y.sqrt()).powi(2) / b.epsilon);
    Ok(BoundResult::new(b, TAG, value))
}

/// IRA. Systematic: `2(1-ε)(√(p L_2) - √P_b)² / ε` when `P_b < p L_2`;
/// non-systematic: `2(1-ε)(√L_2 - √P_b)² / ε` when `P_b < L_2`.
pub fn ira_bound(b: BoundInput, systematic: bool) -> Result<BoundResult> {
    b.validate()?;
    let (reach, tag) = if systematic {
        (b.p * b.l2, "pb < p*l2")
    } else {
        (b.l2, "pb < l2")
    };
    let value =
        (b.pb < reach).then(|| 2.0 * (1.0 - b.epsilon) * (reach.sqrt() - b.pb.sqrt()).powi(2) / b.epsilon);
    Ok(BoundResult::new(b, tag, value))
}

/// The ARA bound also holds for the turbo-like schedule; this is
/// [`ara_bound`] under the name used in turbo-schedule reports.
pub fn turbo_bound_alias(b: BoundInput) -> Result<BoundResult> {
    ara_bound(b)
}

/// The bound that applies to `family`.
pub fn family_bound(family: Family, b: BoundInput) -> Result<BoundResult> {
    match family {
        Family::Ldpc => ldpc_bound(b),
        Family::AraSystematic => ara_bound(b),
        Family::IraSystematic => ira_bound(b, true),
        Family::IraNonsystematic => ira_bound(b, false),
    }
}

/// `P_b → 0` limit of [`ldpc_bound`]: `2p L_2 / ((1-p) ε)`.
pub fn ldpc_bound_limit(epsilon: f64, p: f64, l2: f64) -> f64 {
    2.0 * p * l2 / ((1.0 - p) * epsilon)
}

/// `P_b → 0` limit of [`ara_bound`]: `2p² (1-ε) L_2 / ε`.
pub fn ara_bound_limit(epsilon: f64, p: f64, l2: f64) -> f64 {
    2.0 * p * p * (1.0 - epsilon) * l2 / epsilon
}

/// `P_b → 0` limit of [`ira_bound`].
pub fn ira_bound_limit(epsilon: f64, p: f64, l2: f64, systematic: bool) -> f64 {
    let reach = if systematic { p * l2 } else { l2 };
    2.0 * (1.0 - epsilon) * reach / epsilon
}

/// Smallest `P_b` consistent with the LDPC bound after `l` iterations:
/// `(√(p L_2) - √(ε (1-p) l / 2))²`, or 0 once `l` passes the `P_b → 0` limit.
pub fn pb_floor(l: usize, epsilon: f64, p: f64, l2: f64) -> Result<f64> {
    BoundInput::new(epsilon, p, 0.0, l2)?;
    let reach = (p * l2).sqrt();
    let spent = (epsilon * (1.0 - p) * l as f64 / 2.0).sqrt();
    Ok(if spent >= reach {
        0.0
    } else {
        (reach - spent).powi(2)
    })
}

/// `1 - √(x / L_2)`, a lower bound on `1 - L^{-1}(x)` for any node-perspective
/// distribution whose degree-2 fraction is `L_2`.
pub fn inv_l_lower_bound(x: f64, l2: f64) -> Result<f64> {
    check_unit("x", x)?;
    check_unit("l2", l2)?;
    if l2 == 0.0 {
        return Err(Error::InvalidParameter("l2 must be positive".into()));
    }
    Ok(1.0 - (x / l2).sqrt())
}

fn require(e: &Ensemble, family: Family) -> Result<()> {
    if e.family() == family {
        Ok(())
    } else {
        Err(Error::WrongFamily {
            expected: family.name(),
            found: e.family().name(),
        })
    }
}

/// Area between the LDPC curves: `(C - R) / a_L`.
pub fn area_ldpc(e: &Ensemble, p: f64) -> Result<f64> {
    require(e, Family::Ldpc)?;
    check_unit("p", p)?;
    Ok((1.0 - p - e.design_rate()?) / e.a_l())
}

/// Area between the tilted ARA curves: `(C - R) / ((1 - R) a_R)`.
pub fn area_ara(e: &Ensemble, p: f64) -> Result<f64> {
    require(e, Family::AraSystematic)?;
    check_unit("p", p)?;
    let r = e.design_rate()?;
    Ok((1.0 - p - r) / ((1.0 - r) * e.a_r()))
}

/// Area between the IRA curves: `(C - R) / ((1 - R) a_R)` (systematic) or
/// `(C - R) / a_R` (non-systematic).
pub fn area_ira(e: &Ensemble, p: f64) -> Result<f64> {
    check_unit("p", p)?;
    let r = e.design_rate()?;
    match e.family() {
        Family::IraSystematic => Ok((1.0 - p - r) / ((1.0 - r) * e.a_r())),
        Family::IraNonsystematic => Ok((1.0 - p - r) / e.a_r()),
        other => Err(Error::WrongFamily {
            expected: "ira",
            found: other.name(),
        }),
    }
}

/// Closed-form area for any family.
pub fn family_area(e: &Ensemble, p: f64) -> Result<f64> {
    match e.family() {
        Family::Ldpc => area_ldpc(e, p),
        Family::AraSystematic => area_ara(e, p),
        _ => area_ira(e, p),
    }
}

/// The pair of curves a family's decoder moves between, together with the
/// slopes of both curves at the origin.
struct Geometry {
    family: Family,
    e: Ensemble,
    p: f64,
    tilted: TiltedEnsemble,
}

impl Geometry {
    fn new(e: &Ensemble, p: f64) -> Result<Self> {
        Ok(Self {
            family: e.family(),
            e: e.clone(),
            p,
            tilted: TiltedEnsemble::new(e, p)?,
        })
    }

    /// Check-side curve `c`.
    fn c(&self, x: f64) -> f64 {
        match self.family {
            Family::Ldpc => 1.0 - self.e.rho().at(1.0 - x),
            _ => 1.0 - self.tilted.rho_t(1.0 - x),
        }
    }

    /// Variable-side curve `v`.
    fn v(&self, x: f64) -> f64 {
        let lambda = self.e.lambda();
        match self.family {
            Family::Ldpc | Family::IraSystematic => {
                if x >= self.p {
                    1.0
                } else {
                    inverse_clamped(|t| lambda.at(t), x / self.p)
                }
            }
            Family::IraNonsystematic => inverse_clamped(|t| lambda.at(t), x),
            Family::AraSystematic => inverse_clamped(|t| self.tilted.lambda_t(t), x),
        }
    }

    /// `c'(0)`.
    fn check_slope(&self) -> f64 {
        match self.family {
            Family::Ldpc => self.e.rho().derivative_at_one(),
            _ => self.tilted.rho_t_derivative(1.0),
        }
    }

    /// `1 / v'(0)`: the slope of the variable-side map at zero.
    fn variable_slope(&self) -> f64 {
        let l2 = self.e.lambda().coeff(2);
        match self.family {
            Family::Ldpc | Family::IraSystematic => self.p * l2,
            Family::IraNonsystematic => l2,
            Family::AraSystematic => self.p * self.p * l2,
        }
    }

    /// Points where `v` has a kink, so quadrature can split there.
    fn breakpoints(&self) -> Vec<f64> {
        match self.family {
            Family::Ldpc | Family::IraSystematic if self.p > 0.0 && self.p < 1.0 => {
                vec![0.0, self.p, 1.0]
            }
            _ => vec![0.0, 1.0],
        }
    }
}

/// Samples the family's check curve `c` and variable curve `v` on a uniform
/// grid over `[0, 1]`: `1 - ρ(1-x)` and `λ^{-1}(x/p)` for LDPC, the tilted
/// pair for ARA, and `ρ̃` against `λ` for IRA.
pub fn family_curves(e: &Ensemble, p: f64, samples: usize) -> Result<Vec<CurvePoint>> {
    check_unit("p", p)?;
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let g = Geometry::new(e, p)?;
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|k| {
            let x = k as f64 / last;
            CurvePoint {
                x,
                c: g.c(x),
                v: g.v(x),
            }
        })
        .collect())
}

/// `∫₀¹ (v - c) dx` by adaptive quadrature on the family's curves.
pub fn area_quadrature(e: &Ensemble, p: f64, tol: f64) -> Result<f64> {
    check_unit("p", p)?;
    let g = Geometry::new(e, p)?;
    let pts = g.breakpoints();
    Ok(pts
        .windows(2)
        .map(|w| integrate(|x| g.v(x) - g.c(x), w[0], w[1], tol))
        .sum())
}

/// The staircase of a density-evolution trajectory split into the triangles
/// used to bound the iteration count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangleDecomposition {
    /// `|v_0| = 1 - c(x^{(0)})`, `|v_l| = c(x^{(l-1)}) - c(x^{(l)})`.
    pub v_lengths: Vec<f64>,
    /// Triangles under the check curve, `|v_i|² / (2 c'(0))`.
    pub a_areas: Vec<f64>,
    /// Triangles beside the variable curve, `s |v_i|² / 2` with `s` the
    /// variable-side slope at zero.
    pub b_areas: Vec<f64>,
    /// `c(x^{(l)})` for each state.
    pub c_values: Vec<f64>,
    pub total_area: f64,
}

impl TriangleDecomposition {
    /// Largest `Σ_{i<l} (A_i + B_i) - total_area` over all prefixes; the
    /// inequality holds when this is at most zero.
    pub fn max_prefix_excess(&self) -> f64 {
        let mut sum = 0.0;
        let mut worst = f64::NEG_INFINITY;
        for (a, b) in self.a_areas.iter().zip(&self.b_areas) {
            sum += a + b;
            worst = worst.max(sum - self.total_area);
        }
        worst
    }

    pub fn prefix_inequality_holds(&self) -> bool {
        self.max_prefix_excess() <= GEOMETRY_SLACK
    }

    /// `(Σ_{i<l} |v_i|)² ≤ l Σ_{i<l} |v_i|²` for every prefix.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        let (mut s1, mut s2) = (0.0, 0.0);
        self.v_lengths.iter().enumerate().all(|(i, &v)| {
            s1 += v;
            s2 += v * v;
            s1 * s1 <= (i + 1) as f64 * s2 * (1.0 + GEOMETRY_SLACK) + GEOMETRY_SLACK
        })
    }

    /// Largest `|1 - Σ_{i≤l} |v_i| - c(x^{(l)})|`.
    pub fn telescoping_error(&self) -> f64 {
        let mut s = 0.0;
        self.v_lengths
            .iter()
            .zip(&self.c_values)
            .map(|(v, c)| {
                s += v;
                (1.0 - s - c).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Decomposes a scalar trajectory: `ldpc_de_run` for LDPC, `ira_de_run` for
/// IRA, and `tilted_recursion_run` (or `turbo_de_run`) for ARA.
pub fn triangle_decompose(
    t: &Trajectory<f64>,
    e: &Ensemble,
    p: f64,
) -> Result<TriangleDecomposition> {
    if t.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let g = Geometry::new(e, p)?;
    let total_area = family_area(e, p)?;
    let c_values: Vec<f64> = t.states.iter().map(|&x| g.c(x)).collect();
    let mut v_lengths = Vec::with_capacity(c_values.len());
    v_lengths.push(1.0 - c_values[0]);
    v_lengths.extend(c_values.windows(2).map(|w| w[0] - w[1]));
    let cs = g.check_slope();
    let vs = g.variable_slope();
    let a_areas = v_lengths.iter().map(|v| v * v / (2.0 * cs)).collect();
    let b_areas = v_lengths.iter().map(|v| vs * v * v / 2.0).collect();
    Ok(TriangleDecomposition {
        v_lengths,
        a_areas,
        b_areas,
        c_values,
        total_area,
    })
}

/// Outcome of comparing a measured iteration count against its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyStatus {
    Satisfied,
    Violated,
    Inapplicable,
    /// The target was never reached, so the count is unbounded.
    NotReached,
}

impl VerifyStatus {
    pub fn name(self) -> &'static str {
        match self {
            Self::Satisfied => "satisfied",
            Self::Violated => "violated",
            Self::Inapplicable => "inapplicable",
            Self::NotReached => "not_reached",
        }
    }
}

/// Which decoder produced the measured count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// The family's own flooding recursion.
    #[default]
    Flooding,
    /// ARA only: the one-dimensional recursion on the reduced graph.
    Tilted,
    /// ARA only: alternating constituent decoders.
    Turbo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub family: Family,
    pub schedule: Schedule,
    pub epsilon: f64,
    pub p: f64,
    pub pb: f64,
    pub l2: f64,
    pub measured_l: Option<usize>,
    pub bound_l: f64,
    pub applicable: bool,
    pub satisfied: bool,
    pub status: VerifyStatus,
    pub terminal: Terminal,
}

impl VerifyReport {
    pub const CSV_HEADER: &'static str =
        "schema,family,schedule,epsilon,p,pb,l2,measured_l,bound_l,applicable,satisfied,status";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{},{},{}",
            self.schema,
            self.family.name(),
            match self.schedule {
                Schedule::Flooding => "flooding",
                Schedule::Tilted => "tilted",
                Schedule::Turbo => "turbo",
            },
            self.epsilon,
            self.p,
            self.pb,
            self.l2,
            self.measured_l.map_or(String::new(), |l| l.to_string()),
            self.bound_l,
            self.applicable,
            self.satisfied,
            self.status.name()
        )
    }
}

/// Runs the family's density evolution and checks the measured iteration
/// count against the applicable bound.
pub fn verify_bound(e: &Ensemble, cfg: &DeConfig) -> Result<VerifyReport> {
    verify_bound_with(e, cfg, Schedule::Flooding)
}

pub fn verify_bound_with(e: &Ensemble, cfg: &DeConfig, schedule: Schedule) -> Result<VerifyReport> {
    let epsilon = e.capacity_gap(Channel::new(cfg.p)?)?;
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "p = {} is at or beyond capacity for design rate {}",
            cfg.p,
            e.design_rate()?
        )));
    }
    let l2 = e.fraction_degree2();
    let (measured_l, terminal) = match schedule {
        Schedule::Flooding => {
            let t = run_family(e, cfg)?;
            (t.iterations_to_target(), t.terminal())
        }
        Schedule::Tilted | Schedule::Turbo => {
            let t = if schedule == Schedule::Tilted {
                tilted_recursion_run(e, cfg)?
            } else {
                turbo_de_run(e, cfg)?
            };
            (t.iterations_to_target, t.terminal)
        }
    };
    let input = BoundInput::new(epsilon, cfg.p, cfg.target_pb.min(cfg.p), l2)?;
    let bound = match schedule {
        Schedule::Turbo => turbo_bound_alias(input)?,
        _ => family_bound(e.family(), input)?,
    };
    let status = match (bound.applicable, measured_l) {
        (false, _) => VerifyStatus::Inapplicable,
        (true, None) => VerifyStatus::NotReached,
        (true, Some(l)) if l as f64 >= bound.value => VerifyStatus::Satisfied,
        (true, Some(_)) => VerifyStatus::Violated,
    };
    Ok(VerifyReport {
        schema: SCHEMA_VERSION,
        family: e.family(),
        schedule,
        epsilon,
        p: cfg.p,
        pb: cfg.target_pb,
        l2,
        measured_l,
        bound_l: bound.value,
        applicable: bound.applicable,
        satisfied: status != VerifyStatus::Violated,
        status,
        terminal,
    })
}

/// LDPC trajectory decomposition in one call.
pub fn ldpc_triangles(e: &Ensemble, cfg: &DeConfig) -> Result<TriangleDecomposition> {
    require(e, Family::Ldpc)?;
    triangle_decompose(&ldpc_de_run(e.lambda(), e.rho(), cfg), e, cfg.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_dist::{EdgeDist, NodeDist};
    use crate::numeric::inverse_monotone;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ldpc_spot_value_and_limit() {
        let r = ldpc_bound(BoundInput::new(0.1, 0.4, 0.01, 0.5).unwrap()).unwrap();
        assert!(r.applicable);
        assert!(close(r.value, 4.0186, 1e-4), "{}", r.value);
        let r = ldpc_bound(BoundInput::new(0.1, 0.4, 0.01, 0.0).unwrap()).unwrap();
        assert!(!r.applicable && r.value == 0.0);
        let lim = ldpc_bound_limit(0.1, 0.4, 0.5);
        let near = ldpc_bound(BoundInput::new(0.1, 0.4, 1e-12, 0.5).unwrap()).unwrap();
        assert!((near.value - lim).abs() / lim < 1e-4);
        assert!(ldpc_bound(BoundInput::new(0.1, 1.0, 0.01, 0.5).unwrap()).is_err());
    }

    #[test]
    fn ara_spot_value_and_limit() {
        let b = BoundInput::new(0.1, 0.5, 0.02, 0.5).unwrap();
        let r = ara_bound(b).unwrap();
        assert!(close(r.value, 1.1526, 1e-4), "{}", r.value);
        assert_eq!(turbo_bound_alias(b).unwrap(), r);
        let lim = ara_bound_limit(0.1, 0.5, 0.5);
        let near = ara_bound(BoundInput::new(0.1, 0.5, 1e-14, 0.5).unwrap()).unwrap();
        assert!((near.value - lim).abs() / lim < 1e-4);
        assert!(!ara_bound(BoundInput::new(0.1, 0.5, 0.02, 0.0).unwrap()).unwrap().applicable);
        assert!(ara_bound(BoundInput::new(0.1, 0.3, 0.4, 0.5).unwrap()).is_err());
    }

    #[test]
    fn ira_spot_values() {
        let b = BoundInput::new(0.1, 0.4, 0.01, 0.5).unwrap();
        assert!(close(ira_bound(b, true).unwrap().value, 2.1700, 1e-4));
        let ns = ira_bound(b, false).unwrap().value;
        let direct = 2.0 * 0.9 * (0.5f64.sqrt() - 0.1).powi(2) * 10.0;
        assert!(close(ns, direct, 1e-12));
        assert!(close(ns, 6.6344, 1e-4));
        let hi = BoundInput::new(0.1, 0.4, 0.6, 0.5).unwrap();
        assert!(!ira_bound(hi, false).unwrap().applicable);
    }

    #[test]
    fn floor_inverts_ldpc_bound() {
        assert!(close(pb_floor(0, 0.1, 0.4, 0.5).unwrap(), 0.2, 1e-15));
        let lim = ldpc_bound_limit(0.1, 0.4, 0.5).ceil() as usize;
        assert_eq!(pb_floor(lim, 0.1, 0.4, 0.5).unwrap(), 0.0);
        for l in 1..lim {
            let pb = pb_floor(l, 0.1, 0.4, 0.5).unwrap();
            let v = ldpc_bound(BoundInput::new(0.1, 0.4, pb, 0.5).unwrap()).unwrap().value;
            assert!(v <= l as f64 + 1e-9);
        }
    }

    #[test]
    fn inverse_l_bound() {
        assert_eq!(inv_l_lower_bound(0.0, 0.5).unwrap(), 1.0);
        assert!(inv_l_lower_bound(0.5, 0.5).unwrap().abs() < 1e-15);
        let big_l = NodeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap();
        let truth = 1.0 - inverse_monotone(|x| big_l.at(x), 0.2, 0.0).unwrap();
        assert!(truth >= inv_l_lower_bound(0.2, 0.5).unwrap());
    }

    #[test]
    fn ldpc_area_closed_form_and_quadrature() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(area_ldpc(&e, 0.4).unwrap(), 1.0 / 30.0, 1e-15));
        assert!(area_ldpc(&e, 0.5).unwrap().abs() < 1e-15);
        let q = area_quadrature(&e, 0.4, 1e-12).unwrap();
        assert!(close(q, 1.0 / 30.0, 1e-8), "{q}");
    }

    #[test]
    fn ara_area_closed_form_and_quadrature() {
        let e = Ensemble::ara(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(area_ara(&e, 0.3).unwrap(), 1.0 / 60.0, 1e-15));
        assert!(area_ara(&e, 1.0 / 3.0).unwrap().abs() < 1e-15);
        let e = Ensemble::ara(
            EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (6, 0.3)]).unwrap(),
            EdgeDist::from_pairs(&[(1, 0.1), (3, 0.5), (4, 0.4)]).unwrap(),
        );
        let q = area_quadrature(&e, 0.2, 1e-12).unwrap();
        assert!(close(q, area_ara(&e, 0.2).unwrap(), 1e-8));
    }

    #[test]
    fn ira_area_matches_quadrature() {
        for fam in [Family::IraSystematic, Family::IraNonsystematic] {
            let e = Ensemble::new(
                fam,
                EdgeDist::from_pairs(&[(2, 0.2), (3, 0.5), (8, 0.3)]).unwrap(),
                EdgeDist::from_pairs(&[(1, 0.2), (3, 0.8)]).unwrap(),
            );
            let q = area_quadrature(&e, 0.1, 1e-12).unwrap();
            assert!(close(q, area_ira(&e, 0.1).unwrap(), 1e-8), "{fam}");
        }
    }

    #[test]
    fn triangles_on_ldpc_trajectory() {
        let e = Ensemble::ldpc(
            EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (8, 0.3)]).unwrap(),
            EdgeDist::regular(6).unwrap(),
        );
        let cfg = DeConfig::new(0.3, 1e-10, 1000).unwrap();
        let d = ldpc_triangles(&e, &cfg).unwrap();
        assert!(d.prefix_inequality_holds(), "{}", d.max_prefix_excess());
        assert!(d.cauchy_schwarz_holds());
        assert!(d.telescoping_error() < 1e-12);
        assert!(d.v_lengths.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn one_step_trajectory() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        let d = ldpc_triangles(&e, &DeConfig::new(0.3, 1e-10, 1).unwrap()).unwrap();
        assert_eq!(d.v_lengths.len(), 1);
        assert!(d.prefix_inequality_holds());
        let empty = Trajectory::<f64> {
            states: vec![],
            pb_per_iter: vec![],
            initial_pb: 0.3,
            iterations_to_target: None,
            terminal: Terminal::IterationCap,
            fixed_point_target: None,
        };
        assert!(matches!(
            triangle_decompose(&empty, &e, 0.3),
            Err(Error::EmptyTrajectory)
        ));
    }

    #[test]
    fn verify_reports() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        let r = verify_bound(&e, &DeConfig::new(0.4, 1e-6, 10_000).unwrap()).unwrap();
        assert_eq!(r.status, VerifyStatus::Inapplicable);
        assert_eq!(r.measured_l, Some(17));
        let r = verify_bound(&e, &DeConfig::new(0.0, 1e-6, 10).unwrap()).unwrap();
        assert_eq!(r.measured_l, Some(0));
        assert!(!r.applicable);

        let e = Ensemble::ldpc(
            EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (8, 0.3)]).unwrap(),
            EdgeDist::regular(6).unwrap(),
        );
        let r = verify_bound(&e, &DeConfig::new(0.3, 1e-6, 10_000).unwrap()).unwrap();
        assert_eq!(r.status, VerifyStatus::Satisfied);
        assert!(r.bound_l > 0.0);
    }
}
