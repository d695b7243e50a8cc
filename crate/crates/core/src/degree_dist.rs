//! Degree-distribution algebra.
//!
//! Edge-perspective polynomials `λ(x) = Σ λ_i x^{i-1}` and node-perspective
//! polynomials `L(x) = Σ L_i x^i` are stored as dense coefficient vectors
//! indexed by degree. Index 0 is always zero.
//!
//! For IRA and ARA ensembles the distributions describe only the edges between
//! the repetition layer and the parity-check layer; accumulator edges are not
//! counted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};

/// Largest degree accepted by the constructors.
pub const MAX_DEGREE: usize = 10_000;
/// Coefficient sums within this distance of one are accepted unchanged.
pub const SUM_TOLERANCE: f64 = 1e-12;
/// Coefficient sums within this distance of one are renormalized; larger
/// deviations are rejected.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-9;

fn validate_coeffs(mut coeffs: Vec<f64>) -> Result<Vec<f64>> {
    if coeffs.is_empty() {
        return Err(Error::InvalidDistribution("no coefficients".into()));
    }
    if coeffs[0] != 0.0 {
        return Err(Error::InvalidDistribution(
            "degree-0 coefficient must be zero".into(),
        ));
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
        coeffs.pop();
    }
    let max_degree = coeffs.len() - 1;
    if max_degree == 0 {
        return Err(Error::InvalidDistribution("all coefficients are zero".into()));
    }
    if max_degree > MAX_DEGREE {
        return Err(Error::InvalidDistribution(format!(
            "maximum degree {max_degree} exceeds {MAX_DEGREE}"
        )));
    }
    for (degree, &c) in coeffs.iter().enumerate() {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::InvalidDistribution(format!(
                "coefficient of degree {degree} is {c}"
            )));
        }
    }
    let sum: f64 = coeffs.iter().sum();
    let deviation = (sum - 1.0).abs();
    if deviation > RENORMALIZE_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "coefficients sum to {sum}, not 1"
        )));
    }
    if deviation > SUM_TOLERANCE {
        for c in coeffs.iter_mut() {
            *c /= sum;
        }
    }
    Ok(coeffs)
}

fn coeffs_from_pairs(pairs: &[(usize, f64)]) -> Result<Vec<f64>> {
    let max = pairs.iter().map(|&(d, _)| d).max().unwrap_or(0);
    if max > MAX_DEGREE {
        return Err(Error::InvalidDistribution(format!(
            "maximum degree {max} exceeds {MAX_DEGREE}"
        )));
    }
    let mut coeffs = vec![0.0; max + 1];
    for &(degree, c) in pairs {
        coeffs[degree] += c;
    }
    Ok(coeffs)
}

/// `Σ_{i≥1} c_i x^{i-1}` by Horner's rule.
fn horner_shifted(coeffs: &[f64], x: f64) -> f64 {
    coeffs[1..].iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Edge-perspective degree distribution `λ(x) = Σ λ_i x^{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeDist {
    coeffs: Vec<f64>,
}

impl EdgeDist {
    /// Builds a distribution from coefficients indexed by degree.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        Ok(Self {
            coeffs: validate_coeffs(coeffs)?,
        })
    }

    /// Builds a distribution from `(degree, fraction)` pairs.
    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<Self> {
        Self::from_coeffs(coeffs_from_pairs(pairs)?)
    }

    /// All edges attach to nodes of degree `d`, i.e. `λ(x) = x^{d-1}`.
    pub fn regular(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDistribution("degree must be at least 1".into()));
        }
        Self::from_pairs(&[(d, 1.0)])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> f64 {
        self.coeffs.get(degree).copied().unwrap_or(0.0)
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree-1 nodes break the `λ(0) = 0` assumption of the curve analysis.
    pub fn has_degree_one(&self) -> bool {
        self.coeff(1) > 0.0
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit("x", x)?;
        Ok(self.at(x))
    }

    /// Unchecked evaluation, used in the inner loops.
    #[inline]
    pub(crate) fn at(&self, x: f64) -> f64 {
        horner_shifted(&self.coeffs, x)
    }

    /// `λ'(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * x + (i - 1) as f64 * c)
    }

    /// `λ'(1) = Σ (i-1) λ_i`.
    pub fn derivative_at_one(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| i.saturating_sub(1) as f64 * c)
            .sum()
    }

    /// `∫₀¹ λ(t) dt = Σ λ_i / i`.
    pub fn integral(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c / i as f64)
            .sum()
    }

    /// Average node degree `1 / ∫₀¹ λ`.
    pub fn avg_degree(&self) -> f64 {
        1.0 / self.integral()
    }

    pub fn to_node(&self) -> NodeDist {
        let total = self.integral();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == 0 { 0.0 } else { c / i as f64 / total })
            .collect();
        NodeDist { coeffs }
    }
}

/// Node-perspective degree distribution `L(x) = Σ L_i x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeDist {
    coeffs: Vec<f64>,
}

impl NodeDist {
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        Ok(Self {
            coeffs: validate_coeffs(coeffs)?,
        })
    }

    pub fn from_pairs(pairs: &[(usize, f64)]) -> Result<Self> {
        Self::from_coeffs(coeffs_from_pairs(pairs)?)
    }

    pub fn regular(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDistribution("degree must be at least 1".into()));
        }
        Self::from_pairs(&[(d, 1.0)])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> f64 {
        self.coeffs.get(degree).copied().unwrap_or(0.0)
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_unit("x", x)?;
        Ok(self.at(x))
    }

    #[inline]
    pub(crate) fn at(&self, x: f64) -> f64 {
        x * horner_shifted(&self.coeffs, x)
    }

    /// `L'(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, &c)| acc * x + i as f64 * c)
    }

    /// `L'(1) = Σ i L_i`, the average degree.
    pub fn derivative_at_one(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| i as f64 * c)
            .sum()
    }

    pub fn avg_degree(&self) -> f64 {
        self.derivative_at_one()
    }

    pub fn to_edge(&self) -> EdgeDist {
        let total = self.derivative_at_one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| i as f64 * c / total)
            .collect();
        EdgeDist { coeffs }
    }
}

/// `L_i = (λ_i / i) / Σ_j (λ_j / j)`.
pub fn edge_to_node(d: &EdgeDist) -> NodeDist {
    d.to_node()
}

/// `λ_i = i L_i / L'(1)`.
pub fn node_to_edge(d: &NodeDist) -> EdgeDist {
    d.to_edge()
}

/// A degree distribution read from the text format, tagged by perspective.
#[derive(Clone, Debug, PartialEq)]
pub enum Distribution {
    Edge(EdgeDist),
    Node(NodeDist),
}

impl Distribution {
    /// Edge view of the distribution, converting if necessary.
    pub fn into_edge(self) -> EdgeDist {
        match self {
            Distribution::Edge(d) => d,
            Distribution::Node(d) => d.to_edge(),
        }
    }

    fn parts(&self) -> (&'static str, &[f64]) {
        match self {
            Distribution::Edge(d) => ("edge", d.coeffs()),
            Distribution::Node(d) => ("node", d.coeffs()),
        }
    }

    /// Serializes as a `edge`/`node` header followed by `degree<TAB>coefficient`
    /// lines with 17 significant digits.
    pub fn to_text(&self) -> String {
        let (header, coeffs) = self.parts();
        let mut out = String::from(header);
        out.push('\n');
        for (degree, &c) in coeffs.iter().enumerate().skip(1) {
            if c != 0.0 {
                out.push_str(&format!("{degree}\t{c:.16e}\n"));
            }
        }
        out
    }

    /// Parses the text format. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<&str> = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if header.is_none() {
                match line {
                    "edge" | "node" => {
                        header = Some(if line == "edge" { "edge" } else { "node" });
                        continue;
                    }
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected `edge` or `node` header, found `{other}`"),
                        })
                    }
                }
            }
            let mut fields = line.split_whitespace();
            let (Some(d), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "expected `degree<TAB>coefficient`".into(),
                });
            };
            let degree: usize = d.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad degree `{d}`"),
            })?;
            if degree == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "degree must be at least 1".into(),
                });
            }
            let coeff: f64 = c.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad coefficient `{c}`"),
            })?;
            pairs.push((degree, coeff));
        }
        match header {
            Some("edge") => Ok(Distribution::Edge(EdgeDist::from_pairs(&pairs)?)),
            Some(_) => Ok(Distribution::Node(NodeDist::from_pairs(&pairs)?)),
            None => Err(Error::Parse {
                line: 0,
                msg: "empty distribution".into(),
            }),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Ensemble families handled by the analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Ldpc,
    IraSystematic,
    IraNonsystematic,
    AraSystematic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ldpc => "ldpc",
            Family::IraSystematic => "ira-systematic",
            Family::IraNonsystematic => "ira-nonsystematic",
            Family::AraSystematic => "ara-systematic",
        }
    }

    pub fn is_ira(self) -> bool {
        matches!(self, Family::IraSystematic | Family::IraNonsystematic)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ldpc" => Ok(Family::Ldpc),
            "ira-systematic" => Ok(Family::IraSystematic),
            "ira-nonsystematic" => Ok(Family::IraNonsystematic),
            "ara-systematic" => Ok(Family::AraSystematic),
            other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// An ensemble: family tag plus the pair `(λ, ρ)`. Node-perspective views are
/// cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    family: Family,
    lambda: EdgeDist,
    rho: EdgeDist,
    left: NodeDist,
    right: NodeDist,
}

impl Ensemble {
    pub fn new(family: Family, lambda: EdgeDist, rho: EdgeDist) -> Self {
        let left = lambda.to_node();
        let right = rho.to_node();
        Self {
            family,
            lambda,
            rho,
            left,
            right,
        }
    }

    pub fn ldpc(lambda: EdgeDist, rho: EdgeDist) -> Self {
        Self::new(Family::Ldpc, lambda, rho)
    }

    pub fn ara(lambda: EdgeDist, rho: EdgeDist) -> Self {
        Self::new(Family::AraSystematic, lambda, rho)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lambda(&self) -> &EdgeDist {
        &self.lambda
    }

    pub fn rho(&self) -> &EdgeDist {
        &self.rho
    }

    /// `L(x)`, left node perspective.
    pub fn left(&self) -> &NodeDist {
        &self.left
    }

    /// `R(x)`, right node perspective.
    pub fn right(&self) -> &NodeDist {
        &self.right
    }

    pub fn a_l(&self) -> f64 {
        self.lambda.avg_degree()
    }

    pub fn a_r(&self) -> f64 {
        self.rho.avg_degree()
    }

    pub fn design_rate(&self) -> Result<f64> {
        let rate = match self.family {
            Family::Ldpc => 1.0 - self.rho.integral() / self.lambda.integral(),
            Family::AraSystematic | Family::IraSystematic => {
                self.a_r() / (self.a_l() + self.a_r())
            }
            Family::IraNonsystematic => self.a_r() / self.a_l(),
        };
        if rate > 0.0 && rate < 1.0 {
            Ok(rate)
        } else {
            Err(Error::InvalidRate(rate))
        }
    }

    /// `ε = 1 - R/C`. Negative when the rate exceeds capacity.
    pub fn capacity_gap(&self, channel: Channel) -> Result<f64> {
        let c = channel.capacity();
        if c == 0.0 {
            return Err(Error::InvalidParameter(
                "capacity gap undefined for a channel of zero capacity".into(),
            ));
        }
        Ok(1.0 - self.design_rate()? / c)
    }

    /// `L_2 = λ_2 a_L / 2`.
    pub fn fraction_degree2(&self) -> f64 {
        self.lambda.coeff(2) * self.a_l() / 2.0
    }

    /// Tanner-graph edges per information bit, from the average degrees.
    ///
    /// Accumulator edges are included for IRA and ARA; channel attachments are
    /// not edges.
    pub fn graphical_complexity(&self) -> Result<f64> {
        let rate = self.design_rate()?;
        let a_l = self.a_l();
        let checks_per_bit = a_l / self.a_r();
        Ok(match self.family {
            Family::Ldpc => a_l / rate,
            Family::IraSystematic | Family::IraNonsystematic => a_l + 2.0 * checks_per_bit,
            // systematic-to-check1, upper zigzag, core, lower zigzag
            Family::AraSystematic => 1.0 + 2.0 + a_l + 2.0 * checks_per_bit,
        })
    }
}

/// Binary erasure channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    p: f64,
}

impl Channel {
    pub fn new(p: f64) -> Result<Self> {
        check_unit("p", p)?;
        Ok(Self { p })
    }

    pub fn erasure_probability(self) -> f64 {
        self.p
    }

    pub fn capacity(self) -> f64 {
        1.0 - self.p
    }
}

/// Edges per information bit, `Δ = E / (nR)`.
pub fn graphical_complexity(edge_count: usize, n: usize, rate: f64) -> Result<f64> {
    if n == 0 || !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "graphical complexity needs n > 0 and R in (0, 1], got n = {n}, R = {rate}"
        )));
    }
    Ok(edge_count as f64 / (n as f64 * rate))
}

/// Taylor coefficients `c_1..c_D` of `1 - (1-x)^α` at zero.
fn right_regular_series(alpha: f64, d: usize) -> Vec<f64> {
    let mut series = Vec::with_capacity(d);
    let mut c = alpha;
    for k in 1..=d {
        if k > 1 {
            c *= (k as f64 - 1.0 - alpha) / k as f64;
        }
        series.push(c);
    }
    series
}

/// Right-regular LDPC ensemble with check degree `a`: `ρ(x) = x^{a-1}` and `λ`
/// the normalized degree-`D` truncation of `1 - (1-x)^{1/(a-1)}`.
pub fn build_right_regular(a: usize, d: usize) -> Result<Ensemble> {
    if a < 3 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "right-regular builder needs a >= 3 and D >= 2, got a = {a}, D = {d}"
        )));
    }
    if d + 1 > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!("D = {d} too large")));
    }
    let series = right_regular_series(1.0 / (a as f64 - 1.0), d);
    if let Some(k) = series.iter().position(|&c| c < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "truncated coefficient {} is negative",
            k + 1
        )));
    }
    let mass: f64 = series.iter().sum();
    let mut coeffs = vec![0.0; d + 2];
    for (k, &c) in series.iter().enumerate() {
        coeffs[k + 2] = c / mass;
    }
    Ok(Ensemble::ldpc(
        EdgeDist::from_coeffs(coeffs)?,
        EdgeDist::regular(a)?,
    ))
}

/// Design erasure probability of the right-regular family: the mass of the
/// truncated series. Density evolution converges for every `p` up to it.
pub fn right_regular_design_p(a: usize, d: usize) -> Result<f64> {
    if a < 3 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "right-regular builder needs a >= 3 and D >= 2, got a = {a}, D = {d}"
        )));
    }
    Ok(right_regular_series(1.0 / (a as f64 - 1.0), d).iter().sum())
}

/// `(1-μ) λ(x) + μ x`: moves edge mass `μ` onto degree-2 nodes.
pub fn mix_degree_two(lambda: &EdgeDist, mu: f64) -> Result<EdgeDist> {
    check_unit("mu", mu)?;
    let mut coeffs: Vec<f64> = lambda.coeffs().iter().map(|c| c * (1.0 - mu)).collect();
    if coeffs.len() < 3 {
        coeffs.resize(3, 0.0);
    }
    coeffs[2] += mu;
    EdgeDist::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn edge_evaluation() {
        let l = EdgeDist::regular(3).unwrap();
        assert_eq!(l.eval(1.0).unwrap(), 1.0);
        assert_eq!(l.eval(0.5).unwrap(), 0.25);
        let r = EdgeDist::regular(6).unwrap();
        assert!(close(r.eval(0.6).unwrap(), 0.07776, 1e-15));
        assert!(l.eval(1.5).is_err());
        assert!(l.eval(-0.1).is_err());
    }

    #[test]
    fn node_evaluation() {
        let l = NodeDist::regular(3).unwrap();
        assert_eq!(l.eval(1.0).unwrap(), 1.0);
        let mixed = NodeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap();
        assert_eq!(mixed.eval(0.0).unwrap(), 0.0);
        let r = NodeDist::regular(6).unwrap();
        assert_eq!(r.eval(0.5).unwrap(), 0.015625);
    }

    #[test]
    fn conversions() {
        let l = EdgeDist::regular(3).unwrap().to_node();
        assert_eq!(l, NodeDist::regular(3).unwrap());

        let mixed = EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap().to_node();
        assert!(close(mixed.coeff(2), 0.6, 1e-15));
        assert!(close(mixed.coeff(3), 0.4, 1e-15));

        let one = EdgeDist::regular(1).unwrap().to_node();
        assert_eq!(one, NodeDist::regular(1).unwrap());

        let back = NodeDist::from_pairs(&[(2, 0.6), (3, 0.4)]).unwrap().to_edge();
        assert!(close(back.coeff(2), 0.5, 1e-15));
        assert!(close(back.coeff(3), 0.5, 1e-15));
        assert_eq!(NodeDist::regular(1).unwrap().to_edge(), EdgeDist::regular(1).unwrap());
    }

    #[test]
    fn average_degrees() {
        assert!(close(EdgeDist::regular(3).unwrap().avg_degree(), 3.0, 1e-15));
        assert!(close(EdgeDist::regular(6).unwrap().avg_degree(), 6.0, 1e-14));
        let mixed = EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap();
        assert!(close(mixed.avg_degree(), 12.0 / 5.0, 1e-15));
    }

    #[test]
    fn rates() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(e.design_rate().unwrap(), 0.5, 1e-15));
        let ara = Ensemble::ara(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(ara.design_rate().unwrap(), 2.0 / 3.0, 1e-15));
        let ira = Ensemble::new(
            Family::IraNonsystematic,
            EdgeDist::regular(4).unwrap(),
            EdgeDist::regular(2).unwrap(),
        );
        assert!(close(ira.design_rate().unwrap(), 0.5, 1e-15));
        let cycle = Ensemble::ldpc(EdgeDist::regular(2).unwrap(), EdgeDist::regular(2).unwrap());
        assert!(matches!(cycle.design_rate(), Err(Error::InvalidRate(_))));
    }

    #[test]
    fn capacity_gaps() {
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        let gap = e.capacity_gap(Channel::new(0.4).unwrap()).unwrap();
        assert!(close(gap, 1.0 / 6.0, 1e-15));
        assert!(close(e.capacity_gap(Channel::new(0.5).unwrap()).unwrap(), 0.0, 1e-15));
        assert!(e.capacity_gap(Channel::new(1.0).unwrap()).is_err());
        assert!(Channel::new(1.1).is_err());
    }

    #[test]
    fn graphical_complexity_values() {
        assert!(close(graphical_complexity(3600, 1200, 0.5).unwrap(), 6.0, 1e-15));
        assert!(close(graphical_complexity(600, 1200, 0.5).unwrap(), 1.0, 1e-15));
        for n in [100, 1000, 12345] {
            assert!(close(graphical_complexity(3 * n, n, 0.5).unwrap(), 6.0, 1e-12));
        }
        let e = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(e.graphical_complexity().unwrap(), 6.0, 1e-12));
    }

    #[test]
    fn right_regular_small_case() {
        let e = build_right_regular(3, 2).unwrap();
        assert!(close(e.lambda().coeff(2), 0.8, 1e-15));
        assert!(close(e.lambda().coeff(3), 0.2, 1e-15));
        assert_eq!(e.rho(), &EdgeDist::regular(3).unwrap());
        assert!(close(right_regular_design_p(3, 2).unwrap(), 0.625, 1e-15));
        assert!(build_right_regular(2, 5).is_err());
    }

    #[test]
    fn degree_two_fraction() {
        let reg = Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap());
        assert_eq!(reg.fraction_degree2(), 0.0);
        let cyc = Ensemble::ldpc(EdgeDist::regular(2).unwrap(), EdgeDist::regular(6).unwrap());
        assert!(close(cyc.fraction_degree2(), 1.0, 1e-15));
        let mixed = Ensemble::ldpc(
            EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap(),
            EdgeDist::regular(6).unwrap(),
        );
        assert!(close(mixed.fraction_degree2(), 0.6, 1e-15));
    }

    #[test]
    fn normalization_policy() {
        // tiny drift is renormalized
        let d = EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5 + 5e-11)]).unwrap();
        assert!(close(d.coeffs().iter().sum::<f64>(), 1.0, 1e-15));
        // larger drift is rejected
        assert!(EdgeDist::from_pairs(&[(2, 0.5), (3, 0.51)]).is_err());
        assert!(EdgeDist::from_pairs(&[(2, 1.5), (3, -0.5)]).is_err());
        assert!(EdgeDist::from_pairs(&[(MAX_DEGREE + 1, 1.0)]).is_err());
        assert!(EdgeDist::from_coeffs(vec![0.5, 0.5]).is_err());
        assert!(EdgeDist::from_pairs(&[(1, 1.0)]).unwrap().has_degree_one());
    }

    #[test]
    fn text_format() {
        let text = "edge\n2\t0.25\n# comment\n\n3\t0.75\n";
        let d = Distribution::parse(text).unwrap();
        assert_eq!(
            d,
            Distribution::Edge(EdgeDist::from_pairs(&[(2, 0.25), (3, 0.75)]).unwrap())
        );
        assert_eq!(Distribution::parse(&d.to_text()).unwrap(), d);
        assert!(matches!(
            Distribution::parse("vertex\n2\t1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Distribution::parse("node\n2 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Distribution::parse("").is_err());
        assert!(Distribution::parse("node\n0\t1").is_err());
    }

    #[test]
    fn mixing_adds_degree_two_mass() {
        let base = EdgeDist::regular(3).unwrap();
        let mixed = mix_degree_two(&base, 0.1).unwrap();
        assert!(close(mixed.coeff(2), 0.1, 1e-15));
        assert!(close(mixed.coeff(3), 0.9, 1e-15));
        assert_eq!(mix_degree_two(&base, 0.0).unwrap(), base);
    }
}
