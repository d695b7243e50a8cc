//! Configuration-model Tanner graphs for the LDPC, IRA and ARA ensembles.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::degree_dist::{EdgeDist, Ensemble, Family, NodeDist};
use crate::error::{Error, Result};

/// Role of a node in the Tanner graph.
///
/// LDPC graphs use `Code` bits and `Check2` checks. IRA information bits are
/// `Systematic` when transmitted and `Punctured` otherwise; their parity bits
/// are `Code`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    Systematic,
    Punctured,
    Code,
    Check1,
    Check2,
}

/// Edge classes, named by the layers they join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// Systematic bit to upper accumulator check.
    SysCheck1,
    /// Upper accumulator zigzag.
    PunctCheck1,
    /// The bipartite core described by `(λ, ρ)`.
    Core,
    /// Lower accumulator zigzag.
    CodeCheck2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TannerGraph {
    family: Family,
    n_var: usize,
    n_chk: usize,
    /// Variables `0..n_counted` are the bits whose erasure rate is reported.
    n_counted: usize,
    edges: Vec<(u32, u32)>,
    classes: Vec<EdgeClass>,
    var_layer: Vec<Layer>,
    chk_layer: Vec<Layer>,
    var_start: Vec<usize>,
    var_adj: Vec<u32>,
    chk_start: Vec<usize>,
    chk_adj: Vec<u32>,
    /// IRA only: edge ids `(q_{j-1}, c_j)` and `(q_j, c_j)` for each check `j`.
    chain: Option<(Vec<u32>, Vec<u32>)>,
}

fn csr(n: usize, ends: impl Iterator<Item = usize> + Clone) -> (Vec<usize>, Vec<u32>) {
    let mut start = vec![0usize; n + 1];
    for v in ends.clone() {
        start[v + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; start[n]];
    for (e, v) in ends.enumerate() {
        adj[fill[v]] = e as u32;
        fill[v] += 1;
    }
    (start, adj)
}

impl TannerGraph {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        family: Family,
        n_counted: usize,
        var_layer: Vec<Layer>,
        chk_layer: Vec<Layer>,
        edges: Vec<(u32, u32)>,
        classes: Vec<EdgeClass>,
        chain: Option<(Vec<u32>, Vec<u32>)>,
    ) -> Self {
        let (n_var, n_chk) = (var_layer.len(), chk_layer.len());
        let (var_start, var_adj) = csr(n_var, edges.iter().map(|&(v, _)| v as usize));
        let (chk_start, chk_adj) = csr(n_chk, edges.iter().map(|&(_, c)| c as usize));
        Self {
            family,
            n_var,
            n_chk,
            n_counted,
            edges,
            classes,
            var_layer,
            chk_layer,
            var_start,
            var_adj,
            chk_start,
            chk_adj,
            chain,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_var(&self) -> usize {
        self.n_var
    }

    pub fn n_chk(&self) -> usize {
        self.n_chk
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of bits whose erasure rate is reported: all code bits for LDPC,
    /// the information bits otherwise.
    pub fn n_counted(&self) -> usize {
        self.n_counted
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_class(&self, e: usize) -> EdgeClass {
        self.classes[e]
    }

    pub fn var_layer(&self, v: usize) -> Layer {
        self.var_layer[v]
    }

    pub fn chk_layer(&self, c: usize) -> Layer {
        self.chk_layer[c]
    }

    pub fn is_transmitted(&self, v: usize) -> bool {
        self.var_layer[v] != Layer::Punctured
    }

    /// Edge ids at variable `v`.
    pub fn var_edges(&self, v: usize) -> &[u32] {
        &self.var_adj[self.var_start[v]..self.var_start[v + 1]]
    }

    /// Edge ids at check `c`.
    pub fn chk_edges(&self, c: usize) -> &[u32] {
        &self.chk_adj[self.chk_start[c]..self.chk_start[c + 1]]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_start[v + 1] - self.var_start[v]
    }

    pub fn chk_degree(&self, c: usize) -> usize {
        self.chk_start[c + 1] - self.chk_start[c]
    }

    pub(crate) fn chain(&self) -> Option<(&[u32], &[u32])> {
        self.chain.as_ref().map(|(u, d)| (u.as_slice(), d.as_slice()))
    }

    /// Number of core edges at check `c`.
    pub fn core_degree(&self, c: usize) -> usize {
        self.chk_edges(c)
            .iter()
            .filter(|&&e| self.classes[e as usize] == EdgeClass::Core)
            .count()
    }

    /// Header `n_var n_chk n_edges`, then one `var chk` pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n_var, self.n_chk, self.edges.len());
        for &(v, c) in &self.edges {
            out.push_str(&format!("{v} {c}\n"));
        }
        out
    }

    /// Reads the text format as a plain LDPC graph: every variable is a
    /// transmitted code bit and every edge a core edge.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.into(),
        };
        let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(hl, "bad header")))
            .collect::<Result<_>>()?;
        let [n_var, n_chk, n_edges] = nums[..] else {
            return Err(parse_err(hl, "header needs three integers"));
        };
        let mut edges = Vec::with_capacity(n_edges);
        for (i, line) in lines {
            let pair: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(i, "bad edge")))
                .collect::<Result<_>>()?;
            let [v, c] = pair[..] else {
                return Err(parse_err(i, "edge needs two integers"));
            };
            if v as usize >= n_var || c as usize >= n_chk {
                return Err(parse_err(i, "node index out of range"));
            }
            edges.push((v, c));
        }
        if edges.len() != n_edges {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header promises {n_edges} edges, found {}", edges.len()),
            });
        }
        let classes = vec![EdgeClass::Core; edges.len()];
        Ok(Self::assemble(
            Family::Ldpc,
            n_var,
            vec![Layer::Code; n_var],
            vec![Layer::Check2; n_chk],
            edges,
            classes,
            None,
        ))
    }
}

/// Splits `total` nodes across degrees in proportion to `fractions` (indexed
/// by degree) with largest-remainder rounding.
pub(crate) fn realize_counts(total: usize, fractions: &[f64]) -> Vec<usize> {
    let mut counts: Vec<usize> = fractions
        .iter()
        .map(|f| (f * total as f64).floor() as usize)
        .collect();
    let assigned: usize = counts.iter().sum();
    let mut rest: Vec<(usize, f64)> = fractions
        .iter()
        .enumerate()
        .filter(|(_, &f)| f > 0.0)
        .map(|(d, &f)| (d, f * total as f64 - counts[d] as f64))
        .collect();
    rest.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for &(d, _) in rest.iter().cycle().take(total.saturating_sub(assigned)) {
        counts[d] += 1;
    }
    counts
}

fn degree_sequence(counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(d, &n)| std::iter::repeat_n(d, n))
        .collect()
}

/// Degree sequences for the two sides of a core with `n_left` left nodes.
/// The check count is `round(E / a_R)`; a leftover mismatch in edge count is
/// absorbed by one check of the highest degree.
fn core_degrees(n_left: usize, left: &NodeDist, rho: &EdgeDist) -> Result<(Vec<usize>, Vec<usize>)> {
    let var_deg = degree_sequence(&realize_counts(n_left, left.coeffs()));
    let edges: usize = var_deg.iter().sum();
    let right = rho.to_node();
    let n_chk = ((edges as f64 / rho.avg_degree()).round() as usize).max(1);
    let mut chk_deg = degree_sequence(&realize_counts(n_chk, right.coeffs()));
    let have: usize = chk_deg.iter().sum();
    let last = chk_deg.last_mut().expect("at least one check");
    let repaired = *last as i64 + edges as i64 - have as i64;
    if repaired < 1 {
        return Err(Error::InvalidParameter(format!(
            "degree rounding leaves {} check sockets for {edges} edges",
            have
        )));
    }
    *last = repaired as usize;
    Ok((var_deg, chk_deg))
}

/// Matches sockets uniformly at random. Returns `(left, right)` node pairs in
/// left-socket order.
fn match_sockets(var_deg: &[usize], chk_deg: &[usize], rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut chk_sockets: Vec<u32> = chk_deg
        .iter()
        .enumerate()
        .flat_map(|(c, &d)| std::iter::repeat_n(c as u32, d))
        .collect();
    chk_sockets.shuffle(rng);
    var_deg
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v as u32, d))
        .zip(chk_sockets)
        .collect()
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("graph needs at least 2 nodes, got {n}")));
    }
    Ok(())
}

/// LDPC graph with `n` code bits.
pub fn sample_ldpc_graph(n: usize, lambda: &EdgeDist, rho: &EdgeDist, seed: u64) -> Result<TannerGraph> {
    check_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (var_deg, chk_deg) = core_degrees(n, &lambda.to_node(), rho)?;
    let edges = match_sockets(&var_deg, &chk_deg, &mut rng);
    let classes = vec![EdgeClass::Core; edges.len()];
    Ok(TannerGraph::assemble(
        Family::Ldpc,
        n,
        vec![Layer::Code; n],
        vec![Layer::Check2; chk_deg.len()],
        edges,
        classes,
        None,
    ))
}

/// Appends a tail-biting zigzag: check `j` joins chain bits `j - 1` and `j`.
/// Returns the edge ids `(q_{j-1}, c_j)` and `(q_j, c_j)`.
fn push_zigzag(
    edges: &mut Vec<(u32, u32)>,
    classes: &mut Vec<EdgeClass>,
    class: EdgeClass,
    first_bit: usize,
    first_chk: usize,
    len: usize,
) -> (Vec<u32>, Vec<u32>) {
    let mut up = vec![0u32; len];
    let mut down = vec![0u32; len];
    for j in 0..len {
        let bit = (first_bit + j) as u32;
        down[j] = edges.len() as u32;
        edges.push((bit, (first_chk + j) as u32));
        let next = (j + 1) % len;
        up[next] = edges.len() as u32;
        edges.push((bit, (first_chk + next) as u32));
        classes.push(class);
        classes.push(class);
    }
    (up, down)
}

/// Systematic ARA graph with `n_systematic` information bits.
///
/// Variables: systematic bits, then punctured bits, then code bits. Checks:
/// the upper accumulator (`Check1`), then the lower one (`Check2`). Both
/// accumulators are tail-biting, so every `Check1` node joins one systematic
/// bit and two cyclically consecutive punctured bits.
pub fn sample_ara_graph(
    n_systematic: usize,
    lambda: &EdgeDist,
    rho: &EdgeDist,
    seed: u64,
) -> Result<TannerGraph> {
    let k = n_systematic;
    check_size(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (punct_deg, chk_deg) = core_degrees(k, &lambda.to_node(), rho)?;
    let m = chk_deg.len();
    check_size(m)?;
    let mut edges = Vec::new();
    let mut classes = Vec::new();
    for i in 0..k {
        edges.push((i as u32, i as u32));
        classes.push(EdgeClass::SysCheck1);
    }
    push_zigzag(&mut edges, &mut classes, EdgeClass::PunctCheck1, k, 0, k);
    for (v, c) in match_sockets(&punct_deg, &chk_deg, &mut rng) {
        edges.push((v + k as u32, c + k as u32));
        classes.push(EdgeClass::Core);
    }
    push_zigzag(&mut edges, &mut classes, EdgeClass::CodeCheck2, 2 * k, k, m);
    let mut var_layer = vec![Layer::Systematic; k];
    var_layer.extend(std::iter::repeat_n(Layer::Punctured, k));
    var_layer.extend(std::iter::repeat_n(Layer::Code, m));
    let mut chk_layer = vec![Layer::Check1; k];
    chk_layer.extend(std::iter::repeat_n(Layer::Check2, m));
    Ok(TannerGraph::assemble(
        Family::AraSystematic,
        k,
        var_layer,
        chk_layer,
        edges,
        classes,
        None,
    ))
}

/// IRA graph with `n_info` information bits, a `(λ, ρ)` core and a
/// tail-biting accumulator through the checks.
pub fn sample_ira_graph(
    n_info: usize,
    lambda: &EdgeDist,
    rho: &EdgeDist,
    systematic: bool,
    seed: u64,
) -> Result<TannerGraph> {
    let k = n_info;
    check_size(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (info_deg, chk_deg) = core_degrees(k, &lambda.to_node(), rho)?;
    let m = chk_deg.len();
    check_size(m)?;
    let mut edges = match_sockets(&info_deg, &chk_deg, &mut rng);
    let mut classes = vec![EdgeClass::Core; edges.len()];
    let chain = push_zigzag(&mut edges, &mut classes, EdgeClass::CodeCheck2, k, 0, m);
    let info_layer = if systematic {
        Layer::Systematic
    } else {
        Layer::Punctured
    };
    let mut var_layer = vec![info_layer; k];
    var_layer.extend(std::iter::repeat_n(Layer::Code, m));
    let family = if systematic {
        Family::IraSystematic
    } else {
        Family::IraNonsystematic
    };
    Ok(TannerGraph::assemble(
        family,
        k,
        var_layer,
        vec![Layer::Check2; m],
        edges,
        classes,
        Some(chain),
    ))
}

/// Samples a graph of the ensemble's family with `n` counted bits.
pub fn sample_graph(e: &Ensemble, n: usize, seed: u64) -> Result<TannerGraph> {
    match e.family() {
        Family::Ldpc => sample_ldpc_graph(n, e.lambda(), e.rho(), seed),
        Family::AraSystematic => sample_ara_graph(n, e.lambda(), e.rho(), seed),
        Family::IraSystematic => sample_ira_graph(n, e.lambda(), e.rho(), true, seed),
        Family::IraNonsystematic => sample_ira_graph(n, e.lambda(), e.rho(), false, seed),
    }
}
