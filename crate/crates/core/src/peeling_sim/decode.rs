//! Erasure message passing on a sampled Tanner graph.
//!
//! Messages are a single "known" bit per edge and direction. A known message
//! is never revisited, so each decoder is a peeling decoder run with the
//! iteration semantics of the matching density evolution.

use rand::Rng;

use super::graph::{EdgeClass, Layer, TannerGraph};
use crate::degree_dist::Family;
use crate::density_evolution::Terminal;

/// Erases each transmitted bit independently with probability `p`. Punctured
/// bits are always erased. `true` marks an erased bit.
pub fn bec_transmit<R: Rng + ?Sized>(graph: &TannerGraph, p: f64, rng: &mut R) -> Vec<bool> {
    (0..graph.n_var())
        .map(|v| !graph.is_transmitted(v) || rng.random_bool(p))
        .collect()
}

/// Per-iteration record of one decoding run.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    /// Erased counted bits before the first iteration.
    pub initial_residual: usize,
    /// `residual[l]`: erased counted bits after iteration `l`.
    pub residual: Vec<usize>,
    pub iterations_to_target: Option<usize>,
    pub terminal: Terminal,
    /// Messages computed, summed over all iterations.
    pub message_updates: u64,
}

struct Decoder<'g> {
    g: &'g TannerGraph,
    erased: &'g [bool],
    vc: Vec<bool>,
    cv: Vec<bool>,
    updates: u64,
    changed: usize,
}

impl<'g> Decoder<'g> {
    fn new(g: &'g TannerGraph, erased: &'g [bool]) -> Self {
        let vc = g
            .edges()
            .iter()
            .map(|&(v, _)| {
                g.family() == Family::AraSystematic
                    && g.var_layer(v as usize) == Layer::Systematic
                    && !erased[v as usize]
            })
            .collect();
        Self {
            g,
            erased,
            vc,
            cv: vec![false; g.n_edges()],
            updates: 0,
            changed: 0,
        }
    }

    /// Check-to-variable messages on edges of `class`.
    fn check_phase(&mut self, class: Option<EdgeClass>) {
        for c in 0..self.g.n_chk() {
            let edges = self.g.chk_edges(c);
            let unknown = edges.iter().filter(|&&e| !self.vc[e as usize]).count();
            if unknown > 1 {
                if class.is_none() {
                    self.updates += edges.len() as u64;
                } else {
                    self.updates += edges
                        .iter()
                        .filter(|&&e| Some(self.g.edge_class(e as usize)) == class)
                        .count() as u64;
                }
                continue;
            }
            for &e in edges {
                let e = e as usize;
                if class.is_some_and(|k| self.g.edge_class(e) != k) {
                    continue;
                }
                self.updates += 1;
                let known = unknown - usize::from(!self.vc[e]) == 0;
                if known && !self.cv[e] {
                    self.cv[e] = true;
                    self.changed += 1;
                }
            }
        }
    }

    /// Variable-to-check messages on edges of `class`.
    fn var_phase(&mut self, class: Option<EdgeClass>) {
        for v in 0..self.g.n_var() {
            let edges = self.g.var_edges(v);
            let chan = !self.erased[v];
            let known_in = edges.iter().filter(|&&e| self.cv[e as usize]).count();
            for &e in edges {
                let e = e as usize;
                if class.is_some_and(|k| self.g.edge_class(e) != k) {
                    continue;
                }
                self.updates += 1;
                let known = chan || known_in - usize::from(self.cv[e]) > 0;
                if known && !self.vc[e] {
                    self.vc[e] = true;
                    self.changed += 1;
                }
            }
        }
    }

    /// Runs the accumulator chain of an IRA graph to its fixed point: one
    /// forward and one backward pass around the ring, each started at a
    /// parity bit known from the channel.
    fn accumulator_phase(&mut self) {
        let Some((up, down)) = self.g.chain() else {
            return;
        };
        let m = up.len();
        let core_ok: Vec<bool> = (0..m)
            .map(|c| {
                self.g
                    .chk_edges(c)
                    .iter()
                    .all(|&e| self.g.edge_class(e as usize) != EdgeClass::Core || self.vc[e as usize])
            })
            .collect();
        let bit_known = |j: usize| !self.erased[self.g.edges()[down[j] as usize].0 as usize];
        // forward: message from q_{j-1} into c_j
        if let Some(s) = (0..m).find(|&j| bit_known((j + m - 1) % m)) {
            let mut carry = true;
            for i in 0..m {
                let j = (s + i) % m;
                let prev = (j + m - 1) % m;
                if i > 0 {
                    carry = bit_known(prev) || (core_ok[prev] && carry);
                }
                self.set_vc(up[j] as usize, carry);
            }
        }
        // backward: message from q_j into c_j
        if let Some(s) = (0..m).find(|&j| bit_known(j)) {
            let mut carry = true;
            for i in 0..m {
                let j = (s + m - i) % m;
                let next = (j + 1) % m;
                if i > 0 {
                    carry = bit_known(j) || (core_ok[next] && carry);
                }
                self.set_vc(down[j] as usize, carry);
            }
        }
    }

    fn set_vc(&mut self, e: usize, known: bool) {
        self.updates += 1;
        if known && !self.vc[e] {
            self.vc[e] = true;
            self.changed += 1;
        }
    }

    fn iterate(&mut self) {
        self.changed = 0;
        match self.g.family() {
            Family::Ldpc => {
                self.var_phase(None);
                self.check_phase(None);
            }
            Family::AraSystematic => {
                self.check_phase(Some(EdgeClass::PunctCheck1));
                self.var_phase(Some(EdgeClass::Core));
                self.check_phase(Some(EdgeClass::CodeCheck2));
                self.var_phase(Some(EdgeClass::CodeCheck2));
                self.check_phase(Some(EdgeClass::Core));
                self.var_phase(Some(EdgeClass::PunctCheck1));
            }
            Family::IraSystematic | Family::IraNonsystematic => {
                self.var_phase(Some(EdgeClass::Core));
                self.accumulator_phase();
                self.check_phase(Some(EdgeClass::Core));
            }
        }
    }

    /// Erased counted bits, judged from the current variable-to-check
    /// messages. The extrinsic message of every adjacent check is evaluated
    /// afresh, which also covers check-to-systematic messages the ARA
    /// schedule never sends.
    fn residual(&self) -> usize {
        let unknown: Vec<usize> = (0..self.g.n_chk())
            .map(|c| self.g.chk_edges(c).iter().filter(|&&e| !self.vc[e as usize]).count())
            .collect();
        (0..self.g.n_counted())
            .filter(|&v| {
                self.erased[v]
                    && !self.g.var_edges(v).iter().any(|&e| {
                        let e = e as usize;
                        let c = self.g.edges()[e].1 as usize;
                        unknown[c] - usize::from(!self.vc[e]) == 0
                    })
            })
            .count()
    }
}

/// Decodes until the residual erasure fraction of the counted bits is at most
/// `target`, an iteration changes no message, or `max_iter` iterations ran.
///
/// One iteration is a full flooding round for LDPC, the six-phase layer sweep
/// for ARA, and for IRA a core round with the accumulator chain run to its
/// fixed point in between.
pub fn flooding_decode(
    graph: &TannerGraph,
    erasures: &[bool],
    max_iter: usize,
    target: f64,
) -> DecodeOutcome {
    assert_eq!(erasures.len(), graph.n_var(), "erasure pattern length");
    let n = graph.n_counted() as f64;
    let initial_residual = erasures[..graph.n_counted()].iter().filter(|&&x| x).count();
    let mut out = DecodeOutcome {
        initial_residual,
        residual: Vec::new(),
        iterations_to_target: None,
        terminal: Terminal::TargetReached,
        message_updates: 0,
    };
    if initial_residual as f64 / n <= target {
        out.iterations_to_target = Some(0);
        return out;
    }
    let mut dec = Decoder::new(graph, erasures);
    loop {
        if out.residual.len() >= max_iter {
            out.terminal = Terminal::IterationCap;
            break;
        }
        dec.iterate();
        let r = dec.residual();
        out.residual.push(r);
        if r as f64 / n <= target {
            out.iterations_to_target = Some(out.residual.len());
            out.terminal = Terminal::TargetReached;
            break;
        }
        if dec.changed == 0 {
            out.terminal = Terminal::FixedPoint;
            break;
        }
    }
    out.message_updates = dec.updates;
    out
}

#[cfg(test)]
mod tests {
    use super::super::graph::{sample_ara_graph, sample_ira_graph, sample_ldpc_graph};
    use super::*;
    use crate::degree_dist::EdgeDist;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reg(d: usize) -> EdgeDist {
        EdgeDist::regular(d).unwrap()
    }

    #[test]
    fn transmit_extremes() {
        let g = sample_ldpc_graph(100, &reg(3), &reg(6), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(bec_transmit(&g, 0.0, &mut rng).iter().all(|&x| !x));
        assert!(bec_transmit(&g, 1.0, &mut rng).iter().all(|&x| x));
        let lambda = EdgeDist::from_pairs(&[(2, 0.5), (3, 0.5)]).unwrap();
        let rho = EdgeDist::from_pairs(&[(1, 0.1), (3, 0.9)]).unwrap();
        let a = sample_ara_graph(100, &lambda, &rho, 1).unwrap();
        let er = bec_transmit(&a, 0.0, &mut rng);
        assert!((0..a.n_var()).all(|v| er[v] == !a.is_transmitted(v)));
    }

    #[test]
    fn nothing_erased() {
        let g = sample_ldpc_graph(100, &reg(3), &reg(6), 1).unwrap();
        let out = flooding_decode(&g, &[false; 100], 10, 0.0);
        assert_eq!(out.iterations_to_target, Some(0));
        assert!(out.residual.is_empty());
    }

    #[test]
    fn all_erased_is_stuck() {
        let g = sample_ldpc_graph(100, &reg(3), &reg(6), 1).unwrap();
        let out = flooding_decode(&g, &[true; 100], 10, 0.0);
        assert_eq!(out.terminal, Terminal::FixedPoint);
        assert_eq!(out.residual, vec![100]);
    }

    #[test]
    fn ldpc_decodes_and_respects_work_bound() {
        let g = sample_ldpc_graph(20_000, &reg(3), &reg(6), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let er = bec_transmit(&g, 0.35, &mut rng);
        let out = flooding_decode(&g, &er, 200, 0.0);
        assert_eq!(out.terminal, Terminal::TargetReached);
        assert!(out.residual.windows(2).all(|w| w[1] <= w[0]));
        let iters = out.residual.len() as u64;
        assert!(out.message_updates <= 2 * g.n_edges() as u64 * iters);
    }

    #[test]
    fn ara_and_ira_decode_below_threshold() {
        let lambda = EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (6, 0.3)]).unwrap();
        let rho = EdgeDist::from_pairs(&[(1, 0.1), (3, 0.5), (4, 0.4)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = sample_ara_graph(10_000, &lambda, &rho, 8).unwrap();
        let out = flooding_decode(&a, &bec_transmit(&a, 0.15, &mut rng), 500, 0.0);
        assert_eq!(out.terminal, Terminal::TargetReached);
        assert!(out.message_updates <= 2 * a.n_edges() as u64 * out.residual.len() as u64);

        let rho = EdgeDist::from_pairs(&[(1, 0.2), (3, 0.8)]).unwrap();
        for sys in [true, false] {
            let g = sample_ira_graph(10_000, &lambda, &rho, sys, 8).unwrap();
            let out = flooding_decode(&g, &bec_transmit(&g, 0.05, &mut rng), 500, 0.0);
            assert_eq!(out.terminal, Terminal::TargetReached, "systematic = {sys}");
            assert!(out.residual.windows(2).all(|w| w[1] <= w[0]));
            assert!(out.message_updates <= 2 * g.n_edges() as u64 * out.residual.len() as u64);
        }
    }
}
