use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use iterlab::degree_dist::{EdgeDist, Ensemble, Family, NodeDist};
use iterlab::density_evolution::{ira_de_step, run_family, DeConfig};
use iterlab::peeling_sim::{
    bec_transmit, flooding_decode, sample_ara_graph, sample_graph, sample_ldpc_graph, simulate,
    EdgeClass, Layer, SimConfig,
};

fn reg36() -> Ensemble {
    Ensemble::ldpc(EdgeDist::regular(3).unwrap(), EdgeDist::regular(6).unwrap())
}

/// One IRA iteration by direct sampling on a long accumulator ring where every
/// check has two information edges. Incoming information messages are erased
/// independently with probability `x`, parity bits with probability `p`.
/// Returns the erasure probability of the next information-to-check message
/// for information bits of degree two.
fn ira_step_by_sampling(m: usize, p: f64, x: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let info: Vec<[bool; 2]> = (0..m).map(|_| [!rng.random_bool(x), !rng.random_bool(x)]).collect();
    // parity bit j sits between check j and check j+1
    let parity: Vec<bool> = (0..m).map(|_| !rng.random_bool(p)).collect();
    let both = |j: usize| info[j][0] && info[j][1];

    // fwd[j]: check j tells parity bit j its value; bwd[j]: check j tells
    // parity bit j-1. Two laps settle the ring.
    let mut fwd = vec![false; m];
    let mut bwd = vec![false; m];
    for step in 0..2 * m {
        let j = step % m;
        let prev = (j + m - 1) % m;
        fwd[j] = both(j) && (parity[prev] || fwd[prev]);
        let k = (m - 1) - j;
        let next = (k + 1) % m;
        bwd[k] = both(k) && (parity[k] || bwd[next]);
    }
    let mut erased = 0usize;
    for j in 0..m {
        let prev = (j + m - 1) % m;
        let next = (j + 1) % m;
        let left = parity[prev] || fwd[prev];
        let right = parity[j] || bwd[next];
        for a in 0..2 {
            if !(info[j][1 - a] && left && right) {
                erased += 1;
            }
        }
    }
    // a degree-2 information bit stays erased if the channel erased it and
    // its other check (an independent one) sends an erasure
    p * erased as f64 / (2 * m) as f64
}

#[test]
fn ira_step_agrees_with_sampling() {
    let e = Ensemble::new(
        Family::IraSystematic,
        EdgeDist::regular(2).unwrap(),
        EdgeDist::regular(2).unwrap(),
    );
    let de = ira_de_step(&e, 0.3, 0.5).unwrap();
    let mc = ira_step_by_sampling(100_000, 0.3, 0.5, 11);
    assert!((de - mc).abs() < 0.01, "de {de} vs sampled {mc}");
}

fn sim_tracks_de(e: &Ensemble, n: usize, p: f64, iterations: usize, tol: f64) {
    let mut cfg = SimConfig::new(n, p, 4, 99).unwrap();
    cfg.max_iter = iterations + 5;
    let sim = simulate(e, &cfg).unwrap();
    let de = run_family(e, &DeConfig::new(p, 0.0, iterations + 5).unwrap()).unwrap();
    for l in 0..iterations {
        let s = sim.trials.iter().map(|t| t.residual_at(l)).sum::<f64>() / 4.0;
        let d = de.pb_per_iter().get(l).copied().unwrap_or(0.0);
        assert!((s - d).abs() < tol, "{:?} l={l}: sim {s} vs de {d}", e.family());
    }
}

#[test]
fn ira_simulation_follows_de() {
    let sys = Ensemble::new(
        Family::IraSystematic,
        EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (8, 0.3)]).unwrap(),
        EdgeDist::regular(6).unwrap(),
    );
    sim_tracks_de(&sys, 20_000, 0.2, 8, 0.01);
    let non = Ensemble::new(
        Family::IraNonsystematic,
        EdgeDist::from_pairs(&[(2, 0.2), (3, 0.5), (8, 0.3)]).unwrap(),
        EdgeDist::from_pairs(&[(1, 0.2), (3, 0.8)]).unwrap(),
    );
    sim_tracks_de(&non, 20_000, 0.1, 8, 0.01);
}

#[test]
fn ara_simulation_follows_de() {
    let e = Ensemble::ara(
        EdgeDist::from_pairs(&[(2, 0.3), (3, 0.4), (6, 0.3)]).unwrap(),
        EdgeDist::from_pairs(&[(1, 0.1), (3, 0.5), (4, 0.4)]).unwrap(),
    );
    sim_tracks_de(&e, 20_000, 0.2, 8, 0.01);
}

#[test]
fn deviation_from_de_shrinks_with_length() {
    let e = reg36();
    let p = 0.38;
    let de = run_family(&e, &DeConfig::new(p, 0.0, 100).unwrap()).unwrap();
    let mut devs = Vec::new();
    for n in [1_000, 10_000, 50_000] {
        let mut cfg = SimConfig::new(n, p, 40, 5).unwrap();
        cfg.max_iter = 20;
        let sim = simulate(&e, &cfg).unwrap();
        let dev = (0..15)
            .map(|l| (sim.mean_residual.get(l).copied().unwrap_or(0.0) - de.pb_per_iter()[l]).abs())
            .fold(0.0, f64::max);
        devs.push(dev);
    }
    assert!(devs[0] > devs[1] && devs[1] > devs[2], "{devs:?}");
}

#[test]
fn ldpc_graph_matches_degree_distribution() {
    let lambda = EdgeDist::from_pairs(&[(2, 0.3), (3, 0.3), (7, 0.4)]).unwrap();
    let rho = EdgeDist::from_pairs(&[(6, 0.5), (7, 0.5)]).unwrap();
    let n = 10_000;
    let g = sample_ldpc_graph(n, &lambda, &rho, 3).unwrap();
    let left: NodeDist = lambda.to_node();
    assert_eq!(g.n_var(), n);
    for d in [2, 3, 7] {
        let count = (0..n).filter(|&v| g.var_degree(v) == d).count();
        assert!((count as f64 - left.coeff(d) * n as f64).abs() <= 1.0, "degree {d}");
    }
    let var_sum: usize = (0..g.n_var()).map(|v| g.var_degree(v)).sum();
    let chk_sum: usize = (0..g.n_chk()).map(|c| g.chk_degree(c)).sum();
    assert_eq!(var_sum, g.n_edges());
    assert_eq!(chk_sum, g.n_edges());
    assert!((0..g.n_chk()).all(|c| g.chk_degree(c) >= 1));
    assert_eq!(g, sample_ldpc_graph(n, &lambda, &rho, 3).unwrap());
    assert_ne!(g, sample_ldpc_graph(n, &lambda, &rho, 4).unwrap());
}

#[test]
fn ara_upper_accumulator_is_a_zigzag() {
    let lambda = EdgeDist::from_pairs(&[(2, 0.5), (4, 0.5)]).unwrap();
    let rho = EdgeDist::from_pairs(&[(1, 0.2), (3, 0.8)]).unwrap();
    let k = 500;
    let g = sample_ara_graph(k, &lambda, &rho, 8).unwrap();
    for c in (0..g.n_chk()).filter(|&c| g.chk_layer(c) == Layer::Check1) {
        let mut sys = 0;
        let mut punct = Vec::new();
        for &e in g.chk_edges(c) {
            let v = g.edges()[e as usize].0 as usize;
            match g.var_layer(v) {
                Layer::Systematic => sys += 1,
                Layer::Punctured => punct.push(v - k),
                other => panic!("check1 node touches {other:?}"),
            }
        }
        assert_eq!(sys, 1);
        assert_eq!(punct.len(), 2);
        let gap = (punct[0] + k - punct[1]) % k;
        assert!(gap == 1 || gap == k - 1, "{punct:?}");
    }
    assert!((0..g.n_var()).filter(|&v| g.var_layer(v) == Layer::Punctured).all(|v| !g.is_transmitted(v)));
    assert!((0..g.n_edges()).any(|e| g.edge_class(e) == EdgeClass::Core));
}

#[test]
fn message_work_is_linear_per_iteration() {
    let e = reg36();
    let g = sample_graph(&e, 5_000, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let erased = bec_transmit(&g, 0.4, &mut rng);
    let out = flooding_decode(&g, &erased, 500, 0.0);
    let used = out.residual.len() as u64;
    assert!(out.message_updates <= 2 * g.n_edges() as u64 * used);
    assert!(out.residual.windows(2).all(|w| w[1] <= w[0]));
}
