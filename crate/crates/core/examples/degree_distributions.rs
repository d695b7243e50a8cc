//! Edge and node perspectives, design rate and the right-regular family.

use iterlab::degree_dist::{build_right_regular, Channel, Distribution, EdgeDist, Ensemble};

fn main() -> iterlab::Result<()> {
    let lambda = EdgeDist::from_pairs(&[(2, 0.3), (3, 0.3), (7, 0.4)])?;
    let rho = EdgeDist::regular(7)?;
    print!("lambda (edge view):\n{}", Distribution::Edge(lambda.clone()).to_text());
    print!("L (node view):\n{}", Distribution::Node(lambda.to_node()).to_text());

    let e = Ensemble::ldpc(lambda, rho);
    let p = 0.4;
    println!(
        "a_L = {:.4}, a_R = {:.4}, R = {:.4}, L2 = {:.4}, gap at p = {p}: {:.4}",
        e.a_l(),
        e.a_r(),
        e.design_rate()?,
        e.fraction_degree2(),
        e.capacity_gap(Channel::new(p)?)?
    );

    for d in [50, 100, 200] {
        let rr = build_right_regular(20, d)?;
        println!("right-regular a = 20, D = {d}: L2 = {:.4}", rr.fraction_degree2());
    }
    Ok(())
}
