//! Closed-form lower bounds and a measured count checked against one.

use iterlab::bounds::{
    ara_bound, ira_bound, ldpc_bound, ldpc_bound_limit, verify_bound, BoundInput,
};
use iterlab::degree_dist::{EdgeDist, Ensemble};
use iterlab::density_evolution::DeConfig;

fn main() -> iterlab::Result<()> {
    let b = BoundInput::new(0.1, 0.4, 0.01, 0.5)?;
    println!("LDPC bound:           {:.4}", ldpc_bound(b)?.value);
    println!("IRA systematic:       {:.4}", ira_bound(b, true)?.value);
    println!("IRA non-systematic:   {:.4}", ira_bound(b, false)?.value);
    println!("ARA at p = 0.5:       {:.4}", ara_bound(BoundInput::new(0.1, 0.5, 0.02, 0.5)?)?.value);
    println!("LDPC as P_b -> 0:     {:.4}", ldpc_bound_limit(0.1, 0.4, 0.5));

    let e = Ensemble::ldpc(EdgeDist::from_pairs(&[(2, 0.25), (3, 0.75)])?, EdgeDist::regular(6)?);
    let r = verify_bound(&e, &DeConfig::new(0.3, 1e-6, 100_000)?)?;
    println!(
        "measured {:?} iterations vs bound {:.2}: {}",
        r.measured_l,
        r.bound_l,
        r.status.name()
    );
    Ok(())
}
