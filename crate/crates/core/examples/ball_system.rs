//! An integer-valued left-invariant metric on the lamplighter in which every
//! lamp configuration is eventually invisible.

use horofunc::catalog;
use horofunc::metrics::{bs_annihilator_check, build_ball_system, lamp_chain, metric_axiom_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, s) = catalog::lamplighter();
    let n_max = 4;
    let bs = build_ball_system(&g, &s, &lamp_chain(n_max), n_max)?;
    println!("|B_n| = {:?}", bs.layer_sizes());

    let axioms = metric_axiom_check(&bs, n_max as u32)?;
    println!("axioms hold on {} pairs", axioms.pairs_checked);

    for f in bs.chain_member(1) {
        let rep = bs_annihilator_check(&bs, f, 1)?;
        println!(
            "f = {:<12} checked {} elements, {} violations, {} exceptions below norm {}",
            f.to_string(),
            rep.checked,
            rep.violations.len(),
            rep.exceptions.len(),
            rep.threshold
        );
    }
    Ok(())
}
