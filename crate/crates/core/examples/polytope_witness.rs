//! The convex-geometry construction for virtually abelian groups: cycle
//! labels, the conjugation cloud and its hull, a 1-Lipschitz homomorphism,
//! and a certificate of many distinct Busemann points.

use horofunc::catalog;
use horofunc::convex::{ratio_string, vector_string, DEFAULT_DIMENSION_CAP};
use horofunc::vabelian::{infinite_boundary_witness, lipschitz_hom, polytope_of, ExtremeSelector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, (g, s)) in [("Z^2", catalog::z2_standard()), ("p4", catalog::p4())] {
        let (view, ball, cycles, cloud, p) = polytope_of(&g, &s, DEFAULT_DIMENSION_CAP)?;
        println!("{name}: {} cycle labels, {} cloud points", cycles.labels.len(), cloud.points.len());
        for v in &p.vertices {
            println!("  vertex {}", vector_string(v));
        }
        for h in &p.inequalities {
            println!("  {:?} . x <= {}", h.normal, h.bound);
        }
        let data = lipschitz_hom(&p, &cloud, &ExtremeSelector::Lex, &view, &ball)?;
        let phi: Vec<String> = data.functional.iter().map(ratio_string).collect();
        println!(
            "  f = ({}) . xi, x = {}, p = {}, equality locus {} points",
            phi.join(", "),
            data.primitive,
            data.power,
            data.equality_locus.len()
        );

        let rep = infinite_boundary_witness(&g, &s, 5, 14, 2, &ExtremeSelector::Lex, DEFAULT_DIMENSION_CAP)?;
        for w in &rep.witnesses {
            println!("  y = {:<10} n = {:>2}  endpoint {}", w.representative.to_string(), w.exponent, w.endpoint);
        }
        println!("  {} pairwise distinct: {}", rep.witnesses.len(), rep.pairwise_distinct);
    }
    Ok(())
}
