//! Annihilator candidates: elements that no Busemann functional can tell
//! apart from the identity at large scale.

use horofunc::annihilator::{annihilator_candidates, index_bound_check, DEFAULT_GAP};
use horofunc::cayley::Ball;
use horofunc::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=6 {
        let (g, s) = catalog::cylinder(n);
        let m = if n == 6 { 4 } else { 3 };
        let ball = Ball::grow(&g, &s, 12 + m)?;
        let rep = annihilator_candidates(&ball, m, 12, DEFAULT_GAP)?;
        let verdict = index_bound_check(&rep, n as u64);
        let names: Vec<String> = rep.candidates.iter().map(|c| c.to_string()).collect();
        println!(
            "Z x Z/{n}: {{{}}} bound holds: {}, saturated: {}",
            names.join(", "),
            verdict.holds,
            verdict.saturated
        );
    }

    let (g, s) = catalog::fsf();
    let ball = Ball::grow(&g, &s, 12)?;
    let rep = annihilator_candidates(&ball, 2, 10, DEFAULT_GAP)?;
    print!("F S1 F on Z x Z/3:\n{}", rep.to_csv());
    Ok(())
}
