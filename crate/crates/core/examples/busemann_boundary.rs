//! Truncated boundaries: restriction classes of Busemann functionals on Z
//! stay at two, while on Z^2 they keep appearing as the radius grows.

use horofunc::boundary::{action_table, boundary_approx, index_estimate};
use horofunc::cayley::Ball;
use horofunc::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, s) = catalog::line();
    let ball = Ball::grow(&g, &s, 15)?;
    for r in [6, 9, 12] {
        let a = boundary_approx(&ball, r, 3)?;
        println!("Z   r={r:>2} m=3: {} classes, {} stable", a.class_count(), a.stable_count());
    }

    let (g, s) = catalog::z2_standard();
    let ball = Ball::grow(&g, &s, 12)?;
    for r in [4, 7, 10] {
        let a = boundary_approx(&ball, r, 2)?;
        println!("Z^2 r={r:>2} m=2: {} classes, {} stable", a.class_count(), a.stable_count());
    }

    let (g, s) = catalog::cylinder(4);
    let ball = Ball::grow(&g, &s, 18)?;
    let a = boundary_approx(&ball, 12, 3)?;
    for c in a.converged() {
        println!("cylinder class witnessed by {} ({} sphere points)", c.witness, c.count);
    }
    let table = action_table(&a, &ball)?;
    for e in &table.entries {
        println!("{} sends class {} onto classes {:?}", e.generator, e.class, e.matches);
    }
    println!("[G:K] estimate {:?}", index_estimate(&a, &ball)?);
    Ok(())
}
