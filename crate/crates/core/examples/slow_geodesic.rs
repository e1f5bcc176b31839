//! Bend scans along a geodesic to an annihilator element and the re-rooted
//! geodesic along which every stable functional stays bounded.

use horofunc::boundary::{bend_scan, boundary_approx, slow_geodesic};
use horofunc::cayley::Ball;
use horofunc::{catalog, Element};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, s) = catalog::cylinder_diagonal(30);
    let ball = Ball::grow(&g, &s, 94)?;
    let approx = boundary_approx(&ball, 64, 30)?;
    let x = Element::Abelian(vec![0, 15]);
    println!("|x| = {}", ball.norm(&x).expect("in ball"));

    let alpha = ball.geodesic_between(&g.identity(), &x)?;
    for c in approx.converged() {
        let scan = bend_scan(&alpha, 2, &c.functional, &ball)?;
        println!("class {}: phi = {:?}, max jump {}", c.witness, scan.phi, scan.max_jump());
    }

    let sg = slow_geodesic(&x, 2, 8, &ball, &approx)?;
    let path: Vec<String> = sg.beta.vertices.iter().map(|v| v.to_string()).collect();
    println!("beta = {}", path.join(" "));
    println!("h(beta_2) per class {:?}, bound {}", sg.values, sg.bound);
    Ok(())
}
