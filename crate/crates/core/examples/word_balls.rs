//! Word-metric balls: sphere sizes, distances, geodesic segments and the
//! tree of geodesic prefixes that extend far.

use horofunc::cayley::Ball;
use horofunc::{catalog, Element};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, s) = catalog::cylinder(4);
    let ball = Ball::grow(&g, &s, 10)?;
    println!("Z x Z/4, |B_10| = {}, spheres {:?}", ball.len(), ball.layer_sizes());

    let x = Element::Abelian(vec![0, 0]);
    let y = Element::Abelian(vec![5, 2]);
    println!("d({x}, {y}) = {}", ball.distance(&x, &y)?);
    let seg = ball.segment(&x, &y)?;
    println!("segment has {} points", seg.len());

    let path = ball.geodesic_between(&x, &y)?;
    let labels: Vec<&str> = path
        .vertices
        .windows(2)
        .map(|w| {
            let step = g.mul(&g.inverse(&w[0]), &w[1]);
            s.label(s.position(&step).expect("generator"))
        })
        .collect();
    println!("one geodesic: {}", labels.join(" "));

    let tree = ball.geodesic_prefixes(2, 8)?;
    println!("{} length-2 prefixes extend to length 8", tree.leaves().count());
    print!("{}", tree.to_dot(&ball));
    Ok(())
}
