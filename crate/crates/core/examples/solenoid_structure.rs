//! Points of S_p: coordinates, the maps φ and τ, and truncation.
use wid_measures::prelude::*;

fn main() -> wid_measures::Result<()> {
    let g = Solenoid::new(Prime::new(2)?, 4)?;
    let x = g.point(1.0)?;
    println!("deep angle 1.0 at depth 4, p = 2");
    for (j, y) in x.coordinates().iter().enumerate() {
        println!("  y_{j} = {y:+.12}");
    }

    let t = x.tau()?;
    println!("τ(x) = ({:.12}; {:?})", t.real, t.ints);
    let back = g.phi(&t)?;
    println!("φ(τ(x)) == x: {}", back == x);

    // φ of a real shift by 2π moves y_0 by a full turn but not y_1.
    let shifted = g.phi(&RealIntSequence::new(2.0 * std::f64::consts::PI, vec![0; 4]))?;
    println!("φ(2π; 0) coordinates: {:?}", shifted.coordinates());

    let shallow = x.truncated(2);
    println!("truncated to depth 2: {:?}", shallow.coordinates());
    Ok(())
}
