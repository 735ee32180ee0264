//! Haar measure on S_p from a uniform angle and uniform digits.
use wid_measures::prelude::*;
use wid_measures::sampling::{sample_solenoid_haar, RngStream, Seed};
use wid_measures::verify::empirical_cf;

fn main() -> wid_measures::Result<()> {
    let p = Prime::new(2)?;
    let g = Solenoid::new(p, 3)?;
    let n = 100_000;
    let bound = 4.0 / (n as f64).sqrt();
    let mut worst: f64 = 0.0;
    for (i, chi) in g.default_characters().iter().enumerate() {
        let mut rng = RngStream::new(Seed(0), i as u64);
        let z = empirical_cf(&g, chi, n, || sample_solenoid_haar(&mut rng, p, 3).expect("valid depth"))?;
        if chi.ell == 0 {
            assert_eq!(z.re, 1.0);
        } else {
            worst = worst.max(z.norm());
        }
    }
    println!("S_2, depth 3: max |E χ| over non-trivial characters = {worst:.4} (bound {bound:.4})");
    Ok(())
}
