//! Digit arithmetic in Δ_p, checked against big-integer arithmetic.
use wid_measures::prelude::*;
use wid_measures::verify::{oracle_padic_arithmetic, NativePadicOps};

fn show(x: &PadicInt) -> String {
    x.digits().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() -> wid_measures::Result<()> {
    let p = Prime::new(3)?;
    let x = PadicInt::new(p, vec![2, 2, 1, 0, 0, 0])?;
    let y = PadicInt::new(p, vec![1, 0, 2, 2, 0, 0])?;
    println!("x       = {}", show(&x));
    println!("y       = {}", show(&y));
    println!("x + y   = {}", show(&x.add(&y)?));
    println!("-x      = {}", show(&x.neg()));
    println!("x - x   = {}", show(&x.add(&x.neg())?));
    println!("3 * x   = {}  (digit 0 is always 0)", show(&x.mul_nat(3)));

    // φ sends an integer sequence (y_0, y_1, …) to Σ y_j p^j.
    let z = PadicInt::from_integers(p, &[-1, 0, 0, 0, 0, 0]);
    println!("φ(-1)   = {}", show(&z));

    let report = oracle_padic_arithmetic(&NativePadicOps, &[2, 3, 5], 16, 10_000, 7)?;
    println!(
        "oracle: {} primes x {} trials, {} mismatches",
        report.primes.len(),
        report.trials_per_prime,
        report.mismatches
    );
    Ok(())
}
