//! Sampling a full quadruplet on the torus and comparing with its transform.
use wid_measures::prelude::*;
use wid_measures::verify::{run_suite, SuiteSettings};

fn main() -> wid_measures::Result<()> {
    let eta = LevyMeasure::new(
        &Torus,
        vec![
            LevyAtom::new(TorusPoint::from_angle(0.7)?, 0.8),
            LevyAtom::new(TorusPoint::from_angle(-2.1)?, 0.5),
        ],
    )?;
    let q = Quadruplet::trivial(&Torus)
        .with_subgroup(TorusSubgroup::Cyclic(3))
        .with_shift(TorusPoint::from_angle(1.1)?)
        .with_gauss(QuadraticForm::new(0.4)?)
        .with_levy(eta);

    let report = run_suite(&Torus, &q, &Torus.default_characters(), &SuiteSettings::new(100_000, 1))?;
    println!("{:>6} {:>24} {:>24} {:>9}", "ℓ", "theory", "empirical", "|Δ|");
    for row in &report.rows {
        println!(
            "{:>6} {:>24.5} {:>24.5} {:>9.2e}",
            row.character, row.theory, row.empirical, row.abs_error
        );
    }
    println!("overall: {}", if report.overall_pass { "pass" } else { "FAIL" });
    Ok(())
}
