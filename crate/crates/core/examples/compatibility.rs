//! Truncating a deep run agrees in law with sampling the shallow group directly.
use wid_measures::prelude::*;
use wid_measures::verify::{check_compatibility, SuiteSettings};

fn main() -> wid_measures::Result<()> {
    let g = PadicIntegers::new(Prime::new(2)?, 4)?;
    let eta = LevyMeasure::new(&g, vec![LevyAtom::new(g.element(vec![1, 1, 0, 1, 0])?, 1.2)])?;
    let q = Quadruplet::trivial(&g)
        .with_subgroup(PadicSubgroup::Lambda(1))
        .with_shift(g.element(vec![1, 0, 1, 1, 0])?)
        .with_levy(eta);
    for n in 1..=3 {
        let r = check_compatibility(&g, &q, n, &SuiteSettings::new(30_000, n as u64))?;
        println!(
            "Δ_2 depth 4 -> {n}: {} rows, max |Δ| = {:.2e}, pass = {}",
            r.rows.len(),
            r.max_abs_error(),
            r.overall_pass
        );
    }
    Ok(())
}
