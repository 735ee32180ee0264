//! n-th roots: a centered quadruplet is the n-fold convolution of (H, e, ψ/n, η/n).
use wid_measures::prelude::*;
use wid_measures::verify::{check_divisibility, SuiteSettings};

fn main() -> wid_measures::Result<()> {
    let g = Solenoid::new(Prime::new(2)?, 3)?;
    let eta = LevyMeasure::new(
        &g,
        vec![LevyAtom::new(g.point(0.3)?, 0.8), LevyAtom::new(g.point(-1.9)?, 0.5)],
    )?;
    let q = Quadruplet::trivial(&g).with_gauss(QuadraticForm::new(0.7)?).with_levy(eta);
    let root = q.root(&g, 4)?;
    println!("root: b = {}, total mass = {}", root.gauss.b(), root.levy.total_mass());

    let report = check_divisibility(&g, &q, 4, &g.default_characters(), &SuiteSettings::new(50_000, 9))?;
    println!(
        "sum of 4 root samples vs transform of q: {} rows, max |Δ| = {:.2e}, pass = {}",
        report.rows.len(),
        report.max_abs_error(),
        report.overall_pass
    );
    Ok(())
}
