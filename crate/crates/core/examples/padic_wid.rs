//! Haar measure of Λ_r, a shift and a Poisson part on Δ_p.
use wid_measures::prelude::*;
use wid_measures::sampling::{QuadrupletSampler, RngStream, Seed};
use wid_measures::verify::{run_suite, SuiteSettings};

fn main() -> wid_measures::Result<()> {
    let g = PadicIntegers::new(Prime::new(3)?, 3)?;
    let eta = LevyMeasure::new(
        &g,
        vec![
            LevyAtom::new(g.element(vec![1, 0, 2, 0])?, 0.7),
            LevyAtom::new(g.element(vec![0, 2, 1, 1])?, 1.3),
        ],
    )?;
    let q = Quadruplet::trivial(&g)
        .with_subgroup(PadicSubgroup::Lambda(2))
        .with_shift(g.element(vec![2, 1, 0, 1])?)
        .with_levy(eta);

    let sampler = QuadrupletSampler::new(&g, &q)?;
    let mut rng = RngStream::new(Seed(5), 0);
    for x in sampler.sample_n(&mut rng, 5) {
        println!("sample digits {:?}", x.digits());
    }

    let report = run_suite(&g, &q, &g.default_characters(), &SuiteSettings::new(50_000, 5))?;
    let worst = report.rows.iter().max_by(|a, b| a.abs_error.total_cmp(&b.abs_error)).unwrap();
    println!(
        "{} characters, worst |Δ| = {:.2e} at {} (tolerance {:.2e})",
        report.rows.len(),
        worst.abs_error,
        worst.character,
        worst.tolerance
    );
    Ok(())
}
