//! Characters, quadratic forms, local inner products and closed-form transforms.
use wid_measures::prelude::*;

fn main() -> wid_measures::Result<()> {
    let a = TorusPoint::from_angle(2.5)?;
    for ell in [-2, 1, 3] {
        let chi = TorusCharacter::new(ell);
        println!(
            "T: χ_{ell}(a) = {:.6}, g(a, χ) = {:+.6}, ψ_1(χ) = {}",
            Torus.eval(&chi, &a)?,
            Torus.local_inner_product(&a, &chi),
            Torus.quad_form(QuadraticForm::new(1.0)?, &chi)
        );
    }

    let g = PadicIntegers::new(Prime::new(5)?, 2)?;
    let x = g.element(vec![3, 1, 4])?;
    for (d, ell) in [(0, 1), (1, 7), (2, 60)] {
        let chi = g.character(d, ell)?;
        println!("Δ_5: χ_({d},{ell})(x) = {:.6}", g.eval(&chi, &x)?);
    }

    let s = Solenoid::new(Prime::new(3)?, 2)?;
    let y = s.point(0.7)?;
    let psi = QuadraticForm::new(2.0)?;
    for chi in [SolenoidCharacter::new(0, 1), SolenoidCharacter::new(1, 1), SolenoidCharacter::new(2, 4)] {
        println!(
            "S_3: χ_({},{})(y) = {:.6}, g = {:+.6}, ψ_2 = {:.6}, Gauss transform = {:.6}",
            chi.d,
            chi.ell,
            s.eval(&chi, &y)?,
            s.local_inner_product(&y, &chi),
            s.quad_form(psi, &chi),
            ft_gauss(&s, psi, &chi)
        );
    }

    let eta = LevyMeasure::new(&Torus, vec![LevyAtom::new(a, 1.5)])?;
    let chi = TorusCharacter::new(1);
    let gen = ft_gen_poisson(&Torus, &eta, &chi)?;
    println!(
        "T: generalized Poisson {gen:.6}, times drift phase {:.6}, compound Poisson {:.6}",
        gen * local_mean_phase(&Torus, &eta, &chi),
        ft_compound_poisson(&Torus, &eta, &chi)?
    );
    Ok(())
}
