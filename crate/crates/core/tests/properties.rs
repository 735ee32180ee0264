use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use wid_measures::measure::{pushforward_padic, pushforward_solenoid, LevyAtom, LevyMeasure};
use wid_measures::prelude::*;
use wid_measures::verify::{run_suite, SuiteSettings};

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn arb_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn arb_padic_triple(len: usize) -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>, Vec<u32>)> {
    arb_prime().prop_flat_map(move |p| {
        let digits = prop::collection::vec(0..p, len);
        (Just(p), digits.clone(), digits.clone(), digits)
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn torus_measure(atoms: &[(f64, f64)]) -> LevyMeasure<TorusPoint> {
    let atoms = atoms
        .iter()
        .filter_map(|&(x, m)| {
            let x = TorusPoint::from_angle(x).unwrap();
            (!x.is_identity()).then(|| LevyAtom::new(x, m))
        })
        .collect();
    LevyMeasure::new(&Torus, atoms).unwrap()
}

fn solenoid_measure(g: &Solenoid, atoms: &[(f64, f64)]) -> LevyMeasure<SolenoidPoint> {
    let atoms = atoms
        .iter()
        .map(|&(x, m)| LevyAtom::new(g.point(x).unwrap(), m))
        .filter(|a| !g.is_identity(&a.point))
        .collect();
    LevyMeasure::new(g, atoms).unwrap()
}

fn padic_measure(g: &PadicIntegers, atoms: &[(Vec<u32>, f64)]) -> LevyMeasure<PadicInt> {
    let atoms = atoms
        .iter()
        .map(|(d, m)| LevyAtom::new(g.element(d.clone()).unwrap(), *m))
        .filter(|a| !g.is_identity(&a.point))
        .collect();
    LevyMeasure::new(g, atoms).unwrap()
}

fn arb_atoms() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-PI..PI, 0.05f64..3.0), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn padic_addition_is_commutative_and_associative((p, x, y, z) in arb_padic_triple(12)) {
        let p = prime(p);
        let x = PadicInt::new(p, x).unwrap();
        let y = PadicInt::new(p, y).unwrap();
        let z = PadicInt::new(p, z).unwrap();
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert!(x.add(&x.neg()).unwrap().digits().iter().all(|&d| d == 0));
    }

    #[test]
    fn characters_are_multiplicative_on_the_solenoid(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in -PI..PI, b in -PI..PI, d in 0usize..4, ell in -20i64..20,
    ) {
        let g = Solenoid::new(prime(p), 3).unwrap();
        let chi = SolenoidCharacter::new(d.min(3), ell);
        let (x, y) = (g.point(a).unwrap(), g.point(b).unwrap());
        let lhs = g.eval(&chi, &g.combine(&x, &y).unwrap()).unwrap();
        let rhs = g.eval(&chi, &x).unwrap() * g.eval(&chi, &y).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
        prop_assert!((lhs.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn characters_are_multiplicative_on_padic_integers((p, x, y, _) in arb_padic_triple(4), d in 0usize..4, ell in 0u64..500) {
        let g = PadicIntegers::new(prime(p), 3).unwrap();
        let m = prime(p).pow_u64(d + 1).unwrap();
        let chi = g.character(d, ell % m).unwrap();
        let (x, y) = (g.element(x).unwrap(), g.element(y).unwrap());
        let lhs = g.eval(&chi, &g.combine(&x, &y).unwrap()).unwrap();
        let rhs = g.eval(&chi, &x).unwrap() * g.eval(&chi, &y).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn quadratic_forms_satisfy_the_parallelogram_law(
        b in 0.0f64..5.0, l1 in -30i64..30, l2 in -30i64..30,
        p in prop::sample::select(vec![2u32, 3]), d1 in 0usize..4, d2 in 0usize..4,
    ) {
        let psi = QuadraticForm::new(b).unwrap();
        let (c1, c2) = (TorusCharacter::new(l1), TorusCharacter::new(l2));
        let lhs = Torus.quad_form(psi, &c1.product(c2)) + Torus.quad_form(psi, &c1.product(c2.inverse()));
        let rhs = 2.0 * (Torus.quad_form(psi, &c1) + Torus.quad_form(psi, &c2));
        prop_assert_eq!((l1 + l2).pow(2) + (l1 - l2).pow(2), 2 * (l1 * l1 + l2 * l2));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));

        let g = Solenoid::new(prime(p), 3).unwrap();
        let pr = prime(p);
        let (c1, c2) = (SolenoidCharacter::new(d1, l1), SolenoidCharacter::new(d2, l2));
        let lhs = g.quad_form(psi, &c1.product(c2, pr)) + g.quad_form(psi, &c1.product(c2.inverse(), pr));
        let rhs = 2.0 * (g.quad_form(psi, &c1) + g.quad_form(psi, &c2));
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn solenoid_inner_product_is_additive_and_odd(
        p in prop::sample::select(vec![2u32, 3]), a in -PI..PI,
        d1 in 0usize..4, d2 in 0usize..4, l1 in -10i64..10, l2 in -10i64..10,
    ) {
        let g = Solenoid::new(prime(p), 3).unwrap();
        let x = g.point(a).unwrap();
        let (c1, c2) = (SolenoidCharacter::new(d1, l1), SolenoidCharacter::new(d2, l2));
        let sum = g.local_inner_product(&x, &c1.product(c2, prime(p)));
        prop_assert!((sum - g.local_inner_product(&x, &c1) - g.local_inner_product(&x, &c2)).abs() < 1e-12);
        let back = g.local_inner_product(&g.inverse(&x), &c1);
        // h is odd except at the branch point −π, which has no negative.
        if g.real_coordinate(&x) != -PI {
            prop_assert!((back + g.local_inner_product(&x, &c1)).abs() < 1e-12);
        }
    }

    #[test]
    fn drift_identity_holds_for_random_measures(atoms in arb_atoms(), p in prop::sample::select(vec![2u32, 3])) {
        let eta = torus_measure(&atoms);
        for chi in Torus.default_characters() {
            let lhs = ft_gen_poisson(&Torus, &eta, &chi).unwrap() * local_mean_phase(&Torus, &eta, &chi);
            prop_assert!(close(lhs, ft_compound_poisson(&Torus, &eta, &chi).unwrap(), 1e-12));
        }
        let g = Solenoid::new(prime(p), 2).unwrap();
        let eta = solenoid_measure(&g, &atoms);
        for chi in g.default_characters() {
            let lhs = ft_gen_poisson(&g, &eta, &chi).unwrap() * local_mean_phase(&g, &eta, &chi);
            prop_assert!(close(lhs, ft_compound_poisson(&g, &eta, &chi).unwrap(), 1e-12));
        }
    }

    #[test]
    fn transforms_divide_exactly(atoms in arb_atoms(), b in 0.0f64..4.0, n in 1u32..8) {
        let psi = QuadraticForm::new(b).unwrap();
        let eta = torus_measure(&atoms);
        for chi in Torus.default_characters() {
            let whole = ft_gauss(&Torus, psi, &chi);
            let part = ft_gauss(&Torus, psi.divided(n), &chi).powu(n);
            prop_assert!(close(whole, part, 1e-12));
            let whole = ft_gen_poisson(&Torus, &eta, &chi).unwrap();
            let part = ft_gen_poisson(&Torus, &eta.divided(n), &chi).unwrap().powu(n);
            prop_assert!(close(whole, part, 1e-12));
        }
    }

    #[test]
    fn haar_transforms_are_idempotent(r in 0usize..5, cyc in 1u64..13, p in prop::sample::select(vec![2u32, 3])) {
        let check = |z: Complex64| z == z * z && (z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0));
        for chi in Torus.default_characters() {
            prop_assert!(check(ft_haar(&Torus, &TorusSubgroup::Cyclic(cyc), &chi)));
            prop_assert!(check(ft_haar(&Torus, &TorusSubgroup::Full, &chi)));
        }
        let g = PadicIntegers::new(prime(p), 3).unwrap();
        for chi in g.default_characters() {
            prop_assert!(check(ft_haar(&g, &PadicSubgroup::Lambda(r), &chi)));
        }
        let g = Solenoid::new(prime(p), 3).unwrap();
        for chi in g.default_characters() {
            prop_assert!(check(ft_haar(&g, &SolenoidSubgroup::Full, &chi)));
        }
    }

    #[test]
    fn padic_pushforwards_are_compatible(
        atoms in prop::collection::vec((prop::collection::vec(0u32..3, 5), 0.1f64..2.0), 1..5),
        z in prop::collection::vec(-PI..PI, 4),
        n in 0usize..4,
    ) {
        let g = PadicIntegers::new(prime(3), 4).unwrap();
        let eta = padic_measure(&g, &atoms);
        let fine = pushforward_padic(&eta, n + 1).unwrap();
        let coarse = pushforward_padic(&eta, n).unwrap();
        let mut extended = z[..=n].to_vec();
        extended.push(0.0);
        prop_assert!(close(fine.ft_compound_poisson(0.0, &extended), coarse.ft_compound_poisson(0.0, &z[..=n]), 1e-12));
    }

    #[test]
    fn solenoid_pushforwards_are_compatible(
        atoms in arb_atoms(), freq in -3.0f64..3.0,
        z in prop::collection::vec(-PI..PI, 3), n in 0usize..3,
    ) {
        let g = Solenoid::new(prime(2), 3).unwrap();
        let eta = solenoid_measure(&g, &atoms);
        let fine = pushforward_solenoid(&eta, n + 1).unwrap();
        let coarse = pushforward_solenoid(&eta, n).unwrap();
        let mut extended = z[..n].to_vec();
        extended.push(0.0);
        prop_assert!(close(fine.ft_gen_poisson(freq, &extended), coarse.ft_gen_poisson(freq, &z[..n]), 1e-12));
        prop_assert!(close(fine.ft_compound_poisson(freq, &extended), coarse.ft_compound_poisson(freq, &z[..n]), 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn suites_are_reproducible(seed in any::<u64>(), b in 0.0f64..2.0, atoms in arb_atoms()) {
        let q = Quadruplet::trivial(&Torus)
            .with_gauss(QuadraticForm::new(b).unwrap())
            .with_levy(torus_measure(&atoms));
        let s = SuiteSettings::new(500, seed);
        let chars = Torus.default_characters();
        let a = run_suite(&Torus, &q, &chars, &s).unwrap();
        let b = run_suite(&Torus, &q, &chars, &s).unwrap();
        prop_assert_eq!(&a.rows, &b.rows);
        prop_assert!(a.rows.iter().all(|r| (r.tolerance - 4.0 / 500f64.sqrt()).abs() < 1e-15));
    }

    #[test]
    fn annihilating_characters_are_exact(r in 0usize..4, seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let g = PadicIntegers::new(prime(p), 3).unwrap();
        let h = PadicSubgroup::Lambda(r);
        let chars: Vec<_> = g.default_characters().into_iter().filter(|c| g.annihilates(&h, c)).collect();
        let q = Quadruplet::trivial(&g).with_subgroup(h);
        let rep = run_suite(&g, &q, &chars, &SuiteSettings::new(300, seed)).unwrap();
        prop_assert!(rep.rows.iter().all(|row| row.theory == row.empirical && row.abs_error == 0.0));

        let g = Solenoid::new(prime(p), 3).unwrap();
        let q = Quadruplet::trivial(&g).with_subgroup(SolenoidSubgroup::Full);
        let chars: Vec<_> = g.default_characters().into_iter().filter(|c| c.ell == 0).collect();
        let rep = run_suite(&g, &q, &chars, &SuiteSettings::new(300, seed)).unwrap();
        prop_assert!(rep.rows.iter().all(|row| row.theory == row.empirical));

        let q = Quadruplet::trivial(&Torus).with_subgroup(TorusSubgroup::Cyclic(r as u64 + 1));
        let chars: Vec<_> = Torus.default_characters().into_iter().filter(|c| c.ell % (r as i64 + 1) == 0).collect();
        let rep = run_suite(&Torus, &q, &chars, &SuiteSettings::new(300, seed)).unwrap();
        prop_assert!(rep.rows.iter().all(|row| row.abs_error < 1e-12));
    }
}
