//! Quadruplets (H, a, ψ, η), finite atomic Lévy measures, their pushforwards
//! to products of subgroups of ℝ, and closed-form Fourier transforms.
//!
//! Every weakly infinitely divisible law is ω_H ∗ δ_a ∗ γ_ψ ∗ π_{η,g}, so its
//! transform is the product of the four factor transforms:
//!
//! * ω̂_H(χ) = 1 on the annihilator of H, 0 elsewhere;
//! * δ̂_a(χ) = χ(a);
//! * γ̂_ψ(χ) = e^{−ψ(χ)/2};
//! * π̂_{η,g}(χ) = exp Σ_atoms m (χ(x) − 1 − i g(x, χ)).
//!
//! Only finite atomic η are supported, which makes all of these closed form.

use num_complex::Complex64;

use crate::duality::{h, unit, PadicCharacter, QuadraticForm, SolenoidCharacter};
use crate::error::{Error, Result};
use crate::group::{LcaGroup, PadicInt, Prime, SolenoidPoint, TorusPoint, Truncate};

#[derive(Clone, Debug, PartialEq)]
pub struct LevyAtom<E> {
    pub point: E,
    pub mass: f64,
}

impl<E> LevyAtom<E> {
    pub fn new(point: E, mass: f64) -> Self {
        LevyAtom { point, mass }
    }
}

/// A finite atomic Lévy measure: positive masses at distinct non-identity points.
#[derive(Clone, Debug, PartialEq)]
pub struct LevyMeasure<E> {
    atoms: Vec<LevyAtom<E>>,
}

impl<E> Default for LevyMeasure<E> {
    fn default() -> Self {
        LevyMeasure { atoms: Vec::new() }
    }
}

impl<E: Clone + PartialEq> LevyMeasure<E> {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates the atoms against `group` and merges repeated points.
    pub fn new<G>(group: &G, atoms: Vec<LevyAtom<E>>) -> Result<Self>
    where
        G: LcaGroup<Element = E>,
    {
        let mut merged: Vec<LevyAtom<E>> = Vec::with_capacity(atoms.len());
        for (index, atom) in atoms.into_iter().enumerate() {
            check_atom(group, index, &atom)?;
            match merged.iter_mut().find(|a| a.point == atom.point) {
                Some(existing) => existing.mass += atom.mass,
                None => merged.push(atom),
            }
        }
        Ok(LevyMeasure { atoms: merged })
    }

    pub fn atoms(&self) -> &[LevyAtom<E>] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    /// η / n.
    pub fn divided(&self, n: u32) -> Self {
        LevyMeasure {
            atoms: self
                .atoms
                .iter()
                .map(|a| LevyAtom::new(a.point.clone(), a.mass / n as f64))
                .collect(),
        }
    }
}

fn check_atom<G: LcaGroup>(group: &G, index: usize, atom: &LevyAtom<G::Element>) -> Result<()> {
    if !(atom.mass.is_finite() && atom.mass > 0.0) {
        return Err(Error::InvalidMass {
            index,
            mass: atom.mass,
        });
    }
    group.check_element(&atom.point)?;
    if group.is_identity(&atom.point) {
        return Err(Error::AtomAtIdentity { index });
    }
    Ok(())
}

/// The parameters (H, a, ψ_b, η) of ω_H ∗ δ_a ∗ γ_ψ ∗ π_{η,g}.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadruplet<G: LcaGroup> {
    pub subgroup: G::Subgroup,
    pub shift: G::Element,
    pub gauss: QuadraticForm,
    pub levy: LevyMeasure<G::Element>,
}

impl<G: LcaGroup> Quadruplet<G> {
    /// ({e}, e, 0, 0), the point mass at the identity.
    pub fn trivial(group: &G) -> Self {
        Quadruplet {
            subgroup: group.trivial_subgroup(),
            shift: group.identity(),
            gauss: QuadraticForm::ZERO,
            levy: LevyMeasure::empty(),
        }
    }

    pub fn with_subgroup(mut self, subgroup: G::Subgroup) -> Self {
        self.subgroup = subgroup;
        self
    }

    pub fn with_shift(mut self, shift: G::Element) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_gauss(mut self, gauss: QuadraticForm) -> Self {
        self.gauss = gauss;
        self
    }

    pub fn with_levy(mut self, levy: LevyMeasure<G::Element>) -> Self {
        self.levy = levy;
        self
    }

    pub fn validate(&self, group: &G) -> Result<()> {
        group.check_subgroup(&self.subgroup)?;
        group.check_element(&self.shift)?;
        if !group.admits_gauss() && !self.gauss.is_zero() {
            return Err(Error::GaussOnPadic(self.gauss.b()));
        }
        for (index, atom) in self.levy.atoms().iter().enumerate() {
            check_atom(group, index, atom)?;
        }
        Ok(())
    }

    /// Whether H is trivial and a = e.
    pub fn is_centered(&self, group: &G) -> bool {
        group.is_trivial_subgroup(&self.subgroup) && group.is_identity(&self.shift)
    }

    /// The n-th convolution root ({e}, e, ψ/n, η/n) of a centered quadruplet.
    pub fn root(&self, group: &G, n: u32) -> Result<Self> {
        if !self.is_centered(group) {
            return Err(Error::NotCentered);
        }
        if n == 0 {
            return Err(Error::InvalidArgument("root order must be positive".into()));
        }
        Ok(Quadruplet {
            subgroup: self.subgroup,
            shift: self.shift.clone(),
            gauss: self.gauss.divided(n),
            levy: self.levy.divided(n),
        })
    }
}

impl<G: Truncate> Quadruplet<G> {
    /// The image under projection to coordinates 0..=depth. Atoms that land
    /// on the identity are dropped; they contribute nothing to any
    /// transform at characters of depth ≤ `depth`.
    pub fn truncated(&self, group: &G, depth: usize) -> Result<(G, Self)> {
        let shallow = group.at_depth(depth)?;
        let atoms = self
            .levy
            .atoms()
            .iter()
            .map(|a| LevyAtom::new(group.truncate_element(&a.point, depth), a.mass))
            .filter(|a| !shallow.is_identity(&a.point))
            .collect();
        let q = Quadruplet {
            subgroup: group.truncate_subgroup(&self.subgroup, depth),
            shift: group.truncate_element(&self.shift, depth),
            gauss: self.gauss,
            levy: LevyMeasure::new(&shallow, atoms)?,
        };
        Ok((shallow, q))
    }
}

/// ω̂_H(χ): 1 if χ annihilates H, else 0.
pub fn ft_haar<G: LcaGroup>(group: &G, subgroup: &G::Subgroup, chi: &G::Character) -> Complex64 {
    if group.annihilates(subgroup, chi) {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// δ̂_a(χ) = χ(a).
pub fn ft_dirac<G: LcaGroup>(group: &G, a: &G::Element, chi: &G::Character) -> Result<Complex64> {
    group.eval(chi, a)
}

/// γ̂_ψ(χ) = e^{−ψ(χ)/2}.
pub fn ft_gauss<G: LcaGroup>(group: &G, psi: QuadraticForm, chi: &G::Character) -> Complex64 {
    Complex64::new((-group.quad_form(psi, chi) / 2.0).exp(), 0.0)
}

/// Transform of the compound Poisson measure e(η): exp Σ m (χ(x) − 1).
pub fn ft_compound_poisson<G: LcaGroup>(
    group: &G,
    eta: &LevyMeasure<G::Element>,
    chi: &G::Character,
) -> Result<Complex64> {
    let mut exponent = Complex64::new(0.0, 0.0);
    for atom in eta.atoms() {
        exponent += atom.mass * (group.eval(chi, &atom.point)? - 1.0);
    }
    Ok(exponent.exp())
}

/// Transform of the generalized Poisson measure π_{η,g}:
/// exp Σ m (χ(x) − 1 − i g(x, χ)).
pub fn ft_gen_poisson<G: LcaGroup>(
    group: &G,
    eta: &LevyMeasure<G::Element>,
    chi: &G::Character,
) -> Result<Complex64> {
    let mut exponent = Complex64::new(0.0, 0.0);
    for atom in eta.atoms() {
        let g = group.local_inner_product(&atom.point, chi);
        exponent += atom.mass * (group.eval(chi, &atom.point)? - Complex64::new(1.0, g));
    }
    Ok(exponent.exp())
}

/// Product of the four factor transforms.
pub fn ft_quadruplet<G: LcaGroup>(group: &G, q: &Quadruplet<G>, chi: &G::Character) -> Result<Complex64> {
    let haar = ft_haar(group, &q.subgroup, chi);
    if haar.re == 0.0 {
        return Ok(haar);
    }
    Ok(haar
        * ft_dirac(group, &q.shift, chi)?
        * ft_gauss(group, q.gauss, chi)
        * ft_gen_poisson(group, &q.levy, chi)?)
}

/// The real drift s = Σ m h(real coordinate of x) carried by the local mean
/// m_g(η): e(η) = π_{η,g} ∗ δ_{m_g(η)}, and χ(m_g(η)) = e^{i y s} with y the
/// drift frequency of χ. Always 0 on Δ_p.
pub fn local_mean_drift<G: LcaGroup>(group: &G, eta: &LevyMeasure<G::Element>) -> f64 {
    eta.atoms()
        .iter()
        .map(|a| a.mass * h(group.real_coordinate(&a.point)))
        .sum()
}

/// χ(m_g(η)) = e^{i y s}.
pub fn local_mean_phase<G: LcaGroup>(group: &G, eta: &LevyMeasure<G::Element>, chi: &G::Character) -> Complex64 {
    unit(group.drift_frequency(chi) * local_mean_drift(group, eta))
}

/// An atom of a finite measure on ℝ × ℤ^n.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeAtom {
    pub real: f64,
    pub ints: Vec<i64>,
    pub mass: f64,
}

/// A finite measure on ℝ × ℤ^n (or on ℤ^n when `has_real` is false) with no
/// atom at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeMeasure {
    has_real: bool,
    dim: usize,
    atoms: Vec<LatticeAtom>,
}

impl LatticeMeasure {
    pub fn empty(has_real: bool, dim: usize) -> Self {
        LatticeMeasure {
            has_real,
            dim,
            atoms: Vec::new(),
        }
    }

    /// Builds the measure, summing masses of repeated points and dropping
    /// atoms at the origin.
    pub fn new(has_real: bool, dim: usize, atoms: Vec<LatticeAtom>) -> Result<Self> {
        let mut out = LatticeMeasure::empty(has_real, dim);
        for (index, atom) in atoms.into_iter().enumerate() {
            if !(atom.mass.is_finite() && atom.mass > 0.0) {
                return Err(Error::InvalidMass {
                    index,
                    mass: atom.mass,
                });
            }
            if atom.ints.len() != dim || (!has_real && atom.real != 0.0) || !atom.real.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "lattice atom {index} does not live in the target lattice"
                )));
            }
            if atom.real == 0.0 && atom.ints.iter().all(|&k| k == 0) {
                continue;
            }
            match out
                .atoms
                .iter_mut()
                .find(|a| a.real == atom.real && a.ints == atom.ints)
            {
                Some(existing) => existing.mass += atom.mass,
                None => out.atoms.push(atom),
            }
        }
        Ok(out)
    }

    pub fn has_real(&self) -> bool {
        self.has_real
    }

    /// Number of integer coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[LatticeAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    fn phase(atom: &LatticeAtom, freq: f64, z: &[f64]) -> f64 {
        freq * atom.real
            + atom
                .ints
                .iter()
                .zip(z)
                .map(|(&k, &theta)| k as f64 * theta)
                .sum::<f64>()
    }

    /// Transform of e(η) at the character χ_{y,z}(x, ℓ) = e^{iyx} Π z_k^{ℓ_k},
    /// with z_k given by its angle. Missing angles are taken as 0 (z_k = 1).
    pub fn ft_compound_poisson(&self, freq: f64, z: &[f64]) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| a.mass * (unit(Self::phase(a, freq, z)) - 1.0))
            .sum::<Complex64>()
            .exp()
    }

    /// Transform of π_{η,g} with g((x, ℓ), χ_{y,z}) = y h(x).
    pub fn ft_gen_poisson(&self, freq: f64, z: &[f64]) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| a.mass * (unit(Self::phase(a, freq, z)) - Complex64::new(1.0, freq * h(a.real))))
            .sum::<Complex64>()
            .exp()
    }
}

/// arg∘η on ℝ.
pub fn pushforward_torus(eta: &LevyMeasure<TorusPoint>) -> LatticeMeasure {
    let atoms = eta
        .atoms()
        .iter()
        .map(|a| LatticeAtom {
            real: a.point.angle(),
            ints: Vec::new(),
            mass: a.mass,
        })
        .collect();
    LatticeMeasure::new(true, 0, atoms).expect("atoms of a Lévy measure are valid")
}

/// η_{n+1} on ℤ^{n+1}: the law of the digit prefix (x_0, …, x_n), with the
/// zero prefix dropped.
pub fn pushforward_padic(eta: &LevyMeasure<PadicInt>, n: usize) -> Result<LatticeMeasure> {
    let atoms = eta
        .atoms()
        .iter()
        .map(|a| {
            if a.point.len() < n + 1 {
                return Err(Error::CharacterDepth {
                    depth: n,
                    max: a.point.len().saturating_sub(1),
                });
            }
            Ok(LatticeAtom {
                real: 0.0,
                ints: a.point.digits()[..=n].iter().map(|&d| d as i64).collect(),
                mass: a.mass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeMeasure::new(false, n + 1, atoms)
}

/// η_{n+1} on ℝ × ℤ^n: the law of (τ(x)_0, τ(x)_1, …, τ(x)_n), with the
/// origin dropped.
pub fn pushforward_solenoid(eta: &LevyMeasure<SolenoidPoint>, n: usize) -> Result<LatticeMeasure> {
    let atoms = eta
        .atoms()
        .iter()
        .map(|a| {
            if n > a.point.depth() {
                return Err(Error::CoordinateOutOfRange {
                    index: n,
                    depth: a.point.depth(),
                });
            }
            let t = a.point.tau()?;
            Ok(LatticeAtom {
                real: t.real,
                ints: t.ints[..n].to_vec(),
                mass: a.mass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeMeasure::new(true, n, atoms)
}

/// χ_{d,ℓ}∘φ on ℤ^{dim} as angles z_j = 2π ℓ p^j / p^{d+1} (j ≤ d).
pub fn padic_character_on_lattice(p: Prime, chi: PadicCharacter, dim: usize) -> Vec<f64> {
    let m = p.pow_u64(chi.d() + 1).expect("valid character") as u128;
    let mut weight = 1u128;
    (0..dim)
        .map(|j| {
            if j > chi.d() {
                return 0.0;
            }
            let k = chi.ell() as u128 * weight % m;
            weight = weight * p.get() as u128 % m;
            std::f64::consts::TAU * (k as f64 / m as f64)
        })
        .collect()
}

/// χ_{d,ℓ}∘φ on ℝ × ℤ^{dim}: frequency ℓ/p^d on the real axis and angles
/// z_k = 2π ℓ p^{k−1} / p^d (1 ≤ k ≤ d).
pub fn solenoid_character_on_lattice(p: Prime, chi: SolenoidCharacter, dim: usize) -> (f64, Vec<f64>) {
    let pd = (p.get() as f64).powi(chi.d as i32);
    let freq = chi.ell as f64 / pd;
    let z = (1..=dim)
        .map(|k| {
            if k > chi.d {
                0.0
            } else {
                std::f64::consts::TAU * chi.ell as f64 * (p.get() as f64).powi(k as i32 - 1) / pd
            }
        })
        .collect();
    (freq, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::TorusCharacter;
    use crate::group::{PadicIntegers, PadicSubgroup, Solenoid, SolenoidSubgroup, Torus, TorusSubgroup};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn torus_eta(atoms: &[(f64, f64)]) -> LevyMeasure<TorusPoint> {
        LevyMeasure::new(
            &Torus,
            atoms
                .iter()
                .map(|&(a, m)| LevyAtom::new(TorusPoint::from_angle(a).unwrap(), m))
                .collect(),
        )
        .unwrap()
    }

    fn padic_fixture() -> (PadicIntegers, LevyMeasure<PadicInt>) {
        let g = PadicIntegers::new(prime(3), 3).unwrap();
        let eta = LevyMeasure::new(
            &g,
            vec![
                LevyAtom::new(g.element(vec![1, 0, 2, 0]).unwrap(), 0.7),
                LevyAtom::new(g.element(vec![0, 2, 1, 1]).unwrap(), 1.3),
                LevyAtom::new(g.element(vec![0, 0, 0, 1]).unwrap(), 0.4),
            ],
        )
        .unwrap();
        (g, eta)
    }

    fn solenoid_fixture() -> (Solenoid, LevyMeasure<SolenoidPoint>) {
        let g = Solenoid::new(prime(2), 3).unwrap();
        let eta = LevyMeasure::new(
            &g,
            vec![
                LevyAtom::new(g.point(0.3).unwrap(), 0.8),
                LevyAtom::new(g.point(-1.9).unwrap(), 0.5),
                LevyAtom::new(g.point(2.7).unwrap(), 1.1),
            ],
        )
        .unwrap();
        (g, eta)
    }

    #[test]
    fn validation_examples() {
        Quadruplet::trivial(&Torus).validate(&Torus).unwrap();
        let err = LevyMeasure::new(&Torus, vec![LevyAtom::new(TorusPoint::IDENTITY, 1.0)]).unwrap_err();
        assert_eq!(err, Error::AtomAtIdentity { index: 0 });
        assert!(err.to_string().contains("η({e})=0"));
        let g = PadicIntegers::new(prime(2), 2).unwrap();
        let q = Quadruplet::trivial(&g).with_gauss(QuadraticForm::new(0.5).unwrap());
        assert_eq!(q.validate(&g).unwrap_err(), Error::GaussOnPadic(0.5));
    }

    #[test]
    fn validation_rejects_bad_masses_and_depths() {
        let x = TorusPoint::from_angle(1.0).unwrap();
        for m in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                LevyMeasure::new(&Torus, vec![LevyAtom::new(x, m)]),
                Err(Error::InvalidMass { .. })
            ));
        }
        let g3 = PadicIntegers::new(prime(2), 3).unwrap();
        let g2 = PadicIntegers::new(prime(2), 2).unwrap();
        let q = Quadruplet::trivial(&g3);
        assert!(q.validate(&g2).is_err());
        assert!(Quadruplet::trivial(&g2)
            .with_subgroup(PadicSubgroup::Lambda(5))
            .validate(&g2)
            .is_err());
    }

    #[test]
    fn duplicate_atoms_merge() {
        let eta = torus_eta(&[(0.5, 1.0), (1.5, 2.0), (0.5, 0.25)]);
        assert_eq!(eta.atoms().len(), 2);
        assert_eq!(eta.atoms()[0].mass, 1.25);
    }

    #[test]
    fn haar_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(ft_haar(&Torus, &TorusSubgroup::Cyclic(2), &TorusCharacter::new(4)), one);
        assert_eq!(ft_haar(&Torus, &TorusSubgroup::Full, &TorusCharacter::new(1)), zero);
        let g = PadicIntegers::new(prime(2), 2).unwrap();
        assert_eq!(ft_haar(&g, &PadicSubgroup::Lambda(1), &g.character(0, 1).unwrap()), one);
        assert_eq!(ft_haar(&g, &PadicSubgroup::Lambda(0), &g.character(0, 1).unwrap()), zero);
    }

    #[test]
    fn haar_transform_is_idempotent() {
        for r in 1..6 {
            for l in -10..10 {
                let v = ft_haar(&Torus, &TorusSubgroup::Cyclic(r), &TorusCharacter::new(l));
                assert_eq!(v * v, v);
            }
        }
    }

    #[test]
    fn dirac_and_gauss_examples() {
        let chi = TorusCharacter::new(1);
        assert_eq!(ft_dirac(&Torus, &TorusPoint::IDENTITY, &chi).unwrap(), Complex64::new(1.0, 0.0));
        let a = TorusPoint::from_angle(FRAC_PI_2).unwrap();
        assert!(close(ft_dirac(&Torus, &a, &chi).unwrap(), Complex64::new(0.0, 1.0), 1e-15));
        let s = Solenoid::new(prime(2), 3).unwrap();
        assert_eq!(
            ft_dirac(&s, &s.identity(), &SolenoidCharacter::new(2, 7)).unwrap(),
            Complex64::new(1.0, 0.0)
        );

        assert_eq!(ft_gauss(&Torus, QuadraticForm::ZERO, &TorusCharacter::new(5)).re, 1.0);
        let v = ft_gauss(&Torus, QuadraticForm::new(2.0).unwrap(), &TorusCharacter::new(3));
        assert_eq!(v, Complex64::new((-9.0f64).exp(), 0.0));
        let v = ft_gauss(&s, QuadraticForm::new(1.0).unwrap(), &SolenoidCharacter::new(2, 3));
        assert_eq!(v, Complex64::new((-9.0f64 / 32.0).exp(), 0.0));
    }

    #[test]
    fn poisson_examples() {
        let chi = TorusCharacter::new(3);
        let empty = LevyMeasure::empty();
        assert_eq!(ft_compound_poisson(&Torus, &empty, &chi).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(ft_gen_poisson(&Torus, &empty, &chi).unwrap(), Complex64::new(1.0, 0.0));

        let (theta, lambda) = (0.9, 1.7);
        let single = torus_eta(&[(theta, lambda)]);
        let expected = (lambda * (Complex64::new(0.0, 3.0 * theta).exp() - 1.0)).exp();
        assert!(close(ft_compound_poisson(&Torus, &single, &chi).unwrap(), expected, 1e-14));

        let other = torus_eta(&[(-2.0, 0.6)]);
        let both = torus_eta(&[(theta, lambda), (-2.0, 0.6)]);
        let product = ft_compound_poisson(&Torus, &single, &chi).unwrap()
            * ft_compound_poisson(&Torus, &other, &chi).unwrap();
        assert!(close(ft_compound_poisson(&Torus, &both, &chi).unwrap(), product, 1e-14));

        let eta = torus_eta(&[(FRAC_PI_4, 1.0)]);
        let expected = (Complex64::new(0.0, FRAC_PI_4).exp() - Complex64::new(1.0, FRAC_PI_4)).exp();
        let got = ft_gen_poisson(&Torus, &eta, &TorusCharacter::new(1)).unwrap();
        assert!(close(got, expected, 1e-15));
    }

    #[test]
    fn padic_generalized_equals_compound() {
        let (g, eta) = padic_fixture();
        for chi in g.default_characters() {
            assert_eq!(
                ft_gen_poisson(&g, &eta, &chi).unwrap(),
                ft_compound_poisson(&g, &eta, &chi).unwrap()
            );
        }
        assert_eq!(local_mean_drift(&g, &eta), 0.0);
    }

    #[test]
    fn quadruplet_examples() {
        let s = Solenoid::new(prime(3), 2).unwrap();
        for chi in s.default_characters() {
            assert_eq!(ft_quadruplet(&s, &Quadruplet::trivial(&s), &chi).unwrap(), Complex64::new(1.0, 0.0));
        }
        let q = Quadruplet::trivial(&Torus)
            .with_subgroup(TorusSubgroup::Full)
            .with_gauss(QuadraticForm::new(0.3).unwrap())
            .with_shift(TorusPoint::from_angle(1.0).unwrap())
            .with_levy(torus_eta(&[(0.4, 2.0)]));
        for l in -5..=5 {
            let v = ft_quadruplet(&Torus, &q, &TorusCharacter::new(l)).unwrap();
            if l != 0 {
                assert_eq!(v, Complex64::new(0.0, 0.0));
            } else {
                assert!(close(v, Complex64::new(1.0, 0.0), 1e-15));
            }
        }
        let q = q.with_subgroup(TorusSubgroup::Cyclic(2));
        let chi = TorusCharacter::new(4);
        let product = ft_dirac(&Torus, &q.shift, &chi).unwrap()
            * ft_gauss(&Torus, q.gauss, &chi)
            * ft_gen_poisson(&Torus, &q.levy, &chi).unwrap();
        assert!(close(ft_quadruplet(&Torus, &q, &chi).unwrap(), product, 1e-15));
    }

    #[test]
    fn drift_examples() {
        assert_eq!(local_mean_drift(&Torus, &LevyMeasure::empty()), 0.0);
        assert_eq!(local_mean_drift(&Torus, &torus_eta(&[(0.3, 1.0)])), 0.3);
    }

    #[test]
    fn compound_equals_generalized_times_local_mean() {
        let eta = torus_eta(&[(0.3, 1.0), (2.9, 0.4), (-1.7, 2.5)]);
        for chi in Torus.default_characters() {
            let lhs = ft_gen_poisson(&Torus, &eta, &chi).unwrap() * local_mean_phase(&Torus, &eta, &chi);
            assert!(close(lhs, ft_compound_poisson(&Torus, &eta, &chi).unwrap(), 1e-12));
        }
        let (s, eta) = solenoid_fixture();
        for chi in s.default_characters() {
            let lhs = ft_gen_poisson(&s, &eta, &chi).unwrap() * local_mean_phase(&s, &eta, &chi);
            assert!(close(lhs, ft_compound_poisson(&s, &eta, &chi).unwrap(), 1e-12));
        }
        let (g, eta) = padic_fixture();
        for chi in g.default_characters() {
            let lhs = ft_gen_poisson(&g, &eta, &chi).unwrap() * local_mean_phase(&g, &eta, &chi);
            assert_eq!(lhs, ft_compound_poisson(&g, &eta, &chi).unwrap());
        }
    }

    #[test]
    fn divisibility_at_transform_level() {
        let eta = torus_eta(&[(0.3, 1.0), (2.9, 0.4)]);
        let psi = QuadraticForm::new(1.4).unwrap();
        for n in [2u32, 3, 4, 7] {
            for chi in Torus.default_characters() {
                let g = ft_gauss(&Torus, psi.divided(n), &chi).powu(n);
                assert!(close(g, ft_gauss(&Torus, psi, &chi), 1e-12));
                let p = ft_gen_poisson(&Torus, &eta.divided(n), &chi).unwrap().powu(n);
                assert!(close(p, ft_gen_poisson(&Torus, &eta, &chi).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn pushforward_examples() {
        assert!(pushforward_torus(&LevyMeasure::empty()).is_empty());
        let eta = torus_eta(&[(1.2, 0.5), (-0.4, 2.0)]);
        let push = pushforward_torus(&eta);
        assert_eq!(push.atoms().len(), 2);
        assert_eq!(push.atoms()[0].real, 1.2);
        assert_eq!(push.atoms()[1].mass, 2.0);

        let g = PadicIntegers::new(prime(2), 2).unwrap();
        let eta = LevyMeasure::new(&g, vec![LevyAtom::new(g.element(vec![0, 1, 0]).unwrap(), 1.0)]).unwrap();
        assert!(pushforward_padic(&eta, 0).unwrap().is_empty());
        let eta = LevyMeasure::new(
            &g,
            vec![
                LevyAtom::new(g.element(vec![1, 0, 0]).unwrap(), 2.0),
                LevyAtom::new(g.element(vec![1, 1, 0]).unwrap(), 3.0),
            ],
        )
        .unwrap();
        let push = pushforward_padic(&eta, 0).unwrap();
        assert_eq!(push.atoms(), &[LatticeAtom { real: 0.0, ints: vec![1], mass: 5.0 }]);

        // φ(0.2; 1, 0) has y_1 = e^{i(0.1+π)}, so τ picks the canonical
        // representative (0.2; −1, 1).
        let s = Solenoid::new(prime(2), 2).unwrap();
        let x = s.phi(&crate::group::RealIntSequence::new(0.2, vec![1, 0])).unwrap();
        let eta = LevyMeasure::new(&s, vec![LevyAtom::new(x, 1.0)]).unwrap();
        let push = pushforward_solenoid(&eta, 1).unwrap();
        assert_eq!(push.atoms().len(), 1);
        assert!((push.atoms()[0].real - 0.2).abs() < 1e-12);
        assert_eq!(push.atoms()[0].ints, vec![-1]);
        // A point with τ = (0, 0, 1) projects to the origin at n = 1.
        let x = s.phi(&crate::group::RealIntSequence::new(0.0, vec![0, 1])).unwrap();
        let eta = LevyMeasure::new(&s, vec![LevyAtom::new(x, 1.0)]).unwrap();
        assert!(pushforward_solenoid(&eta, 1).unwrap().is_empty());
        assert_eq!(pushforward_solenoid(&eta, 2).unwrap().atoms().len(), 1);
    }

    #[test]
    fn padic_pushforwards_are_compatible() {
        let (g, eta) = padic_fixture();
        let angles = [0.3, -1.1, 2.4];
        for n in 0..3 {
            let small = pushforward_padic(&eta, n).unwrap();
            let big = pushforward_padic(&eta, n + 1).unwrap();
            let z = &angles[..=n];
            let mut z_ext = z.to_vec();
            z_ext.push(0.0);
            assert!(close(big.ft_compound_poisson(0.0, &z_ext), small.ft_compound_poisson(0.0, z), 1e-12));
        }
        // The lattice route reproduces the group transform.
        for chi in g.default_characters() {
            let push = pushforward_padic(&eta, 3).unwrap();
            let z = padic_character_on_lattice(g.p(), chi, 4);
            assert!(close(
                push.ft_compound_poisson(0.0, &z),
                ft_compound_poisson(&g, &eta, &chi).unwrap(),
                1e-12
            ));
        }
    }

    #[test]
    fn solenoid_pushforwards_are_compatible() {
        let (s, eta) = solenoid_fixture();
        for n in 0..3 {
            let small = pushforward_solenoid(&eta, n).unwrap();
            let big = pushforward_solenoid(&eta, n + 1).unwrap();
            let z: Vec<f64> = (0..n).map(|k| 0.7 * k as f64 - 0.2).collect();
            let mut z_ext = z.clone();
            z_ext.push(0.0);
            for y in [-1.5, 0.0, 0.25, 3.0] {
                assert!(close(big.ft_gen_poisson(y, &z_ext), small.ft_gen_poisson(y, &z), 1e-12));
            }
        }
        for chi in s.default_characters() {
            let push = pushforward_solenoid(&eta, 3).unwrap();
            let (freq, z) = solenoid_character_on_lattice(s.p(), chi, 3);
            assert!(close(push.ft_gen_poisson(freq, &z), ft_gen_poisson(&s, &eta, &chi).unwrap(), 1e-12));
        }
    }

    #[test]
    fn truncation_preserves_shallow_transforms() {
        let (s, eta) = solenoid_fixture();
        let q = Quadruplet::trivial(&s)
            .with_subgroup(SolenoidSubgroup::Trivial)
            .with_shift(s.point(0.9).unwrap())
            .with_gauss(QuadraticForm::new(0.5).unwrap())
            .with_levy(eta);
        let (shallow, qt) = q.truncated(&s, 1).unwrap();
        for chi in shallow.default_characters() {
            assert!(close(
                ft_quadruplet(&shallow, &qt, &chi).unwrap(),
                ft_quadruplet(&s, &q, &chi).unwrap(),
                1e-12
            ));
        }
        let (g, eta) = padic_fixture();
        let q = Quadruplet::trivial(&g).with_levy(eta).with_subgroup(PadicSubgroup::Lambda(3));
        let (shallow, qt) = q.truncated(&g, 2).unwrap();
        // (0,0,0,1) vanishes at depth 2.
        assert_eq!(qt.levy.atoms().len(), 2);
        for chi in shallow.default_characters() {
            assert!(close(
                ft_quadruplet(&shallow, &qt, &chi).unwrap(),
                ft_quadruplet(&g, &q, &chi).unwrap(),
                1e-12
            ));
        }
    }

    #[test]
    fn roots_require_centered_quadruplets() {
        let q = Quadruplet::trivial(&Torus).with_shift(TorusPoint::from_angle(0.1).unwrap());
        assert_eq!(q.root(&Torus, 2).unwrap_err(), Error::NotCentered);
        let q = Quadruplet::trivial(&Torus).with_subgroup(TorusSubgroup::Full);
        assert_eq!(q.root(&Torus, 2).unwrap_err().to_string(), "divisibility check requires centered measure");
    }
}
