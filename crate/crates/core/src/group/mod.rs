//! The three compact groups and the [`LcaGroup`] interface the rest of the
//! crate is written against.
//!
//! Δ_p and S_p are infinite products; they are represented here truncated at
//! a depth D, keeping coordinates 0..=D. A character χ_{d,ℓ} only reads
//! coordinates with index ≤ d, so every character with d ≤ D is evaluated
//! exactly on depth-D elements.

pub mod padic;
pub mod solenoid;
pub mod torus;

use std::fmt;

use num_complex::Complex64;

use crate::duality::{
    self, CharacterLabel, PadicCharacter, QuadraticForm, SolenoidCharacter, TorusCharacter,
};
use crate::error::{Error, Result};

pub use padic::PadicInt;
pub use solenoid::{RealIntSequence, SolenoidPoint};
pub use torus::TorusPoint;

/// A prime number, checked by trial division.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        let composite = p < 2 || (2u64..).take_while(|k| k * k <= p as u64).any(|k| (p as u64).is_multiple_of(k));
        if composite {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// p^k, or `None` on overflow.
    pub fn pow_u64(self, k: usize) -> Option<u64> {
        (self.0 as u64).checked_pow(u32::try_from(k).ok()?)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the three groups a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Torus,
    Padic,
    Solenoid,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Torus => "torus",
            GroupKind::Padic => "padic",
            GroupKind::Solenoid => "solenoid",
        })
    }
}

/// A compact abelian group together with its dual, a fixed local inner
/// product and its quadratic forms.
pub trait LcaGroup: Clone + fmt::Debug + Send + Sync {
    type Element: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Character: Copy + Ord + fmt::Debug + Send + Sync;
    type Subgroup: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> GroupKind;
    fn prime(&self) -> Option<Prime>;
    /// Largest coordinate index kept (`None` for the torus).
    fn depth(&self) -> Option<usize>;

    fn identity(&self) -> Self::Element;
    fn is_identity(&self, x: &Self::Element) -> bool;
    /// Checks that `x` belongs to this group (same p, same depth).
    fn check_element(&self, x: &Self::Element) -> Result<()>;
    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn inverse(&self, x: &Self::Element) -> Self::Element;

    fn check_character(&self, chi: &Self::Character) -> Result<()>;
    fn character_depth(&self, chi: &Self::Character) -> usize;
    fn eval(&self, chi: &Self::Character, x: &Self::Element) -> Result<Complex64>;
    fn label(&self, chi: &Self::Character) -> CharacterLabel;
    fn character_from_label(&self, label: CharacterLabel) -> Result<Self::Character>;
    /// The default verification set, in sorted order.
    fn default_characters(&self) -> Vec<Self::Character>;

    fn quad_form(&self, psi: QuadraticForm, chi: &Self::Character) -> f64;
    fn admits_gauss(&self) -> bool {
        true
    }
    fn local_inner_product(&self, x: &Self::Element, chi: &Self::Character) -> f64;
    /// The real coordinate of `x` fed to the cutoff h (arg x, arg x_0, or 0).
    fn real_coordinate(&self, x: &Self::Element) -> f64;
    /// Frequency y with χ∘φ(t, 0, …) = e^{iyt}; a real drift s enters a
    /// transform as e^{iys}.
    fn drift_frequency(&self, chi: &Self::Character) -> f64;

    fn check_subgroup(&self, h: &Self::Subgroup) -> Result<()>;
    fn trivial_subgroup(&self) -> Self::Subgroup;
    fn is_trivial_subgroup(&self, h: &Self::Subgroup) -> bool;
    /// Whether χ ≡ 1 on H.
    fn annihilates(&self, h: &Self::Subgroup, chi: &Self::Character) -> bool;
}

/// Groups whose elements can be cut down to a shallower depth.
pub trait Truncate: LcaGroup {
    fn at_depth(&self, depth: usize) -> Result<Self>;
    fn truncate_element(&self, x: &Self::Element, depth: usize) -> Self::Element;
    fn truncate_subgroup(&self, h: &Self::Subgroup, depth: usize) -> Self::Subgroup;
}

/// The circle group 𝕋.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Torus;

/// Compact subgroups of 𝕋: the r-th roots of unity H_r, or 𝕋 itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusSubgroup {
    Full,
    Cyclic(u64),
}

impl LcaGroup for Torus {
    type Element = TorusPoint;
    type Character = TorusCharacter;
    type Subgroup = TorusSubgroup;

    fn kind(&self) -> GroupKind {
        GroupKind::Torus
    }

    fn prime(&self) -> Option<Prime> {
        None
    }

    fn depth(&self) -> Option<usize> {
        None
    }

    fn identity(&self) -> TorusPoint {
        TorusPoint::IDENTITY
    }

    fn is_identity(&self, x: &TorusPoint) -> bool {
        x.is_identity()
    }

    fn check_element(&self, _x: &TorusPoint) -> Result<()> {
        Ok(())
    }

    fn combine(&self, a: &TorusPoint, b: &TorusPoint) -> Result<TorusPoint> {
        Ok(*a * *b)
    }

    fn inverse(&self, x: &TorusPoint) -> TorusPoint {
        x.inverse()
    }

    fn check_character(&self, _chi: &TorusCharacter) -> Result<()> {
        Ok(())
    }

    fn character_depth(&self, _chi: &TorusCharacter) -> usize {
        0
    }

    fn eval(&self, chi: &TorusCharacter, x: &TorusPoint) -> Result<Complex64> {
        Ok(duality::eval_torus_char(*chi, *x))
    }

    fn label(&self, chi: &TorusCharacter) -> CharacterLabel {
        CharacterLabel { d: None, ell: chi.ell }
    }

    fn character_from_label(&self, label: CharacterLabel) -> Result<TorusCharacter> {
        match label.d {
            None | Some(0) => Ok(TorusCharacter::new(label.ell)),
            Some(d) => Err(Error::InvalidArgument(format!(
                "torus characters have no depth (got d = {d})"
            ))),
        }
    }

    fn default_characters(&self) -> Vec<TorusCharacter> {
        (-8..=8).map(TorusCharacter::new).collect()
    }

    fn quad_form(&self, psi: QuadraticForm, chi: &TorusCharacter) -> f64 {
        duality::torus_quad_form(psi, *chi)
    }

    fn local_inner_product(&self, x: &TorusPoint, chi: &TorusCharacter) -> f64 {
        duality::torus_inner_product(*x, *chi)
    }

    fn real_coordinate(&self, x: &TorusPoint) -> f64 {
        x.angle()
    }

    fn drift_frequency(&self, chi: &TorusCharacter) -> f64 {
        chi.ell as f64
    }

    fn check_subgroup(&self, h: &TorusSubgroup) -> Result<()> {
        match h {
            TorusSubgroup::Cyclic(0) => Err(Error::InvalidSubgroup(
                "cyclic subgroup H_r needs r ≥ 1".into(),
            )),
            _ => Ok(()),
        }
    }

    fn trivial_subgroup(&self) -> TorusSubgroup {
        TorusSubgroup::Cyclic(1)
    }

    fn is_trivial_subgroup(&self, h: &TorusSubgroup) -> bool {
        *h == TorusSubgroup::Cyclic(1)
    }

    fn annihilates(&self, h: &TorusSubgroup, chi: &TorusCharacter) -> bool {
        match *h {
            TorusSubgroup::Full => chi.ell == 0,
            TorusSubgroup::Cyclic(r) => chi.ell.rem_euclid(r as i64) == 0,
        }
    }
}

/// The p-adic integers Δ_p, truncated to digits 0..=depth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PadicIntegers {
    p: Prime,
    depth: usize,
}

/// Compact subgroups Λ_r = {x : x_j = 0 for j < r}.
///
/// Λ_r with r > depth is trivial at the represented depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicSubgroup {
    Lambda(usize),
}

impl PadicIntegers {
    pub fn new(p: Prime, depth: usize) -> Result<Self> {
        match p.pow_u64(depth + 1) {
            Some(m) if m <= i64::MAX as u64 => Ok(PadicIntegers { p, depth }),
            _ => Err(Error::DepthTooLarge { p: p.get(), depth }),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Number of stored digits, depth + 1.
    pub fn digit_len(&self) -> usize {
        self.depth + 1
    }

    pub fn element(&self, digits: Vec<u32>) -> Result<PadicInt> {
        let x = PadicInt::new(self.p, digits)?;
        self.check_element(&x)?;
        Ok(x)
    }

    pub fn character(&self, d: usize, ell: u64) -> Result<PadicCharacter> {
        let chi = PadicCharacter::new(self.p, d, ell)?;
        self.check_character(&chi)?;
        Ok(chi)
    }
}

impl LcaGroup for PadicIntegers {
    type Element = PadicInt;
    type Character = PadicCharacter;
    type Subgroup = PadicSubgroup;

    fn kind(&self) -> GroupKind {
        GroupKind::Padic
    }

    fn prime(&self) -> Option<Prime> {
        Some(self.p)
    }

    fn depth(&self) -> Option<usize> {
        Some(self.depth)
    }

    fn identity(&self) -> PadicInt {
        PadicInt::zero(self.p, self.digit_len())
    }

    fn is_identity(&self, x: &PadicInt) -> bool {
        x.is_zero()
    }

    fn check_element(&self, x: &PadicInt) -> Result<()> {
        if x.p() != self.p || x.len() != self.digit_len() {
            return Err(Error::Mismatch(format!(
                "p-adic element (p={}, {} digits) in group (p={}, {} digits)",
                x.p(),
                x.len(),
                self.p,
                self.digit_len()
            )));
        }
        Ok(())
    }

    fn combine(&self, a: &PadicInt, b: &PadicInt) -> Result<PadicInt> {
        a.add(b)
    }

    fn inverse(&self, x: &PadicInt) -> PadicInt {
        x.neg()
    }

    fn check_character(&self, chi: &PadicCharacter) -> Result<()> {
        if chi.d() > self.depth {
            return Err(Error::CharacterDepth {
                depth: chi.d(),
                max: self.depth,
            });
        }
        Ok(())
    }

    fn character_depth(&self, chi: &PadicCharacter) -> usize {
        chi.d()
    }

    fn eval(&self, chi: &PadicCharacter, x: &PadicInt) -> Result<Complex64> {
        duality::eval_padic_char(*chi, x)
    }

    fn label(&self, chi: &PadicCharacter) -> CharacterLabel {
        CharacterLabel {
            d: Some(chi.d()),
            ell: chi.ell() as i64,
        }
    }

    fn character_from_label(&self, label: CharacterLabel) -> Result<PadicCharacter> {
        let d = label.d.unwrap_or(0);
        if label.ell < 0 {
            return Err(Error::CharacterIndex { d, ell: label.ell });
        }
        self.character(d, label.ell as u64)
    }

    fn default_characters(&self) -> Vec<PadicCharacter> {
        let max_d = self.depth.min(3);
        (0..=max_d)
            .flat_map(|d| {
                let m = self.p.pow_u64(d + 1).expect("checked at construction");
                (0..m).map(move |ell| PadicCharacter::new(self.p, d, ell).expect("in range"))
            })
            .collect()
    }

    fn quad_form(&self, _psi: QuadraticForm, _chi: &PadicCharacter) -> f64 {
        0.0
    }

    fn admits_gauss(&self) -> bool {
        false
    }

    fn local_inner_product(&self, _x: &PadicInt, _chi: &PadicCharacter) -> f64 {
        0.0
    }

    fn real_coordinate(&self, _x: &PadicInt) -> f64 {
        0.0
    }

    fn drift_frequency(&self, _chi: &PadicCharacter) -> f64 {
        0.0
    }

    fn check_subgroup(&self, h: &PadicSubgroup) -> Result<()> {
        let PadicSubgroup::Lambda(r) = *h;
        if r > self.digit_len() {
            return Err(Error::InvalidSubgroup(format!(
                "Λ_{r} exceeds the {} stored digits",
                self.digit_len()
            )));
        }
        Ok(())
    }

    fn trivial_subgroup(&self) -> PadicSubgroup {
        PadicSubgroup::Lambda(self.digit_len())
    }

    fn is_trivial_subgroup(&self, h: &PadicSubgroup) -> bool {
        let PadicSubgroup::Lambda(r) = *h;
        r >= self.digit_len()
    }

    fn annihilates(&self, h: &PadicSubgroup, chi: &PadicCharacter) -> bool {
        let PadicSubgroup::Lambda(r) = *h;
        let d = chi.d();
        if d < r {
            return true;
        }
        let m = self.p.pow_u64(d + 1 - r).expect("checked at construction");
        chi.ell().is_multiple_of(m)
    }
}

impl Truncate for PadicIntegers {
    fn at_depth(&self, depth: usize) -> Result<Self> {
        PadicIntegers::new(self.p, depth)
    }

    fn truncate_element(&self, x: &PadicInt, depth: usize) -> PadicInt {
        x.truncated(depth + 1)
    }

    fn truncate_subgroup(&self, h: &PadicSubgroup, depth: usize) -> PadicSubgroup {
        let PadicSubgroup::Lambda(r) = *h;
        PadicSubgroup::Lambda(r.min(depth + 1))
    }
}

/// The p-adic solenoid S_p, truncated to coordinates 0..=depth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Solenoid {
    p: Prime,
    depth: usize,
}

/// The compact subgroups of S_p supported here: {e} and S_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolenoidSubgroup {
    Trivial,
    Full,
}

impl Solenoid {
    /// Depth is limited so that p^depth stays exactly representable in an f64.
    pub fn new(p: Prime, depth: usize) -> Result<Self> {
        match p.pow_u64(depth) {
            Some(m) if m <= 1 << 53 => Ok(Solenoid { p, depth }),
            _ => Err(Error::DepthTooLarge { p: p.get(), depth }),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn point(&self, deep_angle: f64) -> Result<SolenoidPoint> {
        SolenoidPoint::from_deep_angle(self.p, self.depth, deep_angle)
    }

    /// φ: ℝ × ℤ^D → S_p.
    pub fn phi(&self, y: &RealIntSequence) -> Result<SolenoidPoint> {
        SolenoidPoint::from_sequence(self.p, self.depth, y)
    }
}

impl LcaGroup for Solenoid {
    type Element = SolenoidPoint;
    type Character = SolenoidCharacter;
    type Subgroup = SolenoidSubgroup;

    fn kind(&self) -> GroupKind {
        GroupKind::Solenoid
    }

    fn prime(&self) -> Option<Prime> {
        Some(self.p)
    }

    fn depth(&self) -> Option<usize> {
        Some(self.depth)
    }

    fn identity(&self) -> SolenoidPoint {
        SolenoidPoint::identity(self.p, self.depth)
    }

    fn is_identity(&self, x: &SolenoidPoint) -> bool {
        x.is_identity()
    }

    fn check_element(&self, x: &SolenoidPoint) -> Result<()> {
        if x.p() != self.p || x.depth() != self.depth {
            return Err(Error::Mismatch(format!(
                "solenoid element (p={}, D={}) in group (p={}, D={})",
                x.p(),
                x.depth(),
                self.p,
                self.depth
            )));
        }
        Ok(())
    }

    fn combine(&self, a: &SolenoidPoint, b: &SolenoidPoint) -> Result<SolenoidPoint> {
        a.mul(b)
    }

    fn inverse(&self, x: &SolenoidPoint) -> SolenoidPoint {
        x.inverse()
    }

    fn check_character(&self, chi: &SolenoidCharacter) -> Result<()> {
        if chi.d > self.depth {
            return Err(Error::CharacterDepth {
                depth: chi.d,
                max: self.depth,
            });
        }
        Ok(())
    }

    fn character_depth(&self, chi: &SolenoidCharacter) -> usize {
        chi.d
    }

    fn eval(&self, chi: &SolenoidCharacter, x: &SolenoidPoint) -> Result<Complex64> {
        duality::eval_solenoid_char(*chi, x)
    }

    fn label(&self, chi: &SolenoidCharacter) -> CharacterLabel {
        CharacterLabel {
            d: Some(chi.d),
            ell: chi.ell,
        }
    }

    fn character_from_label(&self, label: CharacterLabel) -> Result<SolenoidCharacter> {
        let chi = SolenoidCharacter::new(label.d.unwrap_or(0), label.ell);
        self.check_character(&chi)?;
        Ok(chi)
    }

    fn default_characters(&self) -> Vec<SolenoidCharacter> {
        (0..=self.depth.min(3))
            .flat_map(|d| (-8..=8).map(move |ell| SolenoidCharacter::new(d, ell)))
            .collect()
    }

    fn quad_form(&self, psi: QuadraticForm, chi: &SolenoidCharacter) -> f64 {
        duality::solenoid_quad_form(psi, *chi, self.p)
    }

    fn local_inner_product(&self, x: &SolenoidPoint, chi: &SolenoidCharacter) -> f64 {
        duality::solenoid_inner_product(x, *chi)
    }

    fn real_coordinate(&self, x: &SolenoidPoint) -> f64 {
        x.project(0).expect("coordinate 0 always exists").angle()
    }

    fn drift_frequency(&self, chi: &SolenoidCharacter) -> f64 {
        chi.ell as f64 / (self.p.get() as f64).powi(chi.d as i32)
    }

    fn check_subgroup(&self, _h: &SolenoidSubgroup) -> Result<()> {
        Ok(())
    }

    fn trivial_subgroup(&self) -> SolenoidSubgroup {
        SolenoidSubgroup::Trivial
    }

    fn is_trivial_subgroup(&self, h: &SolenoidSubgroup) -> bool {
        *h == SolenoidSubgroup::Trivial
    }

    fn annihilates(&self, h: &SolenoidSubgroup, chi: &SolenoidCharacter) -> bool {
        match h {
            SolenoidSubgroup::Trivial => true,
            SolenoidSubgroup::Full => chi.ell == 0,
        }
    }
}

impl Truncate for Solenoid {
    fn at_depth(&self, depth: usize) -> Result<Self> {
        Solenoid::new(self.p, depth)
    }

    fn truncate_element(&self, x: &SolenoidPoint, depth: usize) -> SolenoidPoint {
        x.truncated(depth)
    }

    fn truncate_subgroup(&self, h: &SolenoidSubgroup, _depth: usize) -> SolenoidSubgroup {
        *h
    }
}
