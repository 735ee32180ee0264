//! Characters, quadratic forms and local inner products.
//!
//! | group | characters | ψ_b | g(x, χ) |
//! |-------|------------|-----|---------|
//! | 𝕋 | χ_ℓ(y) = y^ℓ | bℓ² | ℓ h(arg y) |
//! | Δ_p | χ_{d,ℓ}(x) = e^{2πiℓ(x_0+⋯+p^d x_d)/p^{d+1}}, 0 ≤ ℓ < p^{d+1} | 0 | 0 |
//! | S_p | χ_{d,ℓ}(y) = y_d^ℓ | bℓ²/p^{2d} | ℓ h(arg y_0)/p^d |

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::padic::PadicInt;
use crate::group::solenoid::SolenoidPoint;
use crate::group::torus::{reduce_angle, TorusPoint};
use crate::group::Prime;

/// Complex values are plain (re, im) pairs.
pub type ComplexValue = Complex64;

/// e^{iθ}, with the angle reduced first so that multiples of 2π give exactly 1.
pub fn unit(theta: f64) -> Complex64 {
    let t = reduce_angle(theta);
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::new(t.cos(), t.sin())
}

/// The cutoff function used by the local inner products on 𝕋, ℝ and S_p.
pub fn h(x: f64) -> f64 {
    if !(-PI..PI).contains(&x) {
        0.0
    } else if x < -FRAC_PI_2 {
        -x - PI
    } else if x < FRAC_PI_2 {
        x
    } else {
        -x + PI
    }
}

/// Character χ_ℓ of the circle group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCharacter {
    pub ell: i64,
}

impl TorusCharacter {
    pub fn new(ell: i64) -> Self {
        TorusCharacter { ell }
    }

    pub fn product(self, other: TorusCharacter) -> TorusCharacter {
        TorusCharacter::new(self.ell + other.ell)
    }

    pub fn inverse(self) -> TorusCharacter {
        TorusCharacter::new(-self.ell)
    }
}

/// Character χ_{d,ℓ} of the p-adic integers, 0 ≤ ℓ < p^{d+1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PadicCharacter {
    d: usize,
    ell: u64,
}

impl PadicCharacter {
    pub fn new(p: Prime, d: usize, ell: u64) -> Result<Self> {
        match p.pow_u64(d + 1) {
            Some(m) if ell < m && m <= i64::MAX as u64 => Ok(PadicCharacter { d, ell }),
            _ => Err(Error::CharacterIndex {
                d,
                ell: ell as i64,
            }),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The same character written at depth `d + k`: χ_{d,ℓ} = χ_{d+k, p^k ℓ}.
    pub fn lift(self, p: Prime, k: usize) -> Result<Self> {
        let f = p.pow_u64(k).ok_or(Error::CharacterIndex {
            d: self.d + k,
            ell: self.ell as i64,
        })?;
        PadicCharacter::new(p, self.d + k, self.ell * f)
    }

    /// χ₁χ₂, computed at the larger of the two depths.
    pub fn product(self, other: PadicCharacter, p: Prime) -> Result<Self> {
        let d = self.d.max(other.d);
        let a = self.lift(p, d - self.d)?;
        let b = other.lift(p, d - other.d)?;
        let m = p.pow_u64(d + 1).expect("checked by lift");
        PadicCharacter::new(p, d, ((a.ell as u128 + b.ell as u128) % m as u128) as u64)
    }

    pub fn inverse(self, p: Prime) -> Self {
        let m = p.pow_u64(self.d + 1).expect("valid character");
        PadicCharacter {
            d: self.d,
            ell: (m - self.ell) % m,
        }
    }
}

/// Character χ_{d,ℓ} of the p-adic solenoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolenoidCharacter {
    pub d: usize,
    pub ell: i64,
}

impl SolenoidCharacter {
    pub fn new(d: usize, ell: i64) -> Self {
        SolenoidCharacter { d, ell }
    }

    /// y_d = y_{d+1}^p, hence χ_{d,ℓ} = χ_{d+k, p^k ℓ}.
    pub fn lift(self, p: Prime, k: usize) -> Self {
        SolenoidCharacter::new(self.d + k, self.ell * (p.get() as i64).pow(k as u32))
    }

    pub fn product(self, other: SolenoidCharacter, p: Prime) -> Self {
        let d = self.d.max(other.d);
        let a = self.lift(p, d - self.d);
        let b = other.lift(p, d - other.d);
        SolenoidCharacter::new(d, a.ell + b.ell)
    }

    pub fn inverse(self) -> Self {
        SolenoidCharacter::new(self.d, -self.ell)
    }
}

/// Index of a character in a serialisable form: `ell` alone on the torus,
/// `(d, ell)` on Δ_p and S_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CharacterLabel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub ell: i64,
}

impl fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "{}", self.ell),
            Some(d) => write!(f, "({},{})", d, self.ell),
        }
    }
}

/// Parameter b of the quadratic form ψ_b.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct QuadraticForm {
    b: f64,
}

impl QuadraticForm {
    pub const ZERO: QuadraticForm = QuadraticForm { b: 0.0 };

    pub fn new(b: f64) -> Result<Self> {
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidQuadraticForm(b));
        }
        Ok(QuadraticForm { b })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0.0
    }

    /// ψ_{b/n}.
    pub fn divided(&self, n: u32) -> QuadraticForm {
        QuadraticForm {
            b: self.b / n as f64,
        }
    }
}

pub fn eval_torus_char(chi: TorusCharacter, y: TorusPoint) -> Complex64 {
    if chi.ell == 0 {
        return Complex64::new(1.0, 0.0);
    }
    unit(chi.ell as f64 * y.angle())
}

pub fn eval_padic_char(chi: PadicCharacter, x: &PadicInt) -> Result<Complex64> {
    if chi.d >= x.len() {
        return Err(Error::CharacterDepth {
            depth: chi.d,
            max: x.len().saturating_sub(1),
        });
    }
    let p = x.p();
    let m = p.pow_u64(chi.d + 1).expect("valid character") as u128;
    let v = x.digits()[..=chi.d]
        .iter()
        .rev()
        .fold(0u128, |acc, &dig| acc * p.get() as u128 + dig as u128);
    let k = (chi.ell as u128 % m) * v % m;
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(unit(TAU * (k as f64 / m as f64)))
}

pub fn eval_solenoid_char(chi: SolenoidCharacter, y: &SolenoidPoint) -> Result<Complex64> {
    let yd = y.project(chi.d).map_err(|_| Error::CharacterDepth {
        depth: chi.d,
        max: y.depth(),
    })?;
    Ok(eval_torus_char(TorusCharacter::new(chi.ell), yd))
}

pub fn torus_quad_form(psi: QuadraticForm, chi: TorusCharacter) -> f64 {
    let l = chi.ell as f64;
    psi.b * l * l
}

pub fn solenoid_quad_form(psi: QuadraticForm, chi: SolenoidCharacter, p: Prime) -> f64 {
    let l = chi.ell as f64;
    psi.b * l * l / (p.get() as f64).powi(2 * chi.d as i32)
}

/// g_𝕋(y, χ_ℓ) = ℓ h(arg y).
pub fn torus_inner_product(y: TorusPoint, chi: TorusCharacter) -> f64 {
    chi.ell as f64 * h(y.angle())
}

/// g_{S_p}(y, χ_{d,ℓ}) = ℓ h(arg y_0) / p^d.
pub fn solenoid_inner_product(y: &SolenoidPoint, chi: SolenoidCharacter) -> f64 {
    let y0 = y.project(0).expect("coordinate 0 always exists");
    chi.ell as f64 * h(y0.angle()) / (y.p().get() as f64).powi(chi.d as i32)
}
