use std::f64::consts::TAU;
use std::fmt;

use super::torus::{reduce_angle, TorusPoint};
use super::Prime;
use crate::error::{Error, Result};

/// Integrality tolerance for the integer components of τ.
pub const TAU_INTEGRALITY_TOL: f64 = 1e-6;

/// An element of ℝ × ℤ^D, the domain of the solenoid homomorphism φ.
#[derive(Clone, Debug, PartialEq)]
pub struct RealIntSequence {
    pub real: f64,
    pub ints: Vec<i64>,
}

impl RealIntSequence {
    pub fn new(real: f64, ints: Vec<i64>) -> Self {
        RealIntSequence { real, ints }
    }

    pub fn zero(len: usize) -> Self {
        RealIntSequence {
            real: 0.0,
            ints: vec![0; len],
        }
    }
}

/// A point (y_0, y_1, …, y_D) of the p-adic solenoid truncated at depth D.
///
/// Stored as arg y_0 together with an integer winding k modulo p^D, so that
/// coordinate j has angle (arg y_0 + 2π (k mod p^j)) / p^j. Coarse coordinates
/// keep full precision and φ, τ are exact inverses.
#[derive(Clone, Copy, PartialEq)]
pub struct SolenoidPoint {
    p: Prime,
    depth: usize,
    base: f64,
    winding: u64,
}

/// Reduces `x` to [−π, π) and returns the number of full turns removed.
fn split_turns(x: f64) -> (f64, f64) {
    let r = reduce_angle(x);
    (r, ((x - r) / TAU).round())
}

impl SolenoidPoint {
    fn modulus(p: Prime, depth: usize) -> Result<u64> {
        p.pow_u64(depth).ok_or(Error::DepthTooLarge {
            p: p.get(),
            depth,
        })
    }

    /// The point whose deepest coordinate y_D has the given angle.
    pub fn from_deep_angle(p: Prime, depth: usize, angle: f64) -> Result<Self> {
        let deep = TorusPoint::from_angle(angle)?.angle();
        let m = Self::modulus(p, depth)?;
        let (base, turns) = split_turns(deep * m as f64);
        Ok(SolenoidPoint {
            p,
            depth,
            base,
            winding: turns.rem_euclid(m as f64) as u64,
        })
    }

    pub fn identity(p: Prime, depth: usize) -> Self {
        SolenoidPoint {
            p,
            depth,
            base: 0.0,
            winding: 0,
        }
    }

    /// φ(y_0; y_1, …, y_D): coordinate j has angle
    /// (y_0 + 2π y_1 + 2π y_2 p + ⋯ + 2π y_j p^{j−1}) / p^j.
    pub fn from_sequence(p: Prime, depth: usize, y: &RealIntSequence) -> Result<Self> {
        if y.ints.len() < depth {
            return Err(Error::SequenceTooShort {
                needed: depth,
                got: y.ints.len(),
            });
        }
        if !y.real.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        let m = Self::modulus(p, depth)? as i128;
        let (base, turns) = split_turns(y.real);
        let mut k = turns.rem_euclid(m as f64) as i128;
        let mut weight: i128 = 1;
        for &yk in &y.ints[..depth] {
            k = (k + (yk as i128).rem_euclid(m) * weight).rem_euclid(m);
            weight = (weight * p.get() as i128) % m;
        }
        Ok(SolenoidPoint {
            p,
            depth,
            base,
            winding: k as u64,
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Angle of y_D.
    pub fn deep_angle(&self) -> f64 {
        self.coordinate_angle(self.depth)
    }

    pub fn is_identity(&self) -> bool {
        self.base == 0.0 && self.winding == 0
    }

    fn check_compatible(&self, other: &SolenoidPoint) -> Result<()> {
        if self.p != other.p || self.depth != other.depth {
            return Err(Error::Mismatch(format!(
                "solenoid operands (p={}, D={}) and (p={}, D={})",
                self.p, self.depth, other.p, other.depth
            )));
        }
        Ok(())
    }

    fn with_turns(&self, sum: f64, winding: i128) -> SolenoidPoint {
        let m = self.p.pow_u64(self.depth).expect("checked at construction") as i128;
        let (base, turns) = split_turns(sum);
        SolenoidPoint {
            base,
            winding: (winding + turns as i128).rem_euclid(m) as u64,
            ..*self
        }
    }

    /// Coordinatewise multiplication.
    pub fn mul(&self, other: &SolenoidPoint) -> Result<SolenoidPoint> {
        self.check_compatible(other)?;
        Ok(self.with_turns(
            self.base + other.base,
            self.winding as i128 + other.winding as i128,
        ))
    }

    pub fn inverse(&self) -> SolenoidPoint {
        self.with_turns(-self.base, -(self.winding as i128))
    }

    /// Coordinate y_d as a circle point.
    pub fn project(&self, d: usize) -> Result<TorusPoint> {
        if d > self.depth {
            return Err(Error::CoordinateOutOfRange {
                index: d,
                depth: self.depth,
            });
        }
        Ok(TorusPoint::from_angle(self.coordinate_angle(d)).expect("finite angle"))
    }

    fn coordinate_angle(&self, d: usize) -> f64 {
        if d == 0 {
            return self.base;
        }
        let m = self.p.pow_u64(d).expect("d ≤ depth");
        let k = self.winding % m;
        reduce_angle((self.base + TAU * k as f64) / m as f64)
    }

    /// Angles of y_0, …, y_D.
    pub fn coordinates(&self) -> Vec<f64> {
        (0..=self.depth).map(|d| self.coordinate_angle(d)).collect()
    }

    /// The section τ of φ:
    /// τ(x) = (arg x_0, (p arg x_1 − arg x_0)/2π, …, (p arg x_D − arg x_{D−1})/2π).
    pub fn tau(&self) -> Result<RealIntSequence> {
        let p = self.p.get() as f64;
        let args = self.coordinates();
        let ints = (1..=self.depth)
            .map(|j| {
                let raw = (p * args[j] - args[j - 1]) / TAU;
                let rounded = raw.round();
                let residual = (raw - rounded).abs();
                if residual > TAU_INTEGRALITY_TOL {
                    Err(Error::NotSolenoidPoint { index: j, residual })
                } else {
                    Ok(rounded as i64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RealIntSequence {
            real: args[0],
            ints,
        })
    }

    /// Projection onto the first `depth + 1` coordinates.
    pub fn truncated(&self, depth: usize) -> SolenoidPoint {
        if depth >= self.depth {
            return *self;
        }
        let m = self.p.pow_u64(depth).expect("depth below a valid depth");
        SolenoidPoint {
            depth,
            winding: self.winding % m,
            ..*self
        }
    }
}

impl fmt::Debug for SolenoidPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SolenoidPoint[p={}, D={}](y0={}, k={})",
            self.p, self.depth, self.base, self.winding
        )
    }
}
