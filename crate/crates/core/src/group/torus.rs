use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Reduces `x` modulo 2π into the canonical range [−π, π).
pub fn reduce_angle(x: f64) -> f64 {
    // `%` is an exact fmod, so only the final shift rounds.
    let mut r = x % TAU;
    if r >= PI {
        r -= TAU;
    } else if r < -PI {
        r += TAU;
    }
    if r >= PI {
        r -= TAU;
    }
    r
}

/// Distance between two angles measured along the circle, in [0, π].
pub fn circular_distance(a: f64, b: f64) -> f64 {
    reduce_angle(a - b).abs()
}

/// A point e^{iθ} of the circle group, stored by its argument θ ∈ [−π, π).
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct TorusPoint {
    angle: f64,
}

impl TorusPoint {
    pub const IDENTITY: TorusPoint = TorusPoint { angle: 0.0 };

    pub fn from_angle(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFiniteAngle);
        }
        Ok(TorusPoint {
            angle: reduce_angle(x),
        })
    }

    /// The argument in [−π, π).
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_identity(&self) -> bool {
        self.angle == 0.0
    }

    pub fn inverse(&self) -> Self {
        TorusPoint {
            angle: reduce_angle(-self.angle),
        }
    }

    /// Integer power y^k, i.e. the angle multiplied by k.
    pub fn pow(&self, k: i64) -> Self {
        TorusPoint {
            angle: reduce_angle(k as f64 * self.angle),
        }
    }
}

// The circle is written multiplicatively; angles add.
impl Mul for TorusPoint {
    type Output = TorusPoint;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: TorusPoint) -> TorusPoint {
        TorusPoint {
            angle: reduce_angle(self.angle + rhs.angle),
        }
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusPoint({})", self.angle)
    }
}
