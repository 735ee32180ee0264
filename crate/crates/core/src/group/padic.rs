use std::fmt;

use super::Prime;
use crate::error::{Error, Result};

/// An element of the p-adic integers truncated to its first `len()` digits.
///
/// Digit `j` is the coefficient of p^j. Arithmetic is carried out modulo
/// p^len, i.e. the carry out of the last digit is discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: Prime,
    digits: Vec<u32>,
}

impl PadicInt {
    pub fn new(p: Prime, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&x| x >= p.get()) {
            return Err(Error::DigitOutOfRange { digit, p: p.get() });
        }
        Ok(PadicInt { p, digits })
    }

    pub fn zero(p: Prime, len: usize) -> Self {
        PadicInt {
            p,
            digits: vec![0; len],
        }
    }

    /// The image of an integer sequence under the homomorphism ℤ^∞ → Δ_p,
    /// truncated to `y.len()` digits.
    ///
    /// Digit `d` is fixed by Σ_{j≤d} y_j p^j ≡ Σ_{j≤d} z_j p^j (mod p^{d+1});
    /// this is base-p normalisation with signed carries.
    pub fn from_integers(p: Prime, y: &[i64]) -> Self {
        let base = p.get() as i128;
        let mut carry: i128 = 0;
        let digits = y
            .iter()
            .map(|&yj| {
                let t = yj as i128 + carry;
                carry = t.div_euclid(base);
                t.rem_euclid(base) as u32
            })
            .collect();
        PadicInt { p, digits }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    fn check_compatible(&self, other: &PadicInt) -> Result<()> {
        if self.p != other.p || self.digits.len() != other.digits.len() {
            return Err(Error::Mismatch(format!(
                "p-adic operands (p={}, len={}) and (p={}, len={})",
                self.p,
                self.digits.len(),
                other.p,
                other.digits.len()
            )));
        }
        Ok(())
    }

    /// Schoolbook carry addition in base p.
    pub fn add(&self, other: &PadicInt) -> Result<PadicInt> {
        self.check_compatible(other)?;
        let p = self.p.get();
        let mut carry = 0u32;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| {
                let t = a + b + carry;
                if t >= p {
                    carry = 1;
                    t - p
                } else {
                    carry = 0;
                    t
                }
            })
            .collect();
        Ok(PadicInt { p: self.p, digits })
    }

    /// Additive inverse: complement every digit to p−1 and add one.
    pub fn neg(&self) -> PadicInt {
        let p = self.p.get();
        let mut carry = 1u32;
        let digits = self
            .digits
            .iter()
            .map(|&a| {
                let t = (p - 1 - a) + carry;
                if t >= p {
                    carry = 1;
                    t - p
                } else {
                    carry = 0;
                    t
                }
            })
            .collect();
        PadicInt { p: self.p, digits }
    }

    /// The k-fold sum x + x + ⋯ + x.
    pub fn mul_nat(&self, k: u64) -> PadicInt {
        let p = self.p.get() as u128;
        let k = k as u128;
        let mut carry = 0u128;
        let digits = self
            .digits
            .iter()
            .map(|&a| {
                let t = k * a as u128 + carry;
                carry = t / p;
                (t % p) as u32
            })
            .collect();
        PadicInt { p: self.p, digits }
    }

    /// Membership in Λ_r: the first `r` digits vanish.
    pub fn in_lambda(&self, r: usize) -> bool {
        self.digits.iter().take(r).all(|&d| d == 0)
    }

    /// Keeps the first `len` digits.
    pub fn truncated(&self, len: usize) -> PadicInt {
        PadicInt {
            p: self.p,
            digits: self.digits[..len.min(self.digits.len())].to_vec(),
        }
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicInt[p={}]{:?}", self.p, self.digits)
    }
}
