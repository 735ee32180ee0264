//! Closed forms written out directly from the definitions, independent of the
//! library's evaluation code, plus shared fixtures.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use wid_measures::prelude::*;

pub const N: usize = 100_000;
pub const MC_TOL: f64 = 0.0126;
pub const EXACT_TOL: f64 = 1e-12;

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// arg into (−π, π] by rounding the winding number.
pub fn arg(theta: f64) -> f64 {
    theta - TAU * (theta / TAU).round()
}

pub fn cutoff(x: f64) -> f64 {
    if x.abs() <= FRAC_PI_2 {
        x
    } else if x > 0.0 {
        PI - x
    } else {
        -PI - x
    }
}

// Characters.

pub fn torus_chi(ell: i64, angle: f64) -> Complex64 {
    cis(ell as f64 * angle)
}

pub fn padic_chi(p: u32, d: usize, ell: u64, digits: &[u32]) -> Complex64 {
    let m = (p as u128).pow(d as u32 + 1);
    let v: u128 = (0..=d).map(|j| digits[j] as u128 * (p as u128).pow(j as u32)).sum();
    let k = (ell as u128 * v) % m;
    cis(TAU * k as f64 / m as f64)
}

/// Angle of coordinate d of the depth-D point with deep angle θ: p^{D−d} θ.
pub fn solenoid_coordinate(p: u32, depth: usize, d: usize, deep: f64) -> f64 {
    (p as f64).powi((depth - d) as i32) * deep
}

pub fn solenoid_chi(p: u32, depth: usize, d: usize, ell: i64, deep: f64) -> Complex64 {
    cis(ell as f64 * solenoid_coordinate(p, depth, d, deep))
}

// Haar transforms by averaging over the (finite) subgroup image.

pub fn torus_haar_cyclic(r: u64, ell: i64) -> Complex64 {
    (0..r).map(|j| torus_chi(ell, TAU * j as f64 / r as f64)).sum::<Complex64>() / r as f64
}

/// Mean of χ_{d,ℓ} over Λ_r, enumerating digits r..=d.
pub fn padic_haar(p: u32, r: usize, d: usize, ell: u64) -> Complex64 {
    if r > d {
        return Complex64::new(1.0, 0.0);
    }
    let free = d + 1 - r;
    let count = (p as u64).pow(free as u32);
    let mut total = Complex64::new(0.0, 0.0);
    for v in 0..count {
        let mut digits = vec![0u32; d + 1];
        let mut w = v;
        for slot in digits.iter_mut().skip(r) {
            *slot = (w % p as u64) as u32;
            w /= p as u64;
        }
        total += padic_chi(p, d, ell, &digits);
    }
    total / count as f64
}

pub fn round_unit(z: Complex64) -> Complex64 {
    Complex64::new(
        if (z.re - z.re.round()).abs() < 1e-9 { z.re.round() } else { z.re },
        if (z.im - z.im.round()).abs() < 1e-9 { z.im.round() } else { z.im },
    )
}

// Poisson transforms: exp Σ m (χ(x) − 1 − i g).

pub fn poisson(atoms: &[(Complex64, f64, f64)], generalized: bool) -> Complex64 {
    atoms
        .iter()
        .map(|&(chi, g, m)| {
            let g = if generalized { g } else { 0.0 };
            m * (chi - Complex64::new(1.0, g))
        })
        .sum::<Complex64>()
        .exp()
}

// Fixtures.

pub const TORUS_ATOMS: [(f64, f64); 3] = [(0.7, 0.8), (-2.1, 0.5), (2.9, 0.3)];
pub const PADIC_P: u32 = 3;
pub const PADIC_ATOMS: [([u32; 4], f64); 3] = [([1, 0, 2, 0], 0.7), ([0, 2, 1, 1], 1.3), ([2, 2, 0, 1], 0.4)];
pub const SOLENOID_P: u32 = 2;
pub const SOLENOID_ATOMS: [(f64, f64); 3] = [(0.3, 0.8), (-1.9, 0.5), (2.7, 1.1)];

pub fn torus_eta() -> LevyMeasure<TorusPoint> {
    LevyMeasure::new(
        &Torus,
        TORUS_ATOMS
            .iter()
            .map(|&(a, m)| LevyAtom::new(TorusPoint::from_angle(a).unwrap(), m))
            .collect(),
    )
    .unwrap()
}

pub fn padic_group() -> PadicIntegers {
    PadicIntegers::new(prime(PADIC_P), 3).unwrap()
}

pub fn padic_eta(g: &PadicIntegers) -> LevyMeasure<PadicInt> {
    LevyMeasure::new(
        g,
        PADIC_ATOMS
            .iter()
            .map(|(d, m)| LevyAtom::new(g.element(d.to_vec()).unwrap(), *m))
            .collect(),
    )
    .unwrap()
}

pub fn solenoid_group() -> Solenoid {
    Solenoid::new(prime(SOLENOID_P), 3).unwrap()
}

pub fn solenoid_eta(g: &Solenoid) -> LevyMeasure<SolenoidPoint> {
    LevyMeasure::new(
        g,
        SOLENOID_ATOMS
            .iter()
            .map(|&(a, m)| LevyAtom::new(g.point(a).unwrap(), m))
            .collect(),
    )
    .unwrap()
}

/// (χ(x), g(x, χ), mass) for the torus fixture.
pub fn torus_terms(ell: i64) -> Vec<(Complex64, f64, f64)> {
    TORUS_ATOMS
        .iter()
        .map(|&(a, m)| (torus_chi(ell, a), ell as f64 * cutoff(arg(a)), m))
        .collect()
}

pub fn padic_terms(d: usize, ell: u64) -> Vec<(Complex64, f64, f64)> {
    PADIC_ATOMS
        .iter()
        .map(|(digits, m)| (padic_chi(PADIC_P, d, ell, digits), 0.0, *m))
        .collect()
}

pub fn solenoid_terms(depth: usize, d: usize, ell: i64) -> Vec<(Complex64, f64, f64)> {
    let p = SOLENOID_P;
    SOLENOID_ATOMS
        .iter()
        .map(|&(a, m)| {
            let y0 = arg(solenoid_coordinate(p, depth, 0, a));
            let g = ell as f64 * cutoff(y0) / (p as f64).powi(d as i32);
            (solenoid_chi(p, depth, d, ell, a), g, m)
        })
        .collect()
}
