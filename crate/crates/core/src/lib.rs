//! Weakly infinitely divisible probability measures on the circle 𝕋, the
//! p-adic integers Δ_p and the p-adic solenoid S_p.
//!
//! A measure is described by a quadruplet (H, a, ψ, η) and realised as
//! ω_H ∗ δ_a ∗ γ_ψ ∗ π_{η,g}. The crate provides the groups and their duals
//! ([`group`], [`duality`]), closed-form Fourier transforms ([`measure`]),
//! exact seeded samplers ([`sampling`]) and a Monte-Carlo verification engine
//! ([`verify`]) that compares the two.
//!
//! ```
//! use wid_measures::prelude::*;
//!
//! let q = Quadruplet::trivial(&Torus).with_gauss(QuadraticForm::new(1.0).unwrap());
//! let chi = TorusCharacter::new(1);
//! let theory = ft_quadruplet(&Torus, &q, &chi).unwrap();
//! assert!((theory.re - (-0.5f64).exp()).abs() < 1e-15);
//! ```

pub mod cli;
pub mod config;
pub mod duality;
pub mod error;
pub mod group;
pub mod measure;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::duality::{
        h, unit, CharacterLabel, PadicCharacter, QuadraticForm, SolenoidCharacter, TorusCharacter,
    };
    pub use crate::error::{Error, Result};
    pub use crate::group::{
        GroupKind, LcaGroup, PadicInt, PadicIntegers, PadicSubgroup, Prime, RealIntSequence,
        Solenoid, SolenoidPoint, SolenoidSubgroup, Torus, TorusPoint, TorusSubgroup, Truncate,
    };
    pub use crate::measure::{
        ft_compound_poisson, ft_dirac, ft_gauss, ft_gen_poisson, ft_haar, ft_quadruplet,
        local_mean_drift, local_mean_phase, LevyAtom, LevyMeasure, Quadruplet,
    };
}
