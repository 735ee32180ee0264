//! Seeded exact samplers for every building block and for full quadruplets.
//!
//! Each sampler realises the representation of the measure as an explicit
//! random element:
//!
//! * 𝕋: e^{i(U + arg a + X + Y)}
//! * Δ_p: φ(U + a + Y) on digit vectors
//! * S_p: φ(τ(a) + (X + Y_0, Y_1, …, Y_D)), or φ(U_0, U_1, …, U_D) for H = S_p
//!
//! with U Haar on H, X ~ N(0, b) and Y a compound Poisson draw from the
//! pushforward of η, recentred by the local-mean drift.
//!
//! Random numbers come from ChaCha8 keyed by a 64-bit seed; independent
//! streams are selected with the ChaCha stream id.

use std::f64::consts::TAU;

use rand::distr::{Distribution, Uniform};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Normal, Poisson};

use crate::error::{Error, Result};
use crate::group::{
    LcaGroup, PadicInt, PadicIntegers, PadicSubgroup, Prime, RealIntSequence, Solenoid,
    SolenoidPoint, SolenoidSubgroup, Torus, TorusPoint, TorusSubgroup,
};
use crate::measure::{
    local_mean_drift, pushforward_padic, pushforward_solenoid, pushforward_torus, LatticeMeasure,
    LevyMeasure, Quadruplet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

/// A deterministic random stream identified by (seed, stream index).
#[derive(Clone, Debug)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    pub fn new(seed: Seed, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        rng.set_stream(stream);
        RngStream(rng)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

/// Uniform on [lo, hi).
pub fn sample_uniform_real<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Result<f64> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::EmptyInterval { lo, hi });
    }
    let dist = Uniform::new(lo, hi).map_err(|_| Error::EmptyInterval { lo, hi })?;
    Ok(dist.sample(rng))
}

/// Uniform on {0, …, p−1}.
pub fn sample_uniform_digit<R: Rng + ?Sized>(rng: &mut R, p: Prime) -> u32 {
    rng.random_range(0..p.get())
}

/// N(0, b). b = 0 returns 0 without consuming randomness.
pub fn sample_normal<R: Rng + ?Sized>(rng: &mut R, b: f64) -> Result<f64> {
    if !(b.is_finite() && b >= 0.0) {
        return Err(Error::InvalidQuadraticForm(b));
    }
    if b == 0.0 {
        return Ok(0.0);
    }
    let dist = Normal::new(0.0, b.sqrt()).map_err(|_| Error::InvalidQuadraticForm(b))?;
    Ok(dist.sample(rng))
}

/// Poisson(λ). λ = 0 returns 0 without consuming randomness.
///
/// rand_distr uses Knuth's multiplication method below λ = 12 and the PTRS
/// transformed rejection method above; both are exact.
pub fn sample_poisson_count<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> Result<u64> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidRate(lambda));
    }
    if lambda == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(lambda).map_err(|_| Error::InvalidRate(lambda))?;
    Ok(dist.sample(rng) as u64)
}

/// Draws from the compound Poisson measure e(m) on ℝ × ℤ^n.
///
/// The jump count is Poisson with mean m(total); each jump is picked with
/// probability mass/total from a cumulative table by binary search.
#[derive(Clone, Debug)]
pub struct CompoundPoissonSampler {
    measure: LatticeMeasure,
    cumulative: Vec<f64>,
    total: f64,
}

impl CompoundPoissonSampler {
    pub fn new(measure: LatticeMeasure) -> Self {
        let cumulative: Vec<f64> = measure
            .atoms()
            .iter()
            .scan(0.0, |acc, a| {
                *acc += a.mass;
                Some(*acc)
            })
            .collect();
        let total = cumulative.last().copied().unwrap_or(0.0);
        CompoundPoissonSampler {
            measure,
            cumulative,
            total,
        }
    }

    pub fn measure(&self) -> &LatticeMeasure {
        &self.measure
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>() * self.total;
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, Vec<i64>) {
        let mut real = 0.0;
        let mut ints = vec![0i64; self.measure.dim()];
        if self.total == 0.0 {
            return (real, ints);
        }
        let count = sample_poisson_count(rng, self.total).expect("finite positive total mass");
        for _ in 0..count {
            let atom = &self.measure.atoms()[self.pick(rng)];
            real += atom.real;
            for (acc, k) in ints.iter_mut().zip(&atom.ints) {
                *acc += k;
            }
        }
        (real, ints)
    }
}

pub fn sample_compound_poisson<R: Rng + ?Sized>(rng: &mut R, m: &LatticeMeasure) -> (f64, Vec<i64>) {
    CompoundPoissonSampler::new(m.clone()).sample(rng)
}

/// e(η) sampled directly in the group, by multiplying a Poisson number of
/// atoms. Independent of the lattice route used by the quadruplet samplers.
pub fn sample_compound_poisson_in_group<G: LcaGroup, R: Rng + ?Sized>(
    group: &G,
    eta: &LevyMeasure<G::Element>,
    rng: &mut R,
) -> Result<G::Element> {
    let total = eta.total_mass();
    let mut x = group.identity();
    if total == 0.0 {
        return Ok(x);
    }
    let count = sample_poisson_count(rng, total)?;
    for _ in 0..count {
        let mut u = rng.random::<f64>() * total;
        let mut chosen = &eta.atoms()[eta.atoms().len() - 1];
        for atom in eta.atoms() {
            if u < atom.mass {
                chosen = atom;
                break;
            }
            u -= atom.mass;
        }
        x = group.combine(&x, &chosen.point)?;
    }
    Ok(x)
}

/// Groups with an exact quadruplet sampler.
///
/// `plan` validates the quadruplet and precomputes everything that does not
/// depend on the random stream; `draw` is then cheap and allocation-light.
pub trait Sampling: LcaGroup {
    type Plan: Clone + Send + Sync + std::fmt::Debug;

    fn plan(&self, q: &Quadruplet<Self>) -> Result<Self::Plan>;
    fn draw(&self, plan: &Self::Plan, rng: &mut RngStream) -> Self::Element;
}

/// A validated quadruplet bound to its group, ready to draw samples.
#[derive(Clone, Debug)]
pub struct QuadrupletSampler<G: Sampling> {
    group: G,
    plan: G::Plan,
}

impl<G: Sampling> QuadrupletSampler<G> {
    pub fn new(group: &G, q: &Quadruplet<G>) -> Result<Self> {
        Ok(QuadrupletSampler {
            group: group.clone(),
            plan: group.plan(q)?,
        })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn sample(&self, rng: &mut RngStream) -> G::Element {
        self.group.draw(&self.plan, rng)
    }

    pub fn sample_n(&self, rng: &mut RngStream, n: usize) -> Vec<G::Element> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct TorusPlan {
    subgroup: TorusSubgroup,
    shift: f64,
    b: f64,
    jumps: CompoundPoissonSampler,
    drift: f64,
}

impl Sampling for Torus {
    type Plan = TorusPlan;

    fn plan(&self, q: &Quadruplet<Torus>) -> Result<TorusPlan> {
        q.validate(self)?;
        Ok(TorusPlan {
            subgroup: q.subgroup,
            shift: q.shift.angle(),
            b: q.gauss.b(),
            jumps: CompoundPoissonSampler::new(pushforward_torus(&q.levy)),
            drift: local_mean_drift(self, &q.levy),
        })
    }

    fn draw(&self, plan: &TorusPlan, rng: &mut RngStream) -> TorusPoint {
        let u = match plan.subgroup {
            TorusSubgroup::Full => sample_uniform_real(rng, 0.0, TAU).expect("nonempty interval"),
            TorusSubgroup::Cyclic(1) => 0.0,
            TorusSubgroup::Cyclic(r) => TAU * (rng.random_range(0..r) as f64 / r as f64),
        };
        let x = sample_normal(rng, plan.b).expect("validated");
        let y = if plan.jumps.measure().is_empty() {
            0.0
        } else {
            plan.jumps.sample(rng).0 - plan.drift
        };
        TorusPoint::from_angle(u + plan.shift + x + y).expect("finite angle")
    }
}

#[derive(Clone, Debug)]
pub struct PadicPlan {
    p: Prime,
    r: usize,
    shift: PadicInt,
    jumps: CompoundPoissonSampler,
}

impl Sampling for PadicIntegers {
    type Plan = PadicPlan;

    fn plan(&self, q: &Quadruplet<PadicIntegers>) -> Result<PadicPlan> {
        q.validate(self)?;
        let PadicSubgroup::Lambda(r) = q.subgroup;
        let depth = self.digit_len() - 1;
        Ok(PadicPlan {
            p: self.p(),
            r: r.min(self.digit_len()),
            shift: q.shift.clone(),
            jumps: CompoundPoissonSampler::new(pushforward_padic(&q.levy, depth)?),
        })
    }

    fn draw(&self, plan: &PadicPlan, rng: &mut RngStream) -> PadicInt {
        let (_, jumps) = plan.jumps.sample(rng);
        let y: Vec<i64> = plan
            .shift
            .digits()
            .iter()
            .zip(&jumps)
            .enumerate()
            .map(|(j, (&a, &jump))| {
                let u = if j >= plan.r {
                    sample_uniform_digit(rng, plan.p) as i64
                } else {
                    0
                };
                u + a as i64 + jump
            })
            .collect();
        PadicInt::from_integers(plan.p, &y)
    }
}

#[derive(Clone, Debug)]
pub enum SolenoidPlan {
    Haar {
        p: Prime,
        depth: usize,
    },
    Wid {
        p: Prime,
        depth: usize,
        shift: RealIntSequence,
        b: f64,
        jumps: CompoundPoissonSampler,
        drift: f64,
    },
}

impl Sampling for Solenoid {
    type Plan = SolenoidPlan;

    fn plan(&self, q: &Quadruplet<Solenoid>) -> Result<SolenoidPlan> {
        q.validate(self)?;
        let depth = self.depth().expect("solenoid has a depth");
        // ω_{S_p} absorbs every other factor.
        if q.subgroup == SolenoidSubgroup::Full {
            return Ok(SolenoidPlan::Haar { p: self.p(), depth });
        }
        Ok(SolenoidPlan::Wid {
            p: self.p(),
            depth,
            shift: q.shift.tau()?,
            b: q.gauss.b(),
            jumps: CompoundPoissonSampler::new(pushforward_solenoid(&q.levy, depth)?),
            drift: local_mean_drift(self, &q.levy),
        })
    }

    fn draw(&self, plan: &SolenoidPlan, rng: &mut RngStream) -> SolenoidPoint {
        match plan {
            SolenoidPlan::Haar { p, depth } => draw_solenoid_haar(rng, *p, *depth),
            SolenoidPlan::Wid {
                p,
                depth,
                shift,
                b,
                jumps,
                drift,
            } => {
                let x = sample_normal(rng, *b).expect("validated");
                let mut seq = shift.clone();
                seq.real += x;
                if !jumps.measure().is_empty() {
                    let (y0, ys) = jumps.sample(rng);
                    seq.real += y0 - drift;
                    for (acc, y) in seq.ints.iter_mut().zip(ys) {
                        *acc += y;
                    }
                }
                SolenoidPoint::from_sequence(*p, *depth, &seq).expect("finite sequence of full length")
            }
        }
    }
}

fn draw_solenoid_haar<R: Rng + ?Sized>(rng: &mut R, p: Prime, depth: usize) -> SolenoidPoint {
    let u0 = sample_uniform_real(rng, 0.0, TAU).expect("nonempty interval");
    let digits = (0..depth).map(|_| sample_uniform_digit(rng, p) as i64).collect();
    SolenoidPoint::from_sequence(p, depth, &RealIntSequence::new(u0, digits)).expect("valid sequence")
}

pub fn sample_torus_wid(rng: &mut RngStream, q: &Quadruplet<Torus>) -> Result<TorusPoint> {
    let plan = Torus.plan(q)?;
    Ok(Torus.draw(&plan, rng))
}

pub fn sample_padic_wid(rng: &mut RngStream, group: &PadicIntegers, q: &Quadruplet<PadicIntegers>) -> Result<PadicInt> {
    let plan = group.plan(q)?;
    Ok(group.draw(&plan, rng))
}

pub fn sample_solenoid_wid(rng: &mut RngStream, group: &Solenoid, q: &Quadruplet<Solenoid>) -> Result<SolenoidPoint> {
    let plan = group.plan(q)?;
    Ok(group.draw(&plan, rng))
}

/// Haar measure on S_p: φ(U_0; U_1, …, U_D) with U_0 uniform on [0, 2π) and
/// U_k uniform digits.
pub fn sample_solenoid_haar(rng: &mut RngStream, p: Prime, depth: usize) -> Result<SolenoidPoint> {
    Solenoid::new(p, depth)?;
    Ok(draw_solenoid_haar(rng, p, depth))
}
