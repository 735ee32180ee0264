//! Monte-Carlo comparison of samplers against closed-form transforms, and
//! exact structural checks.
//!
//! Every [`ComparisonRow`] draws its own N samples from RNG stream `i`
//! (the row's position in sorted character order), so rows are independent
//! and the report does not depend on how rows are scheduled across threads.
//! Compatibility reports use streams 2i and 2i+1 for the two depths.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Describe, QuadrupletSpec};
use crate::duality::h;
use crate::error::{Error, Result};
use crate::group::{
    GroupKind, LcaGroup, PadicInt, Prime, RealIntSequence, Solenoid, SolenoidPoint, Torus,
    TorusPoint, Truncate,
};
use crate::measure::{ft_quadruplet, Quadruplet};
use crate::sampling::{QuadrupletSampler, RngStream, Sampling, Seed};

pub const SCHEMA_VERSION: u32 = 1;

/// Sample size, seed and tolerance constant shared by a set of comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteSettings {
    pub samples: usize,
    pub seed: Seed,
    pub tolerance_c: f64,
}

impl SuiteSettings {
    pub fn new(samples: usize, seed: u64) -> Self {
        SuiteSettings {
            samples,
            seed: Seed(seed),
            tolerance_c: crate::config::DEFAULT_TOLERANCE_C,
        }
    }

    /// c / √N.
    pub fn tolerance(&self) -> f64 {
        self.tolerance_c / (self.samples as f64).sqrt()
    }

    fn check(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("sample size must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub character: String,
    pub theory: Complex64,
    pub empirical: Complex64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ComparisonRow {
    pub fn new(character: String, theory: Complex64, empirical: Complex64, tolerance: f64) -> Self {
        let abs_error = (theory - empirical).norm();
        ComparisonRow {
            character,
            theory,
            empirical,
            abs_error,
            tolerance,
            pass: abs_error <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub check: String,
    pub group: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadruplet: Option<QuadrupletSpec>,
    pub samples: usize,
    pub seed: u64,
    pub tolerance_c: f64,
}

impl ConfigEcho {
    pub fn new<G: LcaGroup>(check: &str, group: &G, quadruplet: Option<QuadrupletSpec>, s: &SuiteSettings) -> Self {
        ConfigEcho {
            check: check.into(),
            group: group.kind(),
            p: group.prime().map(Prime::get),
            depth: group.depth(),
            quadruplet,
            samples: s.samples,
            seed: s.seed.0,
            tolerance_c: s.tolerance_c,
        }
    }
}

/// The machine-readable result of a comparison run.
///
/// Wall time is kept out of the JSON form so that reports from the same
/// seed are byte-identical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub rows: Vec<ComparisonRow>,
    pub overall_pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(config: ConfigEcho, rows: Vec<ComparisonRow>, wall_time: Duration) -> Self {
        let overall_pass = rows.iter().all(|r| r.pass);
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            config,
            rows,
            overall_pass,
            wall_time,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// (1/N) Σ χ(X_i) over N draws.
///
/// Summed as χ(X_1) + (1/N) Σ (χ(X_i) − χ(X_1)), so a constant sample
/// stream returns χ(X_1) exactly.
pub fn empirical_cf<G, F>(group: &G, chi: &G::Character, n: usize, mut draw: F) -> Result<Complex64>
where
    G: LcaGroup,
    F: FnMut() -> G::Element,
{
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let first = group.eval(chi, &draw())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 1..n {
        acc += group.eval(chi, &draw())? - first;
    }
    Ok(first + acc / n as f64)
}

fn sorted_characters<G: LcaGroup>(group: &G, chars: &[G::Character]) -> Result<Vec<G::Character>> {
    for chi in chars {
        group.check_character(chi)?;
    }
    let mut chars = chars.to_vec();
    chars.sort();
    chars.dedup();
    Ok(chars)
}

/// Compares the quadruplet sampler with ft_quadruplet at every character.
pub fn run_suite<G>(group: &G, q: &Quadruplet<G>, chars: &[G::Character], s: &SuiteSettings) -> Result<VerificationReport>
where
    G: Sampling + Describe,
{
    let start = Instant::now();
    s.check()?;
    let sampler = QuadrupletSampler::new(group, q)?;
    let chars = sorted_characters(group, chars)?;
    let rows = chars
        .par_iter()
        .enumerate()
        .map(|(i, chi)| {
            let mut rng = RngStream::new(s.seed, i as u64);
            let empirical = empirical_cf(group, chi, s.samples, || sampler.sample(&mut rng))?;
            let theory = ft_quadruplet(group, q, chi)?;
            Ok(ComparisonRow::new(group.label(chi).to_string(), theory, empirical, s.tolerance()))
        })
        .collect::<Result<Vec<_>>>()?;
    let echo = ConfigEcho::new("suite", group, Some(QuadrupletSpec::describe(group, q)), s);
    Ok(VerificationReport::new(echo, rows, start.elapsed()))
}

/// Runs the sampler on the depth-n and depth-(n+1) truncations of `q` and
/// compares both with the closed form at every default character of depth
/// ≤ n.
pub fn check_compatibility<G>(group: &G, q: &Quadruplet<G>, n: usize, s: &SuiteSettings) -> Result<VerificationReport>
where
    G: Sampling + Truncate + Describe,
{
    let start = Instant::now();
    s.check()?;
    let depth = group.depth().ok_or_else(|| {
        Error::InvalidArgument(format!("compatibility needs a projective limit, not the {} group", group.kind()))
    })?;
    if n == 0 || n + 1 > depth {
        return Err(Error::InvalidArgument(format!(
            "compatibility level n = {n} needs 1 ≤ n and n + 1 ≤ depth {depth}"
        )));
    }
    q.validate(group)?;
    let (small, q_small) = q.truncated(group, n)?;
    let (large, q_large) = q.truncated(group, n + 1)?;
    let sampler_small = QuadrupletSampler::new(&small, &q_small)?;
    let sampler_large = QuadrupletSampler::new(&large, &q_large)?;
    let chars = small.default_characters();

    let rows: Vec<[ComparisonRow; 2]> = chars
        .par_iter()
        .enumerate()
        .map(|(i, chi)| {
            let theory = ft_quadruplet(group, q, chi)?;
            let label = group.label(chi);
            let mut rng = RngStream::new(s.seed, 2 * i as u64);
            let emp_small = empirical_cf(&small, chi, s.samples, || sampler_small.sample(&mut rng))?;
            let mut rng = RngStream::new(s.seed, 2 * i as u64 + 1);
            let emp_large = empirical_cf(&large, chi, s.samples, || sampler_large.sample(&mut rng))?;
            Ok([
                ComparisonRow::new(format!("n={n}:{label}"), theory, emp_small, s.tolerance()),
                ComparisonRow::new(format!("n={}:{label}", n + 1), theory, emp_large, s.tolerance()),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let echo = ConfigEcho::new(
        &format!("compatibility n={n}"),
        group,
        Some(QuadrupletSpec::describe(group, q)),
        s,
    );
    Ok(VerificationReport::new(echo, rows.into_iter().flatten().collect(), start.elapsed()))
}

/// Group sum of n independent draws from ({e}, e, ψ/n, η/n) against the
/// transform of (ψ, η).
pub fn check_divisibility<G>(
    group: &G,
    q: &Quadruplet<G>,
    n: u32,
    chars: &[G::Character],
    s: &SuiteSettings,
) -> Result<VerificationReport>
where
    G: Sampling + Describe,
{
    let start = Instant::now();
    s.check()?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("divisibility order must be at least 2, got {n}")));
    }
    q.validate(group)?;
    let root = q.root(group, n)?;
    let sampler = QuadrupletSampler::new(group, &root)?;
    let chars = sorted_characters(group, chars)?;
    let rows = chars
        .par_iter()
        .enumerate()
        .map(|(i, chi)| {
            let mut rng = RngStream::new(s.seed, i as u64);
            let empirical = empirical_cf(group, chi, s.samples, || {
                (1..n).fold(sampler.sample(&mut rng), |acc, _| {
                    group.combine(&acc, &sampler.sample(&mut rng)).expect("same group")
                })
            })?;
            let theory = ft_quadruplet(group, q, chi)?;
            Ok(ComparisonRow::new(group.label(chi).to_string(), theory, empirical, s.tolerance()))
        })
        .collect::<Result<Vec<_>>>()?;
    let echo = ConfigEcho::new(
        &format!("divisibility n={n}"),
        group,
        Some(QuadrupletSpec::describe(group, q)),
        s,
    );
    Ok(VerificationReport::new(echo, rows, start.elapsed()))
}

/// Groups on which ¼ g(x,χ)² ≤ 1 − Re χ(x) ≤ ½ g(x,χ)² is checked near e.
pub trait CompareInequality: LcaGroup {
    /// Half-width w of an interval |t| < w of the real coordinate on which
    /// |g(x, χ)| ≤ π/4 and h is the identity.
    fn neighbourhood(&self, chi: &Self::Character) -> f64;
    /// The point with real coordinate t and vanishing integer part.
    fn point_at(&self, t: f64) -> Self::Element;
}

const QUARTER_PI: f64 = std::f64::consts::FRAC_PI_4;
const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

impl CompareInequality for Torus {
    fn neighbourhood(&self, chi: &crate::duality::TorusCharacter) -> f64 {
        (QUARTER_PI / chi.ell.unsigned_abs().max(1) as f64).min(HALF_PI)
    }

    fn point_at(&self, t: f64) -> TorusPoint {
        TorusPoint::from_angle(t).expect("finite angle")
    }
}

impl CompareInequality for Solenoid {
    fn neighbourhood(&self, chi: &crate::duality::SolenoidCharacter) -> f64 {
        let pd = (self.p().get() as f64).powi(chi.d as i32);
        (QUARTER_PI * pd / chi.ell.unsigned_abs().max(1) as f64).min(HALF_PI)
    }

    fn point_at(&self, t: f64) -> SolenoidPoint {
        let depth = self.depth().expect("solenoid has a depth");
        self.phi(&RealIntSequence::new(t, vec![0; depth])).expect("finite sequence")
    }
}

/// Result of the inequality grid for one character. Slacks are the smallest
/// values of (1 − Re χ) − ¼g² and ½g² − (1 − Re χ) over the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRow {
    pub character: String,
    pub half_width: f64,
    pub points: usize,
    pub min_lower_slack: f64,
    pub min_upper_slack: f64,
    pub pass: bool,
}

pub const INEQUALITY_TOLERANCE: f64 = 1e-12;

/// Evaluates both bounds at `grid_size` midpoints t_k = −w + (k + ½)·2w/N.
pub fn check_compare_inequality<G: CompareInequality>(
    group: &G,
    chars: &[G::Character],
    grid_size: usize,
) -> Result<Vec<InequalityRow>> {
    let chars = sorted_characters(group, chars)?;
    chars
        .iter()
        .map(|chi| {
            let w = group.neighbourhood(chi);
            let mut lower = f64::INFINITY;
            let mut upper = f64::INFINITY;
            for k in 0..grid_size {
                let t = -w + (k as f64 + 0.5) * 2.0 * w / grid_size as f64;
                let x = group.point_at(t);
                let g = group.local_inner_product(&x, chi);
                let gap = 1.0 - group.eval(chi, &x)?.re;
                lower = lower.min(gap - 0.25 * g * g);
                upper = upper.min(0.5 * g * g - gap);
            }
            Ok(InequalityRow {
                character: group.label(chi).to_string(),
                half_width: w,
                points: grid_size,
                min_lower_slack: lower,
                min_upper_slack: upper,
                pass: lower >= -INEQUALITY_TOLERANCE && upper >= -INEQUALITY_TOLERANCE,
            })
        })
        .collect()
}

/// Sanity check that the neighbourhood keeps h(t) = t.
pub fn neighbourhood_is_linear(w: f64) -> bool {
    h(w) == w && h(-w) == -w
}

/// The p-adic operations exercised by the arithmetic oracle. A faulty
/// implementation can be substituted to confirm the oracle catches it.
pub trait PadicOps: Sync {
    fn add(&self, a: &PadicInt, b: &PadicInt) -> PadicInt;
    fn neg(&self, a: &PadicInt) -> PadicInt;
    fn mul_nat(&self, a: &PadicInt, k: u64) -> PadicInt;
}

/// The crate's own digit arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct NativePadicOps;

impl PadicOps for NativePadicOps {
    fn add(&self, a: &PadicInt, b: &PadicInt) -> PadicInt {
        a.add(b).expect("operands share p and length")
    }

    fn neg(&self, a: &PadicInt) -> PadicInt {
        a.neg()
    }

    fn mul_nat(&self, a: &PadicInt, k: u64) -> PadicInt {
        a.mul_nat(k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub primes: Vec<u32>,
    pub digits: usize,
    pub trials_per_prime: usize,
    pub mismatches: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
    pub pass: bool,
}

fn big_value(x: &PadicInt) -> BigUint {
    let p = BigUint::from(x.p().get());
    x.digits()
        .iter()
        .rev()
        .fold(BigUint::ZERO, |acc, &d| acc * &p + BigUint::from(d))
}

fn big_digits(p: Prime, len: usize, v: &BigUint) -> PadicInt {
    // u8 digits; callers keep p ≤ 256.
    let mut digits = v.to_radix_le(p.get());
    digits.resize(len, 0);
    PadicInt::new(p, digits.into_iter().map(u32::from).collect()).expect("digits below p")
}

/// add / neg / mul_nat against big-integer arithmetic modulo p^digits,
/// plus x + (−x) = 0 and (p·x)_0 = 0.
pub fn oracle_padic_arithmetic(
    ops: &dyn PadicOps,
    primes: &[u32],
    digits: usize,
    trials: usize,
    seed: u64,
) -> Result<OracleReport> {
    let mut mismatches = 0usize;
    let mut first_mismatch = None;
    for (pi, &p) in primes.iter().enumerate() {
        let prime = Prime::new(p)?;
        if p > 256 {
            return Err(Error::InvalidArgument(format!("oracle supports p ≤ 256, got {p}")));
        }
        let modulus = BigUint::from(p).pow(digits as u32);
        let mut rng = RngStream::new(Seed(seed), pi as u64);
        let random = |rng: &mut RngStream| {
            let d = (0..digits).map(|_| rng.random_range(0..p)).collect();
            PadicInt::new(prime, d).expect("digits below p")
        };
        for trial in 0..trials {
            let a = random(&mut rng);
            let b = random(&mut rng);
            let k: u64 = rng.random();
            let (va, vb) = (big_value(&a), big_value(&b));
            let checks = [
                ("add", ops.add(&a, &b), big_digits(prime, digits, &((&va + &vb) % &modulus))),
                ("neg", ops.neg(&a), big_digits(prime, digits, &((&modulus - &va) % &modulus))),
                ("mul_nat", ops.mul_nat(&a, k), big_digits(prime, digits, &((&va * BigUint::from(k)) % &modulus))),
            ];
            let mut record = |what: String| {
                mismatches += 1;
                if first_mismatch.is_none() {
                    first_mismatch = Some(what);
                }
            };
            for (name, got, want) in checks {
                if got != want {
                    record(format!("p={p} trial {trial}: {name} gave {:?}, expected {:?}", got.digits(), want.digits()));
                }
            }
            if !ops.add(&a, &ops.neg(&a)).is_zero() {
                record(format!("p={p} trial {trial}: x + neg(x) ≠ 0"));
            }
            if ops.mul_nat(&a, p as u64).digits()[0] != 0 {
                record(format!("p={p} trial {trial}: (p·x)_0 ≠ 0"));
            }
        }
    }
    Ok(OracleReport {
        primes: primes.to_vec(),
        digits,
        trials_per_prime: trials,
        mismatches,
        first_mismatch,
        pass: mismatches == 0,
    })
}
