//! The `wid` command line: argument definitions and the four commands.
//!
//! Commands write machine output (JSON, CSV, sample dumps) to stdout or to
//! `--out`, and a human summary to stderr. Exit codes: 0 pass, 1
//! verification failure, 2 usage or config error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, Describe, Experiment, ExperimentConfig, Setup};
use crate::duality::QuadraticForm;
use crate::group::{
    GroupKind, LcaGroup, PadicIntegers, PadicSubgroup, Prime, Solenoid, SolenoidSubgroup, Torus,
    Truncate,
};
use crate::measure::{LevyAtom, LevyMeasure, Quadruplet};
use crate::sampling::{QuadrupletSampler, RngStream, Sampling};
use crate::verify::{
    check_compare_inequality, check_compatibility, check_divisibility, oracle_padic_arithmetic,
    run_suite, InequalityRow, OracleReport, PadicOps, SuiteSettings, VerificationReport,
    SCHEMA_VERSION,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wid", version, about = "Sample and verify weakly infinitely divisible measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare a config's sampler with its closed-form transform.
    Verify(VerifyArgs),
    /// Dump raw samples drawn from a config's quadruplet.
    Sample(SampleArgs),
    /// Run the Haar sampler of Δ_p or S_p against every default character.
    HaarDemo(HaarDemoArgs),
    /// Arithmetic oracle, inequality grid, compatibility and divisibility on
    /// built-in fixtures.
    Selftest(SelftestArgs),
}

/// Values that override the corresponding config fields.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long = "tolerance-c")]
    pub tolerance_c: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// JSON report destination (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SampleFormat {
    #[default]
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Number of samples (default: the config's `samples`).
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
    pub format: SampleFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HaarGroup {
    Padic,
    Solenoid,
}

#[derive(Debug, Clone, Args)]
pub struct HaarDemoArgs {
    #[arg(long, value_enum)]
    pub group: HaarGroup,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, default_value_t = crate::config::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "tolerance-c", default_value_t = crate::config::DEFAULT_TOLERANCE_C)]
    pub tolerance_c: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = SELFTEST_SAMPLES)]
    pub samples: usize,
    #[arg(long = "tolerance-c", default_value_t = crate::config::DEFAULT_TOLERANCE_C)]
    pub tolerance_c: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const SELFTEST_SAMPLES: usize = 100_000;

/// Dispatches a parsed command line.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Sample(a) => cmd_sample(&a, out, err),
        Command::HaarDemo(a) => cmd_haar_demo(&a, out, err),
        Command::Selftest(a) => cmd_selftest(&a, &crate::verify::NativePadicOps, out, err),
    }
}

pub fn load_config(path: &Path, ov: &Overrides) -> Result<ExperimentConfig, ConfigError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError::new("config", format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(n) = ov.samples {
        cfg.samples = n;
    }
    if let Some(s) = ov.seed {
        cfg.seed = s;
    }
    if let Some(d) = ov.depth {
        if cfg.group == GroupKind::Torus {
            return Err(ConfigError::new("depth", "the torus takes no depth"));
        }
        cfg.depth = Some(d);
    }
    if let Some(c) = ov.tolerance_c {
        cfg.tolerance_c = c;
    }
    Ok(cfg)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

/// Fixed CSV layout: character, re_theory, im_theory, re_emp, im_emp,
/// abs_err, tol, pass.
pub fn report_csv(report: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["character", "re_theory", "im_theory", "re_emp", "im_emp", "abs_err", "tol", "pass"])
        .expect("in-memory write");
    for r in &report.rows {
        w.write_record([
            r.character.clone(),
            r.theory.re.to_string(),
            r.theory.im.to_string(),
            r.empirical.re.to_string(),
            r.empirical.im.to_string(),
            r.abs_error.to_string(),
            r.tolerance.to_string(),
            r.pass.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Human-readable table of a report.
pub fn summary_table(report: &VerificationReport) -> String {
    let mut s = format!(
        "{} on {} ({} samples, seed {}, tol {:.4})\n{:<14} {:>22} {:>22} {:>10}  pass\n",
        report.config.check,
        report.config.group,
        report.config.samples,
        report.config.seed,
        report.rows.first().map_or(0.0, |r| r.tolerance),
        "character",
        "theory",
        "empirical",
        "abs_err"
    );
    for r in &report.rows {
        s.push_str(&format!(
            "{:<14} {:>10.6}{:>+10.6}i {:>10.6}{:>+10.6}i {:>10.2e}  {}\n",
            r.character,
            r.theory.re,
            r.theory.im,
            r.empirical.re,
            r.empirical.im,
            r.abs_error,
            if r.pass { "ok" } else { "FAIL" }
        ));
    }
    s.push_str(&format!(
        "{}: {}/{} rows pass, max error {:.3e}, {:.2?}\n",
        if report.overall_pass { "PASS" } else { "FAIL" },
        report.rows.iter().filter(|r| r.pass).count(),
        report.rows.len(),
        report.max_abs_error(),
        report.wall_time
    ));
    s
}

fn write_report(
    report: &VerificationReport,
    out_path: Option<&Path>,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let _ = err.write_all(summary_table(report).as_bytes());
    let json = report.to_json() + "\n";
    if let Err(e) = emit(out, out_path, &json) {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if let Some(p) = csv_path {
        if let Err(e) = fs::write(p, report_csv(report)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
            return EXIT_USAGE;
        }
    }
    if report.overall_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}


fn suite<G: Sampling + Describe>(s: &Setup<G>) -> crate::Result<VerificationReport> {
    run_suite(&s.group, &s.quadruplet, &s.characters, &s.settings())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let experiment = match load_config(&args.config, &args.overrides).and_then(|c| c.resolve()) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "config error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match &experiment {
        Experiment::Torus(s) => suite(s),
        Experiment::Padic(s) => suite(s),
        Experiment::Solenoid(s) => suite(s),
    };
    match report {
        Ok(r) => write_report(&r, args.out.as_deref(), args.csv.as_deref(), out, err),
        Err(e) => {
            let _ = writeln!(err, "config error: {e}");
            EXIT_USAGE
        }
    }
}

fn dump_samples<G: Sampling + Describe>(s: &Setup<G>, count: usize, format: SampleFormat) -> crate::Result<String> {
    let sampler = QuadrupletSampler::new(&s.group, &s.quadruplet)?;
    let mut rng = RngStream::new(s.seed, 0);
    let mut text = String::new();
    match format {
        SampleFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            for _ in 0..count {
                w.write_record(s.group.sample_fields(&sampler.sample(&mut rng)))
                    .expect("in-memory write");
            }
            text.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
        }
        SampleFormat::Jsonl => {
            for _ in 0..count {
                text.push_str(&s.group.sample_json(&sampler.sample(&mut rng)).to_string());
                text.push('\n');
            }
        }
    }
    Ok(text)
}

/// CSV dumps have no header. Columns: `angle` (𝕋); `digits` (Δ_p);
/// `deep_angle, y0, …, yD` (S_p).
pub fn cmd_sample(args: &SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match load_config(&args.config, &args.overrides) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "config error: {e}");
            return EXIT_USAGE;
        }
    };
    let count = args.count.unwrap_or(cfg.samples);
    let experiment = match cfg.resolve() {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "config error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match &experiment {
        Experiment::Torus(s) => dump_samples(s, count, args.format),
        Experiment::Padic(s) => dump_samples(s, count, args.format),
        Experiment::Solenoid(s) => dump_samples(s, count, args.format),
    };
    match text.map(|t| emit(out, args.out.as_deref(), &t)) {
        Ok(Ok(())) => {
            let _ = writeln!(err, "wrote {count} samples");
            EXIT_PASS
        }
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: cannot write samples: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "config error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn cmd_haar_demo(args: &HaarDemoArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = SuiteSettings {
        samples: args.samples,
        seed: crate::sampling::Seed(args.seed),
        tolerance_c: args.tolerance_c,
    };
    let report = Prime::new(args.p).and_then(|p| match args.group {
        HaarGroup::Padic => {
            let g = PadicIntegers::new(p, args.depth)?;
            let q = Quadruplet::trivial(&g).with_subgroup(PadicSubgroup::Lambda(0));
            run_suite(&g, &q, &g.default_characters(), &s)
        }
        HaarGroup::Solenoid => {
            let g = Solenoid::new(p, args.depth)?;
            let q = Quadruplet::trivial(&g).with_subgroup(SolenoidSubgroup::Full);
            run_suite(&g, &q, &g.default_characters(), &s)
        }
    });
    match report {
        Ok(mut r) => {
            r.config.check = "haar-demo".into();
            write_report(&r, args.out.as_deref(), args.csv.as_deref(), out, err)
        }
        Err(e) => {
            let _ = writeln!(err, "usage error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalitySection {
    pub group: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub rows: Vec<InequalityRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: usize,
    pub oracle: OracleReport,
    pub inequality: Vec<InequalitySection>,
    pub compatibility: Vec<VerificationReport>,
    pub divisibility: Vec<VerificationReport>,
    pub overall_pass: bool,
}

pub const SELFTEST_ORACLE_TRIALS: usize = 10_000;
pub const SELFTEST_ORACLE_DIGITS: usize = 16;
pub const SELFTEST_GRID: usize = 1_000;

fn prime(p: u32) -> Prime {
    Prime::new(p).expect("fixture prime")
}

/// p = 2, depth 4: Λ_1, a shift and a three-atom η.
pub fn padic_fixture() -> (PadicIntegers, Quadruplet<PadicIntegers>) {
    let g = PadicIntegers::new(prime(2), 4).expect("fixture depth");
    let el = |d: Vec<u32>| g.element(d).expect("fixture digits");
    let eta = LevyMeasure::new(
        &g,
        vec![
            LevyAtom::new(el(vec![1, 0, 1, 0, 0]), 0.6),
            LevyAtom::new(el(vec![0, 1, 1, 0, 1]), 0.9),
            LevyAtom::new(el(vec![1, 1, 0, 0, 0]), 0.4),
        ],
    )
    .expect("fixture measure");
    let q = Quadruplet::trivial(&g)
        .with_subgroup(PadicSubgroup::Lambda(1))
        .with_shift(el(vec![0, 1, 0, 1, 1]))
        .with_levy(eta);
    (g, q)
}

/// p = 3, depth 4: a shift, b = 0.8 and a two-atom η.
pub fn solenoid_fixture() -> (Solenoid, Quadruplet<Solenoid>) {
    let g = Solenoid::new(prime(3), 4).expect("fixture depth");
    let eta = LevyMeasure::new(
        &g,
        vec![
            LevyAtom::new(g.point(0.35).expect("finite"), 0.7),
            LevyAtom::new(g.point(-2.4).expect("finite"), 0.5),
        ],
    )
    .expect("fixture measure");
    let q = Quadruplet::trivial(&g)
        .with_shift(g.point(1.3).expect("finite"))
        .with_gauss(QuadraticForm::new(0.8).expect("nonnegative"))
        .with_levy(eta);
    (g, q)
}

fn centered<G: LcaGroup>(g: &G, q: &Quadruplet<G>) -> Quadruplet<G> {
    Quadruplet::trivial(g).with_gauss(q.gauss).with_levy(q.levy.clone())
}

fn torus_divisibility_fixture() -> Quadruplet<Torus> {
    let t = |a: f64| crate::group::TorusPoint::from_angle(a).expect("finite");
    let eta = LevyMeasure::new(&Torus, vec![LevyAtom::new(t(0.5), 1.2), LevyAtom::new(t(-2.0), 0.6)])
        .expect("fixture measure");
    Quadruplet::trivial(&Torus)
        .with_gauss(QuadraticForm::new(0.6).expect("nonnegative"))
        .with_levy(eta)
}

fn compatibility_runs<G: Sampling + Truncate + Describe>(
    g: &G,
    q: &Quadruplet<G>,
    s: &SuiteSettings,
) -> crate::Result<Vec<VerificationReport>> {
    (1..=3).map(|n| check_compatibility(g, q, n, s)).collect()
}

/// Runs every selftest section. `ops` is the p-adic arithmetic under test.
pub fn selftest_report(ops: &dyn PadicOps, s: &SuiteSettings) -> crate::Result<SelftestReport> {
    let oracle = oracle_padic_arithmetic(ops, &[2, 3, 5], SELFTEST_ORACLE_DIGITS, SELFTEST_ORACLE_TRIALS, s.seed.0)?;

    let mut inequality = vec![InequalitySection {
        group: GroupKind::Torus,
        p: None,
        depth: None,
        rows: check_compare_inequality(&Torus, &Torus.default_characters(), SELFTEST_GRID)?,
    }];
    for p in [2, 3] {
        let g = Solenoid::new(prime(p), 3)?;
        inequality.push(InequalitySection {
            group: GroupKind::Solenoid,
            p: Some(p),
            depth: Some(3),
            rows: check_compare_inequality(&g, &g.default_characters(), SELFTEST_GRID)?,
        });
    }

    let (pg, pq) = padic_fixture();
    let (sg, sq) = solenoid_fixture();
    let mut compatibility = compatibility_runs(&pg, &pq, s)?;
    compatibility.extend(compatibility_runs(&sg, &sq, s)?);

    let pg3 = pg.at_depth(3)?;
    let (_, pq3) = pq.truncated(&pg, 3)?;
    let sg3 = sg.at_depth(3)?;
    let (_, sq3) = sq.truncated(&sg, 3)?;
    let divisibility = vec![
        check_divisibility(&Torus, &torus_divisibility_fixture(), 4, &Torus.default_characters(), s)?,
        check_divisibility(&pg3, &centered(&pg3, &pq3), 4, &pg3.default_characters(), s)?,
        check_divisibility(&sg3, &centered(&sg3, &sq3), 4, &sg3.default_characters(), s)?,
    ];

    let overall_pass = oracle.pass
        && inequality.iter().flat_map(|sec| &sec.rows).all(|r| r.pass)
        && compatibility.iter().chain(&divisibility).all(|r| r.overall_pass);
    Ok(SelftestReport {
        schema_version: SCHEMA_VERSION,
        seed: s.seed.0,
        samples: s.samples,
        oracle,
        inequality,
        compatibility,
        divisibility,
        overall_pass,
    })
}

pub fn cmd_selftest(args: &SelftestArgs, ops: &dyn PadicOps, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = SuiteSettings {
        samples: args.samples,
        seed: crate::sampling::Seed(args.seed),
        tolerance_c: args.tolerance_c,
    };
    let start = std::time::Instant::now();
    let report = match selftest_report(ops, &s) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "usage error: {e}");
            return EXIT_USAGE;
        }
    };
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let _ = writeln!(
        err,
        "oracle: {} ({} mismatches over {} cases per prime)",
        mark(report.oracle.pass),
        report.oracle.mismatches,
        report.oracle.trials_per_prime
    );
    if let Some(m) = &report.oracle.first_mismatch {
        let _ = writeln!(err, "  first mismatch: {m}");
    }
    for sec in &report.inequality {
        let _ = writeln!(
            err,
            "inequality {}{}: {} ({} characters)",
            sec.group,
            sec.p.map(|p| format!(" p={p}")).unwrap_or_default(),
            mark(sec.rows.iter().all(|r| r.pass)),
            sec.rows.len()
        );
    }
    for r in report.compatibility.iter().chain(&report.divisibility) {
        let _ = writeln!(
            err,
            "{} {}{}: {} ({} rows, max error {:.3e})",
            r.config.check,
            r.config.group,
            r.config.p.map(|p| format!(" p={p}")).unwrap_or_default(),
            mark(r.overall_pass),
            r.rows.len(),
            r.max_abs_error()
        );
    }
    let _ = writeln!(err, "selftest {} in {:.2?}", mark(report.overall_pass), start.elapsed());
    let json = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
    if let Err(e) = emit(out, args.out.as_deref(), &json) {
        let _ = writeln!(err, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if report.overall_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_every_subcommand() {
        let c = Cli::try_parse_from(["wid", "verify", "--config", "c.json", "--samples", "10", "--tolerance-c", "5"]).unwrap();
        let Command::Verify(v) = c.command else { panic!() };
        assert_eq!(v.overrides.samples, Some(10));
        assert_eq!(v.overrides.tolerance_c, Some(5.0));
        let c = Cli::try_parse_from(["wid", "sample", "--config", "c.json", "--count", "3", "--format", "jsonl"]).unwrap();
        let Command::Sample(s) = c.command else { panic!() };
        assert_eq!(s.format, SampleFormat::Jsonl);
        let c = Cli::try_parse_from(["wid", "haar-demo", "--group", "solenoid", "--p", "3"]).unwrap();
        let Command::HaarDemo(h) = c.command else { panic!() };
        assert_eq!((h.group, h.p, h.depth), (HaarGroup::Solenoid, 3, 3));
        assert!(Cli::try_parse_from(["wid", "selftest", "--seed", "4"]).is_ok());
        assert!(Cli::try_parse_from(["wid", "haar-demo", "--group", "torus"]).is_err());
    }

    #[test]
    fn csv_layout() {
        let s = SuiteSettings::new(100, 0);
        let r = run_suite(&Torus, &Quadruplet::trivial(&Torus), &[crate::duality::TorusCharacter::new(2)], &s).unwrap();
        let text = report_csv(&r);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("character,re_theory,im_theory,re_emp,im_emp,abs_err,tol,pass"));
        assert_eq!(lines.next(), Some("2,1,0,1,0,0,0.4,true"));
    }

    #[test]
    fn fixtures_are_valid() {
        let (g, q) = padic_fixture();
        q.validate(&g).unwrap();
        let (g, q) = solenoid_fixture();
        q.validate(&g).unwrap();
        torus_divisibility_fixture().validate(&Torus).unwrap();
        let _ = crate::config::QuadrupletSpec::describe(&g, &q);
    }
}
