//! JSON experiment configs and the textual forms of group elements.
//!
//! ```json
//! {
//!   "group": "solenoid", "p": 2, "depth": 3,
//!   "quadruplet": {"H": "trivial", "a": 0.4, "b": 1.0,
//!                  "eta": [{"point": 0.3, "mass": 0.8}]},
//!   "samples": 100000, "seed": 7, "tolerance_c": 4.0,
//!   "characters": "default"
//! }
//! ```
//!
//! Elements are angles on 𝕋, digit lists (least significant first) on Δ_p
//! and deep angles y_D on S_p. Subgroups are `"trivial"`, `"full"`,
//! `{"cyclic": r}` (𝕋) or `{"lambda": r}` (Δ_p). Characters are `"default"`,
//! a list of ℓ on 𝕋, or a list of `[d, ℓ]` pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duality::{CharacterLabel, QuadraticForm};
use crate::error::{Error, Result};
use crate::group::{
    GroupKind, LcaGroup, PadicInt, PadicIntegers, PadicSubgroup, Prime, Solenoid, SolenoidPoint,
    SolenoidSubgroup, Torus, TorusPoint, TorusSubgroup,
};
use crate::measure::{LevyAtom, LevyMeasure, Quadruplet};
use crate::sampling::Seed;
use crate::verify::SuiteSettings;

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_TOLERANCE_C: f64 = 4.0;
pub const DEFAULT_DEPTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Angle(f64),
    Digits(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupSpec {
    #[default]
    Trivial,
    Full,
    Cyclic(u64),
    Lambda(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub point: ElementSpec,
    pub mass: f64,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupletSpec {
    #[serde(rename = "H", default)]
    pub subgroup: SubgroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElementSpec>,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub eta: Vec<AtomSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    Keyword(String),
    Ells(Vec<i64>),
    Pairs(Vec<(usize, i64)>),
}

impl Default for CharacterSpec {
    fn default() -> Self {
        CharacterSpec::Keyword("default".into())
    }
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_tolerance_c() -> f64 {
    DEFAULT_TOLERANCE_C
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default)]
    pub quadruplet: QuadrupletSpec,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tolerance_c")]
    pub tolerance_c: f64,
    #[serde(default)]
    pub characters: CharacterSpec,
}

/// A config problem, tagged with the path of the offending field.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigError {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { String::new() } else { path };
            ConfigError::new(field, e.into_inner())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Checks the config and builds the typed experiment it describes.
    pub fn resolve(&self) -> std::result::Result<Experiment, ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::new("samples", "must be at least 1"));
        }
        if !(self.tolerance_c.is_finite() && self.tolerance_c > 0.0) {
            return Err(ConfigError::new("tolerance_c", "must be a positive number"));
        }
        match self.group {
            GroupKind::Torus => {
                if self.p.is_some() {
                    return Err(ConfigError::new("p", "the torus takes no prime"));
                }
                if self.depth.is_some() {
                    return Err(ConfigError::new("depth", "the torus takes no depth"));
                }
                Ok(Experiment::Torus(self.setup(Torus)?))
            }
            GroupKind::Padic => {
                let (p, depth) = self.prime_and_depth()?;
                let g = PadicIntegers::new(p, depth).map_err(|e| ConfigError::new("depth", e))?;
                Ok(Experiment::Padic(self.setup(g)?))
            }
            GroupKind::Solenoid => {
                let (p, depth) = self.prime_and_depth()?;
                let g = Solenoid::new(p, depth).map_err(|e| ConfigError::new("depth", e))?;
                Ok(Experiment::Solenoid(self.setup(g)?))
            }
        }
    }

    fn prime_and_depth(&self) -> std::result::Result<(Prime, usize), ConfigError> {
        let p = self
            .p
            .ok_or_else(|| ConfigError::new("p", format!("required for group {}", self.group)))?;
        let p = Prime::new(p).map_err(|e| ConfigError::new("p", e))?;
        Ok((p, self.depth.unwrap_or(DEFAULT_DEPTH)))
    }

    fn setup<G: Describe>(&self, group: G) -> std::result::Result<Setup<G>, ConfigError> {
        let quadruplet = self.quadruplet.build(&group)?;
        let characters = parse_characters(&group, &self.characters)?;
        Ok(Setup {
            group,
            quadruplet,
            characters,
            samples: self.samples,
            seed: Seed(self.seed),
            tolerance_c: self.tolerance_c,
        })
    }
}

impl QuadrupletSpec {
    pub fn build<G: Describe>(&self, group: &G) -> std::result::Result<Quadruplet<G>, ConfigError> {
        let subgroup = group
            .subgroup_from_spec(self.subgroup)
            .map_err(|e| ConfigError::new("quadruplet.H", e))?;
        let shift = match &self.a {
            None => group.identity(),
            Some(a) => group
                .element_from_spec(a)
                .map_err(|e| ConfigError::new("quadruplet.a", e))?,
        };
        let gauss = QuadraticForm::new(self.b).map_err(|e| ConfigError::new("quadruplet.b", e))?;
        let mut atoms = Vec::with_capacity(self.eta.len());
        for (i, atom) in self.eta.iter().enumerate() {
            let point = group
                .element_from_spec(&atom.point)
                .map_err(|e| ConfigError::new(format!("quadruplet.eta[{i}].point"), e))?;
            atoms.push(LevyAtom::new(point, atom.mass));
        }
        let levy = LevyMeasure::new(group, atoms).map_err(|e| {
            let field = match e {
                Error::AtomAtIdentity { index } => format!("quadruplet.eta[{index}].point"),
                Error::InvalidMass { index, .. } => format!("quadruplet.eta[{index}].mass"),
                _ => "quadruplet.eta".into(),
            };
            ConfigError::new(field, e)
        })?;
        let q = Quadruplet {
            subgroup,
            shift,
            gauss,
            levy,
        };
        q.validate(group).map_err(|e| {
            let field = match e {
                Error::GaussOnPadic(_) => "quadruplet.b",
                _ => "quadruplet",
            };
            ConfigError::new(field, e)
        })?;
        Ok(q)
    }

    pub fn describe<G: Describe>(group: &G, q: &Quadruplet<G>) -> Self {
        QuadrupletSpec {
            subgroup: group.subgroup_to_spec(&q.subgroup),
            a: Some(group.element_to_spec(&q.shift)),
            b: q.gauss.b(),
            eta: q
                .levy
                .atoms()
                .iter()
                .map(|a| AtomSpec {
                    point: group.element_to_spec(&a.point),
                    mass: a.mass,
                })
                .collect(),
        }
    }
}

fn parse_characters<G: Describe>(
    group: &G,
    spec: &CharacterSpec,
) -> std::result::Result<Vec<G::Character>, ConfigError> {
    let labels: Vec<CharacterLabel> = match spec {
        CharacterSpec::Keyword(k) if k == "default" => return Ok(group.default_characters()),
        CharacterSpec::Keyword(k) => {
            return Err(ConfigError::new(
                "characters",
                format!("expected \"default\" or a list, got \"{k}\""),
            ))
        }
        CharacterSpec::Ells(ells) => {
            if group.kind() != GroupKind::Torus && !ells.is_empty() {
                return Err(ConfigError::new(
                    "characters",
                    format!("characters of the {} group are [d, ell] pairs", group.kind()),
                ));
            }
            ells.iter().map(|&ell| CharacterLabel { d: None, ell }).collect()
        }
        CharacterSpec::Pairs(pairs) => {
            if group.kind() == GroupKind::Torus {
                return Err(ConfigError::new("characters", "torus characters are plain integers ell"));
            }
            pairs.iter().map(|&(d, ell)| CharacterLabel { d: Some(d), ell }).collect()
        }
    };
    if labels.is_empty() {
        return Err(ConfigError::new("characters", "empty character list"));
    }
    let mut chars = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            group
                .character_from_label(l)
                .map_err(|e| ConfigError::new(format!("characters[{i}]"), e))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    chars.sort();
    chars.dedup();
    Ok(chars)
}

/// A parsed experiment on a concrete group.
#[derive(Clone, Debug)]
pub struct Setup<G: LcaGroup> {
    pub group: G,
    pub quadruplet: Quadruplet<G>,
    pub characters: Vec<G::Character>,
    pub samples: usize,
    pub seed: Seed,
    pub tolerance_c: f64,
}

impl<G: LcaGroup> Setup<G> {
    pub fn settings(&self) -> SuiteSettings {
        SuiteSettings {
            samples: self.samples,
            seed: self.seed,
            tolerance_c: self.tolerance_c,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Experiment {
    Torus(Setup<Torus>),
    Padic(Setup<PadicIntegers>),
    Solenoid(Setup<Solenoid>),
}

/// Conversions between group values and their config / output forms.
pub trait Describe: LcaGroup {
    fn element_from_spec(&self, spec: &ElementSpec) -> Result<Self::Element>;
    fn element_to_spec(&self, x: &Self::Element) -> ElementSpec;
    fn subgroup_from_spec(&self, spec: SubgroupSpec) -> Result<Self::Subgroup>;
    fn subgroup_to_spec(&self, h: &Self::Subgroup) -> SubgroupSpec;
    /// Column names of a CSV sample dump.
    fn sample_header(&self) -> Vec<String>;
    fn sample_fields(&self, x: &Self::Element) -> Vec<String>;
    fn sample_json(&self, x: &Self::Element) -> serde_json::Value;
}

fn unsupported(kind: GroupKind, spec: SubgroupSpec) -> Error {
    Error::InvalidSubgroup(format!("{spec:?} is not a subgroup of the {kind} group"))
}

impl Describe for Torus {
    fn element_from_spec(&self, spec: &ElementSpec) -> Result<TorusPoint> {
        match spec {
            ElementSpec::Angle(a) => TorusPoint::from_angle(*a),
            ElementSpec::Digits(_) => Err(Error::InvalidArgument(
                "torus elements are given by their angle".into(),
            )),
        }
    }

    fn element_to_spec(&self, x: &TorusPoint) -> ElementSpec {
        ElementSpec::Angle(x.angle())
    }

    fn subgroup_from_spec(&self, spec: SubgroupSpec) -> Result<TorusSubgroup> {
        let h = match spec {
            SubgroupSpec::Trivial => TorusSubgroup::Cyclic(1),
            SubgroupSpec::Full => TorusSubgroup::Full,
            SubgroupSpec::Cyclic(r) => TorusSubgroup::Cyclic(r),
            SubgroupSpec::Lambda(_) => return Err(unsupported(GroupKind::Torus, spec)),
        };
        self.check_subgroup(&h)?;
        Ok(h)
    }

    fn subgroup_to_spec(&self, h: &TorusSubgroup) -> SubgroupSpec {
        match *h {
            TorusSubgroup::Full => SubgroupSpec::Full,
            TorusSubgroup::Cyclic(1) => SubgroupSpec::Trivial,
            TorusSubgroup::Cyclic(r) => SubgroupSpec::Cyclic(r),
        }
    }

    fn sample_header(&self) -> Vec<String> {
        vec!["angle".into()]
    }

    fn sample_fields(&self, x: &TorusPoint) -> Vec<String> {
        vec![x.angle().to_string()]
    }

    fn sample_json(&self, x: &TorusPoint) -> serde_json::Value {
        serde_json::json!({ "angle": x.angle() })
    }
}

/// Digits x_0 x_1 … x_D, least significant first; dot-separated when p > 10.
pub fn digit_string(x: &PadicInt) -> String {
    let sep = if x.p().get() > 10 { "." } else { "" };
    x.digits()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl Describe for PadicIntegers {
    /// Shorter digit lists are padded with zeros.
    fn element_from_spec(&self, spec: &ElementSpec) -> Result<PadicInt> {
        match spec {
            ElementSpec::Digits(digits) => {
                if digits.len() > self.digit_len() {
                    return Err(Error::InvalidArgument(format!(
                        "{} digits given but depth {} keeps {}",
                        digits.len(),
                        self.digit_len() - 1,
                        self.digit_len()
                    )));
                }
                let mut digits = digits.clone();
                digits.resize(self.digit_len(), 0);
                self.element(digits)
            }
            ElementSpec::Angle(_) => Err(Error::InvalidArgument(
                "p-adic elements are given as digit lists".into(),
            )),
        }
    }

    fn element_to_spec(&self, x: &PadicInt) -> ElementSpec {
        ElementSpec::Digits(x.digits().to_vec())
    }

    fn subgroup_from_spec(&self, spec: SubgroupSpec) -> Result<PadicSubgroup> {
        let h = match spec {
            SubgroupSpec::Trivial => self.trivial_subgroup(),
            SubgroupSpec::Full => PadicSubgroup::Lambda(0),
            SubgroupSpec::Lambda(r) => PadicSubgroup::Lambda(r),
            SubgroupSpec::Cyclic(_) => return Err(unsupported(GroupKind::Padic, spec)),
        };
        self.check_subgroup(&h)?;
        Ok(h)
    }

    fn subgroup_to_spec(&self, h: &PadicSubgroup) -> SubgroupSpec {
        let PadicSubgroup::Lambda(r) = *h;
        if self.is_trivial_subgroup(h) {
            SubgroupSpec::Trivial
        } else if r == 0 {
            SubgroupSpec::Full
        } else {
            SubgroupSpec::Lambda(r)
        }
    }

    fn sample_header(&self) -> Vec<String> {
        vec!["digits".into()]
    }

    fn sample_fields(&self, x: &PadicInt) -> Vec<String> {
        vec![digit_string(x)]
    }

    fn sample_json(&self, x: &PadicInt) -> serde_json::Value {
        serde_json::json!({ "digits": x.digits() })
    }
}

impl Describe for Solenoid {
    fn element_from_spec(&self, spec: &ElementSpec) -> Result<SolenoidPoint> {
        match spec {
            ElementSpec::Angle(a) => self.point(*a),
            ElementSpec::Digits(_) => Err(Error::InvalidArgument(
                "solenoid elements are given by their deep angle".into(),
            )),
        }
    }

    fn element_to_spec(&self, x: &SolenoidPoint) -> ElementSpec {
        ElementSpec::Angle(x.deep_angle())
    }

    fn subgroup_from_spec(&self, spec: SubgroupSpec) -> Result<SolenoidSubgroup> {
        match spec {
            SubgroupSpec::Trivial => Ok(SolenoidSubgroup::Trivial),
            SubgroupSpec::Full => Ok(SolenoidSubgroup::Full),
            _ => Err(unsupported(GroupKind::Solenoid, spec)),
        }
    }

    fn subgroup_to_spec(&self, h: &SolenoidSubgroup) -> SubgroupSpec {
        match h {
            SolenoidSubgroup::Trivial => SubgroupSpec::Trivial,
            SolenoidSubgroup::Full => SubgroupSpec::Full,
        }
    }

    fn sample_header(&self) -> Vec<String> {
        let depth = self.depth().expect("solenoid has a depth");
        std::iter::once("deep_angle".to_string())
            .chain((0..=depth).map(|j| format!("y{j}")))
            .collect()
    }

    fn sample_fields(&self, x: &SolenoidPoint) -> Vec<String> {
        std::iter::once(x.deep_angle())
            .chain(x.coordinates())
            .map(|v| v.to_string())
            .collect()
    }

    fn sample_json(&self, x: &SolenoidPoint) -> serde_json::Value {
        serde_json::json!({ "deep_angle": x.deep_angle(), "coordinates": x.coordinates() })
    }
}
