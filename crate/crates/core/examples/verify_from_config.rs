//! Build an experiment from a JSON document and verify it.
use wid_measures::config::{Experiment, ExperimentConfig};
use wid_measures::verify::run_suite;

const CONFIG: &str = r#"{
  "group": "padic",
  "p": 5,
  "depth": 2,
  "quadruplet": {"H": {"lambda": 1}, "a": [3, 1], "eta": [{"point": [0, 2, 4], "mass": 0.9}]},
  "samples": 40000,
  "seed": 17
}"#;

fn main() {
    let experiment = ExperimentConfig::from_json(CONFIG)
        .and_then(|c| c.resolve())
        .unwrap_or_else(|e| panic!("bad config: {e}"));
    let report = match &experiment {
        Experiment::Torus(s) => run_suite(&s.group, &s.quadruplet, &s.characters, &s.settings()),
        Experiment::Padic(s) => run_suite(&s.group, &s.quadruplet, &s.characters, &s.settings()),
        Experiment::Solenoid(s) => run_suite(&s.group, &s.quadruplet, &s.characters, &s.settings()),
    }
    .expect("valid experiment");
    println!("{} rows, {} failures", report.rows.len(), report.failures().count());
    println!("{}", report.to_json());
}
