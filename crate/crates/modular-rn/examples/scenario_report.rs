//! Drive a scenario through the harness and print both report formats.

use modular_rn::cocycle::TheoremKind;
use modular_rn::harness::{emit_report, run_suite, run_theorem, ReportFormat, Scenario};

const SCENARIO: &str = r#"{
    "name": "demo",
    "seed": 7,
    "algebra": {"blocks": [2]},
    "base_weight": {"diag": [[1.0, 2.0]]},
    "pair": {
        "delta": {"diag": [[3.0, 1.0]]},
        "lambda": {"scalar": 1.0},
        "mode": "exact"
    }
}"#;

fn main() {
    let scenario: Scenario = serde_json::from_str(SCENARIO).unwrap();

    let report = run_suite(scenario.clone()).unwrap();
    println!("{}", emit_report(&report, ReportFormat::Text));

    let theorem = run_theorem(scenario, TheoremKind::Rn1, 1e-8).unwrap();
    print!("{}", emit_report(&theorem, ReportFormat::Json));
}
