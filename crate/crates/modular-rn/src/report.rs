//! Verification reports: per-identity records with anchors, tolerances and
//! counterexamples, emitted as versioned JSON or an aligned text table.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// How a record's residual is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    /// Pass iff `max_residual <= tolerance`.
    Bound,
    /// Expected failure: pass iff `max_residual >= tolerance`. Used for the
    /// rigidity witnesses, where the point is that the identity must break.
    Witness,
}

/// Location and size of a worst offender, attached to failing records and to
/// mixed equivalence verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub grid_point: String,
    pub residual: f64,
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityRecord {
    pub id: String,
    /// Statement of the identity being checked, in display form.
    pub anchor: String,
    pub grid: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub kind: RecordKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl IdentityRecord {
    pub fn bound(id: &str, anchor: &str, grid: &str, max_residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            grid: grid.into(),
            max_residual,
            tolerance,
            kind: RecordKind::Bound,
            pass: max_residual <= tolerance,
            counterexample: None,
            note: None,
        }
    }

    pub fn witness(id: &str, anchor: &str, grid: &str, max_residual: f64, threshold: f64) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            grid: grid.into(),
            max_residual,
            tolerance: threshold,
            kind: RecordKind::Witness,
            pass: max_residual >= threshold,
            counterexample: None,
            note: Some("expected failure: the residual must be large".into()),
        }
    }

    pub fn with_counterexample(mut self, grid_point: &str, residual: f64) -> Self {
        self.counterexample = Some(Counterexample {
            grid_point: grid_point.into(),
            residual,
        });
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Turn a failed evaluation into a failed record instead of a crash.
    pub fn error(id: &str, anchor: &str, err: &crate::error::Error) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            grid: String::new(),
            max_residual: f64::INFINITY,
            tolerance: 0.0,
            kind: RecordKind::Bound,
            pass: false,
            counterexample: None,
            note: Some(format!("evaluation failed: {err}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// For equivalence checks: some listed conditions hold and others do not,
    /// which is itself a finding and always carries a counterexample.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentBlock {
    pub version: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub schema_version: String,
    pub scenario: String,
    pub environment: EnvironmentBlock,
    pub records: Vec<IdentityRecord>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(scenario: &str, seed: u64, records: Vec<IdentityRecord>) -> Self {
        let verdict = Self::judge(&records);
        Self {
            schema_version: SCHEMA_VERSION.into(),
            scenario: scenario.into(),
            environment: EnvironmentBlock {
                version: env!("CARGO_PKG_VERSION").into(),
                seed,
            },
            records,
            verdict,
        }
    }

    fn judge(records: &[IdentityRecord]) -> Verdict {
        if records.iter().all(|r| r.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Re-judge an equivalence group: all conditions passing or all failing
    /// are coherent outcomes; a mix is flagged and carries a counterexample.
    pub fn new_equivalence(scenario: &str, seed: u64, records: Vec<IdentityRecord>) -> Self {
        let mut report = Self::new(scenario, seed, records);
        let bounds: Vec<&IdentityRecord> = report
            .records
            .iter()
            .filter(|r| r.kind == RecordKind::Bound)
            .collect();
        let passes = bounds.iter().filter(|r| r.pass).count();
        if passes > 0 && passes < bounds.len() {
            report.verdict = Verdict::Mixed;
        }
        report
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Mixed => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> crate::error::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario: {}    schema: {}    version: {}    seed: {}\n",
            self.scenario, self.schema_version, self.environment.version, self.environment.seed
        ));
        let id_w = self
            .records
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(8)
            .max(8);
        out.push_str(&format!(
            "{:id_w$}  {:>12}  {:>9}  {:>7}  {}\n",
            "identity", "max residual", "tolerance", "status", "anchor"
        ));
        for r in &self.records {
            let status = match (r.pass, r.kind) {
                (true, RecordKind::Bound) => "ok",
                (true, RecordKind::Witness) => "ok(w)",
                (false, _) => "FAIL",
            };
            out.push_str(&format!(
                "{:id_w$}  {:>12.3e}  {:>9.1e}  {:>7}  {}\n",
                r.id, r.max_residual, r.tolerance, status, r.anchor
            ));
            if let Some(ce) = &r.counterexample {
                out.push_str(&format!(
                    "{:id_w$}  counterexample at {}: residual {:.3e}\n",
                    "", ce.grid_point, ce.residual
                ));
            }
            if let Some(note) = &r.note {
                out.push_str(&format!("{:id_w$}  note: {}\n", "", note));
            }
        }
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Mixed => "mixed",
            }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_and_witness_judgement() {
        let ok = IdentityRecord::bound("a", "x = y", "t in [0,1]", 1e-12, 1e-10);
        assert!(ok.pass);
        let bad = IdentityRecord::bound("b", "x = y", "t", 1e-3, 1e-10);
        assert!(!bad.pass);
        let w = IdentityRecord::witness("c", "must break", "t in [0,10]", 0.4, 0.1);
        assert!(w.pass);
        let w2 = IdentityRecord::witness("d", "must break", "t", 1e-12, 0.1);
        assert!(!w2.pass);
    }

    #[test]
    fn verdicts() {
        let r1 = IdentityRecord::bound("a", "", "", 0.0, 1e-10);
        let r2 = IdentityRecord::bound("b", "", "", 1.0, 1e-10);
        assert_eq!(
            VerificationReport::new("s", 0, vec![r1.clone()]).verdict,
            Verdict::Pass
        );
        assert_eq!(
            VerificationReport::new("s", 0, vec![r2.clone()]).verdict,
            Verdict::Fail
        );
        let mixed = VerificationReport::new_equivalence("s", 0, vec![r1.clone(), r2.clone()]);
        assert_eq!(mixed.verdict, Verdict::Mixed);
        assert_eq!(mixed.exit_code(), 1);
        let allfail = VerificationReport::new_equivalence("s", 0, vec![r2.clone(), r2]);
        assert_eq!(allfail.verdict, Verdict::Fail);
    }

    #[test]
    fn json_roundtrip_and_determinism() {
        let rec = IdentityRecord::bound("cocycle", "u_t = d^{it}", "t in {-2..2}", 3.2e-12, 1e-10)
            .with_counterexample("t = 1.5", 3.2e-12);
        let rep = VerificationReport::new("golden", 7, vec![rec]);
        let j1 = rep.to_json();
        let j2 = rep.to_json();
        assert_eq!(j1, j2);
        let back = VerificationReport::from_json(&j1).unwrap();
        assert_eq!(back, rep);
        // strict schema
        let broken = j1.replace("\"scenario\"", "\"scenaro\"");
        assert!(VerificationReport::from_json(&broken).is_err());
    }

    #[test]
    fn text_table_mentions_failures() {
        let rec = IdentityRecord::bound("flow", "sigma", "t", 1.0, 1e-10);
        let rep = VerificationReport::new("s", 0, vec![rec]);
        let t = rep.to_text();
        assert!(t.contains("FAIL"));
        assert!(t.contains("verdict: fail"));
    }
}
