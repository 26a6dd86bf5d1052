use serde::Serialize;
use serde_json::Value;

/// One check in a run, with an optional witness or counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

/// A machine-readable record of a CLI run. The command line and seed are enough to
/// reproduce every verdict.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub verdicts: Vec<Verdict>,
    pub output: Value,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: Option<u64>) -> Self {
        RunReport { command, seed, verdicts: Vec::new(), output: Value::Null, elapsed_ms: 0 }
    }

    pub fn verdict(&mut self, check: impl Into<String>, pass: bool, detail: Value) {
        self.verdicts.push(Verdict { check: check.into(), pass, detail });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Sort verdicts by check name so parallel runs merge deterministically.
    pub fn sort_verdicts(&mut self) {
        self.verdicts.sort_by(|a, b| a.check.cmp(&b.check));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
