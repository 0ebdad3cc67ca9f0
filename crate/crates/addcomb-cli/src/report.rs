//! Report envelope and the exit-code contract.
//!
//! Every command emits exactly one JSON document. Seed and budget are always
//! echoed (null when not supplied) so a report pins down its own rerun.
//! Verification flags inside `verification` are recomputed by verifier
//! operations, never copied from solver state. Timing is opt-in (`--timing`)
//! so that default reports are byte-identical across runs for identical
//! config, inputs and seed.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Exit-code contract: success, validated mathematical negative, budget
/// exhaustion, input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Verified success.
    Success,
    /// Validated `NoSolution` / `NotFound` / failed sweep — a claim about
    /// the search space, not an error.
    Negative,
    /// Node or evaluation budget exhausted before the space was covered.
    BudgetExhausted,
    /// Malformed input, unknown flags, violated preconditions.
    InputError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::InputError => 1,
            Outcome::Negative => 2,
            Outcome::BudgetExhausted => 3,
        }
    }
}

/// The single-document report.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub inputs_digest: String,
    pub result: serde_json::Value,
    pub verification: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(
        command: &str,
        seed: Option<u64>,
        budget: Option<u64>,
        inputs_digest: String,
        result: serde_json::Value,
        verification: serde_json::Value,
    ) -> Report {
        Report {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            budget,
            inputs_digest,
            result,
            verification,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// SHA-256 hex digest of the canonical serialization of the inputs.
pub fn digest_inputs<T: Serialize>(inputs: &T) -> String {
    let canonical = serde_json::to_string(inputs).expect("input serialization cannot fail");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let bytes = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in bytes {
        hex.push_str(&format!("{b:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_match_contract() {
        assert_eq!(Outcome::Success.exit_code(), 0);
        assert_eq!(Outcome::InputError.exit_code(), 1);
        assert_eq!(Outcome::Negative.exit_code(), 2);
        assert_eq!(Outcome::BudgetExhausted.exit_code(), 3);
    }

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = digest_inputs(&serde_json::json!({"x": 1}));
        let b = digest_inputs(&serde_json::json!({"x": 1}));
        let c = digest_inputs(&serde_json::json!({"x": 2}));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn timing_field_is_absent_by_default() {
        let report = Report::new(
            "demo",
            Some(1),
            None,
            "d".into(),
            serde_json::json!({}),
            serde_json::json!({}),
        );
        let text = report.to_json();
        assert!(!text.contains("timing_ms"));
        assert!(text.contains("\"seed\": 1"));
        assert!(text.contains("\"budget\": null"));
    }
}
