//! Pass/fail outcomes of finite-depth checks.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use symdyn_core::{Alphabet, Word};

/// Outcome of a check run up to `depth`; never a claim about all lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub condition: String,
    pub depth: usize,
    pub pass: bool,
    /// Counterexample tuples, in lexicographic order of their first entry.
    pub witnesses: Vec<Vec<Word>>,
    /// Total number of counterexamples found (witnesses may be truncated).
    pub failures: usize,
    pub parameters: BTreeMap<String, Value>,
}

/// Witness lists keep at most this many tuples.
pub const MAX_WITNESSES: usize = 64;

impl Verdict {
    pub fn new(condition: impl Into<String>, depth: usize) -> Self {
        Self {
            condition: condition.into(),
            depth,
            pass: true,
            witnesses: Vec::new(),
            failures: 0,
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn set_parameter(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    /// Records a counterexample and marks the verdict failed.
    pub fn fail(&mut self, witness: Vec<Word>) {
        self.pass = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let witnesses: Vec<Vec<String>> =
            self.witnesses.iter().map(|t| t.iter().map(|w| alphabet.render(w)).collect()).collect();
        json!({
            "condition": self.condition,
            "depth": self.depth,
            "pass": self.pass,
            "failures": self.failures,
            "witnesses": witnesses,
            "parameters": self.parameters,
        })
    }
}
