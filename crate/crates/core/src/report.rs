//! Structured check reports with JSON serialization.

use crate::error::PropertyViolation;
use serde::Serialize;
use serde_json::Value;

/// One named check outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// An ordered list of check outcomes.
#[derive(Debug, Clone, Default, Serialize)]
#[serde(transparent)]
pub struct Report {
    items: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: impl Into<String>, holds: bool, witness: Option<Value>) {
        self.items.push(CheckItem {
            check: check.into(),
            holds,
            witness,
        });
    }

    /// Records a required check; returns an error when it fails, so
    /// theorem drivers abort on the first violation.
    pub fn require(
        &mut self,
        check: impl Into<String>,
        holds: bool,
        witness: impl FnOnce() -> Value,
    ) -> Result<(), PropertyViolation> {
        let check = check.into();
        if holds {
            self.push(check, true, None);
            Ok(())
        } else {
            let value = witness();
            let violation = PropertyViolation::new(check.clone(), value.to_string());
            self.push(check, false, Some(value));
            Err(violation)
        }
    }

    /// Records an informational value alongside the checks.
    pub fn note(&mut self, check: impl Into<String>, value: Value) {
        self.items.push(CheckItem {
            check: check.into(),
            holds: true,
            witness: Some(value),
        });
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }

    pub fn items(&self) -> &[CheckItem] {
        &self.items
    }

    pub fn merge(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    /// Finds a recorded note by name.
    pub fn witness_of(&self, check: &str) -> Option<&Value> {
        self.items
            .iter()
            .find(|i| i.check == check)
            .and_then(|i| i.witness.as_ref())
    }
}
