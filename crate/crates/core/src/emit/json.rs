use serde::{Deserialize, Serialize};

use crate::model::ExplanationAtom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Derived,
    Optimal,
    Verified,
    Suppressed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub explainer: String,
    pub explained: String,
    pub conditions: Vec<String>,
    pub status: Status,
}

impl AtomRecord {
    pub fn new(atom: &ExplanationAtom, status: Status) -> Self {
        Self {
            explainer: atom.explainer.to_string(),
            explained: atom.explained.to_string(),
            conditions: atom.conditions.iter().map(|s| s.to_string()).collect(),
            status,
        }
    }
}

/// Pretty-printed JSON array, newline terminated.
pub fn emit_json<'a>(records: impl IntoIterator<Item = (&'a ExplanationAtom, Status)>) -> String {
    let records: Vec<AtomRecord> = records
        .into_iter()
        .map(|(a, s)| AtomRecord::new(a, s))
        .collect();
    let mut out = serde_json::to_string_pretty(&records).expect("records always serialize");
    out.push('\n');
    out
}
