//! Scenario checking: an atom is suppressed as soon as one of its conditions
//! is assigned false. Each atom is checked on its own; the scenario is not
//! tested for consistency with W*.

use crate::model::Scenario;
use crate::saturation::ExplanationSet;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub verified: ExplanationSet,
    pub suppressed: ExplanationSet,
}

pub fn verify(atoms: &ExplanationSet, scenario: &Scenario) -> Verification {
    let mut out = Verification::default();
    for atom in atoms {
        if atom.conditions.iter().any(|c| scenario.is_false(c)) {
            out.suppressed.insert(atom.clone());
        } else {
            out.verified.insert(atom.clone());
        }
    }
    out
}
