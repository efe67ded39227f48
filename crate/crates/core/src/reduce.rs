//! Condition-set reduction: weak simplification of a single atom and the
//! optimality filter that keeps only the weakest sets per pair.

use crate::logic::AugmentedTheory;
use crate::model::{ConditionSet, ExplanationAtom};
use crate::saturation::ExplanationSet;

/// Drops every condition other than the explainer that the remaining
/// conditions entail under `wstar`.
///
/// Candidates are scanned in name order and the scan restarts after each
/// removal, so the result is deterministic.
pub fn weak_simplify(atom: &ExplanationAtom, wstar: &AugmentedTheory) -> ExplanationAtom {
    let mut conditions = atom.conditions.clone();
    'scan: loop {
        let candidates: Vec<_> = conditions
            .iter()
            .filter(|c| **c != atom.explainer)
            .cloned()
            .collect();
        for phi in candidates {
            let mut rest = conditions.clone();
            rest.remove(&phi);
            if wstar.entails_symbol(&rest, &phi) {
                conditions = rest;
                continue 'scan;
            }
        }
        break;
    }
    ExplanationAtom::new(atom.explainer.clone(), atom.explained.clone(), conditions)
}

fn strictly_stronger(wstar: &AugmentedTheory, phi: &ConditionSet, psi: &ConditionSet) -> bool {
    wstar.entails_set(phi, psi) && !wstar.entails_set(psi, phi)
}

/// Keeps, per (explainer, explained) pair, the condition sets that strictly
/// entail no other set of the pair. Of several equivalent sets only the
/// smallest in name order survives.
pub fn optimal_filter(atoms: &ExplanationSet, wstar: &AugmentedTheory) -> ExplanationSet {
    let mut out = ExplanationSet::new();
    for group in atoms.groups().into_values() {
        // groups are sorted, so `earlier` sets are smaller in name order
        for (i, atom) in group.iter().enumerate() {
            let phi = &atom.conditions;
            let dominated = group.iter().enumerate().any(|(j, other)| {
                let psi = &other.conditions;
                if i == j {
                    return false;
                }
                if strictly_stronger(wstar, phi, psi) {
                    return true;
                }
                j < i && wstar.entails_set(phi, psi) && wstar.entails_set(psi, phi)
            });
            if !dominated {
                out.insert((*atom).clone());
            }
        }
    }
    out
}

/// Weak simplification of every atom followed by the optimality filter.
pub fn optimize(atoms: &ExplanationSet, wstar: &AugmentedTheory) -> ExplanationSet {
    let simplified: ExplanationSet = atoms.iter().map(|a| weak_simplify(a, wstar)).collect();
    optimal_filter(&simplified, wstar)
}
