//! The augmented background theory W* and the satisfiability and entailment
//! questions every inference rule asks of it.

pub mod sat;

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{Clause, ConditionSet, KnowledgeBase, Literal, Symbol};
use crate::saturation::OntClosure;
use sat::Lit;

/// Why a clause is part of W*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    /// Written by the user in W.
    User,
    /// `a -> b` from a causal atom `a causes b`.
    Causal,
    /// `a -> b` from a pair of the IS-A closure.
    Ontological,
}

/// W plus the implications entailed by the causal atoms and by the closed
/// IS-A relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedTheory {
    clauses: BTreeMap<Clause, BTreeSet<Origin>>,
    vars: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    cnf: Vec<Vec<Lit>>,
}

/// Builds W* from `kb` and the closure of its IS-A atoms.
///
/// Self-implications (`a causes a`, reflexive closure pairs) are tautologies
/// and contribute nothing.
pub fn augment(kb: &KnowledgeBase, closure: &OntClosure) -> AugmentedTheory {
    let mut clauses: BTreeMap<Clause, BTreeSet<Origin>> = BTreeMap::new();
    for c in &kb.w {
        clauses.entry(c.clone()).or_default().insert(Origin::User);
    }
    for c in &kb.causes {
        if let Some(cl) = Clause::implication(&c.cause, &c.effect) {
            clauses.entry(cl).or_default().insert(Origin::Causal);
        }
    }
    for (sub, sup) in closure.pairs() {
        if let Some(cl) = Clause::implication(sub, sup) {
            clauses.entry(cl).or_default().insert(Origin::Ontological);
        }
    }
    AugmentedTheory::from_clauses(kb.symbols.iter().cloned(), clauses)
}

impl AugmentedTheory {
    fn from_clauses(
        symbols: impl IntoIterator<Item = Symbol>,
        clauses: BTreeMap<Clause, BTreeSet<Origin>>,
    ) -> Self {
        let mut all: BTreeSet<Symbol> = symbols.into_iter().collect();
        all.extend(clauses.keys().flat_map(|c| c.symbols().cloned()));
        let vars: Vec<Symbol> = all.into_iter().collect();
        let index: BTreeMap<Symbol, usize> =
            vars.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let cnf = clauses
            .keys()
            .map(|c| {
                c.literals()
                    .map(|l| Lit {
                        var: index[&l.symbol],
                        positive: l.positive,
                    })
                    .collect()
            })
            .collect();
        Self {
            clauses,
            vars,
            index,
            cnf,
        }
    }

    /// A theory made of exactly `clauses`, all tagged as user clauses.
    pub fn from_user_clauses(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let tagged = clauses
            .into_iter()
            .map(|c| (c, BTreeSet::from([Origin::User])))
            .collect();
        Self::from_clauses(std::iter::empty(), tagged)
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.keys()
    }

    pub fn origins(&self, clause: &Clause) -> Option<&BTreeSet<Origin>> {
        self.clauses.get(clause)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Clauses as `clause(...)` facts in the knowledge-base grammar, one per
    /// line, each followed by a comment naming its origins.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for (c, origins) in &self.clauses {
            let tags: Vec<&str> = origins
                .iter()
                .map(|o| match o {
                    Origin::User => "user",
                    Origin::Causal => "causal",
                    Origin::Ontological => "ontological",
                })
                .collect();
            out.push_str(&format!("{c}. % {}\n", tags.join(",")));
        }
        out
    }

    /// Solves the clause set extended with one unit clause per literal.
    ///
    /// Symbols the theory has never seen get fresh variables; they are
    /// unconstrained by the theory.
    fn query(&self, units: &[Literal]) -> Option<Vec<bool>> {
        let mut num_vars = self.vars.len();
        let mut fresh: BTreeMap<&Symbol, usize> = BTreeMap::new();
        let mut cnf = self.cnf.clone();
        for lit in units {
            let var = match self.index.get(&lit.symbol) {
                Some(&v) => v,
                None => *fresh.entry(&lit.symbol).or_insert_with(|| {
                    num_vars += 1;
                    num_vars - 1
                }),
            };
            cnf.push(vec![Lit {
                var,
                positive: lit.positive,
            }]);
        }
        sat::solve(num_vars, &cnf)
    }

    /// True iff the theory together with every assumption is satisfiable.
    pub fn satisfiable<'a>(&self, assumptions: impl IntoIterator<Item = &'a Symbol>) -> bool {
        let units: Vec<Literal> = assumptions.into_iter().cloned().map(Literal::pos).collect();
        self.query(&units).is_some()
    }

    /// True iff the theory and the assumptions entail `goal`.
    pub fn entails_symbol<'a>(
        &self,
        assumptions: impl IntoIterator<Item = &'a Symbol>,
        goal: &Symbol,
    ) -> bool {
        let mut units: Vec<Literal> = assumptions.into_iter().cloned().map(Literal::pos).collect();
        units.push(Literal::neg(goal.clone()));
        self.query(&units).is_none()
    }

    /// True iff the conjunction of `phi` entails every member of `psi`.
    pub fn entails_set(&self, phi: &ConditionSet, psi: &ConditionSet) -> bool {
        psi.iter()
            .all(|q| phi.contains(q) || self.entails_symbol(phi, q))
    }
}

pub fn satisfiable(theory: &AugmentedTheory, assumptions: &ConditionSet) -> bool {
    theory.satisfiable(assumptions)
}

pub fn entails_symbol(theory: &AugmentedTheory, assumptions: &ConditionSet, goal: &Symbol) -> bool {
    theory.entails_symbol(assumptions, goal)
}

pub fn entails_set(theory: &AugmentedTheory, phi: &ConditionSet, psi: &ConditionSet) -> bool {
    theory.entails_set(phi, psi)
}
