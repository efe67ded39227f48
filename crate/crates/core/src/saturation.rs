//! IS-A closure and the fixpoint over the initial-case and transitivity
//! rules that produces every derivable explanation atom.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::logic::{augment, AugmentedTheory};
use crate::model::{ConditionSet, ExplanationAtom, KnowledgeBase, Symbol};
use crate::reduce::weak_simplify;

/// Reflexive-transitive closure of the IS-A atoms over the declared symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OntClosure {
    pairs: BTreeSet<(Symbol, Symbol)>,
}

impl OntClosure {
    pub fn contains(&self, sub: &Symbol, sup: &Symbol) -> bool {
        self.pairs.contains(&(sub.clone(), sup.clone()))
    }

    /// All `(sub, sup)` pairs, reflexive ones included.
    pub fn pairs(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.pairs.iter().map(|(a, b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Everything `sub` is a (including itself).
    pub fn supers<'a>(&'a self, sub: &'a Symbol) -> impl Iterator<Item = &'a Symbol> + 'a {
        self.pairs
            .range((sub.clone(), min_symbol())..)
            .take_while(move |(a, _)| a == sub)
            .map(|(_, b)| b)
    }

    /// Everything that is a `sup` (including itself).
    pub fn subs<'a>(&'a self, sup: &'a Symbol) -> impl Iterator<Item = &'a Symbol> + 'a {
        self.pairs
            .iter()
            .filter(move |(_, b)| b == sup)
            .map(|(a, _)| a)
    }
}

fn min_symbol() -> Symbol {
    // "a" is the smallest valid name
    Symbol::new("a").expect("valid")
}

pub fn ont_closure(kb: &KnowledgeBase) -> OntClosure {
    let mut direct: BTreeMap<&Symbol, Vec<&Symbol>> = BTreeMap::new();
    for o in &kb.ont {
        direct.entry(&o.sub).or_default().push(&o.sup);
    }
    let mut pairs = BTreeSet::new();
    for start in &kb.symbols {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in direct.get(x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        pairs.extend(seen.into_iter().map(|y| (start.clone(), y.clone())));
    }
    OntClosure { pairs }
}

/// A set of explanation atoms, iterated in (explainer, explained, conditions)
/// order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplanationSet(BTreeSet<ExplanationAtom>);

impl ExplanationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, atom: ExplanationAtom) -> bool {
        self.0.insert(atom)
    }

    pub fn contains(&self, atom: &ExplanationAtom) -> bool {
        self.0.contains(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExplanationAtom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Atoms for one (explainer, explained) pair.
    pub fn group<'a>(
        &'a self,
        explainer: &'a Symbol,
        explained: &'a Symbol,
    ) -> impl Iterator<Item = &'a ExplanationAtom> + 'a {
        self.0
            .iter()
            .filter(move |a| &a.explainer == explainer && &a.explained == explained)
    }

    /// Atoms grouped by (explainer, explained).
    pub fn groups(&self) -> BTreeMap<(&Symbol, &Symbol), Vec<&ExplanationAtom>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for a in &self.0 {
            out.entry((&a.explainer, &a.explained)).or_default().push(a);
        }
        out
    }

    pub fn without_self_explanations(&self) -> Self {
        self.0
            .iter()
            .filter(|a| !a.is_self_explanation())
            .cloned()
            .collect()
    }
}

impl FromIterator<ExplanationAtom> for ExplanationSet {
    fn from_iter<I: IntoIterator<Item = ExplanationAtom>>(iter: I) -> Self {
        ExplanationSet(iter.into_iter().collect())
    }
}

impl IntoIterator for ExplanationSet {
    type Item = ExplanationAtom;
    type IntoIter = std::collections::btree_set::IntoIter<ExplanationAtom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a ExplanationSet {
    type Item = &'a ExplanationAtom;
    type IntoIter = std::collections::btree_set::Iter<'a, ExplanationAtom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationConfig {
    /// Weak-simplify every atom before it enters the set. Off is raw mode.
    pub simplify: bool,
    pub max_atoms: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        Self {
            simplify: true,
            max_atoms: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub atoms: ExplanationSet,
    /// Worklist pops until the fixpoint was reached.
    pub iterations: usize,
}

/// Memoized guard queries against one theory.
struct Guards<'t> {
    wstar: &'t AugmentedTheory,
    simplify: bool,
    sat: HashMap<ConditionSet, bool>,
    simplified: HashMap<(Symbol, ConditionSet), ConditionSet>,
}

impl<'t> Guards<'t> {
    fn new(wstar: &'t AugmentedTheory, simplify: bool) -> Self {
        Self {
            wstar,
            simplify,
            sat: HashMap::new(),
            simplified: HashMap::new(),
        }
    }

    fn satisfiable(&mut self, set: &ConditionSet) -> bool {
        if let Some(&v) = self.sat.get(set) {
            return v;
        }
        let v = self.wstar.satisfiable(set);
        self.sat.insert(set.clone(), v);
        v
    }

    fn finish(&mut self, atom: ExplanationAtom) -> ExplanationAtom {
        if !self.simplify {
            return atom;
        }
        let key = (atom.explainer.clone(), atom.conditions.clone());
        if let Some(c) = self.simplified.get(&key) {
            return ExplanationAtom::new(atom.explainer, atom.explained, c.clone());
        }
        let out = weak_simplify(&atom, self.wstar);
        self.simplified.insert(key, out.conditions.clone());
        out
    }
}

fn initial_with(kb: &KnowledgeBase, closure: &OntClosure, guards: &mut Guards) -> ExplanationSet {
    let mut out = ExplanationSet::new();
    for c in &kb.causes {
        for delta in closure.subs(&c.effect) {
            let conditions: ConditionSet = [c.cause.clone(), delta.clone()].into_iter().collect();
            if !guards.satisfiable(&conditions) {
                continue;
            }
            for gamma in closure.supers(delta) {
                let atom = ExplanationAtom::new(c.cause.clone(), gamma.clone(), conditions.clone());
                out.insert(guards.finish(atom));
            }
        }
    }
    out
}

/// Instances of the initial case: for `a causes b`, every `d` that is a `b`
/// and every `g` that `d` is, `a` explains `g` provided `{a, d}` is possible
/// under W*. With `simplify`, each atom is weak-simplified.
pub fn initial_explanations(
    kb: &KnowledgeBase,
    closure: &OntClosure,
    wstar: &AugmentedTheory,
    simplify: bool,
) -> ExplanationSet {
    initial_with(kb, closure, &mut Guards::new(wstar, simplify))
}

/// All derivable explanation atoms of `kb` with default settings.
pub fn saturate(kb: &KnowledgeBase) -> Result<ExplanationSet> {
    let closure = ont_closure(kb);
    let wstar = augment(kb, &closure);
    saturate_with(kb, &closure, &wstar, &SaturationConfig::default()).map(|s| s.atoms)
}

/// Least fixpoint of the initial explanations under transitivity: from
/// `a explains b | P` and `b explains g | Q` with `P ∪ Q` possible, derive
/// `a explains g | P ∪ Q`.
///
/// The worklist is processed in atom order, so the result and the iteration
/// count are deterministic.
pub fn saturate_with(
    kb: &KnowledgeBase,
    closure: &OntClosure,
    wstar: &AugmentedTheory,
    config: &SaturationConfig,
) -> Result<Saturation> {
    if !wstar.satisfiable(&ConditionSet::new()) {
        return Err(Error::UnsatisfiableTheory);
    }
    let mut guards = Guards::new(wstar, config.simplify);
    let initial = initial_with(kb, closure, &mut guards);

    let mut all = ExplanationSet::new();
    let mut by_explainer: BTreeMap<Symbol, BTreeSet<ExplanationAtom>> = BTreeMap::new();
    let mut by_explained: BTreeMap<Symbol, BTreeSet<ExplanationAtom>> = BTreeMap::new();
    let mut worklist: BTreeSet<ExplanationAtom> = BTreeSet::new();

    let admit = |atom: ExplanationAtom,
                     all: &mut ExplanationSet,
                     worklist: &mut BTreeSet<ExplanationAtom>|
     -> Result<()> {
        if all.insert(atom.clone()) {
            if all.len() > config.max_atoms {
                return Err(Error::AtomCap {
                    cap: config.max_atoms,
                });
            }
            worklist.insert(atom);
        }
        Ok(())
    };

    for atom in initial {
        admit(atom, &mut all, &mut worklist)?;
    }

    let mut iterations = 0;
    while let Some(atom) = worklist.pop_first() {
        iterations += 1;
        by_explainer
            .entry(atom.explainer.clone())
            .or_default()
            .insert(atom.clone());
        by_explained
            .entry(atom.explained.clone())
            .or_default()
            .insert(atom.clone());

        let mut derived = Vec::new();
        // atom on the left: atom.explained explains something
        for right in by_explainer.get(&atom.explained).into_iter().flatten() {
            derived.push((atom.clone(), right.clone()));
        }
        // atom on the right: something explains atom.explainer
        for left in by_explained.get(&atom.explainer).into_iter().flatten() {
            derived.push((left.clone(), atom.clone()));
        }
        for (left, right) in derived {
            let conditions = left.conditions.union(&right.conditions);
            if !guards.satisfiable(&conditions) {
                continue;
            }
            let next = guards.finish(ExplanationAtom::new(
                left.explainer.clone(),
                right.explained.clone(),
                conditions,
            ));
            admit(next, &mut all, &mut worklist)?;
        }
    }

    Ok(Saturation {
        atoms: all,
        iterations,
    })
}
