//! Domain vocabulary: symbols, premises, explanation atoms and scenarios,
//! plus the readers for the knowledge-base and scenario file formats.

mod diagnostic;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use diagnostic::{Diagnostic, Parsed, Position, Severity};
pub use parse::{parse_kb, parse_kb_bytes, parse_scenario, parse_scenario_bytes};

/// A propositional symbol: a lowercase ASCII letter followed by letters,
/// digits or underscores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid symbol name `{0}`")]
pub struct InvalidSymbol(pub String);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, InvalidSymbol> {
        if Self::is_valid_name(name) {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(InvalidSymbol(name.to_owned()))
        }
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Symbol {
    type Err = InvalidSymbol;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::new(s)
    }
}

/// `cause causes effect`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CausalAtom {
    pub cause: Symbol,
    pub effect: Symbol,
}

/// `sub` IS-A `sup`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OntAtom {
    pub sub: Symbol,
    pub sup: Symbol,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub symbol: Symbol,
    pub positive: bool,
}

impl Literal {
    pub fn pos(symbol: Symbol) -> Self {
        Self {
            symbol,
            positive: true,
        }
    }

    pub fn neg(symbol: Symbol) -> Self {
        Self {
            symbol,
            positive: false,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            symbol: self.symbol.clone(),
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.symbol)
    }
}

/// A non-empty, non-tautological disjunction of literals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(BTreeSet<Literal>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidClause {
    #[error("empty clause")]
    Empty,
    #[error("tautological clause: contains both {0} and -{0}")]
    Tautology(Symbol),
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Self, InvalidClause> {
        let lits: BTreeSet<Literal> = literals.into_iter().collect();
        if lits.is_empty() {
            return Err(InvalidClause::Empty);
        }
        for lit in &lits {
            if lit.positive && lits.contains(&lit.negated()) {
                return Err(InvalidClause::Tautology(lit.symbol.clone()));
            }
        }
        Ok(Clause(lits))
    }

    /// `{-a, b}`, the clausal form of `a -> b`. `None` when `a == b`.
    pub fn implication(from: &Symbol, to: &Symbol) -> Option<Self> {
        Clause::new([Literal::neg(from.clone()), Literal::pos(to.clone())]).ok()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter().map(|l| &l.symbol)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("clause(")?;
        for (i, lit) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{lit}")?;
        }
        f.write_str(")")
    }
}

/// The premises: declared symbols, causal atoms (C), IS-A atoms (O) and the
/// background theory in clausal form (W).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub symbols: BTreeSet<Symbol>,
    pub causes: BTreeSet<CausalAtom>,
    pub ont: BTreeSet<OntAtom>,
    pub w: BTreeSet<Clause>,
}

impl KnowledgeBase {
    /// Symbols used by a premise but missing from `symbols`.
    pub fn undeclared(&self) -> BTreeSet<Symbol> {
        let used = self
            .causes
            .iter()
            .flat_map(|c| [&c.cause, &c.effect])
            .chain(self.ont.iter().flat_map(|o| [&o.sub, &o.sup]))
            .chain(self.w.iter().flat_map(|c| c.symbols()));
        used.filter(|s| !self.symbols.contains(*s)).cloned().collect()
    }

    /// Renders the knowledge base in its own file grammar.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for s in &self.symbols {
            out.push_str(&format!("symbol({s}).\n"));
        }
        for c in &self.causes {
            out.push_str(&format!("cause({},{}).\n", c.cause, c.effect));
        }
        for o in &self.ont {
            out.push_str(&format!("ont({},{}).\n", o.sub, o.sup));
        }
        for c in &self.w {
            out.push_str(&format!("{c}.\n"));
        }
        out
    }
}

/// The condition set Φ of an explanation atom.
///
/// Ordered by its rendered `{a,b,...}` text, which is cached alongside the
/// members.
#[derive(Clone)]
pub struct ConditionSet {
    members: BTreeSet<Symbol>,
    rendered: String,
}

impl ConditionSet {
    pub fn new() -> Self {
        BTreeSet::new().into()
    }

    fn rerender(&mut self) {
        let names: Vec<&str> = self.members.iter().map(Symbol::as_str).collect();
        self.rendered = format!("{{{}}}", names.join(","));
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.members.contains(s)
    }

    pub fn insert(&mut self, s: Symbol) -> bool {
        let fresh = self.members.insert(s);
        if fresh {
            self.rerender();
        }
        fresh
    }

    pub fn remove(&mut self, s: &Symbol) -> bool {
        let gone = self.members.remove(s);
        if gone {
            self.rerender();
        }
        gone
    }

    pub fn union(&self, other: &ConditionSet) -> ConditionSet {
        self.members
            .union(&other.members)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into()
    }

    pub fn is_subset(&self, other: &ConditionSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_set(&self) -> &BTreeSet<Symbol> {
        &self.members
    }
}

impl Default for ConditionSet {
    fn default() -> Self {
        Self::new()
    }
}

impl From<BTreeSet<Symbol>> for ConditionSet {
    fn from(members: BTreeSet<Symbol>) -> Self {
        let mut out = ConditionSet {
            members,
            rendered: String::new(),
        };
        out.rerender();
        out
    }
}

impl PartialEq for ConditionSet {
    fn eq(&self, other: &Self) -> bool {
        self.rendered == other.rendered
    }
}

impl Eq for ConditionSet {}

impl std::hash::Hash for ConditionSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rendered.hash(state);
    }
}

impl PartialOrd for ConditionSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConditionSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rendered.cmp(&other.rendered)
    }
}

impl FromIterator<Symbol> for ConditionSet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        iter.into_iter().collect::<BTreeSet<_>>().into()
    }
}

impl<'a> IntoIterator for &'a ConditionSet {
    type Item = &'a Symbol;
    type IntoIter = std::collections::btree_set::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

impl fmt::Debug for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `explainer explains explained because conditions is possible`.
///
/// Field order gives the derived ordering (explainer, explained, conditions)
/// used for every report.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExplanationAtom {
    pub explainer: Symbol,
    pub explained: Symbol,
    pub conditions: ConditionSet,
}

impl ExplanationAtom {
    pub fn new(explainer: Symbol, explained: Symbol, conditions: ConditionSet) -> Self {
        Self {
            explainer,
            explained,
            conditions,
        }
    }

    pub fn is_self_explanation(&self) -> bool {
        self.explainer == self.explained
    }
}

impl fmt::Debug for ExplanationAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_atom(self, AtomStyle::Text))
    }
}

impl fmt::Display for ExplanationAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_atom(self, AtomStyle::Text))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AtomStyle {
    /// `alpha explains delta because {alpha,gamma1}`
    #[default]
    Text,
    /// `ecSet(alpha,delta,{alpha,gamma1})`
    EcSet,
}

pub fn format_atom(atom: &ExplanationAtom, style: AtomStyle) -> String {
    match style {
        AtomStyle::Text => format!(
            "{} explains {} because {}",
            atom.explainer, atom.explained, atom.conditions
        ),
        AtomStyle::EcSet => format!(
            "ecSet({},{},{})",
            atom.explainer, atom.explained, atom.conditions
        ),
    }
}

/// Partial truth assignment read from a scenario file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    pub assignment: BTreeMap<Symbol, bool>,
    /// Where each assignment was read, when it came from a file.
    pub origin: BTreeMap<Symbol, Position>,
}

impl Scenario {
    pub fn from_assignment(pairs: impl IntoIterator<Item = (Symbol, bool)>) -> Self {
        Self {
            assignment: pairs.into_iter().collect(),
            origin: BTreeMap::new(),
        }
    }

    pub fn value(&self, s: &Symbol) -> Option<bool> {
        self.assignment.get(s).copied()
    }

    pub fn is_false(&self, s: &Symbol) -> bool {
        self.value(s) == Some(false)
    }

    /// One error per scenario symbol that `kb` does not declare.
    pub fn check_declared(&self, kb: &KnowledgeBase) -> Result<(), Vec<Diagnostic>> {
        let diags: Vec<Diagnostic> = self
            .assignment
            .keys()
            .filter(|s| !kb.symbols.contains(*s))
            .map(|s| {
                let msg = format!("scenario assigns undeclared symbol {s}");
                match self.origin.get(s) {
                    Some(pos) => Diagnostic::error(*pos, msg),
                    None => Diagnostic::unlocated(Severity::Error, msg),
                }
            })
            .collect();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(diags)
        }
    }
}
