//! Test-only oracles, independent of the library's solver and fixpoint.
//!
//! Everything here works on bitmasks over symbol indices: truth tables for
//! satisfiability, Warshall for the IS-A closure, and a naive round-based
//! rule applier for saturation.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use causex::model::{parse_kb, Clause, ConditionSet, ExplanationAtom, KnowledgeBase, Literal, Symbol};
use causex::saturation::ExplanationSet;
use rand::Rng;

pub const DIAGRAM: &str = include_str!("../../data/diagram.ec");

pub fn diagram() -> KnowledgeBase {
    parse_kb(DIAGRAM).unwrap().value
}

pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).unwrap()
}

pub fn set(names: &[&str]) -> ConditionSet {
    names.iter().map(|n| sym(n)).collect()
}

pub fn atom(a: &str, b: &str, cs: &[&str]) -> ExplanationAtom {
    ExplanationAtom::new(sym(a), sym(b), set(cs))
}

/// Clause as (positive mask, negative mask).
pub type MaskClause = (u32, u32);

/// Truth-table decision procedure over at most 16 variables.
pub struct TruthTable {
    pub names: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    clauses: Vec<MaskClause>,
    models: Vec<u32>,
    sat_memo: HashMap<u32, bool>,
}

impl TruthTable {
    pub fn new(names: Vec<Symbol>, clauses: Vec<MaskClause>) -> Self {
        assert!(names.len() <= 16);
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = names.len();
        let models = (0u32..(1 << n))
            .filter(|&m| clauses.iter().all(|&(p, q)| (m & p) != 0 || (!m & q) != 0))
            .collect();
        Self {
            names,
            index,
            clauses,
            models,
            sat_memo: HashMap::new(),
        }
    }

    /// W* of `kb`, built from the oracle closure.
    pub fn augmented(kb: &KnowledgeBase) -> Self {
        let names: Vec<Symbol> = kb.symbols.iter().cloned().collect();
        let index: BTreeMap<&Symbol, usize> = names.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut clauses = Vec::new();
        for c in &kb.w {
            let mut p = 0;
            let mut q = 0;
            for l in c.literals() {
                if l.positive {
                    p |= 1 << index[&l.symbol];
                } else {
                    q |= 1 << index[&l.symbol];
                }
            }
            clauses.push((p, q));
        }
        for c in &kb.causes {
            let (a, b) = (index[&c.cause], index[&c.effect]);
            if a != b {
                clauses.push((1 << b, 1 << a));
            }
        }
        let closure = warshall(kb);
        for (a, row) in closure.iter().enumerate() {
            for b in 0..names.len() {
                if a != b && row & (1 << b) != 0 {
                    clauses.push((1 << b, 1 << a));
                }
            }
        }
        TruthTable::new(names, clauses)
    }

    pub fn mask(&self, set: &ConditionSet) -> u32 {
        set.iter().map(|s| 1u32 << self.index[s]).fold(0, |a, b| a | b)
    }

    pub fn unmask(&self, mask: u32) -> ConditionSet {
        (0..self.names.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.names[i].clone())
            .collect()
    }

    pub fn var(&self, s: &Symbol) -> usize {
        self.index[s]
    }

    pub fn sat(&mut self, assumptions: u32) -> bool {
        if let Some(&v) = self.sat_memo.get(&assumptions) {
            return v;
        }
        let v = self.models.iter().any(|&m| m & assumptions == assumptions);
        self.sat_memo.insert(assumptions, v);
        v
    }

    pub fn entails(&self, assumptions: u32, goal: usize) -> bool {
        self.models
            .iter()
            .filter(|&&m| m & assumptions == assumptions)
            .all(|&m| m & (1 << goal) != 0)
    }

    pub fn entails_all(&self, phi: u32, psi: u32) -> bool {
        (0..self.names.len())
            .filter(|i| psi & (1 << i) != 0)
            .all(|i| self.entails(phi, i))
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }
}

/// Reflexive-transitive closure as one reachability bitmask per symbol.
pub fn warshall(kb: &KnowledgeBase) -> Vec<u32> {
    let names: Vec<&Symbol> = kb.symbols.iter().collect();
    let n = names.len();
    let idx = |s: &Symbol| names.iter().position(|x| *x == s).unwrap();
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for o in &kb.ont {
        m[idx(&o.sub)][idx(&o.sup)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if m[i][k] && m[k][j] {
                    m[i][j] = true;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u32, |acc, (j, _)| acc | (1 << j))
        })
        .collect()
}

pub fn closure_pair_count(kb: &KnowledgeBase) -> usize {
    warshall(kb).iter().map(|r| r.count_ones() as usize).sum()
}

/// (explainer, explained, condition mask)
pub type RawAtom = (usize, usize, u32);

/// Naive rule application without simplification: the initial instances,
/// then `depth` rounds each combining every pair of known atoms.
///
/// A minimal transitivity chain visits at most n(n+1)/2 atoms and each round
/// doubles the reachable chain length, so `depth = n` rounds reach the
/// fixpoint for every n >= 1.
pub fn brute_force_raw(kb: &KnowledgeBase, tt: &mut TruthTable, depth: usize) -> BTreeSet<RawAtom> {
    let closure = warshall(kb);
    let n = kb.symbols.len();
    let mut atoms = BTreeSet::new();
    for c in &kb.causes {
        let a = tt.var(&c.cause);
        let b = tt.var(&c.effect);
        for (d, &row) in closure.iter().enumerate() {
            if row & (1 << b) == 0 {
                continue;
            }
            for g in 0..n {
                if row & (1 << g) == 0 {
                    continue;
                }
                let cond = (1 << a) | (1 << d);
                if tt.sat(cond) {
                    atoms.insert((a, g, cond));
                }
            }
        }
    }
    for _ in 0..depth {
        let snapshot: Vec<RawAtom> = atoms.iter().copied().collect();
        let mut added = false;
        for &(a, b, p) in &snapshot {
            for &(b2, g, q) in &snapshot {
                if b2 == b && tt.sat(p | q) && atoms.insert((a, g, p | q)) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    atoms
}

pub fn to_raw(set: &ExplanationSet, tt: &TruthTable) -> BTreeSet<RawAtom> {
    set.iter()
        .map(|a| (tt.var(&a.explainer), tt.var(&a.explained), tt.mask(&a.conditions)))
        .collect()
}

/// Random knowledge base: up to `max_symbols` symbols, `max_causes` causal
/// atoms, `max_ont` IS-A atoms and `max_clauses` clauses of 1 to 3 literals.
pub fn random_kb(
    rng: &mut impl Rng,
    max_symbols: usize,
    max_causes: usize,
    max_ont: usize,
    max_clauses: usize,
) -> KnowledgeBase {
    let n = rng.gen_range(1..=max_symbols);
    let names: Vec<Symbol> = (0..n).map(|i| sym(&format!("s{i}"))).collect();
    let pick = |rng: &mut dyn rand::RngCore| names[rng.gen_range(0..n)].clone();
    let mut kb = KnowledgeBase {
        symbols: names.iter().cloned().collect(),
        ..Default::default()
    };
    for _ in 0..rng.gen_range(0..=max_causes) {
        kb.causes.insert(causex::model::CausalAtom {
            cause: pick(rng),
            effect: pick(rng),
        });
    }
    for _ in 0..rng.gen_range(0..=max_ont) {
        kb.ont.insert(causex::model::OntAtom {
            sub: pick(rng),
            sup: pick(rng),
        });
    }
    for _ in 0..rng.gen_range(0..=max_clauses) {
        let len = rng.gen_range(1..=3);
        let lits: Vec<Literal> = (0..len)
            .map(|_| Literal {
                symbol: pick(rng),
                positive: rng.gen_bool(0.5),
            })
            .collect();
        if let Ok(c) = Clause::new(lits) {
            kb.w.insert(c);
        }
    }
    kb
}

/// Structural check of the DOT subset the emitter writes: a `digraph NAME {`
/// header, `"node";` and `"a" -> "b" [k=v, ...];` statements, closing `}`.
/// Every edge endpoint must be a declared node.
pub fn check_dot(text: &str) -> Result<(), String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or("empty")?;
    if !(header.starts_with("digraph ") && header.ends_with('{')) {
        return Err(format!("bad header {header:?}"));
    }
    let mut nodes = BTreeSet::new();
    let mut closed = false;
    for line in lines {
        if closed {
            return Err(format!("content after closing brace: {line:?}"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let body = line.strip_suffix(';').ok_or(format!("missing ';' in {line:?}"))?;
        let (head, attrs) = match body.find(" [") {
            Some(i) => (&body[..i], Some(&body[i + 2..])),
            None => (body, None),
        };
        if let Some(attrs) = attrs {
            let attrs = attrs.strip_suffix(']').ok_or("unterminated attribute list")?;
            for kv in split_attrs(attrs) {
                let (k, v) = kv.split_once('=').ok_or(format!("bad attribute {kv:?}"))?;
                if k.trim().is_empty() || v.trim().is_empty() {
                    return Err(format!("bad attribute {kv:?}"));
                }
            }
        }
        let ids: Vec<&str> = head.split(" -> ").collect();
        for id in &ids {
            if !(id.len() >= 2 && id.starts_with('"') && id.ends_with('"')) {
                return Err(format!("bad id {id:?}"));
            }
        }
        match ids.len() {
            1 => {
                nodes.insert(ids[0].to_string());
            }
            2 => {
                for id in &ids {
                    if !nodes.contains(*id) {
                        return Err(format!("edge endpoint {id} not declared"));
                    }
                }
            }
            _ => return Err(format!("bad statement {line:?}")),
        }
    }
    if closed {
        Ok(())
    } else {
        Err("missing closing brace".into())
    }
}

fn split_attrs(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut in_str = false;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '"' => in_str = !in_str,
            ',' if !in_str => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Weakest condition sets of one (explainer, explained) group, computed by
/// pairwise entailment comparison. Returns the equivalence classes of the
/// non-dominated sets.
pub fn optimal_classes(masks: &[u32], tt: &TruthTable) -> Vec<Vec<u32>> {
    let stronger = |p: u32, q: u32| tt.entails_all(p, q) && !tt.entails_all(q, p);
    let survivors: Vec<u32> = masks
        .iter()
        .copied()
        .filter(|&p| !masks.iter().any(|&q| stronger(p, q)))
        .collect();
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for p in survivors {
        match classes
            .iter_mut()
            .find(|c| tt.entails_all(c[0], p) && tt.entails_all(p, c[0]))
        {
            Some(c) => c.push(p),
            None => classes.push(vec![p]),
        }
    }
    classes
}
