//! A small DPLL decision procedure.
//!
//! Unit propagation, pure-literal elimination, then branching on the
//! smallest unassigned variable of an open clause, positive polarity first.
//! Variable indices follow the lexicographic order of symbol names, so the
//! search is fully deterministic.

/// Literal over variable `var`; `positive == false` is the negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit {
            var,
            positive: false,
        }
    }
}

type Assignment = Vec<Option<bool>>;

fn lit_value(lit: Lit, assign: &Assignment) -> Option<bool> {
    assign[lit.var].map(|v| v == lit.positive)
}

enum Status {
    Satisfied,
    Conflict,
    /// Unassigned literals remain and none is true.
    Open,
}

fn clause_status(clause: &[Lit], assign: &Assignment) -> (Status, Option<Lit>, usize) {
    let mut free = 0;
    let mut last = None;
    for &lit in clause {
        match lit_value(lit, assign) {
            Some(true) => return (Status::Satisfied, None, 0),
            Some(false) => {}
            None => {
                free += 1;
                last = Some(lit);
            }
        }
    }
    if free == 0 {
        (Status::Conflict, None, 0)
    } else {
        (Status::Open, last, free)
    }
}

/// Returns `false` on conflict.
fn simplify(clauses: &[Vec<Lit>], assign: &mut Assignment) -> bool {
    loop {
        let mut changed = false;
        for clause in clauses {
            match clause_status(clause, assign) {
                (Status::Conflict, ..) => return false,
                (Status::Open, Some(lit), 1) => {
                    assign[lit.var] = Some(lit.positive);
                    changed = true;
                }
                _ => {}
            }
        }
        if changed {
            continue;
        }

        // pure literals: polarity bitmask per variable over open clauses
        let mut seen = vec![0u8; assign.len()];
        for clause in clauses {
            if let (Status::Open, ..) = clause_status(clause, assign) {
                for &lit in clause {
                    if assign[lit.var].is_none() {
                        seen[lit.var] |= if lit.positive { 1 } else { 2 };
                    }
                }
            }
        }
        for (var, mask) in seen.iter().enumerate() {
            match mask {
                1 => {
                    assign[var] = Some(true);
                    changed = true;
                }
                2 => {
                    assign[var] = Some(false);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(clauses: &[Vec<Lit>], mut assign: Assignment) -> Option<Assignment> {
    if !simplify(clauses, &mut assign) {
        return None;
    }
    let branch = clauses
        .iter()
        .filter(|c| matches!(clause_status(c, &assign).0, Status::Open))
        .flat_map(|c| c.iter().map(|l| l.var))
        .filter(|&v| assign[v].is_none())
        .min();
    let Some(var) = branch else {
        // no open clause left: every clause is satisfied
        return Some(assign);
    };
    for value in [true, false] {
        let mut next = assign.clone();
        next[var] = Some(value);
        if let Some(model) = search(clauses, next) {
            return Some(model);
        }
    }
    None
}

/// Finds a model of `clauses` over `num_vars` variables, if one exists.
/// Variables left unconstrained by the search are reported as `false`.
pub fn solve(num_vars: usize, clauses: &[Vec<Lit>]) -> Option<Vec<bool>> {
    if clauses.iter().any(|c| c.is_empty()) {
        return None;
    }
    search(clauses, vec![None; num_vars])
        .map(|assign| assign.into_iter().map(|v| v.unwrap_or(false)).collect())
}
