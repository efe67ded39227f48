//! The three-program ASP bundle: generation, optimization, verification.

use crate::model::{Clause, KnowledgeBase};

const GENERATION_RULES: &str = include_str!("rules/generation.lp");
const OPTIMIZATION_RULES: &str = include_str!("rules/optimization.lp");
const VERIFICATION_RULES: &str = include_str!("rules/verification.lp");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AspBundle {
    pub generation: String,
    pub optimization: String,
    pub verification: String,
}

/// `-true(a) v true(b).` with literals in symbol order.
pub fn clause_rule(clause: &Clause) -> String {
    let lits: Vec<String> = clause
        .literals()
        .map(|l| {
            if l.positive {
                format!("true({})", l.symbol)
            } else {
                format!("-true({})", l.symbol)
            }
        })
        .collect();
    format!("{}.", lits.join(" v "))
}

struct Facts<'a> {
    kb: &'a KnowledgeBase,
    symbols: bool,
    premises: bool,
    clauses: bool,
}

impl Facts<'_> {
    fn render(&self) -> String {
        let mut out = String::new();
        if self.symbols {
            for s in &self.kb.symbols {
                out.push_str(&format!("symbol({s}).\n"));
            }
        }
        if self.premises {
            for c in &self.kb.causes {
                out.push_str(&format!("cause({},{}).\n", c.cause, c.effect));
            }
            for o in &self.kb.ont {
                out.push_str(&format!("ont({},{}).\n", o.sub, o.sup));
            }
        }
        if self.clauses {
            for c in &self.kb.w {
                out.push_str(&clause_rule(c));
                out.push('\n');
            }
        }
        out
    }
}

fn program(title: &str, facts: String, rules: &str) -> String {
    let mut out = format!("% {title}\n");
    if !facts.is_empty() {
        out.push_str("\n% facts\n");
        out.push_str(&facts);
    }
    out.push_str("\n% rules\n");
    out.push_str(rules);
    out
}

pub fn emit_asp(kb: &KnowledgeBase) -> AspBundle {
    let all = Facts {
        kb,
        symbols: true,
        premises: true,
        clauses: true,
    };
    AspBundle {
        generation: program(
            "Generation: derives ecSet/3, the explanation atoms.",
            all.render(),
            GENERATION_RULES,
        ),
        optimization: program(
            "Optimization: keeps the weakest condition sets in ecSetRes/3.",
            Facts {
                kb,
                symbols: false,
                premises: true,
                clauses: false,
            }
            .render(),
            OPTIMIZATION_RULES,
        ),
        verification: program(
            "Verification: explVer/3 holds for atoms whose conditions are not false.",
            all.render(),
            VERIFICATION_RULES,
        ),
    }
}
