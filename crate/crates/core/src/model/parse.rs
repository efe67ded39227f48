//! Readers for the fact-style input files.
//!
//! Both formats share one lexical layer: `name(arg, ...).` statements, `%`
//! line comments, insignificant whitespace. Parsing never aborts: a syntax
//! error skips to the next `.` and reading resumes from there, so one run
//! reports every problem in the file.

use std::collections::BTreeMap;

use super::{
    CausalAtom, Clause, Diagnostic, InvalidClause, KnowledgeBase, Literal, OntAtom, Parsed,
    Position, Scenario, Symbol,
};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Minus,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Position,
}

fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let pos = Position::new(line, col);
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Token { tok, pos });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    name.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(name),
                pos,
            });
        } else {
            chars.next();
            col += 1;
            diags.push(Diagnostic::error(pos, format!("unexpected character {c:?}")));
        }
    }
    out
}

#[derive(Debug)]
struct Arg {
    negated: bool,
    name: String,
    pos: Position,
}

#[derive(Debug)]
struct Fact {
    pred: String,
    pos: Position,
    args: Vec<Arg>,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn here(&self) -> Position {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn describe(&self) -> String {
        match self.peek().map(|t| &t.tok) {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::LParen) => "`(`".into(),
            Some(Tok::RParen) => "`)`".into(),
            Some(Tok::Comma) => "`,`".into(),
            Some(Tok::Dot) => "`.`".into(),
            Some(Tok::Minus) => "`-`".into(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Position, Diagnostic> {
        match self.peek() {
            Some(t) if t.tok == want => {
                let pos = t.pos;
                self.at += 1;
                Ok(pos)
            }
            _ => Err(Diagnostic::error(
                self.here(),
                format!("expected {what}, found {}", self.describe()),
            )),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Position), Diagnostic> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(name),
                pos,
            }) => {
                let out = (name.clone(), *pos);
                self.at += 1;
                Ok(out)
            }
            _ => Err(Diagnostic::error(
                self.here(),
                format!("expected {what}, found {}", self.describe()),
            )),
        }
    }

    fn fact(&mut self) -> Result<Fact, Diagnostic> {
        let (pred, pos) = self.ident("a predicate name")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        loop {
            let negated = matches!(self.peek(), Some(Token { tok: Tok::Minus, .. }));
            if negated {
                self.at += 1;
            }
            let (name, apos) = self.ident("a symbol")?;
            args.push(Arg {
                negated,
                name,
                pos: apos,
            });
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Comma) => self.at += 1,
                Some(Tok::RParen) => {
                    self.at += 1;
                    break;
                }
                _ => {
                    return Err(Diagnostic::error(
                        self.here(),
                        format!("expected `,` or `)`, found {}", self.describe()),
                    ))
                }
            }
        }
        self.expect(Tok::Dot, "`.` after fact")?;
        Ok(Fact { pred, pos, args })
    }

    /// Skips past the next `.`.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            let dot = t.tok == Tok::Dot;
            self.at += 1;
            if dot {
                break;
            }
        }
    }
}

fn end_position(text: &str) -> Position {
    let line = 1 + text.matches('\n').count();
    let col = 1 + text.rsplit('\n').next().map_or(0, |l| l.chars().count());
    Position::new(line, col)
}

fn read_facts(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Fact> {
    let tokens = lex(text, diags);
    let mut parser = Parser {
        tokens,
        at: 0,
        end: end_position(text),
    };
    let mut facts = Vec::new();
    while parser.peek().is_some() {
        match parser.fact() {
            Ok(f) => facts.push(f),
            Err(d) => {
                diags.push(d);
                parser.recover();
            }
        }
    }
    facts
}

fn symbol_arg(arg: &Arg, allow_negation: bool, diags: &mut Vec<Diagnostic>) -> Option<Symbol> {
    if arg.negated && !allow_negation {
        diags.push(Diagnostic::error(
            arg.pos,
            format!("negation is only allowed inside clause(...): -{}", arg.name),
        ));
        return None;
    }
    match Symbol::new(&arg.name) {
        Ok(s) => Some(s),
        Err(e) => {
            diags.push(Diagnostic::error(
                arg.pos,
                format!("{e}: symbols start with a lowercase letter"),
            ));
            None
        }
    }
}

fn check_arity(fact: &Fact, arity: usize, diags: &mut Vec<Diagnostic>) -> bool {
    if fact.args.len() == arity {
        true
    } else {
        diags.push(Diagnostic::error(
            fact.pos,
            format!(
                "{} expects {arity} argument(s), found {}",
                fact.pred,
                fact.args.len()
            ),
        ));
        false
    }
}

fn finish<T>(value: T, mut diags: Vec<Diagnostic>) -> Result<Parsed<T>, Vec<Diagnostic>> {
    diags.sort_by_key(|d| d.position);
    if diags.iter().any(Diagnostic::is_error) {
        Err(diags)
    } else {
        Ok(Parsed {
            value,
            warnings: diags,
        })
    }
}

fn decode(bytes: &[u8]) -> Result<&str, Vec<Diagnostic>> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
        vec![Diagnostic::error(
            end_position(valid),
            "input is not valid UTF-8",
        )]
    })
}

/// Reads a knowledge base written as `symbol/1`, `cause/2`, `ont/2` and
/// `clause/n` facts.
///
/// Every symbol used by a premise must be declared with `symbol(...)`,
/// anywhere in the file. Duplicate facts and tautological clauses are
/// dropped with a warning. Any error makes the whole read fail with the
/// complete diagnostic list, sorted by position.
pub fn parse_kb(text: &str) -> Result<Parsed<KnowledgeBase>, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let facts = read_facts(text, &mut diags);
    let mut kb = KnowledgeBase::default();
    let mut uses: Vec<(Symbol, Position)> = Vec::new();

    for fact in &facts {
        match fact.pred.as_str() {
            "symbol" => {
                if !check_arity(fact, 1, &mut diags) {
                    continue;
                }
                if let Some(s) = symbol_arg(&fact.args[0], false, &mut diags) {
                    if !kb.symbols.insert(s.clone()) {
                        diags.push(Diagnostic::warning(
                            fact.pos,
                            format!("duplicate fact symbol({s}) ignored"),
                        ));
                    }
                }
            }
            "cause" | "ont" => {
                if !check_arity(fact, 2, &mut diags) {
                    continue;
                }
                let a = symbol_arg(&fact.args[0], false, &mut diags);
                let b = symbol_arg(&fact.args[1], false, &mut diags);
                let (Some(a), Some(b)) = (a, b) else { continue };
                uses.push((a.clone(), fact.args[0].pos));
                uses.push((b.clone(), fact.args[1].pos));
                let fresh = if fact.pred == "cause" {
                    kb.causes.insert(CausalAtom {
                        cause: a.clone(),
                        effect: b.clone(),
                    })
                } else {
                    kb.ont.insert(OntAtom {
                        sub: a.clone(),
                        sup: b.clone(),
                    })
                };
                if !fresh {
                    diags.push(Diagnostic::warning(
                        fact.pos,
                        format!("duplicate fact {}({a},{b}) ignored", fact.pred),
                    ));
                }
            }
            "clause" => {
                let mut lits = Vec::new();
                let mut ok = true;
                for arg in &fact.args {
                    match symbol_arg(arg, true, &mut diags) {
                        Some(s) => {
                            uses.push((s.clone(), arg.pos));
                            lits.push(Literal {
                                symbol: s,
                                positive: !arg.negated,
                            });
                        }
                        None => ok = false,
                    }
                }
                if !ok {
                    continue;
                }
                match Clause::new(lits) {
                    Ok(c) => {
                        if kb.w.contains(&c) {
                            diags.push(Diagnostic::warning(
                                fact.pos,
                                format!("duplicate fact {c} ignored"),
                            ));
                        } else {
                            kb.w.insert(c);
                        }
                    }
                    Err(InvalidClause::Tautology(s)) => diags.push(Diagnostic::warning(
                        fact.pos,
                        format!("tautological clause dropped (contains {s} and -{s})"),
                    )),
                    // the grammar requires at least one argument
                    Err(InvalidClause::Empty) => unreachable!(),
                }
            }
            other => diags.push(Diagnostic::error(
                fact.pos,
                format!("unknown predicate `{other}` (expected symbol, cause, ont or clause)"),
            )),
        }
    }

    for (s, pos) in uses {
        if !kb.symbols.contains(&s) {
            diags.push(Diagnostic::error(pos, format!("undeclared symbol {s}")));
        }
    }
    finish(kb, diags)
}

pub fn parse_kb_bytes(bytes: &[u8]) -> Result<Parsed<KnowledgeBase>, Vec<Diagnostic>> {
    parse_kb(decode(bytes)?)
}

/// Reads a scenario: `true(x).` and `false(x).` facts.
///
/// Declaration against a knowledge base is checked separately with
/// [`Scenario::check_declared`].
pub fn parse_scenario(text: &str) -> Result<Parsed<Scenario>, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let facts = read_facts(text, &mut diags);
    let mut assignment = BTreeMap::new();
    let mut origin = BTreeMap::new();

    for fact in &facts {
        let value = match fact.pred.as_str() {
            "true" => true,
            "false" => false,
            other => {
                diags.push(Diagnostic::error(
                    fact.pos,
                    format!("unknown predicate `{other}` (expected true or false)"),
                ));
                continue;
            }
        };
        if !check_arity(fact, 1, &mut diags) {
            continue;
        }
        let Some(s) = symbol_arg(&fact.args[0], false, &mut diags) else {
            continue;
        };
        match assignment.get(&s) {
            Some(&prev) if prev == value => diags.push(Diagnostic::warning(
                fact.pos,
                format!("duplicate fact {}({s}) ignored", fact.pred),
            )),
            Some(_) => diags.push(Diagnostic::error(
                fact.pos,
                format!("conflicting assignment for {s}"),
            )),
            None => {
                assignment.insert(s.clone(), value);
                origin.insert(s, fact.pos);
            }
        }
    }
    finish(Scenario { assignment, origin }, diags)
}

pub fn parse_scenario_bytes(bytes: &[u8]) -> Result<Parsed<Scenario>, Vec<Diagnostic>> {
    parse_scenario(decode(bytes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Severity;

    fn s(name: &str) -> Symbol {
        Symbol::new(name).unwrap()
    }

    #[test]
    fn minimal_kb() {
        let kb = parse_kb("symbol(a). symbol(b). cause(a,b).").unwrap();
        assert!(kb.warnings.is_empty());
        let kb = kb.value;
        assert_eq!(kb.symbols.len(), 2);
        assert_eq!(kb.causes.len(), 1);
        assert!(kb.ont.is_empty());
        assert!(kb.w.is_empty());
    }

    #[test]
    fn negative_clause() {
        let kb = parse_kb(
            "symbol(epsilon1). symbol(gamma1). symbol(gamma2). clause(-epsilon1, -gamma1, -gamma2).",
        )
        .unwrap()
        .value;
        let expected = Clause::new([
            Literal::neg(s("epsilon1")),
            Literal::neg(s("gamma1")),
            Literal::neg(s("gamma2")),
        ])
        .unwrap();
        assert_eq!(kb.w.len(), 1);
        assert!(kb.w.contains(&expected));
    }

    #[test]
    fn undeclared_symbols() {
        let diags = parse_kb("cause(a,b).").unwrap_err();
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].to_string(), "1:7: error: undeclared symbol a");
        assert_eq!(diags[1].to_string(), "1:9: error: undeclared symbol b");
    }

    #[test]
    fn declaration_order_is_free() {
        let kb = parse_kb("cause(a,b).\nsymbol(b).\nsymbol(a).").unwrap().value;
        assert_eq!(kb.causes.len(), 1);
    }

    #[test]
    fn duplicates_warn() {
        let p = parse_kb("symbol(a). symbol(a). symbol(b). ont(a,b). ont(a,b).\nclause(a). clause(a).")
            .unwrap();
        assert_eq!(p.warnings.len(), 3);
        assert!(p.warnings.iter().all(|d| d.severity == Severity::Warning));
        assert_eq!(p.value.symbols.len(), 2);
        assert_eq!(p.value.ont.len(), 1);
        assert_eq!(p.value.w.len(), 1);
    }

    #[test]
    fn tautology_dropped() {
        let p = parse_kb("symbol(a). symbol(b).\nclause(a, b, -a).").unwrap();
        assert!(p.value.w.is_empty());
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.warnings[0].position, Some(Position::new(2, 1)));
        assert!(p.warnings[0].message.contains("tautological"));
    }

    #[test]
    fn syntax_errors_are_located_and_recovered() {
        let diags = parse_kb("symbol(a)\nsymbol(b).\ncause(a b).\nfoo(a).\nsymbol(C).").unwrap_err();
        let text: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "2:1: error: expected `.` after fact, found `symbol`",
                "3:9: error: expected `,` or `)`, found `b`",
                "4:1: error: unknown predicate `foo` (expected symbol, cause, ont or clause)",
                "5:8: error: invalid symbol name `C`: symbols start with a lowercase letter",
            ]
        );
    }

    #[test]
    fn comments_and_whitespace() {
        let kb = parse_kb("% header\nsymbol( a ) . % trailing\n\n  symbol(b).ont(a,\n b).")
            .unwrap()
            .value;
        assert_eq!(kb.ont.len(), 1);
    }

    #[test]
    fn negation_outside_clause() {
        let diags = parse_kb("symbol(a). symbol(b). cause(-a,b).").unwrap_err();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("negation"));
    }

    #[test]
    fn arity_errors() {
        let diags = parse_kb("symbol(a,b). cause(a).").unwrap_err();
        assert_eq!(diags.len(), 2);
    }

    #[test]
    fn unterminated_input() {
        let diags = parse_kb("symbol(a").unwrap_err();
        assert_eq!(diags[0].to_string(), "1:9: error: expected `,` or `)`, found end of input");
        assert!(parse_kb("@").is_err());
    }

    #[test]
    fn invalid_utf8() {
        let diags = parse_kb_bytes(b"symbol(a).\n\xff").unwrap_err();
        assert_eq!(diags[0].to_string(), "2:1: error: input is not valid UTF-8");
    }

    #[test]
    fn scenario_basic() {
        let sc = parse_scenario("false(gamma1).").unwrap().value;
        assert_eq!(sc.value(&s("gamma1")), Some(false));
        assert_eq!(sc.assignment.len(), 1);
    }

    #[test]
    fn scenario_empty() {
        assert!(parse_scenario("").unwrap().value.assignment.is_empty());
    }

    #[test]
    fn scenario_conflict() {
        let diags = parse_scenario("true(a). false(a).").unwrap_err();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].message, "conflicting assignment for a");
    }

    #[test]
    fn scenario_syntax() {
        let diags = parse_scenario("true(a) false(b).").unwrap_err();
        assert_eq!(diags[0].position, Some(Position::new(1, 9)));
        assert!(parse_scenario("maybe(a).").is_err());
    }
}
