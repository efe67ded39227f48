use crate::model::KnowledgeBase;
use crate::saturation::ExplanationSet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per symbol, solid edges for causal atoms, dashed edges for IS-A
/// atoms and a bold labeled edge per explanation atom.
pub fn emit_dot(atoms: &ExplanationSet, kb: &KnowledgeBase) -> String {
    let mut out = String::from("digraph explanations {\n");
    for s in &kb.symbols {
        out.push_str(&format!("  {};\n", quote(s.as_str())));
    }
    for c in &kb.causes {
        out.push_str(&format!(
            "  {} -> {} [style=solid];\n",
            quote(c.cause.as_str()),
            quote(c.effect.as_str())
        ));
    }
    for o in &kb.ont {
        out.push_str(&format!(
            "  {} -> {} [style=dashed];\n",
            quote(o.sub.as_str()),
            quote(o.sup.as_str())
        ));
    }
    for a in atoms {
        out.push_str(&format!(
            "  {} -> {} [style=bold, color=blue, label={}];\n",
            quote(a.explainer.as_str()),
            quote(a.explained.as_str()),
            quote(&a.conditions.to_string())
        ));
    }
    out.push_str("}\n");
    out
}
