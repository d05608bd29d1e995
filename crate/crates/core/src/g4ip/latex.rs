//! `bussproofs` rendering of derivations.

use super::Derivation;
use crate::syntax::{Formula, Sequent};

pub fn to_latex(d: &Derivation) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    node(d, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

fn node(d: &Derivation, out: &mut String) {
    for p in &d.premises {
        node(p, out);
    }
    push_inference(out, d.premises.len(), &rule_label(d.rule.symbol()), &latex_sequent(&d.sequent));
}

/// Appends the closing command of an inference with `arity` premises
/// already on the stack.
pub(crate) fn push_inference(out: &mut String, arity: usize, label: &str, conclusion: &str) {
    if arity == 0 {
        out.push_str("\\AxiomC{}\n");
    }
    out.push_str(&format!("\\RightLabel{{\\scriptsize {label}}}\n"));
    let cmd = match arity {
        0 | 1 => "UnaryInfC",
        2 => "BinaryInfC",
        3 => "TrinaryInfC",
        4 => "QuaternaryInfC",
        _ => "QuinaryInfC",
    };
    out.push_str(&format!("\\{cmd}{{${conclusion}$}}\n"));
}

pub(crate) fn rule_label(symbol: &str) -> String {
    let tex = match symbol {
        "axiom" => return "axiom".into(),
        "∨r1" => "\\vee_{r}^{1}",
        "∨r2" => "\\vee_{r}^{2}",
        "→lP" => "\\to_l^{P}",
        "→l→" => "\\to_l^{\\to}",
        "→r" => "\\to_r",
        "∧r" => "\\wedge_r",
        "∨l" => "\\vee_l",
        "∧l" => "\\wedge_l",
        "→l∧" => "\\to_l^{\\wedge}",
        "→l∨" => "\\to_l^{\\vee}",
        "⊤r" => "\\top_r",
        "⊤l" => "\\top_l",
        "→l⊤" => "\\to_l^{\\top}",
        "⊥l" => "\\bot_l",
        other => other,
    };
    format!("$({tex})$")
}

pub(crate) fn latex_sequent(s: &Sequent) -> String {
    let ctx: Vec<String> = s.context().iter().map(latex_formula).collect();
    let sep = if ctx.is_empty() { "" } else { " " };
    format!("{}{sep}\\vdash {}", ctx.join(", "), latex_formula(s.goal()))
}

pub(crate) fn latex_formula(f: &Formula) -> String {
    formula(f, 0)
}

fn formula(f: &Formula, min: u8) -> String {
    let (level, body) = match f {
        Formula::Atom(a) => (4, a.to_string()),
        Formula::Top => (4, "\\top".into()),
        Formula::And(a, b) => (3, format!("{} \\wedge {}", formula(a, 3), formula(b, 4))),
        Formula::Or(a, b) => (2, format!("{} \\vee {}", formula(a, 2), formula(b, 3))),
        Formula::Imp(a, b) => (1, format!("{} \\to {}", formula(a, 2), formula(b, 1))),
        Formula::Forall(x, b) => (0, format!("\\forall {x}.\\, {}", formula(b, 0))),
        Formula::Exists(x, b) => (0, format!("\\exists {x}.\\, {}", formula(b, 0))),
    };
    if level < min || (min > 0 && level == 0) {
        format!("({body})")
    } else {
        body
    }
}
