//! Plain-text renderings for the command line.

use std::fmt::Write;

use crate::g4ip::{Derivation, GridReport};
use crate::hs::{HsNode, HsProof};
use crate::interp::{AuditReport, LemmaReport};
use crate::normalize::{print_conj, BaseClass, ClassReport, ClassTree, FactorClass, TopClass};
use crate::syntax::print_polynomial;

/// One node per line, premises indented below their conclusion.
pub fn derivation(d: &Derivation, poly: bool) -> String {
    let mut out = String::new();
    derivation_lines(d, poly, 0, &mut out);
    out
}

fn derivation_lines(d: &Derivation, poly: bool, depth: usize, out: &mut String) {
    let s = match (poly, d.sequent.context()) {
        (false, _) => d.sequent.to_string(),
        (true, []) => print_polynomial(d.sequent.goal()),
        (true, _) => print_polynomial(&d.sequent.as_formula()),
    };
    let _ = writeln!(out, "{:indent$}{:<8} {s}", "", d.rule.symbol(), indent = 2 * depth);
    for p in &d.premises {
        derivation_lines(p, poly, depth + 1, out);
    }
}

pub fn hs_proof(h: &HsProof, verbose: bool) -> String {
    let mut out = format!("conclusion {}\n", print_conj(&h.conclusion, verbose));
    for root in &h.roots {
        hs_lines(root, verbose, 0, &mut out);
    }
    out
}

fn hs_lines(n: &HsNode, verbose: bool, depth: usize, out: &mut String) {
    let _ = writeln!(out, "{:indent$}{:<8} {}", "", n.rule.symbol(), print_conj(&n.conclusion, verbose), indent = 2 * depth);
    for p in &n.premises {
        hs_lines(p, verbose, depth + 1, out);
    }
}

pub fn class_report(r: &ClassReport, nf: &str) -> String {
    let top = match r.top {
        TopClass::Sigma => "Σ",
        TopClass::Pi => "Π",
    };
    format!(
        "normal form {nf}\nclass {top}, width {}, depth Σ {} Π {} ∃ {}\n{}",
        r.width,
        r.depth.sigma,
        r.depth.pi,
        r.depth.exists,
        tree(&r.tree)
    )
}

fn tree(t: &ClassTree) -> String {
    match t {
        ClassTree::Sigma { summands } => format!("Σ[{}]", summands.iter().map(tree).collect::<Vec<_>>().join(" | ")),
        ClassTree::Pi { factors } => format!("Π[{}]", factors.iter().map(factor).collect::<Vec<_>>().join("; ")),
    }
}

fn factor(f: &FactorClass) -> String {
    let base = match &f.base {
        BaseClass::Prime { atom } => atom.clone(),
        BaseClass::Sum { summands } => tree(&ClassTree::Sigma { summands: summands.clone() }),
        BaseClass::Ex { vars, body } => format!("∃{}.{}", vars.join(","), tree(body)),
    };
    let body = match &f.exponent {
        ClassTree::Pi { factors } if factors.is_empty() => base,
        exp => format!("{} → {base}", tree(exp)),
    };
    if f.vars.is_empty() {
        body
    } else {
        format!("∀{}.({body})", f.vars.join(","))
    }
}

pub fn audit_table(reports: &[AuditReport]) -> String {
    let mut out = format!("{:<10} {:<12} {:>24} {:>24}\n", "rule", "verdict", "premises", "conclusion");
    for r in reports {
        let _ = writeln!(
            out,
            "{:<10} {:<12} {:>24} {:>24}",
            r.rule,
            format!("{:?}", r.verdict),
            shorten(&r.premises),
            shorten(&r.conclusion)
        );
    }
    out
}

/// A decimal number, abbreviated to its digit count past 40 digits.
pub fn number(s: &str) -> String {
    if s.len() <= 40 {
        s.to_string()
    } else {
        format!("{}... ({} digits)", &s[..12], s.len())
    }
}

fn shorten(s: &str) -> String {
    if s.chars().count() <= 24 {
        s.to_string()
    } else {
        let head: String = s.chars().take(21).collect();
        format!("{head}...")
    }
}

pub fn grid_table(reports: &[GridReport]) -> String {
    let mut out = format!("{:<10} {:<11} {:>9} {:>7} {:>9} {:>10} {:>6}\n", "rule", "invertible", "instances", "equal", "less", "undecided", "clean");
    for r in reports {
        let _ = writeln!(
            out,
            "{:<10} {:<11} {:>9} {:>7} {:>9} {:>10} {:>6}",
            r.rule.name(),
            r.invertible,
            r.instances,
            r.equal,
            r.strictly_less,
            r.undecided,
            r.is_clean()
        );
    }
    out
}

pub fn lemma_table(report: &LemmaReport) -> String {
    let mut out = String::new();
    for l in &report.lemmas {
        let verdict = if l.holds() { "holds" } else { "FAILS" };
        let _ = writeln!(out, "{:<20} {verdict:<6} checked {:>5} skipped {:>4}  {}", l.name, l.checked, l.skipped, l.statement);
        for ce in &l.counterexamples {
            let _ = writeln!(out, "  counterexample {ce:?}");
        }
    }
    out
}
