//! `bussproofs` rendering of HS proofs in polynomial notation.

use super::{HsNode, HsProof};
use crate::g4ip::latex::{push_inference, rule_label};
use crate::normalize::latex_conj;

/// One proof tree per root; the roots multiply to the conclusion.
pub fn hs_to_latex(h: &HsProof) -> String {
    let mut out = String::new();
    for root in &h.roots {
        out.push_str("\\begin{prooftree}\n");
        node(root, &mut out);
        out.push_str("\\end{prooftree}\n");
    }
    out
}

fn node(n: &HsNode, out: &mut String) {
    for p in &n.premises {
        node(p, out);
    }
    push_inference(out, n.premises.len(), &rule_label(n.rule.symbol()), &latex_conj(&n.conclusion));
}
