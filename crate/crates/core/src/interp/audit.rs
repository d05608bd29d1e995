use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::Serialize;

use super::compare::compare_power_products;
use super::{eval_context, eval_formula_with, EvalError, Guard, Valuation};
use crate::syntax::Sequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    StrictlyLess,
    Violation,
    /// The two sides are too close for the logarithmic bound.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rule: String,
    pub invertible: bool,
    /// Product of the premise values, exact or as `b^e · …`.
    pub premises: String,
    pub conclusion: String,
    pub verdict: Verdict,
}

/// `(⟦G⟧, ⟦Γ⟧)`, whose power `⟦G⟧^⟦Γ⟧` is the sequent value.
pub fn sequent_power(s: &Sequent, v: &Valuation, g: &Guard) -> Result<(BigUint, BigUint), EvalError> {
    Ok((eval_formula_with(s.goal(), v, g)?, eval_context(s.context(), v, g)?))
}

/// Values longer than this are shown as products of powers.
const RENDER_DIGITS: usize = 1000;

fn render(p: &[(BigUint, BigUint)], g: &Guard) -> String {
    let g = Guard::new(g.max_digits.min(RENDER_DIGITS));
    let exact = p.iter().try_fold(BigUint::from(1u32), |acc, (b, e)| g.mul(&acc, &g.pow(b, e)?));
    match exact {
        Ok(n) => n.to_string(),
        Err(_) => p.iter().map(|(b, e)| format!("{b}^{e}")).collect::<Vec<_>>().join(" · "),
    }
}

/// Compares the product of the premise values with the conclusion value.
/// Invertible rules must give equality, the others a strict decrease.
pub fn audit_rule_instance(
    rule: &str,
    invertible: bool,
    premises: &[Sequent],
    conclusion: &Sequent,
    v: &Valuation,
    g: &Guard,
) -> Result<AuditReport, EvalError> {
    let lhs = premises.iter().map(|s| sequent_power(s, v, g)).collect::<Result<Vec<_>, _>>()?;
    let rhs = vec![sequent_power(conclusion, v, g)?];
    Ok(audit_powers(rule, invertible, &lhs, &rhs, g))
}

/// The audit of a rule instance whose premise product and conclusion are
/// given as products of powers.
pub fn audit_powers(
    rule: &str,
    invertible: bool,
    premises: &[(BigUint, BigUint)],
    conclusion: &[(BigUint, BigUint)],
    g: &Guard,
) -> AuditReport {
    let verdict = match (compare_power_products(premises, conclusion), invertible) {
        (None, _) => Verdict::Undecided,
        (Some(Ordering::Equal), true) => Verdict::Equal,
        (Some(Ordering::Less), false) => Verdict::StrictlyLess,
        _ => Verdict::Violation,
    };
    AuditReport {
        rule: rule.to_string(),
        invertible,
        premises: render(premises, g),
        conclusion: render(conclusion, g),
        verdict,
    }
}
