//! The contraction-free sequent calculus G4ip.
//!
//! Invertible rules (`→r ∧r ∨l ∧l →l∧ →l∨`) turn a sequent into
//! isomorphic premises; the others (`axiom ∨r₁ ∨r₂ →lP →l→`) lose
//! information. Three extra invertible rules handle `⊤` where
//! ⊤-simplification cannot reach it, such as under a disjunction.

mod audit;
pub(crate) mod latex;
mod oracle;
mod prover;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, Sequent};

pub use audit::{
    audit_derivation, degenerate_top_instance, non_invertible_count, rule_grid, rule_schema, GridReport,
    DEFAULT_GRID_VALUES, DEFAULT_MAX_GAMMA, GAMMA, CORE_RULES,
};
pub use latex::to_latex;
pub use oracle::{oracle_decide, OracleError};
pub use prover::{prove, ProveError, ProverConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Logic {
    #[default]
    Minimal,
    /// Adds `bot, Γ ⊢ G` as an axiom.
    ExFalso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Axiom,
    OrR1,
    OrR2,
    ImpLAtom,
    ImpLImp,
    ImpR,
    AndR,
    OrL,
    AndL,
    ImpLAnd,
    ImpLOr,
    /// `Γ ⊢ ⊤`.
    TopR,
    /// `⊤, Γ ⊢ G` from `Γ ⊢ G`.
    TopL,
    /// `(⊤→H), Γ ⊢ G` from `H, Γ ⊢ G`.
    ImpLTop,
    /// `bot, Γ ⊢ G`, ex-falso only.
    FalsumL,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::Axiom,
        Rule::OrR1,
        Rule::OrR2,
        Rule::ImpLAtom,
        Rule::ImpLImp,
        Rule::ImpR,
        Rule::AndR,
        Rule::OrL,
        Rule::AndL,
        Rule::ImpLAnd,
        Rule::ImpLOr,
        Rule::TopR,
        Rule::TopL,
        Rule::ImpLTop,
        Rule::FalsumL,
    ];

    pub fn is_invertible(self) -> bool {
        matches!(
            self,
            Rule::ImpR
                | Rule::AndR
                | Rule::OrL
                | Rule::AndL
                | Rule::ImpLAnd
                | Rule::ImpLOr
                | Rule::TopR
                | Rule::TopL
                | Rule::ImpLTop
        )
    }

    /// Whether the principal formula sits in the context.
    pub fn is_left(self) -> bool {
        !matches!(self, Rule::OrR1 | Rule::OrR2 | Rule::ImpR | Rule::AndR | Rule::TopR)
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::OrR1 => "or-r1",
            Rule::OrR2 => "or-r2",
            Rule::ImpLAtom => "imp-l-atom",
            Rule::ImpLImp => "imp-l-imp",
            Rule::ImpR => "imp-r",
            Rule::AndR => "and-r",
            Rule::OrL => "or-l",
            Rule::AndL => "and-l",
            Rule::ImpLAnd => "imp-l-and",
            Rule::ImpLOr => "imp-l-or",
            Rule::TopR => "top-r",
            Rule::TopL => "top-l",
            Rule::ImpLTop => "imp-l-top",
            Rule::FalsumL => "falsum-l",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::OrR1 => "∨r1",
            Rule::OrR2 => "∨r2",
            Rule::ImpLAtom => "→lP",
            Rule::ImpLImp => "→l→",
            Rule::ImpR => "→r",
            Rule::AndR => "∧r",
            Rule::OrL => "∨l",
            Rule::AndL => "∧l",
            Rule::ImpLAnd => "→l∧",
            Rule::ImpLOr => "→l∨",
            Rule::TopR => "⊤r",
            Rule::TopL => "⊤l",
            Rule::ImpLTop => "→l⊤",
            Rule::FalsumL => "⊥l",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The premises of `rule` applied to `s` with the given principal context
/// index, or `None` if the rule does not apply there.
pub fn apply(rule: Rule, s: &Sequent, principal: Option<usize>, logic: Logic) -> Option<Vec<Sequent>> {
    let goal = s.goal();
    if !rule.is_left() {
        if principal.is_some() {
            return None;
        }
        return match (rule, goal) {
            (Rule::TopR, Formula::Top) => Some(vec![]),
            (Rule::OrR1, Formula::Or(a, _)) => Some(vec![s.with_goal((**a).clone())]),
            (Rule::OrR2, Formula::Or(_, b)) => Some(vec![s.with_goal((**b).clone())]),
            (Rule::ImpR, Formula::Imp(a, b)) => Some(vec![s.with_extra([(**a).clone()], (**b).clone())]),
            (Rule::AndR, Formula::And(a, b)) => Some(vec![s.with_goal((**a).clone()), s.with_goal((**b).clone())]),
            _ => None,
        };
    }
    let i = principal?;
    let p = s.context().get(i)?;
    let keep = |extra: Vec<Formula>| s.replace(i, extra, goal.clone());
    match (rule, p) {
        (Rule::Axiom, Formula::Atom(_)) if p == goal => Some(vec![]),
        (Rule::FalsumL, Formula::Atom(a)) if logic == Logic::ExFalso && a.name == "bot" && a.args.is_empty() => {
            Some(vec![])
        }
        (Rule::TopL, Formula::Top) => Some(vec![keep(vec![])]),
        (Rule::AndL, Formula::And(a, b)) => Some(vec![keep(vec![(**a).clone(), (**b).clone()])]),
        (Rule::OrL, Formula::Or(a, b)) => Some(vec![keep(vec![(**a).clone()]), keep(vec![(**b).clone()])]),
        (Rule::ImpLTop, Formula::Imp(a, h)) if a.is_top() => Some(vec![keep(vec![(**h).clone()])]),
        (Rule::ImpLAnd, Formula::Imp(a, h)) => match &**a {
            Formula::And(g, f) => {
                Some(vec![keep(vec![Formula::imp((**f).clone(), Formula::imp((**g).clone(), (**h).clone()))])])
            }
            _ => None,
        },
        (Rule::ImpLOr, Formula::Imp(a, h)) => match &**a {
            Formula::Or(f, g) => Some(vec![keep(vec![
                Formula::imp((**f).clone(), (**h).clone()),
                Formula::imp((**g).clone(), (**h).clone()),
            ])]),
            _ => None,
        },
        (Rule::ImpLAtom, Formula::Imp(a, f)) if matches!(**a, Formula::Atom(_)) && s.context().contains(&**a) => {
            Some(vec![keep(vec![(**f).clone()])])
        }
        (Rule::ImpLImp, Formula::Imp(a, h)) => match &**a {
            Formula::Imp(_, g) => {
                let left = s.replace(i, [Formula::imp((**g).clone(), (**h).clone())], (**a).clone());
                let right = keep(vec![(**h).clone()]);
                Some(vec![left, right])
            }
            _ => None,
        },
        _ => None,
    }
}

/// Every rule application possible on `s`: invertible rules first, then
/// the rest, in tag order, leftmost principal first.
pub fn applicable_rules(s: &Sequent, logic: Logic) -> Vec<(Rule, Option<usize>, Vec<Sequent>)> {
    let mut out = Vec::new();
    let mut order: Vec<Rule> = Rule::ALL.iter().copied().filter(|r| r.is_invertible()).collect();
    order.extend(Rule::ALL.iter().copied().filter(|r| !r.is_invertible()));
    for rule in order {
        if rule.is_left() {
            for i in 0..s.context().len() {
                if let Some(ps) = apply(rule, s, Some(i), logic) {
                    out.push((rule, Some(i), ps));
                }
            }
        } else if let Some(ps) = apply(rule, s, None, logic) {
            out.push((rule, None, ps));
        }
    }
    out
}

/// A G4ip derivation tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    pub sequent: Sequent,
    pub principal: Option<usize>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(rule: Rule, sequent: Sequent, principal: Option<usize>) -> Self {
        Derivation { rule, sequent, principal, premises: Vec::new() }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = vec![self];
        for p in &self.premises {
            out.extend(p.nodes());
        }
        out
    }

    /// The rules of the nodes in pre-order.
    pub fn rules(&self) -> Vec<Rule> {
        self.nodes().iter().map(|d| d.rule).collect()
    }

    pub fn principal_formula(&self) -> Option<&Formula> {
        self.principal.and_then(|i| self.sequent.context().get(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid {rule} step at node path {path:?}: {message}")]
pub struct CheckError {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub message: String,
}

/// Checks every node against its rule schema.
pub fn check(d: &Derivation, logic: Logic) -> Result<(), CheckError> {
    check_at(d, logic, &mut Vec::new())
}

fn check_at(d: &Derivation, logic: Logic, path: &mut Vec<usize>) -> Result<(), CheckError> {
    let fail = |message: String| CheckError { path: path.clone(), rule: d.rule, message };
    let expected = apply(d.rule, &d.sequent, d.principal, logic)
        .ok_or_else(|| fail(format!("rule does not apply to {} with principal {:?}", d.sequent, d.principal)))?;
    if expected.len() != d.premises.len() {
        return Err(fail(format!("expected {} premises, found {}", expected.len(), d.premises.len())));
    }
    for (k, (want, got)) in expected.iter().zip(&d.premises).enumerate() {
        if *want != got.sequent {
            return Err(fail(format!("premise {k} should be {want}, found {}", got.sequent)));
        }
    }
    for (k, p) in d.premises.iter().enumerate() {
        path.push(k);
        check_at(p, logic, path)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn applicable_rules_examples() {
        let rules: Vec<Rule> = applicable_rules(&seq("p, p -> q |- q"), Logic::Minimal).iter().map(|r| r.0).collect();
        assert_eq!(rules, vec![Rule::ImpLAtom]);
        let rules: Vec<Rule> = applicable_rules(&seq("|- p -> p"), Logic::Minimal).iter().map(|r| r.0).collect();
        assert_eq!(rules, vec![Rule::ImpR]);
        let rules: Vec<Rule> = applicable_rules(&seq("p | q |- r"), Logic::Minimal).iter().map(|r| r.0).collect();
        assert!(rules.contains(&Rule::OrL));
    }

    #[test]
    fn imp_l_and_curries_left_to_right() {
        let s = seq("g & f -> h |- i");
        let ps = apply(Rule::ImpLAnd, &s, Some(0), Logic::Minimal).unwrap();
        assert_eq!(ps, vec![seq("f -> g -> h |- i")]);
    }

    #[test]
    fn imp_l_imp_premises() {
        let s = seq("(f -> g) -> h, x |- i");
        let i = s.context().iter().position(|f| matches!(f, Formula::Imp(..))).unwrap();
        let ps = apply(Rule::ImpLImp, &s, Some(i), Logic::Minimal).unwrap();
        assert_eq!(ps, vec![seq("g -> h, x |- f -> g"), seq("h, x |- i")]);
    }

    #[test]
    fn check_reports_paths() {
        let s = seq("p |- p");
        let good = Derivation {
            rule: Rule::ImpR,
            sequent: seq("|- p -> p"),
            principal: None,
            premises: vec![Derivation::leaf(Rule::Axiom, s, Some(0))],
        };
        assert!(check(&good, Logic::Minimal).is_ok());
        let mut bad = good.clone();
        bad.premises[0].sequent = seq("|- p");
        let err = check(&bad, Logic::Minimal).unwrap_err();
        assert_eq!(err.path, Vec::<usize>::new());
        let mut bad_leaf = good;
        bad_leaf.premises[0].principal = Some(1);
        assert_eq!(check(&bad_leaf, Logic::Minimal).unwrap_err().path, vec![0]);
    }

    #[test]
    fn falsum_needs_the_flag() {
        let s = seq("bot |- q");
        assert!(apply(Rule::FalsumL, &s, Some(0), Logic::Minimal).is_none());
        assert!(apply(Rule::FalsumL, &s, Some(0), Logic::ExFalso).is_some());
    }

    #[test]
    fn json_shape() {
        let d = Derivation::leaf(Rule::Axiom, seq("p |- p"), Some(0));
        let js = serde_json::to_value(&d).unwrap();
        assert_eq!(js["rule"], "axiom");
        assert_eq!(js["principal"], 0);
        let back: Derivation = serde_json::from_value(js).unwrap();
        assert_eq!(back, d);
    }
}
