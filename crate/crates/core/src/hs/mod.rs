//! The high-school calculus: a sequent calculus on expanded normal forms
//! with only the five non-invertible rules of G4ip. A conclusion is a
//! product; a proof of a product is a list of HS trees whose conclusions
//! multiply to it.

mod latex;
mod search;
mod translate;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interp::{audit_powers, eval_formula_with, AuditReport, EvalError, Guard, Valuation};
use crate::normalize::{
    canonicalize_conj, conj_equal, distrib, distrib1, embed, embed_conj, expand_partial, explog, explog1, ntimes,
    Base, Conj, Factor, Nf, Sum,
};
use crate::syntax::Atom;

pub use latex::hs_to_latex;
pub use search::{match_patterns, prove_hs};
pub use translate::{g4ip_to_hs, hs_reading, hs_to_g4ip, sequent_nf, G4ipTranslation, TranslateError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HsRule {
    Axiom,
    OrR1,
    OrR2,
    ImpLAtom,
    ImpLImp,
}

impl HsRule {
    pub fn name(self) -> &'static str {
        match self {
            HsRule::Axiom => "axiom",
            HsRule::OrR1 => "or-r1",
            HsRule::OrR2 => "or-r2",
            HsRule::ImpLAtom => "imp-l-atom",
            HsRule::ImpLImp => "imp-l-imp",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            HsRule::Axiom => "axiom",
            HsRule::OrR1 => "∨r1",
            HsRule::OrR2 => "∨r2",
            HsRule::ImpLAtom => "→lP",
            HsRule::ImpLImp => "→l→",
        }
    }
}

impl fmt::Display for HsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The schema components of a rule instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "schema", rename_all = "kebab-case")]
pub enum Instantiation {
    /// `p ↑ (p¹ ⋊ e)`.
    Axiom { p: Atom, e: Nf },
    /// `(c₁ + c₂) ↑ e`.
    Or { c1: Conj, c2: Conj, e: Nf },
    /// `c ⇑ ((c₀ ⇑ p) ⋊ (p ⋊ e))`.
    Atom { c: Conj, c0: Conj, p: Atom, e: Nf },
    /// `c ⇑ ((c₁ ⇑ (c₂ ⇑ e₁)) ⋊ e₂)`.
    Imp { c: Conj, c1: Conj, c2: Conj, e1: Nf, e2: Nf },
}

/// One HS rule application.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsNode {
    pub rule: HsRule,
    pub conclusion: Conj,
    pub instantiation: Instantiation,
    /// Trees whose conclusions multiply to the schema premise.
    pub premises: Vec<HsNode>,
}

/// A proof of `conclusion` as a product of HS trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsProof {
    pub conclusion: Conj,
    pub roots: Vec<HsNode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid HS step at {path:?}: {message}")]
pub struct HsCheckError {
    /// Root index, then premise indices.
    pub path: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HsError {
    #[error("not provable in HS")]
    NotProvable,
    #[error("HS is propositional only")]
    Quantifier,
}

fn prime_conj(p: &Atom) -> Conj {
    Conj::prime(p.clone())
}

/// The conclusion the schema assigns to `inst`, or `None` if `inst` does
/// not fit `rule`.
pub fn schema_conclusion(rule: HsRule, inst: &Instantiation) -> Option<Conj> {
    match (rule, inst) {
        (HsRule::Axiom, Instantiation::Axiom { p, e }) => {
            Some(explog1(&Base::Prime(p.clone()), &distrib1(&prime_conj(p), e)))
        }
        (HsRule::OrR1 | HsRule::OrR2, Instantiation::Or { c1, c2, e }) => {
            Some(explog1(&Base::Sum(Sum::pair(c1.clone(), c2.clone())), e))
        }
        (HsRule::ImpLAtom, Instantiation::Atom { c, c0, p, e }) => {
            let pe = distrib1(&prime_conj(p), e);
            Some(explog(c, &distrib1(&explog(c0, &Nf::Conj(prime_conj(p))), &pe)))
        }
        (HsRule::ImpLImp, Instantiation::Imp { c, c1, c2, e1, e2 }) => {
            let principal = explog(c1, &Nf::Conj(explog(c2, e1)));
            Some(explog(c, &distrib1(&principal, e2)))
        }
        _ => None,
    }
}

/// The premise groups of the schema; their product is what the premises
/// of a node must prove.
pub fn schema_premises(rule: HsRule, inst: &Instantiation) -> Option<Vec<Conj>> {
    match (rule, inst) {
        (HsRule::Axiom, Instantiation::Axiom { .. }) => Some(vec![]),
        (HsRule::OrR1, Instantiation::Or { c1, e, .. }) => Some(vec![explog(c1, e)]),
        (HsRule::OrR2, Instantiation::Or { c2, e, .. }) => Some(vec![explog(c2, e)]),
        (HsRule::ImpLAtom, Instantiation::Atom { c, c0, p, e }) => {
            let pe = distrib1(&prime_conj(p), e);
            Some(vec![explog(c, &distrib(&expand_partial(c0), &pe))])
        }
        (HsRule::ImpLImp, Instantiation::Imp { c, c1, c2, e1, e2 }) => {
            let goal = explog(c2, e1);
            let first = explog(&goal, &distrib1(&explog(c1, &expand_partial(c2)), e2));
            let second = explog(c, &distrib(&expand_partial(c1), e2));
            Some(vec![first, second])
        }
        _ => None,
    }
}

impl HsNode {
    /// Builds a node with the conclusion computed from the schema.
    pub fn new(rule: HsRule, instantiation: Instantiation, premises: Vec<HsNode>) -> Option<HsNode> {
        let conclusion = schema_conclusion(rule, &instantiation)?;
        Some(HsNode { rule, conclusion, instantiation, premises })
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(HsNode::size).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&HsNode> {
        let mut out = vec![self];
        for p in &self.premises {
            out.extend(p.nodes());
        }
        out
    }

    /// The rules in pre-order.
    pub fn spine(&self) -> Vec<HsRule> {
        self.nodes().iter().map(|n| n.rule).collect()
    }

    /// The tree of rule names with children sorted, so that two trees
    /// differing only in premise order get the same shape.
    pub fn shape(&self) -> String {
        let mut children: Vec<String> = self.premises.iter().map(HsNode::shape).collect();
        children.sort();
        format!("{}({})", self.rule.name(), children.join(","))
    }
}

impl HsProof {
    pub fn size(&self) -> usize {
        self.roots.iter().map(HsNode::size).sum()
    }

    pub fn nodes(&self) -> Vec<&HsNode> {
        self.roots.iter().flat_map(HsNode::nodes).collect()
    }

    pub fn spine(&self) -> Vec<HsRule> {
        self.roots.iter().flat_map(HsNode::spine).collect()
    }

    pub fn shape(&self) -> String {
        let mut roots: Vec<String> = self.roots.iter().map(HsNode::shape).collect();
        roots.sort();
        roots.join(";")
    }
}

pub(crate) fn product(parts: impl IntoIterator<Item = Conj>) -> Conj {
    parts.into_iter().fold(Conj::one(), |acc, c| ntimes(&acc, &c))
}

/// Checks every node against its schema, up to commutativity.
pub fn check_hs(h: &HsProof) -> Result<(), HsCheckError> {
    let roots = product(h.roots.iter().map(|n| n.conclusion.clone()));
    if !conj_equal(&roots, &h.conclusion, true) {
        return Err(HsCheckError { path: vec![], message: "roots do not multiply to the conclusion".into() });
    }
    for (i, n) in h.roots.iter().enumerate() {
        check_node(n, &mut vec![i])?;
    }
    Ok(())
}

fn check_node(n: &HsNode, path: &mut Vec<usize>) -> Result<(), HsCheckError> {
    let fail = |message: String| HsCheckError { path: path.clone(), message };
    let expected = schema_conclusion(n.rule, &n.instantiation)
        .ok_or_else(|| fail(format!("instantiation does not fit {}", n.rule)))?;
    if !conj_equal(&expected, &n.conclusion, true) {
        return Err(fail(format!("{} schema gives a different conclusion", n.rule)));
    }
    let wanted = product(schema_premises(n.rule, &n.instantiation).expect("fits"));
    let got = product(n.premises.iter().map(|p| p.conclusion.clone()));
    if !conj_equal(&wanted, &got, true) {
        return Err(fail(format!("premises of {} do not multiply to the schema premise", n.rule)));
    }
    for (k, p) in n.premises.iter().enumerate() {
        path.push(k);
        check_node(p, path)?;
        path.pop();
    }
    Ok(())
}

/// `(⟦b⟧, ⟦e⟧)` for every factor `b^e`.
fn conj_powers(c: &Conj, v: &Valuation, g: &Guard) -> Result<Vec<(BigUint, BigUint)>, EvalError> {
    c.factors
        .iter()
        .map(|f| {
            if !f.vars.is_empty() {
                return Err(EvalError::Quantifier);
            }
            let base = embed_conj(&Conj::single(Factor::new(f.base.clone(), Conj::one())));
            Ok((eval_formula_with(&base, v, g)?, eval_formula_with(&embed_conj(&f.exp), v, g)?))
        })
        .collect()
}

/// Audits every node in pre-order: each must strictly decrease the value.
pub fn hs_value_audit(h: &HsProof, v: &Valuation, g: &Guard) -> Result<Vec<AuditReport>, EvalError> {
    h.nodes()
        .into_iter()
        .map(|n| {
            let premise = product(schema_premises(n.rule, &n.instantiation).unwrap_or_default());
            let lhs = conj_powers(&premise, v, g)?;
            let rhs = conj_powers(&n.conclusion, v, g)?;
            Ok(audit_powers(n.rule.name(), false, &lhs, &rhs, g))
        })
        .collect()
}

/// The formula an HS conclusion stands for, with `⊤ → b` read as `b`.
pub fn hs_formula(c: &Conj) -> crate::syntax::Formula {
    crate::syntax::simplify_top(&embed(&Nf::Conj(c.clone())))
}

/// The G4ip sequent a node's instantiation stands for, with products read
/// as conjunctions and `⊤` parts dropped. Its normal form is the schema
/// conclusion.
pub fn schema_sequent(rule: HsRule, inst: &Instantiation) -> Option<crate::syntax::Sequent> {
    use crate::syntax::{simplify_top, Formula, Sequent};
    let read = |e: &Nf| simplify_top(&disjunction(e.summands().iter().map(compact).collect()));
    let conj = |c: &Conj| simplify_top(&compact(c));
    let (ctx, goal) = match (rule, inst) {
        (HsRule::Axiom, Instantiation::Axiom { p, e }) => (vec![Formula::Atom(p.clone()), read(e)], Formula::Atom(p.clone())),
        (HsRule::OrR1 | HsRule::OrR2, Instantiation::Or { c1, c2, e }) => {
            (vec![read(e)], Formula::or(conj(c1), conj(c2)))
        }
        (HsRule::ImpLAtom, Instantiation::Atom { c, c0, p, e }) => {
            let pa = Formula::Atom(p.clone());
            (vec![pa.clone(), simplify_top(&Formula::imp(pa, conj(c0))), read(e)], conj(c))
        }
        (HsRule::ImpLImp, Instantiation::Imp { c, c1, c2, e1, e2 }) => {
            let principal = Formula::imp(Formula::imp(read(e1), conj(c2)), conj(c1));
            (vec![simplify_top(&principal), read(e2)], conj(c))
        }
        _ => return None,
    };
    Some(Sequent::new(ctx.into_iter().filter(|f| !f.is_top()), goal))
}

/// Right-nested disjunction of a nonempty list.
fn disjunction(mut parts: Vec<crate::syntax::Formula>) -> crate::syntax::Formula {
    let last = parts.pop().expect("nonempty");
    parts.into_iter().rev().fold(last, |acc, f| crate::syntax::Formula::or(f, acc))
}

/// Reads `c` back as a formula, grouping the factors over one base:
/// `b^(a r₁) ⋯ b^(a rₙ)` becomes `a ∧ (r₁ ∨ ⋯ ∨ rₙ) → b`. Factors `b¹`
/// stay on their own.
fn compact(c: &Conj) -> crate::syntax::Formula {
    use crate::syntax::Formula;
    let mut groups: Vec<(Factor, &Base, Vec<&Conj>)> = Vec::new();
    for f in &c.factors {
        let key = factor_key(&Factor::new(f.base.clone(), Conj::one()));
        if f.exp.is_one() {
            groups.push((key, &f.base, vec![&f.exp]));
            continue;
        }
        match groups.iter_mut().find(|(k, _, exps)| *k == key && !exps[0].is_one()) {
            Some((_, _, exps)) => exps.push(&f.exp),
            None => groups.push((key, &f.base, vec![&f.exp])),
        }
    }
    let read_base = |b: &Base| match b {
        Base::Prime(a) => Formula::Atom(a.clone()),
        Base::Sum(d) => {
            disjunction(d.summands().iter().map(compact).collect())
        }
        Base::Ex { .. } => match embed_conj(&Conj::single(Factor::new(b.clone(), Conj::one()))) {
            Formula::Imp(_, g) => (*g).clone(),
            f => f,
        },
    };
    Formula::conj(groups.into_iter().map(|(_, b, exps)| {
        let head = read_base(b);
        if exps.len() == 1 {
            return Formula::imp(compact(exps[0]), head);
        }
        let mut common: Vec<Factor> = exps[0].factors.iter().map(factor_key).collect();
        for e in &exps[1..] {
            let mut rest: Vec<Factor> = e.factors.iter().map(factor_key).collect();
            common.retain(|f| match rest.iter().position(|g| g == f) {
                Some(i) => {
                    rest.remove(i);
                    true
                }
                None => false,
            });
        }
        let rests: Vec<Conj> = exps
            .iter()
            .map(|e| {
                let mut fs: Vec<Factor> = e.factors.clone();
                for k in &common {
                    let i = fs.iter().position(|g| factor_key(g) == *k).expect("common factor");
                    fs.remove(i);
                }
                Conj::of(fs)
            })
            .collect();
        if common.is_empty() && rests.iter().all(Conj::is_one) {
            return Formula::conj(exps.iter().map(|e| Formula::imp(compact(e), head.clone())));
        }
        let alt = disjunction(rests.iter().map(compact).collect());
        Formula::imp(Formula::and(compact(&Conj::of(common)), alt), head)
    }))
}

/// Factor-wise key for comparisons up to commutativity.
pub(crate) fn factor_key(f: &Factor) -> Factor {
    canonicalize_conj(&Conj::single(f.clone())).factors.pop().expect("one factor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{enf, print_conj};
    use crate::syntax::parse_formula;

    fn atom(s: &str) -> Atom {
        Atom::prop(s)
    }

    fn nf(s: &str) -> Nf {
        enf(&parse_formula(s).unwrap())
    }

    #[test]
    fn axiom_schema() {
        let n = HsNode::new(HsRule::Axiom, Instantiation::Axiom { p: atom("p"), e: nf("q") }, vec![]).unwrap();
        assert_eq!(print_conj(&n.conclusion, false), "p^(p q)");
        assert_eq!(n.conclusion, nf("p & q -> p").as_conj().unwrap().clone());
    }

    #[test]
    fn or_schema_matches_the_concrete_instance() {
        let inst = Instantiation::Or { c1: Conj::prime(atom("p")), c2: Conj::prime(atom("q")), e: nf("r | s") };
        let n = HsNode::new(HsRule::OrR1, inst.clone(), vec![]).unwrap();
        assert_eq!(print_conj(&n.conclusion, false), "(p + q)^r (p + q)^s");
        let prem = schema_premises(HsRule::OrR1, &inst).unwrap();
        assert_eq!(print_conj(&prem[0], false), "p^r p^s");
    }

    #[test]
    fn imp_schema_matches_the_concrete_instance() {
        let inst = Instantiation::Imp {
            c: Conj::prime(atom("p")),
            c1: Conj::prime(atom("p")),
            c2: Conj::prime(atom("q")),
            e1: nf("r"),
            e2: nf("s"),
        };
        let n = HsNode::new(HsRule::ImpLImp, inst.clone(), vec![]).unwrap();
        assert_eq!(print_conj(&n.conclusion, false), "p^(p^(q^r) s)");
        let prem = schema_premises(HsRule::ImpLImp, &inst).unwrap();
        assert_eq!(print_conj(&prem[0], false), "q^(r p^q s)");
        assert_eq!(print_conj(&prem[1], false), "p^(p s)");
    }

    #[test]
    fn mismatched_instantiation() {
        let inst = Instantiation::Axiom { p: atom("p"), e: Nf::one() };
        assert!(schema_conclusion(HsRule::OrR1, &inst).is_none());
    }

    #[test]
    fn checker_rejects_a_swapped_exponent() {
        let good = HsNode::new(HsRule::Axiom, Instantiation::Axiom { p: atom("p"), e: nf("q") }, vec![]).unwrap();
        let proof = HsProof { conclusion: good.conclusion.clone(), roots: vec![good.clone()] };
        assert!(check_hs(&proof).is_ok());
        let mut bad = good;
        bad.conclusion.factors[0].exp = Conj::prime(atom("q"));
        let proof = HsProof { conclusion: bad.conclusion.clone(), roots: vec![bad] };
        assert!(check_hs(&proof).is_err());
    }
}
