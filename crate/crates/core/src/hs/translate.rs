//! Translations between G4ip derivations and HS proofs. Towards HS,
//! invertible steps vanish and the other steps map one to one. Back to
//! G4ip, invertible steps are reinserted to bring each sequent into the
//! shape the next HS step needs.

use serde::Serialize;
use thiserror::Error;

use super::{check_hs, schema_premises, schema_sequent, HsNode, HsProof, HsRule, Instantiation};
use crate::g4ip::{apply, check, prove, CheckError, Derivation, Logic, ProverConfig, Rule};
use crate::normalize::{canonicalize_conj, conj_equal, enf, enfpos, explog, Conj, Factor, Nf};
use crate::syntax::{simplify_top, Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Invalid(#[from] CheckError),
    #[error("invalid HS proof: {0}")]
    InvalidHs(String),
    #[error("the {0} rule has no HS counterpart")]
    Unsupported(Rule),
    #[error("normal forms disagree at a {rule} step: {sequent}")]
    Mismatch { rule: Rule, sequent: String },
    #[error("translation is propositional only")]
    Quantifier,
    #[error("no G4ip derivation of {0}")]
    Unprovable(String),
}

/// The normal form of `Γ ⊢ G`, that is of `∧Γ → G`.
pub fn sequent_nf(s: &Sequent) -> Conj {
    explog(&enfpos(s.goal()), &context_nf(s.context()))
}

fn context_nf(ctx: &[Formula]) -> Nf {
    enf(&Formula::conj(ctx.iter().cloned()))
}

fn without(ctx: &[Formula], drop: &[usize]) -> Vec<Formula> {
    ctx.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, f)| f.clone()).collect()
}

/// Maps a G4ip derivation to an HS proof of the normal form of its root.
pub fn g4ip_to_hs(d: &Derivation) -> Result<HsProof, TranslateError> {
    check(d, Logic::ExFalso)?;
    if d.nodes().iter().any(|n| !n.sequent.is_propositional()) {
        return Err(TranslateError::Quantifier);
    }
    let roots = nodes_of(d)?;
    let proof = HsProof { conclusion: sequent_nf(&d.sequent), roots };
    check_hs(&proof).map_err(|e| TranslateError::InvalidHs(e.to_string()))?;
    Ok(proof)
}

fn nodes_of(d: &Derivation) -> Result<Vec<HsNode>, TranslateError> {
    let s = &d.sequent;
    let ctx = s.context();
    let mismatch = || TranslateError::Mismatch { rule: d.rule, sequent: s.to_string() };
    let below = |k: usize| nodes_of(&d.premises[k]);
    let (rule, inst, premises) = match d.rule {
        r if r.is_invertible() => {
            let mut out = Vec::new();
            for p in &d.premises {
                out.extend(nodes_of(p)?);
            }
            let got = super::product(out.iter().map(|n| n.conclusion.clone()));
            if !conj_equal(&got, &sequent_nf(s), true) {
                return Err(mismatch());
            }
            return Ok(out);
        }
        Rule::FalsumL => return Err(TranslateError::Unsupported(Rule::FalsumL)),
        Rule::Axiom => {
            let i = d.principal.expect("checked");
            let Formula::Atom(p) = &ctx[i] else { return Err(mismatch()) };
            let inst = Instantiation::Axiom { p: p.clone(), e: context_nf(&without(ctx, &[i])) };
            (HsRule::Axiom, inst, vec![])
        }
        Rule::OrR1 | Rule::OrR2 => {
            let Formula::Or(a, b) = s.goal() else { return Err(mismatch()) };
            let inst = Instantiation::Or { c1: enfpos(a), c2: enfpos(b), e: context_nf(ctx) };
            let rule = if d.rule == Rule::OrR1 { HsRule::OrR1 } else { HsRule::OrR2 };
            (rule, inst, below(0)?)
        }
        Rule::ImpLAtom => {
            let i = d.principal.expect("checked");
            let Formula::Imp(pa, f) = &ctx[i] else { return Err(mismatch()) };
            let Formula::Atom(p) = &**pa else { return Err(mismatch()) };
            let j = ctx.iter().position(|g| g == &**pa).ok_or_else(mismatch)?;
            let inst =
                Instantiation::Atom { c: enfpos(s.goal()), c0: enfpos(f), p: p.clone(), e: context_nf(&without(ctx, &[i, j])) };
            (HsRule::ImpLAtom, inst, below(0)?)
        }
        Rule::ImpLImp => {
            let i = d.principal.expect("checked");
            let Formula::Imp(fg, h) = &ctx[i] else { return Err(mismatch()) };
            let Formula::Imp(f, g) = &**fg else { return Err(mismatch()) };
            let inst = Instantiation::Imp {
                c: enfpos(s.goal()),
                c1: enfpos(h),
                c2: enfpos(g),
                e1: enf(f),
                e2: context_nf(&without(ctx, &[i])),
            };
            let mut premises = below(0)?;
            premises.extend(below(1)?);
            (HsRule::ImpLImp, inst, premises)
        }
        _ => unreachable!("all rules covered"),
    };
    let node = HsNode::new(rule, inst, premises).ok_or_else(mismatch)?;
    if !conj_equal(&node.conclusion, &sequent_nf(s), true) {
        return Err(mismatch());
    }
    Ok(vec![node])
}

/// A G4ip derivation built from an HS proof. `exact` is false when some
/// HS step could not be replayed as a single G4ip step and part of the
/// derivation was found by the prover instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G4ipTranslation {
    pub derivation: Derivation,
    pub exact: bool,
}

/// The formula an HS proof derives in G4ip: the conjunction of its root
/// instantiations read as implications. Its normal form is the proof's
/// conclusion up to commutativity.
pub fn hs_reading(h: &HsProof) -> Formula {
    let roots = h.roots.iter().map(|n| schema_sequent(n.rule, &n.instantiation).expect("checked").as_formula());
    simplify_top(&Formula::conj(roots))
}

/// Maps an HS proof to a G4ip derivation of `⊢ F`, where `F` is
/// [`hs_reading`]: the same tree of non-invertible rules, joined by
/// invertible adapter steps.
pub fn hs_to_g4ip(h: &HsProof) -> Result<G4ipTranslation, TranslateError> {
    check_hs(h).map_err(|e| TranslateError::InvalidHs(e.to_string()))?;
    let root = Sequent::goal_only(hs_reading(h));
    if !root.is_propositional() {
        return Err(TranslateError::Quantifier);
    }
    let mut b = Builder { exact: true };
    let mut pool = h.roots.clone();
    let derivation = b.build(&root, &mut pool)?;
    let exact = b.exact && pool.is_empty();
    Ok(G4ipTranslation { derivation, exact })
}

const SATURATE_LEFT: [Rule; 6] = [Rule::TopL, Rule::AndL, Rule::OrL, Rule::ImpLTop, Rule::ImpLAnd, Rule::ImpLOr];

fn keys(c: &Conj) -> Vec<Factor> {
    canonicalize_conj(c).factors
}

struct Builder {
    exact: bool,
}

impl Builder {
    fn build(&mut self, s: &Sequent, pool: &mut Vec<HsNode>) -> Result<Derivation, TranslateError> {
        if s.goal().is_top() {
            return Ok(Derivation::leaf(Rule::TopR, s.clone(), None));
        }
        let key = keys(&sequent_nf(s));
        if let Some(k) = pool.iter().position(|n| keys(&n.conclusion) == key && self.fits(s, n)) {
            let n = pool.remove(k);
            return self.guided(s, &n);
        }
        for rule in SATURATE_LEFT {
            for i in 0..s.context().len() {
                if let Some(ps) = apply(rule, s, Some(i), Logic::Minimal) {
                    return self.node(rule, s, Some(i), &ps, pool);
                }
            }
        }
        for rule in [Rule::ImpR, Rule::AndR] {
            if let Some(ps) = apply(rule, s, None, Logic::Minimal) {
                return self.node(rule, s, None, &ps, pool);
            }
        }
        match pool.iter().position(|n| keys(&n.conclusion) == key) {
            Some(k) => {
                let n = pool.remove(k);
                self.guided(s, &n)
            }
            None => self.fallback(s),
        }
    }

    fn node(
        &mut self,
        rule: Rule,
        s: &Sequent,
        principal: Option<usize>,
        premises: &[Sequent],
        pool: &mut Vec<HsNode>,
    ) -> Result<Derivation, TranslateError> {
        let premises = premises.iter().map(|p| self.build(p, pool)).collect::<Result<Vec<_>, _>>()?;
        Ok(Derivation { rule, sequent: s.clone(), principal, premises })
    }

    fn fallback(&mut self, s: &Sequent) -> Result<Derivation, TranslateError> {
        self.exact = false;
        prove(s, ProverConfig::default()).map_err(|_| TranslateError::Unprovable(s.to_string()))
    }

    /// Whether `n` can be replayed on `s` as it stands, before any
    /// invertible step.
    fn fits(&self, s: &Sequent, n: &HsNode) -> bool {
        let ctx = s.context();
        match (&n.rule, &n.instantiation) {
            (HsRule::Axiom, _) => (0..ctx.len()).any(|i| apply(Rule::Axiom, s, Some(i), Logic::Minimal).is_some()),
            (HsRule::OrR1, _) => apply(Rule::OrR1, s, None, Logic::Minimal).is_some(),
            (HsRule::OrR2, _) => apply(Rule::OrR2, s, None, Logic::Minimal).is_some(),
            (HsRule::ImpLAtom, Instantiation::Atom { c0, p, .. }) => {
                let raised = explog(c0, &Nf::Conj(Conj::prime(p.clone())));
                self.atom_step(s, &keys(&raised)).is_some()
            }
            (HsRule::ImpLImp, inst) => self.imp_step(s, n.rule, inst).is_some(),
            _ => false,
        }
    }

    /// A `→l→` step on `s` whose premises have the normal forms required
    /// by `inst`.
    fn imp_step(&self, s: &Sequent, rule: HsRule, inst: &Instantiation) -> Option<(usize, Vec<Sequent>)> {
        let groups = schema_premises(rule, inst)?;
        let want: Vec<Vec<Factor>> = groups.iter().map(keys).collect();
        (0..s.context().len()).find_map(|i| {
            let ps = apply(Rule::ImpLImp, s, Some(i), Logic::Minimal)?;
            let got: Vec<Vec<Factor>> = ps.iter().map(|p| keys(&sequent_nf(p))).collect();
            (got == want).then_some((i, ps))
        })
    }

    /// Replays `n` on `s`.
    fn guided(&mut self, s: &Sequent, n: &HsNode) -> Result<Derivation, TranslateError> {
        let mut children = n.premises.clone();
        let ctx = s.context();
        let d = match (&n.rule, &n.instantiation) {
            (HsRule::Axiom, _) => match (0..ctx.len()).find(|&i| apply(Rule::Axiom, s, Some(i), Logic::Minimal).is_some()) {
                Some(i) => Derivation::leaf(Rule::Axiom, s.clone(), Some(i)),
                None => return self.fallback(s),
            },
            (HsRule::OrR1 | HsRule::OrR2, _) => {
                let rule = if n.rule == HsRule::OrR1 { Rule::OrR1 } else { Rule::OrR2 };
                match apply(rule, s, None, Logic::Minimal) {
                    Some(ps) => self.node(rule, s, None, &ps, &mut children)?,
                    None => return self.fallback(s),
                }
            }
            (HsRule::ImpLAtom, Instantiation::Atom { c0, p, .. }) => {
                let raised = explog(c0, &Nf::Conj(Conj::prime(p.clone())));
                self.atom_steps(s, keys(&raised), &mut children)?
            }
            (HsRule::ImpLImp, inst) => {
                match self.imp_step(s, n.rule, inst) {
                    Some((i, ps)) => self.node(Rule::ImpLImp, s, Some(i), &ps, &mut children)?,
                    None => return self.fallback(s),
                }
            }
            _ => return Err(TranslateError::InvalidHs(format!("instantiation does not fit {}", n.rule))),
        };
        if !children.is_empty() {
            self.exact = false;
        }
        Ok(d)
    }

    /// A context formula `p → F` whose normal form is part of `target`.
    fn atom_step(&self, s: &Sequent, target: &[Factor]) -> Option<(usize, Vec<Factor>)> {
        (0..s.context().len()).find_map(|i| {
            apply(Rule::ImpLAtom, s, Some(i), Logic::Minimal)?;
            let mine = keys(enf(&s.context()[i]).as_conj()?);
            let mut rest = target.to_vec();
            for f in &mine {
                let k = rest.iter().position(|g| g == f)?;
                rest.remove(k);
            }
            Some((i, rest))
        })
    }

    /// `→lP` steps until every factor of `target` has been consumed. More
    /// than one step makes the translation inexact.
    fn atom_steps(
        &mut self,
        s: &Sequent,
        target: Vec<Factor>,
        children: &mut Vec<HsNode>,
    ) -> Result<Derivation, TranslateError> {
        if target.is_empty() {
            return self.build(s, children);
        }
        let Some((i, rest)) = self.atom_step(s, &target) else {
            return self.fallback(s);
        };
        if !rest.is_empty() {
            self.exact = false;
        }
        let premise = apply(Rule::ImpLAtom, s, Some(i), Logic::Minimal).expect("applies").remove(0);
        let sub = self.atom_steps(&premise, rest, children)?;
        Ok(Derivation { rule: Rule::ImpLAtom, sequent: s.clone(), principal: Some(i), premises: vec![sub] })
    }
}
