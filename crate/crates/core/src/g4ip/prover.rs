use std::collections::HashSet;

use thiserror::Error;

use super::{apply, Derivation, Logic, Rule};
use crate::syntax::{Formula, Sequent};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProverConfig {
    pub logic: Logic,
    /// Maximal number of sequents visited; unlimited when `None`.
    pub node_budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("not provable")]
    NotProvable,
    #[error("search budget of {0} sequents exhausted")]
    Budget(usize),
    #[error("proof search is propositional only")]
    Quantifier,
}

struct Search {
    config: ProverConfig,
    failed: HashSet<Sequent>,
    visited: usize,
}

const INVERTIBLE_LEFT: [Rule; 6] = [Rule::TopL, Rule::AndL, Rule::OrL, Rule::ImpLTop, Rule::ImpLAnd, Rule::ImpLOr];

/// Decides `s` after ⊤-simplification; the derivation's root is the
/// simplified sequent.
pub fn prove(s: &Sequent, config: ProverConfig) -> Result<Derivation, ProveError> {
    if !s.is_propositional() {
        return Err(ProveError::Quantifier);
    }
    let mut search = Search { config, failed: HashSet::new(), visited: 0 };
    search.run(&s.simplify_top())?.ok_or(ProveError::NotProvable)
}

impl Search {
    fn run(&mut self, s: &Sequent) -> Result<Option<Derivation>, ProveError> {
        if self.failed.contains(s) {
            return Ok(None);
        }
        self.visited += 1;
        if let Some(limit) = self.config.node_budget {
            if self.visited > limit {
                return Err(ProveError::Budget(limit));
            }
        }
        let found = self.step(s)?;
        if found.is_none() {
            self.failed.insert(s.clone());
        }
        Ok(found)
    }

    fn step(&mut self, s: &Sequent) -> Result<Option<Derivation>, ProveError> {
        let logic = self.config.logic;
        let ctx = s.context();
        for rule in [Rule::Axiom, Rule::FalsumL] {
            if let Some(i) = (0..ctx.len()).find(|&i| apply(rule, s, Some(i), logic).is_some()) {
                return Ok(Some(Derivation::leaf(rule, s.clone(), Some(i))));
            }
        }
        if s.goal().is_top() {
            return Ok(Some(Derivation::leaf(Rule::TopR, s.clone(), None)));
        }
        for rule in INVERTIBLE_LEFT {
            if let Some((i, premises)) = (0..ctx.len()).find_map(|i| apply(rule, s, Some(i), logic).map(|p| (i, p))) {
                return self.all(rule, s, Some(i), premises);
            }
        }
        for rule in [Rule::ImpR, Rule::AndR] {
            if let Some(premises) = apply(rule, s, None, logic) {
                return self.all(rule, s, None, premises);
            }
        }
        // →lP preserves provability, so the first match is committed
        if let Some((i, premises)) =
            (0..ctx.len()).find_map(|i| apply(Rule::ImpLAtom, s, Some(i), logic).map(|p| (i, p)))
        {
            return self.all(Rule::ImpLAtom, s, Some(i), premises);
        }
        if let Formula::Or(..) = s.goal() {
            for rule in [Rule::OrR1, Rule::OrR2] {
                let premises = apply(rule, s, None, logic).expect("disjunctive goal");
                if let Some(d) = self.all(rule, s, None, premises)? {
                    return Ok(Some(d));
                }
            }
        }
        for i in 0..ctx.len() {
            if let Some(premises) = apply(Rule::ImpLImp, s, Some(i), logic) {
                if let Some(d) = self.all(Rule::ImpLImp, s, Some(i), premises)? {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }

    fn all(
        &mut self,
        rule: Rule,
        s: &Sequent,
        principal: Option<usize>,
        premises: Vec<Sequent>,
    ) -> Result<Option<Derivation>, ProveError> {
        let mut subs = Vec::with_capacity(premises.len());
        for p in &premises {
            match self.run(p)? {
                Some(d) => subs.push(d),
                None => return Ok(None),
            }
        }
        Ok(Some(Derivation { rule, sequent: s.clone(), principal, premises: subs }))
    }
}
