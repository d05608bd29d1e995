//! An independent decision procedure used to cross-check the prover: a
//! G3ip-style calculus that keeps its principal implications, run with a
//! per-branch history to cut loops.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use super::Logic;
use crate::syntax::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sequent of size {size} exceeds the oracle cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("the oracle is propositional only")]
    Quantifier,
}

pub const ORACLE_SIZE_CAP: usize = 64;

type Ctx = BTreeSet<Formula>;

pub fn oracle_decide(s: &Sequent, logic: Logic) -> Result<bool, OracleError> {
    if !s.is_propositional() {
        return Err(OracleError::Quantifier);
    }
    let size: usize = s.goal().size() + s.context().iter().map(Formula::size).sum::<usize>();
    if size > ORACLE_SIZE_CAP {
        return Err(OracleError::TooLarge { size, cap: ORACLE_SIZE_CAP });
    }
    let mut o = Oracle { logic, proved: HashSet::new(), history: Vec::new() };
    Ok(o.decide(s.context().iter().cloned().collect(), s.goal().clone()))
}

struct Oracle {
    logic: Logic,
    proved: HashSet<(Ctx, Formula)>,
    history: Vec<(Ctx, Formula)>,
}

impl Oracle {
    fn decide(&mut self, mut ctx: Ctx, goal: Formula) -> bool {
        // eager decomposition of conjunctions, disjunctions and tops on the left
        while let Some(f) = ctx.iter().find(|f| matches!(f, Formula::And(..) | Formula::Or(..) | Formula::Top)).cloned() {
            ctx.remove(&f);
            match f {
                Formula::And(a, b) => {
                    ctx.insert((*a).clone());
                    ctx.insert((*b).clone());
                }
                Formula::Or(a, b) => {
                    let mut left = ctx.clone();
                    left.insert((*a).clone());
                    let mut right = ctx;
                    right.insert((*b).clone());
                    return self.decide(left, goal.clone()) && self.decide(right, goal);
                }
                _ => {}
            }
        }
        match &goal {
            Formula::Top => return true,
            Formula::And(a, b) => {
                return self.decide(ctx.clone(), (**a).clone()) && self.decide(ctx, (**b).clone());
            }
            Formula::Imp(a, b) => {
                ctx.insert((**a).clone());
                return self.decide(ctx, (**b).clone());
            }
            _ => {}
        }
        if ctx.contains(&goal) {
            return true;
        }
        if self.logic == Logic::ExFalso && ctx.contains(&Formula::atom("bot")) {
            return true;
        }
        let key = (ctx, goal);
        if self.proved.contains(&key) {
            return true;
        }
        if self.history.contains(&key) {
            return false;
        }
        self.history.push(key.clone());
        let result = self.choose(&key.0, &key.1);
        self.history.pop();
        if result {
            self.proved.insert(key);
        }
        result
    }

    fn choose(&mut self, ctx: &Ctx, goal: &Formula) -> bool {
        if let Formula::Or(a, b) = goal {
            if self.decide(ctx.clone(), (**a).clone()) || self.decide(ctx.clone(), (**b).clone()) {
                return true;
            }
        }
        for f in ctx {
            if let Formula::Imp(a, b) = f {
                if self.decide(ctx.clone(), (**a).clone()) {
                    let mut rest = ctx.clone();
                    rest.insert((**b).clone());
                    if self.decide(rest, goal.clone()) {
                        return true;
                    }
                }
            }
        }
        false
    }
}
