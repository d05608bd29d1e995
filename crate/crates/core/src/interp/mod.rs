//! The arithmetic reading of formulas: `∨` is `+`, `∧` is `·`, `F→G` is
//! `G^F`, atoms are at least 2 and `⊤` is 1. A sequent `Γ ⊢ G` has
//! value `G^Γ`.

mod audit;
mod compare;
mod lemmas;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{simplify_top, Atom, Formula, Sequent};

pub use audit::{audit_powers, audit_rule_instance, sequent_power, AuditReport, Verdict};
pub use compare::{compare_power_products, PowerProduct};
pub use lemmas::{check_g3ip_failure, check_inequality_lemmas, Counterexample, LemmaRanges, LemmaReport, LemmaResult};

pub const DEFAULT_MAX_DIGITS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("value exceeds {0} decimal digits")]
    Overflow(usize),
    #[error("quantified formulas have no arithmetic value")]
    Quantifier,
    #[error("atom values must be at least 2, got {name} = {value}")]
    BadValue { name: String, value: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("the sequent must be top-simplified first")]
    NotSimplified,
    #[error("the goal is top")]
    TopGoal,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Atom values. Atoms not listed get the default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    pub default: u64,
    pub values: BTreeMap<String, u64>,
}

impl Default for Valuation {
    fn default() -> Self {
        Valuation::constant(2)
    }
}

impl Valuation {
    pub fn constant(k: u64) -> Self {
        Valuation { default: k, values: BTreeMap::new() }
    }

    pub fn with(mut self, name: impl Into<String>, value: u64) -> Self {
        self.values.insert(name.into(), value);
        self
    }

    /// Looks up the full atom text first, then the predicate name.
    pub fn get(&self, atom: &Atom) -> u64 {
        self.values
            .get(&atom.to_string())
            .or_else(|| self.values.get(&atom.name))
            .copied()
            .unwrap_or(self.default)
    }

    fn check(&self) -> Result<(), EvalError> {
        if self.default < 2 {
            return Err(EvalError::BadValue { name: "default".into(), value: self.default });
        }
        match self.values.iter().find(|(_, &v)| v < 2) {
            Some((name, &value)) => Err(EvalError::BadValue { name: name.clone(), value }),
            None => Ok(()),
        }
    }
}

/// Exact arithmetic that refuses to build numbers past a digit limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_digits: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { max_digits: DEFAULT_MAX_DIGITS }
    }
}

impl Guard {
    pub fn new(max_digits: usize) -> Self {
        Guard { max_digits }
    }

    fn max_bits(&self) -> u64 {
        (self.max_digits as f64 * std::f64::consts::LOG2_10).ceil() as u64
    }

    fn check(&self, n: BigUint) -> Result<BigUint, EvalError> {
        if n.bits() > self.max_bits() {
            Err(EvalError::Overflow(self.max_digits))
        } else {
            Ok(n)
        }
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> Result<BigUint, EvalError> {
        self.check(a + b)
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> Result<BigUint, EvalError> {
        if a.bits() + b.bits() > self.max_bits() + 1 {
            return Err(EvalError::Overflow(self.max_digits));
        }
        self.check(a * b)
    }

    pub fn pow(&self, base: &BigUint, exp: &BigUint) -> Result<BigUint, EvalError> {
        if exp.is_zero() || base.is_one() {
            return Ok(BigUint::one());
        }
        if base.is_zero() {
            return Ok(BigUint::zero());
        }
        let overflow = EvalError::Overflow(self.max_digits);
        let e = exp.to_u64().ok_or(overflow.clone())?;
        if (base.bits() - 1).saturating_mul(e) > self.max_bits() {
            return Err(overflow);
        }
        // base ≥ 2 here, so e is at most max_bits
        self.check(base.pow(e as u32))
    }

    /// `a - b`, or `None` when negative.
    pub fn sub(&self, a: &BigUint, b: &BigUint) -> Option<BigUint> {
        (a >= b).then(|| a - b)
    }
}

pub fn eval_formula(f: &Formula, v: &Valuation) -> Result<BigUint, EvalError> {
    eval_formula_with(f, v, &Guard::default())
}

pub fn eval_formula_with(f: &Formula, v: &Valuation, g: &Guard) -> Result<BigUint, EvalError> {
    v.check()?;
    eval(f, v, g)
}

fn eval(f: &Formula, v: &Valuation, g: &Guard) -> Result<BigUint, EvalError> {
    match f {
        Formula::Atom(a) => Ok(BigUint::from(v.get(a))),
        Formula::Top => Ok(BigUint::one()),
        Formula::And(a, b) => g.mul(&eval(a, v, g)?, &eval(b, v, g)?),
        Formula::Or(a, b) => g.add(&eval(a, v, g)?, &eval(b, v, g)?),
        Formula::Imp(a, b) => {
            let base = eval(b, v, g)?;
            if base.is_one() {
                return Ok(base);
            }
            g.pow(&base, &eval(a, v, g)?)
        }
        Formula::Forall(..) | Formula::Exists(..) => Err(EvalError::Quantifier),
    }
}

/// `⟦Γ⟧`, the product of the context; 1 for the empty context.
pub fn eval_context(ctx: &[Formula], v: &Valuation, g: &Guard) -> Result<BigUint, EvalError> {
    v.check()?;
    ctx.iter().try_fold(BigUint::one(), |acc, f| g.mul(&acc, &eval(f, v, g)?))
}

pub fn eval_sequent(s: &Sequent, v: &Valuation) -> Result<BigUint, EvalError> {
    eval_sequent_with(s, v, &Guard::default())
}

pub fn eval_sequent_with(s: &Sequent, v: &Valuation, g: &Guard) -> Result<BigUint, EvalError> {
    let goal = eval_formula_with(s.goal(), v, g)?;
    if goal.is_one() {
        return Ok(goal);
    }
    g.pow(&goal, &eval_context(s.context(), v, g)?)
}

/// Whether `f` simplifies to `⊤`, equivalently has value 1.
pub fn is_top_isomorphic(f: &Formula) -> bool {
    simplify_top(f).is_top()
}

/// An upper bound on the number of non-invertible rules in any G4ip
/// derivation of `s`: its value.
pub fn termination_budget(s: &Sequent, v: &Valuation) -> Result<BigUint, BudgetError> {
    if !s.is_simplified() {
        return Err(BudgetError::NotSimplified);
    }
    if s.goal().is_top() {
        return Err(BudgetError::TopGoal);
    }
    Ok(eval_sequent(s, v)?)
}
