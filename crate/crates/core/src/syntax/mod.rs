//! Formulas of minimal first-order logic, sequents, and the binder
//! utilities the normalizer relies on.
//!
//! The connectives are exactly atoms, `⊤`, `∧`, `∨`, `→`, `∀` and `∃`.
//! There is no primitive negation or falsity: `bot` is an atom like any
//! other.

mod json;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_formula, parse_sequent, ParseError};
pub use print::{print_logical, print_polynomial};

/// A first-order term: a variable or a function symbol applied to terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename(from, to)).collect()),
        }
    }

    fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(var, by)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A prime formula. Propositional atoms have no arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn prop(name: impl Into<String>) -> Self {
        Atom { name: name.into(), args: Vec::new() }
    }

    pub fn is_propositional(&self) -> bool {
        self.args.is_empty()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Formula tree. Children are reference counted, so cloning is cheap and
/// values can be shared across threads.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Top,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    Forall(String, Arc<Formula>),
    Exists(String, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(Atom::prop(name))
    }

    pub fn pred(name: impl Into<String>, vars: &[&str]) -> Formula {
        Formula::Atom(Atom {
            name: name.into(),
            args: vars.iter().map(|v| Term::Var(v.to_string())).collect(),
        })
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Arc::new(body))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Arc::new(body))
    }

    /// Right-nested conjunction; the empty conjunction is `⊤`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Formula::Top,
            Some(last) => items.into_iter().rev().fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Top)
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(a) => a.is_propositional(),
            Formula::Top => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.has_quantifier() || b.has_quantifier(),
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }

    /// Number of binary connectives and quantifiers.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.connectives() + b.connectives(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.connectives(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.collect_atoms(out),
        }
    }

    /// Free first-order variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                let mut vs = BTreeSet::new();
                a.args.iter().for_each(|t| t.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => a.args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.insert(x.clone());
                b.collect_all_vars(out);
            }
        }
    }

    /// Renames free occurrences of `from` to `to`. The caller guarantees
    /// `to` is not captured.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                name: a.name.clone(),
                args: a.args.iter().map(|t| t.rename(from, to)).collect(),
            }),
            Formula::Top => Formula::Top,
            Formula::And(a, b) => Formula::and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => Formula::or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Imp(a, b) => Formula::imp(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Forall(x, _) | Formula::Exists(x, _) if x == from => self.clone(),
            Formula::Forall(x, b) => Formula::forall(x.clone(), b.rename_free(from, to)),
            Formula::Exists(x, b) => Formula::exists(x.clone(), b.rename_free(from, to)),
        }
    }

    /// Substitutes a closed term for the free occurrences of `var`.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                name: a.name.clone(),
                args: a.args.iter().map(|t| t.substitute(var, by)).collect(),
            }),
            Formula::Top => Formula::Top,
            Formula::And(a, b) => Formula::and(a.substitute(var, by), b.substitute(var, by)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, by), b.substitute(var, by)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(var, by), b.substitute(var, by)),
            Formula::Forall(x, _) | Formula::Exists(x, _) if x == var => self.clone(),
            Formula::Forall(x, b) => Formula::forall(x.clone(), b.substitute(var, by)),
            Formula::Exists(x, b) => Formula::exists(x.clone(), b.substitute(var, by)),
        }
    }

    /// Alpha-equivalence.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        let mut names = BTreeSet::new();
        self.collect_all_vars(&mut names);
        other.collect_all_vars(&mut names);
        let mut supply = FreshNames::new(names);
        alpha_eq_with(self, other, &mut supply)
    }
}

fn alpha_eq_with(a: &Formula, b: &Formula, supply: &mut FreshNames) -> bool {
    match (a, b) {
        (Formula::Atom(x), Formula::Atom(y)) => x == y,
        (Formula::Top, Formula::Top) => true,
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            alpha_eq_with(a1, b1, supply) && alpha_eq_with(a2, b2, supply)
        }
        (Formula::Forall(x, a1), Formula::Forall(y, b1)) | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            let z = supply.fresh(x);
            alpha_eq_with(&a1.rename_free(x, &z), &b1.rename_free(y, &z), supply)
        }
        _ => false,
    }
}

/// Supply of variable names outside a growing set of used names.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    used: BTreeSet<String>,
}

impl FreshNames {
    pub fn new(used: BTreeSet<String>) -> Self {
        FreshNames { used }
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// `base` primed until unused; the result is reserved.
    pub fn fresh(&mut self, base: &str) -> String {
        let mut candidate = format!("{base}'");
        while self.used.contains(&candidate) {
            candidate.push('\'');
        }
        self.used.insert(candidate.clone());
        candidate
    }
}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    f.free_vars()
}

/// Alpha-renames every binder of `f` to a name outside `avoid`.
pub fn rename_fresh(f: &Formula, avoid: &BTreeSet<String>) -> Formula {
    let mut used = avoid.clone();
    used.extend(f.all_vars());
    let mut supply = FreshNames::new(used);
    rename_binders(f, &mut supply, &|_| true)
}

/// Makes binder names pairwise distinct and distinct from the free
/// variables. Binders that already satisfy this keep their names.
pub fn rename_apart(f: &Formula) -> Formula {
    let mut supply = FreshNames::new(f.free_vars());
    let mut seen = BTreeSet::new();
    rename_apart_with(f, &mut supply, &mut seen, &f.all_vars())
}

fn rename_apart_with(
    f: &Formula,
    supply: &mut FreshNames,
    seen: &mut BTreeSet<String>,
    all: &BTreeSet<String>,
) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Top => f.clone(),
        Formula::And(a, b) => {
            let a = rename_apart_with(a, supply, seen, all);
            Formula::and(a, rename_apart_with(b, supply, seen, all))
        }
        Formula::Or(a, b) => {
            let a = rename_apart_with(a, supply, seen, all);
            Formula::or(a, rename_apart_with(b, supply, seen, all))
        }
        Formula::Imp(a, b) => {
            let a = rename_apart_with(a, supply, seen, all);
            Formula::imp(a, rename_apart_with(b, supply, seen, all))
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let (name, body) = if supply.is_used(x) || seen.contains(x) {
                let mut z = supply.fresh(x);
                while all.contains(&z) {
                    z = supply.fresh(&z);
                }
                let renamed = body.rename_free(x, &z);
                (z, renamed)
            } else {
                supply.reserve(x);
                (x.clone(), (**body).clone())
            };
            seen.insert(name.clone());
            let body = rename_apart_with(&body, supply, seen, all);
            match f {
                Formula::Forall(..) => Formula::forall(name, body),
                _ => Formula::exists(name, body),
            }
        }
    }
}

fn rename_binders(f: &Formula, supply: &mut FreshNames, pick: &dyn Fn(&str) -> bool) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Top => f.clone(),
        Formula::And(a, b) => Formula::and(rename_binders(a, supply, pick), rename_binders(b, supply, pick)),
        Formula::Or(a, b) => Formula::or(rename_binders(a, supply, pick), rename_binders(b, supply, pick)),
        Formula::Imp(a, b) => Formula::imp(rename_binders(a, supply, pick), rename_binders(b, supply, pick)),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let (name, body) = if pick(x) {
                let z = supply.fresh(x);
                let renamed = body.rename_free(x, &z);
                (z, renamed)
            } else {
                (x.clone(), (**body).clone())
            };
            let body = rename_binders(&body, supply, pick);
            match f {
                Formula::Forall(..) => Formula::forall(name, body),
                _ => Formula::exists(name, body),
            }
        }
    }
}

/// Rewrites with `⊤∧F⇝F`, `F∧⊤⇝F`, `⊤→F⇝F`, `F→⊤⇝⊤` and `∀x⊤⇝⊤`,
/// innermost first. `⊤` under a disjunction or an existential stays.
pub fn simplify_top(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Top => f.clone(),
        Formula::And(a, b) => match (simplify_top(a), simplify_top(b)) {
            (Formula::Top, g) | (g, Formula::Top) => g,
            (a, b) => Formula::and(a, b),
        },
        Formula::Or(a, b) => Formula::or(simplify_top(a), simplify_top(b)),
        Formula::Imp(a, b) => match (simplify_top(a), simplify_top(b)) {
            (_, Formula::Top) => Formula::Top,
            (Formula::Top, g) => g,
            (a, b) => Formula::imp(a, b),
        },
        Formula::Forall(x, b) => match simplify_top(b) {
            Formula::Top => Formula::Top,
            b => Formula::forall(x.clone(), b),
        },
        Formula::Exists(x, b) => Formula::exists(x.clone(), simplify_top(b)),
    }
}

/// Replaces `∀x` by a conjunction and `∃x` by a disjunction over the
/// given closed terms.
pub fn ground_over(f: &Formula, domain: &[Term]) -> Formula {
    match f {
        Formula::Atom(_) | Formula::Top => f.clone(),
        Formula::And(a, b) => Formula::and(ground_over(a, domain), ground_over(b, domain)),
        Formula::Or(a, b) => Formula::or(ground_over(a, domain), ground_over(b, domain)),
        Formula::Imp(a, b) => Formula::imp(ground_over(a, domain), ground_over(b, domain)),
        Formula::Forall(x, b) => {
            Formula::conj(domain.iter().map(|t| ground_over(&b.substitute(x, t), domain)))
        }
        Formula::Exists(x, b) => {
            let mut parts: Vec<Formula> = domain.iter().map(|t| ground_over(&b.substitute(x, t), domain)).collect();
            let last = parts.pop().expect("nonempty domain");
            parts.into_iter().rev().fold(last, |acc, g| Formula::or(g, acc))
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_logical(self))
    }
}

/// `Γ ⊢ G`. The context is kept sorted, so equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    context: Vec<Formula>,
    goal: Formula,
}

impl Sequent {
    pub fn new(context: impl IntoIterator<Item = Formula>, goal: Formula) -> Self {
        let mut context: Vec<Formula> = context.into_iter().collect();
        context.sort();
        Sequent { context, goal }
    }

    pub fn goal_only(goal: Formula) -> Self {
        Sequent { context: Vec::new(), goal }
    }

    pub fn context(&self) -> &[Formula] {
        &self.context
    }

    pub fn goal(&self) -> &Formula {
        &self.goal
    }

    pub fn is_propositional(&self) -> bool {
        self.goal.is_propositional() && self.context.iter().all(Formula::is_propositional)
    }

    /// Removes the context formula at `index` and adds `extra`.
    pub fn replace(&self, index: usize, extra: impl IntoIterator<Item = Formula>, goal: Formula) -> Sequent {
        let mut ctx = self.context.clone();
        ctx.remove(index);
        ctx.extend(extra);
        Sequent::new(ctx, goal)
    }

    pub fn with_goal(&self, goal: Formula) -> Sequent {
        Sequent { context: self.context.clone(), goal }
    }

    pub fn with_extra(&self, extra: impl IntoIterator<Item = Formula>, goal: Formula) -> Sequent {
        let mut ctx = self.context.clone();
        ctx.extend(extra);
        Sequent::new(ctx, goal)
    }

    /// `(∧Γ) → G`, with the empty conjunction read as `⊤`.
    pub fn as_formula(&self) -> Formula {
        Formula::imp(Formula::conj(self.context.iter().cloned()), self.goal.clone())
    }

    /// ⊤-simplification of every formula, dropping `⊤` from the context.
    pub fn simplify_top(&self) -> Sequent {
        Sequent::new(
            self.context.iter().map(simplify_top).filter(|f| !f.is_top()),
            simplify_top(&self.goal),
        )
    }

    pub fn is_simplified(&self) -> bool {
        *self == self.simplify_top()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.context.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        if !self.context.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.goal)
    }
}
