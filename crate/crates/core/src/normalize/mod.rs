//! Exp-log normal forms.
//!
//! Reading `∧` as product, `∨` as sum and `F→G` as `G^F`, every formula
//! is isomorphic to a normal form in one of these mutually defined classes:
//!
//! ```text
//! B ∋ b ::= p | d | x c                    prime, sum, existential block
//! C ∋ c ::= 1 | (b^c₁)^x c₂                product of exponentials
//! D ∋ d ::= c₁ + c₂ | c + d                sum of at least two products
//! E ∋ e ::= c | d
//! ```
//!
//! Sums and products are always right-associated, so they are stored as
//! flat vectors. A factor `(b^c)^x` carries the (possibly empty) list of
//! universally bound variables `x`.

mod canon;
mod classify;
mod enf;
mod ops;
mod print;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::syntax::{Atom, Term};

pub use canon::{alpha_normalize, block_normalize, canonicalize, canonicalize_conj, conj_equal, nf_equal};
pub use classify::{classify, BaseClass, ClassReport, ClassTree, Depth, FactorClass, TopClass};
pub use enf::{embed, embed_conj, enf, enfpos, expand_partial};
pub use ops::{
    distrib, distrib1, distrib1_sum, distrib_ex, distrib_sum, explog, explog1, explog1_sum, explog_all, nplus,
    nplus_sum, ntimes, qexplog1,
};
pub use print::{latex_conj, latex_nf, print_conj, print_nf};

/// Ordered list of bound variables, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vars(pub Vec<String>);

impl Vars {
    pub fn empty() -> Self {
        Vars(Vec::new())
    }

    pub fn one(x: impl Into<String>) -> Self {
        Vars(vec![x.into()])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Vars) -> Vars {
        Vars(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn has_duplicates(&self) -> bool {
        let set: BTreeSet<&String> = self.0.iter().collect();
        set.len() != self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Base {
    Prime(Atom),
    Sum(Sum),
    Ex { vars: Vars, body: Conj },
}

/// `(base^exp)^vars`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub vars: Vars,
    pub base: Base,
    pub exp: Conj,
}

impl Factor {
    pub fn new(base: Base, exp: Conj) -> Self {
        Factor { vars: Vars::empty(), base, exp }
    }

    pub fn quantified(vars: Vars, base: Base, exp: Conj) -> Self {
        Factor { vars, base, exp }
    }

    /// `p^1`.
    pub fn prime(atom: Atom) -> Self {
        Factor::new(Base::Prime(atom), Conj::one())
    }

    /// A factor `b^1` with no quantifiers.
    pub fn is_unit_exponent(&self) -> bool {
        self.vars.is_empty() && self.exp.is_one()
    }

    pub fn as_prime(&self) -> Option<&Atom> {
        match &self.base {
            Base::Prime(a) if self.is_unit_exponent() => Some(a),
            _ => None,
        }
    }
}

/// A product of factors; the empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Conj {
    pub factors: Vec<Factor>,
}

impl Conj {
    pub fn one() -> Self {
        Conj { factors: Vec::new() }
    }

    pub fn of(factors: Vec<Factor>) -> Self {
        Conj { factors }
    }

    pub fn single(f: Factor) -> Self {
        Conj { factors: vec![f] }
    }

    /// `p^1 1`.
    pub fn prime(atom: Atom) -> Self {
        Conj::single(Factor::prime(atom))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// A sum of at least two products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SumRepr")]
pub struct Sum {
    summands: Vec<Conj>,
}

#[derive(Deserialize)]
struct SumRepr {
    summands: Vec<Conj>,
}

impl TryFrom<SumRepr> for Sum {
    type Error = String;

    fn try_from(r: SumRepr) -> Result<Self, String> {
        Sum::new(r.summands).ok_or_else(|| "a sum needs at least two summands".to_string())
    }
}

impl Sum {
    pub fn new(summands: Vec<Conj>) -> Option<Sum> {
        (summands.len() >= 2).then_some(Sum { summands })
    }

    pub fn pair(a: Conj, b: Conj) -> Sum {
        Sum { summands: vec![a, b] }
    }

    pub fn summands(&self) -> &[Conj] {
        &self.summands
    }

    pub fn into_summands(self) -> Vec<Conj> {
        self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A normal form: a product or a sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum Nf {
    #[serde(rename = "C")]
    Conj(Conj),
    #[serde(rename = "D")]
    Sum(Sum),
}

impl Nf {
    pub fn one() -> Nf {
        Nf::Conj(Conj::one())
    }

    /// One summand gives a product, more give a sum.
    pub fn from_summands(mut summands: Vec<Conj>) -> Nf {
        assert!(!summands.is_empty(), "empty sum has no normal form");
        if summands.len() == 1 {
            Nf::Conj(summands.pop().unwrap())
        } else {
            Nf::Sum(Sum { summands })
        }
    }

    pub fn summands(&self) -> &[Conj] {
        match self {
            Nf::Conj(c) => std::slice::from_ref(c),
            Nf::Sum(d) => d.summands(),
        }
    }

    pub fn into_summands(self) -> Vec<Conj> {
        match self {
            Nf::Conj(c) => vec![c],
            Nf::Sum(d) => d.into_summands(),
        }
    }

    pub fn as_conj(&self) -> Option<&Conj> {
        match self {
            Nf::Conj(c) => Some(c),
            Nf::Sum(_) => None,
        }
    }

    pub fn is_propositional(&self) -> bool {
        self.summands().iter().all(conj_is_propositional)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.summands().iter().for_each(|c| conj_free_vars(c, &mut Vec::new(), &mut out));
        out
    }
}

impl From<Conj> for Nf {
    fn from(c: Conj) -> Nf {
        Nf::Conj(c)
    }
}

impl From<Sum> for Nf {
    fn from(d: Sum) -> Nf {
        Nf::Sum(d)
    }
}

fn conj_is_propositional(c: &Conj) -> bool {
    c.factors.iter().all(|f| {
        f.vars.is_empty()
            && conj_is_propositional(&f.exp)
            && match &f.base {
                Base::Prime(a) => a.is_propositional(),
                Base::Sum(d) => d.summands().iter().all(conj_is_propositional),
                Base::Ex { .. } => false,
            }
    })
}

pub(crate) fn conj_free_vars(c: &Conj, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    for f in &c.factors {
        let depth = bound.len();
        bound.extend(f.vars.0.iter().cloned());
        base_free_vars(&f.base, bound, out);
        conj_free_vars(&f.exp, bound, out);
        bound.truncate(depth);
    }
}

pub(crate) fn base_free_vars(b: &Base, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match b {
        Base::Prime(a) => {
            for t in &a.args {
                term_vars(t, bound, out);
            }
        }
        Base::Sum(d) => d.summands().iter().for_each(|c| conj_free_vars(c, bound, out)),
        Base::Ex { vars, body } => {
            let depth = bound.len();
            bound.extend(vars.0.iter().cloned());
            conj_free_vars(body, bound, out);
            bound.truncate(depth);
        }
    }
}

fn term_vars(t: &Term, bound: &[String], out: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) if !bound.contains(v) => {
            out.insert(v.clone());
        }
        Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
    }
}

/// Renames free occurrences of variables according to `map`.
pub(crate) fn rename_conj(c: &Conj, map: &[(String, String)]) -> Conj {
    Conj::of(
        c.factors
            .iter()
            .map(|f| {
                let inner: Vec<(String, String)> =
                    map.iter().filter(|(from, _)| !f.vars.0.contains(from)).cloned().collect();
                Factor { vars: f.vars.clone(), base: rename_base(&f.base, &inner), exp: rename_conj(&f.exp, &inner) }
            })
            .collect(),
    )
}

pub(crate) fn rename_base(b: &Base, map: &[(String, String)]) -> Base {
    match b {
        Base::Prime(a) => Base::Prime(Atom { name: a.name.clone(), args: a.args.iter().map(|t| rename_term(t, map)).collect() }),
        Base::Sum(d) => Base::Sum(Sum { summands: d.summands().iter().map(|c| rename_conj(c, map)).collect() }),
        Base::Ex { vars, body } => {
            let inner: Vec<(String, String)> = map.iter().filter(|(from, _)| !vars.0.contains(from)).cloned().collect();
            Base::Ex { vars: vars.clone(), body: rename_conj(body, &inner) }
        }
    }
}

fn rename_term(t: &Term, map: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => match map.iter().find(|(from, _)| from == v) {
            Some((_, to)) => Term::Var(to.clone()),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_term(a, map)).collect()),
    }
}
