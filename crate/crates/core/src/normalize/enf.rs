use super::{distrib, distrib_ex, explog, explog_all, nplus, ntimes, Base, Conj, Factor, Nf, Sum, Vars};
use crate::syntax::{rename_apart, Formula};

/// The normal form of `f`, isomorphic to it.
pub fn enf(f: &Formula) -> Nf {
    enf_raw(&rename_apart(f))
}

/// The positive normal form: sums are kept suspended under a trivial
/// exponent, so the result is always a product.
pub fn enfpos(f: &Formula) -> Conj {
    enfpos_raw(&rename_apart(f))
}

fn decreasing(parent: &Formula, child: &Formula) -> bool {
    child.size() < parent.size()
}

fn enf_raw(f: &Formula) -> Nf {
    debug_assert!(children(f).iter().all(|g| decreasing(f, g)));
    match f {
        Formula::Atom(a) => Nf::Conj(Conj::prime(a.clone())),
        Formula::Top => Nf::one(),
        Formula::Or(a, b) => Nf::Sum(nplus(&enf_raw(a), &enf_raw(b))),
        Formula::And(a, b) => distrib(&enf_raw(a), &enf_raw(b)),
        Formula::Imp(a, b) => Nf::Conj(explog(&enfpos_raw(b), &enf_raw(a))),
        Formula::Exists(x, b) => distrib_ex(&Vars::one(x.clone()), &enf_raw(b)),
        Formula::Forall(x, b) => Nf::Conj(explog_all(&enfpos_raw(b), &Vars::one(x.clone()))),
    }
}

fn enfpos_raw(f: &Formula) -> Conj {
    debug_assert!(children(f).iter().all(|g| decreasing(f, g)));
    match f {
        Formula::Atom(a) => Conj::prime(a.clone()),
        Formula::Top => Conj::one(),
        Formula::Or(a, b) => {
            let d = nplus(&Nf::Conj(enfpos_raw(a)), &Nf::Conj(enfpos_raw(b)));
            Conj::single(Factor::new(Base::Sum(d), Conj::one()))
        }
        Formula::And(a, b) => ntimes(&enfpos_raw(a), &enfpos_raw(b)),
        Formula::Imp(a, b) => explog(&enfpos_raw(b), &enf_raw(a)),
        Formula::Exists(x, b) => {
            Conj::single(Factor::new(Base::Ex { vars: Vars::one(x.clone()), body: enfpos_raw(b) }, Conj::one()))
        }
        Formula::Forall(x, b) => explog_all(&enfpos_raw(b), &Vars::one(x.clone())),
    }
}

fn children(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Atom(_) | Formula::Top => vec![],
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
        Formula::Forall(_, b) | Formula::Exists(_, b) => vec![b],
    }
}

/// `∂`: distributes the top-level sums and existential blocks that
/// `enfpos` left suspended under a trivial exponent.
pub fn expand_partial(c: &Conj) -> Nf {
    c.factors.iter().rev().fold(Nf::one(), |acc, f| distrib(&expand_factor(f), &acc))
}

fn expand_factor(f: &Factor) -> Nf {
    if !f.is_unit_exponent() {
        return Nf::Conj(Conj::single(f.clone()));
    }
    match &f.base {
        Base::Sum(d) => Nf::from_summands(d.summands().iter().flat_map(|c| expand_partial(c).into_summands()).collect()),
        Base::Ex { vars, body } => distrib_ex(vars, &expand_partial(body)),
        Base::Prime(_) => Nf::Conj(Conj::single(f.clone())),
    }
}

/// Reads a normal form back as a formula: sums and products become
/// right-nested disjunctions and conjunctions, `(b^c)^x` becomes
/// `∀x (c → b)`, `x c` becomes `∃x c`.
pub fn embed(e: &Nf) -> Formula {
    match e {
        Nf::Conj(c) => embed_conj(c),
        Nf::Sum(d) => embed_sum(d),
    }
}

fn embed_sum(d: &Sum) -> Formula {
    let mut parts = d.summands().iter().rev().map(embed_conj);
    let last = parts.next().expect("sum");
    parts.fold(last, |acc, f| Formula::or(f, acc))
}

pub fn embed_conj(c: &Conj) -> Formula {
    let mut parts = c.factors.iter().rev().map(embed_factor);
    match parts.next() {
        None => Formula::Top,
        Some(last) => parts.fold(last, |acc, f| Formula::and(f, acc)),
    }
}

fn embed_factor(f: &Factor) -> Formula {
    let body = Formula::imp(embed_conj(&f.exp), embed_base(&f.base));
    f.vars.0.iter().fold(body, |acc, x| Formula::forall(x.clone(), acc))
}

fn embed_base(b: &Base) -> Formula {
    match b {
        Base::Prime(a) => Formula::Atom(a.clone()),
        Base::Sum(d) => embed_sum(d),
        Base::Ex { vars, body } => vars.0.iter().fold(embed_conj(body), |acc, x| Formula::exists(x.clone(), acc)),
    }
}
