//! The arithmetic of normal forms: `⊕ × ⋊ ⋉ ↑ ⇑` and the quantifier
//! operations. Each function follows its defining clauses; flat vectors
//! stand in for right-nested sums and products.

use std::collections::BTreeSet;

use super::{base_free_vars, conj_free_vars, rename_conj, Base, Conj, Factor, Nf, Sum, Vars};
use crate::syntax::FreshNames;

/// `e1 ⊕ e2`: concatenation of summands.
pub fn nplus(e1: &Nf, e2: &Nf) -> Sum {
    match e1 {
        Nf::Conj(c1) => {
            let mut summands = vec![c1.clone()];
            summands.extend(e2.summands().iter().cloned());
            Sum::new(summands).expect("two or more summands")
        }
        Nf::Sum(d) => nplus_sum(d, e2),
    }
}

/// `⊕` on a sum left argument.
pub fn nplus_sum(d: &Sum, e: &Nf) -> Sum {
    let (c11, rest) = d.summands().split_first().expect("sum");
    let tail = Nf::from_summands(rest.to_vec());
    nplus(&Nf::Conj(c11.clone()), &Nf::Sum(nplus(&tail, e)))
}

/// `c1 × c2`.
pub fn ntimes(c1: &Conj, c2: &Conj) -> Conj {
    let mut factors = c1.factors.clone();
    factors.extend(c2.factors.iter().cloned());
    Conj::of(factors)
}

/// `c ⋊ e`: multiplies `c` into every summand of `e`.
pub fn distrib1(c: &Conj, e: &Nf) -> Nf {
    match e {
        Nf::Conj(c2) => Nf::Conj(ntimes(c, c2)),
        Nf::Sum(d) => Nf::Sum(distrib1_sum(c, d)),
    }
}

/// `⋊` on a sum right argument.
pub fn distrib1_sum(c: &Conj, d: &Sum) -> Sum {
    let (c21, rest) = d.summands().split_first().expect("sum");
    let tail = Nf::from_summands(rest.to_vec());
    nplus(&Nf::Conj(ntimes(c, c21)), &distrib1(c, &tail))
}

/// `e1 ⋉ e2`: full distribution, summands in lexicographic order.
pub fn distrib(e1: &Nf, e2: &Nf) -> Nf {
    match e1 {
        Nf::Conj(c1) => distrib1(c1, e2),
        Nf::Sum(d) => Nf::Sum(distrib_sum(d, e2)),
    }
}

/// `⋉` on a sum left argument.
pub fn distrib_sum(d: &Sum, e: &Nf) -> Sum {
    let (c11, rest) = d.summands().split_first().expect("sum");
    let tail = Nf::from_summands(rest.to_vec());
    nplus(&distrib1(c11, e), &distrib(&tail, e))
}

/// `b ↑ e`: one exponential per summand of `e`.
pub fn explog1(b: &Base, e: &Nf) -> Conj {
    match e {
        Nf::Conj(c) => Conj::single(Factor::new(b.clone(), c.clone())),
        Nf::Sum(d) => explog1_sum(b, d),
    }
}

/// `↑` on a sum exponent.
pub fn explog1_sum(b: &Base, d: &Sum) -> Conj {
    let (c1, rest) = d.summands().split_first().expect("sum");
    let tail = Nf::from_summands(rest.to_vec());
    ntimes(&Conj::single(Factor::new(b.clone(), c1.clone())), &explog1(b, &tail))
}

/// `b ↑ₓ e`: like `↑` under the quantifier list `x`; existential factors
/// `(y c)^1` of each summand are absorbed into the quantifier list.
pub fn qexplog1(b: &Base, e: &Nf, x: &Vars) -> Conj {
    Conj::of(e.summands().iter().map(|c| absorb(b, c, x)).collect())
}

/// `(b^c)^x` with the unit-exponent existential factors of `c`, nested
/// ones included, spliced into the exponent and their variables appended
/// to `x`.
fn absorb(b: &Base, c: &Conj, x: &Vars) -> Factor {
    let mut vars = x.clone();
    let mut exp = Vec::new();
    let mut todo: Vec<Factor> = c.factors.iter().rev().cloned().collect();
    while let Some(f) = todo.pop() {
        match f {
            Factor { vars: v, base: Base::Ex { vars: y, body }, exp: e } if v.is_empty() && e.is_one() => {
                let (y, body) = avoid_capture(b, c, &vars, &y, &body);
                vars = vars.concat(&y);
                todo.extend(body.factors.into_iter().rev());
            }
            f => exp.push(f),
        }
    }
    Factor::quantified(vars, b.clone(), Conj::of(exp))
}

/// Renames the existential variables `y` that clash with `x` or occur free
/// in `b` or in `around`. A no-op on renamed-apart input.
fn avoid_capture(b: &Base, around: &Conj, x: &Vars, y: &Vars, body: &Conj) -> (Vars, Conj) {
    let mut taken = BTreeSet::new();
    base_free_vars(b, &mut Vec::new(), &mut taken);
    conj_free_vars(around, &mut Vec::new(), &mut taken);
    taken.extend(x.0.iter().cloned());
    if y.0.iter().all(|v| !taken.contains(v)) {
        return (y.clone(), body.clone());
    }
    let mut used = taken.clone();
    conj_free_vars(body, &mut Vec::new(), &mut used);
    used.extend(y.0.iter().cloned());
    let mut supply = FreshNames::new(used);
    let mut map = Vec::new();
    let names = y
        .0
        .iter()
        .map(|v| {
            if taken.contains(v) {
                let w = supply.fresh(v);
                map.push((v.clone(), w.clone()));
                w
            } else {
                v.clone()
            }
        })
        .collect();
    (Vars(names), rename_conj(body, &map))
}

/// `c ⇑ e`: raises every factor of `c` to `e`.
pub fn explog(c: &Conj, e: &Nf) -> Conj {
    match c.factors.split_first() {
        None => Conj::one(),
        Some((f, rest)) => {
            let exp = distrib1(&f.exp, e);
            ntimes(&qexplog1(&f.base, &exp, &f.vars), &explog(&Conj::of(rest.to_vec()), e))
        }
    }
}

/// `c ⇑∀ x`: appends `x` to every factor's quantifier list.
pub fn explog_all(c: &Conj, x: &Vars) -> Conj {
    Conj::of(
        c.factors
            .iter()
            .map(|f| {
                let vars = f.vars.concat(x);
                debug_assert!(!vars.has_duplicates(), "quantifier list {vars:?} repeats a variable");
                Factor::quantified(vars, f.base.clone(), f.exp.clone())
            })
            .collect(),
    )
}

/// `x ∃⋉ e`: one existential block per summand, each injected as
/// `((x c)^1)^ε 1`.
pub fn distrib_ex(x: &Vars, e: &Nf) -> Nf {
    let inject = |c: &Conj| Conj::single(Factor::new(Base::Ex { vars: x.clone(), body: c.clone() }, Conj::one()));
    Nf::from_summands(e.summands().iter().map(inject).collect())
}
