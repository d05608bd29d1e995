use super::{rename_base, rename_conj, Base, Conj, Factor, Nf, Sum, Vars};
use crate::syntax::Term;

/// Sorts every product and sum recursively, so two normal forms equal up
/// to commutativity of `×` and `+` become identical.
pub fn canonicalize(e: &Nf) -> Nf {
    match e {
        Nf::Conj(c) => Nf::Conj(canonicalize_conj(c)),
        Nf::Sum(d) => Nf::Sum(canonicalize_sum(d)),
    }
}

pub fn canonicalize_conj(c: &Conj) -> Conj {
    let mut factors: Vec<Factor> = c
        .factors
        .iter()
        .map(|f| Factor { vars: f.vars.clone(), base: canonicalize_base(&f.base), exp: canonicalize_conj(&f.exp) })
        .collect();
    factors.sort();
    Conj::of(factors)
}

fn canonicalize_sum(d: &Sum) -> Sum {
    let mut summands: Vec<Conj> = d.summands().iter().map(canonicalize_conj).collect();
    summands.sort();
    Sum::new(summands).expect("sum")
}

fn canonicalize_base(b: &Base) -> Base {
    match b {
        Base::Prime(_) => b.clone(),
        Base::Sum(d) => Base::Sum(canonicalize_sum(d)),
        Base::Ex { vars, body } => Base::Ex { vars: vars.clone(), body: canonicalize_conj(body) },
    }
}

/// Structural equality, optionally modulo commutativity.
pub fn nf_equal(e1: &Nf, e2: &Nf, mod_comm: bool) -> bool {
    if mod_comm {
        canonicalize(e1) == canonicalize(e2)
    } else {
        e1 == e2
    }
}

pub fn conj_equal(c1: &Conj, c2: &Conj, mod_comm: bool) -> bool {
    if mod_comm {
        canonicalize_conj(c1) == canonicalize_conj(c2)
    } else {
        c1 == c2
    }
}

/// Renames every bound variable after its binding depth (`%0`, `%1`, …),
/// so alpha-equivalent normal forms become identical.
pub fn alpha_normalize(e: &Nf) -> Nf {
    match e {
        Nf::Conj(c) => Nf::Conj(alpha_conj(c, 0)),
        Nf::Sum(d) => Nf::Sum(Sum::new(d.summands().iter().map(|c| alpha_conj(c, 0)).collect()).expect("sum")),
    }
}

fn level_names(vars: &Vars, depth: usize) -> (Vars, Vec<(String, String)>) {
    let names: Vec<String> = (0..vars.0.len()).map(|i| format!("%{}", depth + i)).collect();
    let map = vars.0.iter().cloned().zip(names.iter().cloned()).collect();
    (Vars(names), map)
}

fn alpha_conj(c: &Conj, depth: usize) -> Conj {
    Conj::of(
        c.factors
            .iter()
            .map(|f| {
                let (vars, map) = level_names(&f.vars, depth);
                let inner = depth + vars.0.len();
                let base = alpha_base(&rename_base(&f.base, &map), inner);
                let exp = alpha_conj(&rename_conj(&f.exp, &map), inner);
                Factor { vars, base, exp }
            })
            .collect(),
    )
}

fn alpha_base(b: &Base, depth: usize) -> Base {
    match b {
        Base::Prime(_) => b.clone(),
        Base::Sum(d) => Base::Sum(Sum::new(d.summands().iter().map(|c| alpha_conj(c, depth)).collect()).expect("sum")),
        Base::Ex { vars, body } => {
            let (names, map) = level_names(vars, depth);
            let inner = depth + names.0.len();
            Base::Ex { vars: names, body: alpha_conj(&rename_conj(body, &map), inner) }
        }
    }
}

/// Like [`alpha_normalize`], but first orders the variables of every
/// quantifier block by their first occurrence in its scope, so forms that
/// differ only in the order of adjacent quantifiers of one kind coincide.
pub fn block_normalize(e: &Nf) -> Nf {
    let sorted = match e {
        Nf::Conj(c) => Nf::Conj(order_conj(c)),
        Nf::Sum(d) => Nf::Sum(Sum::new(d.summands().iter().map(order_conj).collect()).expect("sum")),
    };
    alpha_normalize(&sorted)
}

fn order_conj(c: &Conj) -> Conj {
    Conj::of(
        c.factors
            .iter()
            .map(|f| {
                let (base, exp) = (order_base(&f.base), order_conj(&f.exp));
                let mut seen = Vec::new();
                occurrences_base(&base, &mut Vec::new(), &mut seen);
                occurrences_conj(&exp, &mut Vec::new(), &mut seen);
                Factor { vars: by_occurrence(&f.vars, &seen), base, exp }
            })
            .collect(),
    )
}

fn order_base(b: &Base) -> Base {
    match b {
        Base::Prime(_) => b.clone(),
        Base::Sum(d) => Base::Sum(Sum::new(d.summands().iter().map(order_conj).collect()).expect("sum")),
        Base::Ex { vars, body } => {
            let body = order_conj(body);
            let mut seen = Vec::new();
            occurrences_conj(&body, &mut Vec::new(), &mut seen);
            Base::Ex { vars: by_occurrence(vars, &seen), body }
        }
    }
}

/// `vars` reordered as they appear in `seen`, unused ones last.
fn by_occurrence(vars: &Vars, seen: &[String]) -> Vars {
    let mut out: Vec<String> = seen.iter().filter(|v| vars.0.contains(v)).cloned().collect();
    out.extend(vars.0.iter().filter(|v| !seen.contains(v)).cloned());
    Vars(out)
}

fn occurrences_conj(c: &Conj, bound: &mut Vec<String>, seen: &mut Vec<String>) {
    for f in &c.factors {
        let depth = bound.len();
        bound.extend(f.vars.0.iter().cloned());
        occurrences_base(&f.base, bound, seen);
        occurrences_conj(&f.exp, bound, seen);
        bound.truncate(depth);
    }
}

fn occurrences_base(b: &Base, bound: &mut Vec<String>, seen: &mut Vec<String>) {
    match b {
        Base::Prime(a) => a.args.iter().for_each(|t| occurrences_term(t, bound, seen)),
        Base::Sum(d) => d.summands().iter().for_each(|c| occurrences_conj(c, bound, seen)),
        Base::Ex { vars, body } => {
            let depth = bound.len();
            bound.extend(vars.0.iter().cloned());
            occurrences_conj(body, bound, seen);
            bound.truncate(depth);
        }
    }
}

fn occurrences_term(t: &Term, bound: &[String], seen: &mut Vec<String>) {
    match t {
        Term::Var(v) if !bound.contains(v) && !seen.contains(v) => seen.push(v.clone()),
        Term::Var(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| occurrences_term(a, bound, seen)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::enf;
    use crate::syntax::parse_formula;

    #[test]
    fn commutativity_is_forgotten() {
        let a = enf(&parse_formula("p & q | r").unwrap());
        let b = enf(&parse_formula("r | q & p").unwrap());
        assert!(!nf_equal(&a, &b, false));
        assert!(nf_equal(&a, &b, true));
    }

    #[test]
    fn alpha_equivalent_forms_coincide() {
        let a = enf(&parse_formula("forall x. exists y. R(x, y)").unwrap());
        let b = enf(&parse_formula("forall u. exists v. R(u, v)").unwrap());
        assert_ne!(a, b);
        assert_eq!(alpha_normalize(&a), alpha_normalize(&b));
        let c = enf(&parse_formula("forall u. exists v. R(v, u)").unwrap());
        assert_ne!(alpha_normalize(&a), alpha_normalize(&c));
    }

    #[test]
    fn quantifier_blocks_are_unordered() {
        let a = enf(&parse_formula("(exists y. Q(y)) -> forall x. P(x)").unwrap());
        let b = enf(&parse_formula("forall x. (exists y. Q(y)) -> P(x)").unwrap());
        assert_ne!(alpha_normalize(&a), alpha_normalize(&b));
        assert_eq!(block_normalize(&a), block_normalize(&b));
        let c = enf(&parse_formula("forall x. (exists y. Q(x)) -> P(y)").unwrap());
        assert_ne!(block_normalize(&a), block_normalize(&c));
    }
}
