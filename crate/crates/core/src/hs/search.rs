//! Recognising rule conclusions in expanded normal forms, and proof search
//! driven by that recognition.

use std::collections::{HashMap, HashSet};

use super::{factor_key, schema_conclusion, schema_premises, HsError, HsNode, HsProof, HsRule, Instantiation};
use crate::normalize::{conj_equal, explog, Base, Conj, Factor, Nf};
use crate::syntax::Atom;

/// `c` without one copy of each factor of `sub`, compared up to
/// commutativity.
fn subtract(c: &Conj, sub: &[Factor]) -> Option<Conj> {
    let mut rest: Vec<Factor> = c.factors.clone();
    for f in sub {
        let key = factor_key(f);
        let i = rest.iter().position(|g| factor_key(g) == key)?;
        rest.remove(i);
    }
    Some(Conj::of(rest))
}

fn dedup_by_key(fs: &[Factor]) -> Vec<&Factor> {
    let mut seen = HashSet::new();
    fs.iter().filter(|f| seen.insert(factor_key(f))).collect()
}

fn unit(b: &Base) -> Conj {
    Conj::single(Factor::new(b.clone(), Conj::one()))
}

fn prime_factor(p: &Atom) -> Factor {
    Factor::prime(p.clone())
}

/// Every exponent minus `k`, as the summands of the context part `e`.
fn context_part(exps: &[Conj], k: &[Factor]) -> Option<Nf> {
    let rest = exps.iter().map(|x| subtract(x, k)).collect::<Option<Vec<_>>>()?;
    Some(Nf::from_summands(rest))
}

/// Rule instances whose conclusion is `e` up to commutativity. All
/// factors must share one base `b`, read as the goal `c = b¹`. For `→lP`
/// the candidate `c₀` are, per prime, all factors raised to it and each
/// of them alone; the maximal choice comes first.
pub fn match_patterns(e: &Conj) -> Vec<(HsRule, Instantiation)> {
    patterns(e, false)
}

/// `→l→` takes as `c₂^e₁` all antecedent factors over one base, which is
/// the G4ip reading of an antecedent `e₁ → c₂` with `e₁` a disjunction,
/// and then each of them alone. With `first_antecedent` only the first
/// such group of each implication is used, as G4ip does with a curried
/// principal formula.
fn patterns(e: &Conj, first_antecedent: bool) -> Vec<(HsRule, Instantiation)> {
    let Some(first) = e.factors.first() else {
        return vec![];
    };
    if e.factors.iter().any(|f| !f.vars.is_empty()) {
        return vec![];
    }
    let base_key = factor_key(&Factor::new(first.base.clone(), Conj::one()));
    if e.factors.iter().any(|f| factor_key(&Factor::new(f.base.clone(), Conj::one())) != base_key) {
        return vec![];
    }
    let b = &first.base;
    let exps: Vec<Conj> = e.factors.iter().map(|f| f.exp.clone()).collect();
    let head = &exps[0];
    let mut out = Vec::new();

    if let Base::Prime(p) = b {
        if let Some(e) = context_part(&exps, &[prime_factor(p)]) {
            out.push((HsRule::Axiom, Instantiation::Axiom { p: p.clone(), e }));
        }
    }

    let primes: Vec<Atom> = dedup_by_key(&head.factors).into_iter().filter_map(|f| f.as_prime().cloned()).collect();
    for q in &primes {
        let qf = prime_factor(q);
        let qkey = factor_key(&qf);
        let raised: Vec<&Factor> = dedup_by_key(&head.factors)
            .into_iter()
            .filter(|f| f.vars.is_empty() && f.exp.factors.iter().any(|g| factor_key(g) == qkey))
            .collect();
        let all: Vec<Factor> = head
            .factors
            .iter()
            .filter(|f| f.vars.is_empty() && f.exp.factors.iter().any(|g| factor_key(g) == qkey))
            .cloned()
            .collect();
        let mut choices: Vec<Vec<Factor>> = vec![all];
        if raised.len() > 1 || choices[0].len() > 1 {
            choices.extend(raised.iter().map(|f| vec![(*f).clone()]));
        }
        for chosen in choices.into_iter().filter(|c| !c.is_empty()) {
            let c0 = Conj::of(
                chosen
                    .iter()
                    .map(|f| Factor::new(f.base.clone(), subtract(&f.exp, std::slice::from_ref(&qf)).expect("raised to q")))
                    .collect(),
            );
            let mut k = explog(&c0, &Nf::Conj(Conj::single(qf.clone()))).factors;
            k.push(qf.clone());
            if let Some(e) = context_part(&exps, &k) {
                out.push((HsRule::ImpLAtom, Instantiation::Atom { c: unit(b), c0, p: q.clone(), e }));
            }
        }
    }

    for f1 in dedup_by_key(&head.factors) {
        if !f1.vars.is_empty() || f1.exp.is_one() || matches!(f1.base, Base::Ex { .. }) {
            continue;
        }
        let Some(e2) = context_part(&exps, std::slice::from_ref(f1)) else {
            continue;
        };
        let eligible = |x: &&Factor| x.vars.is_empty() && !x.exp.is_one() && !matches!(x.base, Base::Ex { .. });
        let mut groups: Vec<(Factor, Vec<Factor>)> = Vec::new();
        for x in f1.exp.factors.iter().filter(eligible) {
            let key = factor_key(&Factor::new(x.base.clone(), Conj::one()));
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(x.clone()),
                None => groups.push((key, vec![x.clone()])),
            }
        }
        for (_, members) in groups {
            let base = &members[0].base;
            let mut choices = vec![members.clone()];
            if !first_antecedent && members.len() > 1 {
                choices.extend(dedup_by_key(&members).into_iter().map(|x| vec![x.clone()]));
            }
            for chosen in choices {
                let rest = subtract(&f1.exp, &chosen).expect("members");
                let e1 = Nf::from_summands(chosen.iter().map(|x| x.exp.clone()).collect());
                out.push((
                    HsRule::ImpLImp,
                    Instantiation::Imp {
                        c: unit(b),
                        c1: Conj::single(Factor::new(f1.base.clone(), rest)),
                        c2: unit(base),
                        e1,
                        e2: e2.clone(),
                    },
                ));
            }
            if first_antecedent {
                break;
            }
        }
    }

    if let Base::Sum(d) = b {
        if let [c1, c2] = d.summands() {
            let e = Nf::from_summands(exps.clone());
            let inst = Instantiation::Or { c1: c1.clone(), c2: c2.clone(), e };
            out.push((HsRule::OrR1, inst.clone()));
            out.push((HsRule::OrR2, inst));
        }
    }

    out.retain(|(rule, inst)| schema_conclusion(*rule, inst).is_some_and(|c| conj_equal(&c, e, true)));
    out
}

/// Searches an HS proof of `e`, one factor at a time, in the order of the
/// G4ip prover: axiom, then `→lP` committed to its maximal instance, then
/// the disjunction rules and `→l→` with backtracking.
pub fn prove_hs(e: &Conj) -> Result<HsProof, HsError> {
    if !Nf::Conj(e.clone()).is_propositional() || has_ex(e) {
        return Err(HsError::Quantifier);
    }
    let mut s = Search::default();
    let roots = s.conj(e).ok_or(HsError::NotProvable)?;
    Ok(HsProof { conclusion: e.clone(), roots })
}

fn has_ex(c: &Conj) -> bool {
    c.factors.iter().any(|f| {
        !f.vars.is_empty()
            || has_ex(&f.exp)
            || match &f.base {
                Base::Prime(_) => false,
                Base::Sum(d) => d.summands().iter().any(has_ex),
                Base::Ex { .. } => true,
            }
    })
}

#[derive(Default)]
struct Search {
    proved: HashMap<Factor, HsNode>,
    failed: HashSet<Factor>,
    active: HashSet<Factor>,
}

impl Search {
    fn conj(&mut self, c: &Conj) -> Option<Vec<HsNode>> {
        c.factors.iter().map(|f| self.factor(f)).collect()
    }

    fn factor(&mut self, f: &Factor) -> Option<HsNode> {
        let key = factor_key(f);
        if let Some(n) = self.proved.get(&key) {
            return Some(n.clone());
        }
        if self.failed.contains(&key) || !self.active.insert(key.clone()) {
            return None;
        }
        let found = self.step(f);
        self.active.remove(&key);
        match &found {
            Some(n) => {
                self.proved.insert(key, n.clone());
            }
            None => {
                self.failed.insert(key);
            }
        }
        found
    }

    fn apply(&mut self, rule: HsRule, inst: Instantiation) -> Option<HsNode> {
        let groups = schema_premises(rule, &inst)?;
        let mut premises = Vec::new();
        for g in &groups {
            premises.extend(self.conj(g)?);
        }
        HsNode::new(rule, inst, premises)
    }

    fn step(&mut self, f: &Factor) -> Option<HsNode> {
        let matches = patterns(&Conj::single(f.clone()), true);
        if let Some((rule, inst)) = matches.iter().find(|(r, _)| *r == HsRule::Axiom) {
            return HsNode::new(*rule, inst.clone(), vec![]);
        }
        if let Some((rule, inst)) = matches.iter().find(|(r, _)| *r == HsRule::ImpLAtom) {
            return self.apply(*rule, inst.clone());
        }
        for rule in [HsRule::OrR1, HsRule::OrR2, HsRule::ImpLImp] {
            for (_, inst) in matches.iter().filter(|(r, _)| *r == rule) {
                if let Some(n) = self.apply(rule, inst.clone()) {
                    return Some(n);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::check_hs;
    use crate::normalize::{enf, print_conj, print_nf};
    use crate::syntax::{parse_formula, simplify_top};

    fn target(s: &str) -> Conj {
        enf(&simplify_top(&parse_formula(s).unwrap())).as_conj().unwrap().clone()
    }

    #[test]
    fn axiom_pattern() {
        let e = target("p & q -> p");
        let m = match_patterns(&e);
        let (_, inst) = m.iter().find(|(r, _)| *r == HsRule::Axiom).unwrap();
        let Instantiation::Axiom { e, .. } = inst else { panic!() };
        assert_eq!(print_nf(e, true), "q^1·1");
    }

    #[test]
    fn disjunction_patterns() {
        let e = target("(r -> p | q) & (s -> p | q)");
        let m = match_patterns(&e);
        let rules: Vec<HsRule> = m.iter().map(|(r, _)| *r).collect();
        assert_eq!(rules, vec![HsRule::OrR1, HsRule::OrR2]);
        let Instantiation::Or { e, .. } = &m[0].1 else { panic!() };
        assert_eq!(print_nf(e, true), "r^1·1 + s^1·1");
    }

    #[test]
    fn empty_product_has_no_pattern() {
        assert!(match_patterns(&Conj::one()).is_empty());
    }

    #[test]
    fn every_match_is_sound() {
        for s in ["p & (p -> q) & (p -> r) -> s", "((p -> q) -> r) & s -> t", "p -> p | q"] {
            let e = target(s);
            for (rule, inst) in match_patterns(&e) {
                assert!(conj_equal(&schema_conclusion(rule, &inst).unwrap(), &e, true), "{rule} on {s}");
            }
        }
    }

    #[test]
    fn worked_example() {
        let e = target("r & (q -> (r | t) -> s) -> q -> s");
        assert_eq!(print_conj(&e, false), "s^(q r s^(r q) s^(t q))");
        let h = prove_hs(&e).unwrap();
        check_hs(&h).unwrap();
        assert_eq!(h.spine(), vec![HsRule::ImpLAtom, HsRule::ImpLAtom, HsRule::Axiom]);
    }

    #[test]
    fn grouped_antecedent_comes_first() {
        let e = target("((p | q -> r) -> s) -> s");
        let m = match_patterns(&e);
        let imps: Vec<&Instantiation> = m.iter().filter(|(r, _)| *r == HsRule::ImpLImp).map(|(_, i)| i).collect();
        let Instantiation::Imp { c2, e1, .. } = imps[0] else { panic!() };
        assert_eq!(print_conj(c2, false), "r");
        assert_eq!(print_nf(e1, false), "p + q");
        assert_eq!(imps.len(), 3);
    }

    #[test]
    fn disjunctive_antecedents_stay_small() {
        let e = target("(((p | (p | r)) & (s | q) | (s | q) -> r | q) -> q) -> r & p | p");
        assert_eq!(prove_hs(&e), Err(HsError::NotProvable));
    }

    #[test]
    fn verdicts() {
        assert!(prove_hs(&target("p -> p")).is_ok());
        assert_eq!(prove_hs(&target("((p -> q) -> p) -> p")), Err(HsError::NotProvable));
        assert!(prove_hs(&target("((p | (p -> q)) -> q) -> q")).is_ok());
        assert!(prove_hs(&target("p -> q -> p & q")).is_ok());
        assert!(prove_hs(&target("(p -> q) -> (q -> r) -> p -> r")).is_ok());
        assert_eq!(prove_hs(&target("p | q -> p")), Err(HsError::NotProvable));
    }
}
