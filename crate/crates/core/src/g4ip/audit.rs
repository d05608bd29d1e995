//! The arithmetic measure applied to G4ip: per-node audits of derivations
//! and an exhaustive sweep of rule schemas over a grid of values.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{apply, Derivation, Logic, Rule};
use crate::interp::{audit_rule_instance, AuditReport, EvalError, Guard, Valuation, Verdict};
use crate::syntax::{Formula, Sequent};

/// Audits every node of `d` in pre-order.
pub fn audit_derivation(d: &Derivation, v: &Valuation, g: &Guard) -> Result<Vec<AuditReport>, EvalError> {
    d.nodes()
        .into_iter()
        .map(|n| {
            let premises: Vec<Sequent> = n.premises.iter().map(|p| p.sequent.clone()).collect();
            audit_rule_instance(n.rule.name(), n.rule.is_invertible(), &premises, &n.sequent, v, g)
        })
        .collect()
}

pub fn non_invertible_count(d: &Derivation) -> usize {
    d.nodes().iter().filter(|n| !n.rule.is_invertible()).count()
}

/// The rules of the original calculus, without the `⊤` and `⊥` additions.
pub const CORE_RULES: [Rule; 11] = [
    Rule::Axiom,
    Rule::OrR1,
    Rule::OrR2,
    Rule::ImpLAtom,
    Rule::ImpLImp,
    Rule::ImpR,
    Rule::AndR,
    Rule::OrL,
    Rule::AndL,
    Rule::ImpLAnd,
    Rule::ImpLOr,
];

/// Name of the atom standing for the rest of the context.
pub const GAMMA: &str = "gamma";

pub const DEFAULT_GRID_VALUES: [u64; 3] = [2, 3, 4];
pub const DEFAULT_MAX_GAMMA: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub rule: Rule,
    pub invertible: bool,
    pub instances: usize,
    pub equal: usize,
    pub strictly_less: usize,
    pub undecided: usize,
    pub violations: Vec<AuditReport>,
}

impl GridReport {
    /// Every instance got the verdict its rule demands.
    pub fn is_clean(&self) -> bool {
        let expected = if self.invertible { self.equal } else { self.strictly_less };
        expected == self.instances && self.violations.is_empty()
    }
}

/// Conclusion and principal index of the schematic instance of `rule`,
/// with metavariables as atoms `f g h i p` and an extra context atom
/// `gamma` when `with_gamma` holds.
pub fn rule_schema(rule: Rule, with_gamma: bool) -> Option<(Sequent, Option<usize>)> {
    let a = Formula::atom;
    let (f, g, h, i, p) = (a("f"), a("g"), a("h"), a("i"), a("p"));
    let (side, principal, goal) = match rule {
        Rule::Axiom => (vec![], Some(p.clone()), p),
        Rule::OrR1 | Rule::OrR2 => (vec![], None, Formula::or(f, g)),
        Rule::ImpLAtom => (vec![p.clone()], Some(Formula::imp(p, f)), i),
        Rule::ImpLImp => (vec![], Some(Formula::imp(Formula::imp(f, g), h)), i),
        Rule::ImpR => (vec![], None, Formula::imp(f, g)),
        Rule::AndR => (vec![], None, Formula::and(f, g)),
        Rule::OrL => (vec![], Some(Formula::or(f, g)), h),
        Rule::AndL => (vec![], Some(Formula::and(f, g)), h),
        Rule::ImpLAnd => (vec![], Some(Formula::imp(Formula::and(g, f), h)), i),
        Rule::ImpLOr => (vec![], Some(Formula::imp(Formula::or(f, g), h)), i),
        Rule::TopR | Rule::TopL | Rule::ImpLTop | Rule::FalsumL => return None,
    };
    let mut ctx = side;
    ctx.extend(principal.clone());
    if with_gamma {
        ctx.push(a(GAMMA));
    }
    let s = Sequent::new(ctx, goal);
    let index = principal.map(|pf| s.context().iter().position(|c| *c == pf).expect("principal in context"));
    Some((s, index))
}

/// Sweeps every core rule over all assignments of `values` to its
/// metavariables and every context value in `1..=max_gamma`. Rules run
/// on separate threads; the output is in rule order.
pub fn rule_grid(values: &[u64], max_gamma: u64) -> Vec<GridReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            CORE_RULES.iter().map(|&rule| scope.spawn(move || sweep_rule(rule, values, max_gamma))).collect();
        handles.into_iter().map(|h| h.join().expect("grid worker panicked")).collect()
    })
}

fn sweep_rule(rule: Rule, values: &[u64], max_gamma: u64) -> GridReport {
    let guard = Guard::default();
    let mut report = GridReport {
        rule,
        invertible: rule.is_invertible(),
        instances: 0,
        equal: 0,
        strictly_less: 0,
        undecided: 0,
        violations: Vec::new(),
    };
    for gamma in 1..=max_gamma {
        let (concl, principal) = rule_schema(rule, gamma > 1).expect("core rule");
        let premises = apply(rule, &concl, principal, Logic::Minimal).expect("schema matches its rule");
        let vars: Vec<String> = concl
            .context()
            .iter()
            .chain([concl.goal()])
            .flat_map(Formula::atoms)
            .map(|at| at.name)
            .filter(|n| n != GAMMA)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for point in assignments(vars.len(), values) {
            let mut v = Valuation::constant(2).with(GAMMA, gamma.max(2));
            for (name, &k) in vars.iter().zip(&point) {
                v = v.with(name.clone(), k);
            }
            report.instances += 1;
            let r = audit_rule_instance(rule.name(), rule.is_invertible(), &premises, &concl, &v, &guard)
                .expect("grid values are valid");
            match r.verdict {
                Verdict::Equal => report.equal += 1,
                Verdict::StrictlyLess => report.strictly_less += 1,
                Verdict::Undecided => report.undecided += 1,
                Verdict::Violation => report.violations.push(r),
            }
        }
    }
    report
}

fn assignments(n: usize, values: &[u64]) -> Vec<Vec<u64>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect()
    })
}

/// The `→l→` instance with `F = G = H = P`, empty context and goal `⊤`,
/// where the measure fails to decrease.
pub fn degenerate_top_instance() -> AuditReport {
    let p = Formula::atom("p");
    let pp = Formula::imp(p.clone(), p.clone());
    let concl = Sequent::new([Formula::imp(pp, p)], Formula::Top);
    let premises = apply(Rule::ImpLImp, &concl, Some(0), Logic::Minimal).expect("matches →l→");
    audit_rule_instance(Rule::ImpLImp.name(), false, &premises, &concl, &Valuation::default(), &Guard::default())
        .expect("small values")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g4ip::{prove, ProverConfig};
    use crate::syntax::parse_sequent;

    #[test]
    fn schemas_match_their_rules() {
        for rule in CORE_RULES {
            for gamma in [false, true] {
                let (s, i) = rule_schema(rule, gamma).unwrap();
                assert!(apply(rule, &s, i, Logic::Minimal).is_some(), "{rule}");
            }
        }
        assert!(rule_schema(Rule::TopR, false).is_none());
    }

    #[test]
    fn small_grid_is_clean() {
        for r in rule_grid(&[2, 3], 3) {
            assert!(r.is_clean(), "{r:?}");
        }
    }

    #[test]
    fn grid_counts() {
        let reports = rule_grid(&[2, 3], 2);
        let imp_imp = reports.iter().find(|r| r.rule == Rule::ImpLImp).unwrap();
        // f g h i, two values each, two context values
        assert_eq!(imp_imp.instances, 32);
        let or_r = reports.iter().find(|r| r.rule == Rule::OrR1).unwrap();
        assert_eq!(or_r.instances, 8);
    }

    #[test]
    fn degenerate_display() {
        let r = degenerate_top_instance();
        assert_eq!(r.premises, "256");
        assert_eq!(r.conclusion, "1");
        assert_eq!(r.verdict, Verdict::Violation);
    }

    #[test]
    fn derivation_audit() {
        let s = parse_sequent("|- r & (q -> (r | t) -> s) -> q -> s").unwrap();
        let d = prove(&s, ProverConfig::default()).unwrap();
        let reports = audit_derivation(&d, &Valuation::default(), &Guard::default()).unwrap();
        assert_eq!(reports.len(), d.size());
        for r in &reports {
            let want = if r.invertible { Verdict::Equal } else { Verdict::StrictlyLess };
            assert_eq!(r.verdict, want, "{r:?}");
        }
        assert_eq!(non_invertible_count(&d), 3);
    }
}
