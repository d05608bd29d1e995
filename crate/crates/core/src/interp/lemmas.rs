//! Brute-force checks of the arithmetic facts behind the strict decrease
//! of `→l→`, and of the failure of the same argument for G3ip.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::Serialize;

use super::{EvalError, Guard};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaRanges {
    pub f: RangeInclusive<u64>,
    pub g: RangeInclusive<u64>,
    pub h: RangeInclusive<u64>,
    pub i: RangeInclusive<u64>,
    pub gamma: RangeInclusive<u64>,
}

impl Default for LemmaRanges {
    fn default() -> Self {
        LemmaRanges { f: 2..=5, g: 2..=5, h: 2..=5, i: 2..=4, gamma: 1..=4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub checked: usize,
    /// Points whose numbers exceed the digit guard.
    pub skipped: usize,
    /// Variable assignments, in the order the statement names them.
    pub counterexamples: Vec<Vec<u64>>,
}

impl LemmaResult {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.checked > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemmas: Vec<LemmaResult>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.lemmas.iter().all(LemmaResult::holds)
    }
}

fn n(x: u64) -> BigUint {
    BigUint::from(x)
}

type Check = dyn Fn(&[u64], &Guard) -> Result<bool, EvalError>;

fn run(name: &'static str, statement: &'static str, points: Vec<Vec<u64>>, check: &Check, g: &Guard) -> LemmaResult {
    let mut r = LemmaResult { name, statement, checked: 0, skipped: 0, counterexamples: Vec::new() };
    for p in points {
        match check(&p, g) {
            Ok(true) => r.checked += 1,
            Ok(false) => {
                r.checked += 1;
                r.counterexamples.push(p);
            }
            Err(_) => r.skipped += 1,
        }
    }
    r
}

fn grid(ranges: &[RangeInclusive<u64>]) -> Vec<Vec<u64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.into_iter()
            .flat_map(|prefix| {
                r.clone().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect()
    })
}

fn at_least(r: &RangeInclusive<u64>, lo: u64) -> RangeInclusive<u64> {
    (*r.start()).max(lo)..=*r.end()
}

/// Exhaustively checks each inequality on the part of `ranges` inside its
/// stated domain.
pub fn check_inequality_lemmas(ranges: &LemmaRanges, g: &Guard) -> LemmaReport {
    let f2 = at_least(&ranges.f, 2);
    let g2 = at_least(&ranges.g, 2);
    let g3 = at_least(&ranges.g, 3);
    let h2 = at_least(&ranges.h, 2);
    let i2 = at_least(&ranges.i, 2);
    let c1 = at_least(&ranges.gamma, 1);

    let power_gap: &Check = &|p, g| {
        let (f, gg) = (n(p[0]), n(p[1]));
        let lhs = g.pow(&gg, &f)?;
        let rhs = g.pow(&gg, &(&f - 1u32))?;
        Ok(g.sub(&lhs, &(&gg + 1u32)).is_some_and(|l| l >= rhs))
    };
    let double_exp: &Check = &|p, g| {
        let (f, gg) = (n(p[0]), n(p[1]));
        let lhs = g.pow(&n(2), &g.pow(&gg, &(&f - 1u32))?)?;
        Ok(lhs >= &f * &gg)
    };
    let add_one: &Check = &|p, g| {
        let (f, gg, h) = (n(p[0]), n(p[1]), n(p[2]));
        let lhs = g.mul(&g.mul(&f, &g.pow(&h, &gg)?)?, &gg)?;
        let rhs = g.mul(&g.mul(&f, &g.pow(&h, &(&gg - 1u32))?)?, &gg)? + 1u32;
        Ok(lhs >= rhs)
    };
    let final_lemma: &Check = &|p, g| {
        let (f, gg, h) = (n(p[0]), n(p[1]), n(p[2]));
        let tower = g.pow(&h, &g.pow(&gg, &f)?)?;
        let exp = g.sub(&tower, &h).expect("H^(G^F) ≥ H");
        let lhs = g.pow(&n(2), &exp)?;
        let rhs = g.pow(&gg, &g.mul(&f, &g.pow(&h, &gg)?)?)?;
        Ok(lhs > rhs)
    };
    let conditional: &Check = &|p, g| {
        let (f, gg, h, i, c) = (n(p[0]), n(p[1]), n(p[2]), n(p[3]), n(p[4]));
        let lhs = g.pow(&i, &g.mul(&g.pow(&h, &g.pow(&gg, &f)?)?, &c)?)?;
        let left = g.pow(&g.pow(&gg, &f)?, &g.mul(&g.pow(&h, &gg)?, &c)?)?;
        let right = g.pow(&i, &g.mul(&h, &c)?)?;
        Ok(lhs > g.mul(&left, &right)?)
    };

    LemmaReport {
        lemmas: vec![
            run("power-gap", "G^F - G - 1 >= G^(F-1)  (F >= 2, G >= 3)", grid(&[f2.clone(), g3.clone()]), power_gap, g),
            run("double-exponential", "2^(G^(F-1)) >= F G  (F >= 2, G >= 3)", grid(&[f2.clone(), g3.clone()]), double_exp, g),
            run(
                "add-one",
                "F H^G G >= F H^(G-1) G + 1  (F, H >= 2, G >= 3)",
                grid(&[f2.clone(), g3, h2.clone()]),
                add_one,
                g,
            ),
            run(
                "final",
                "2^(H^(G^F) - H) > G^(F H^G)  (F, G, H >= 2)",
                grid(&[f2.clone(), g2.clone(), h2.clone()]),
                final_lemma,
                g,
            ),
            run(
                "conditional",
                "I^(H^(G^F) Γ) > (G^F)^(H^G Γ) I^(H Γ)  (F, G, H, I >= 2, Γ >= 1)",
                grid(&[f2, g2, h2, i2, c1]),
                conditional,
                g,
            ),
        ],
    }
}

/// A valuation refuting the strict decrease for the G3ip `→l` rule
/// `(A→B),Γ ⊢ C  ⇐  (A→B),Γ ⊢ A  and  B,Γ ⊢ C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub gamma: u64,
    /// `c^(b^a γ)`.
    pub conclusion: String,
    /// `a^(b^a γ) · c^(b γ)`.
    pub premises: String,
}

/// The first point of a small grid, scanned with `a = c`, where the
/// conclusion is not strictly above the premise product.
pub fn check_g3ip_failure() -> Counterexample {
    let g = Guard::default();
    for a in 2..=4u64 {
        for b in 2..=4u64 {
            for gamma in 1..=3u64 {
                let c = a;
                let ba = g.pow(&n(b), &n(a)).expect("small");
                let conclusion = g.pow(&n(c), &(&ba * gamma)).expect("small");
                let premises = g.pow(&n(a), &(&ba * gamma)).expect("small") * g.pow(&n(c), &n(b * gamma)).expect("small");
                if conclusion <= premises {
                    return Counterexample {
                        a,
                        b,
                        c,
                        gamma,
                        conclusion: conclusion.to_string(),
                        premises: premises.to_string(),
                    };
                }
            }
        }
    }
    unreachable!("a = c always fails")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_points() {
        let g = Guard::default();
        let r = check_inequality_lemmas(
            &LemmaRanges { f: 2..=2, g: 2..=3, h: 2..=2, i: 2..=2, gamma: 1..=1 },
            &g,
        );
        assert!(r.all_hold(), "{r:?}");
        let by_name = |name: &str| r.lemmas.iter().find(|l| l.name == name).unwrap().checked;
        assert_eq!(by_name("power-gap"), 1);
        assert_eq!(by_name("final"), 2);
    }

    #[test]
    fn g3ip_counterexample_is_the_smallest() {
        let c = check_g3ip_failure();
        assert_eq!((c.a, c.b, c.c, c.gamma), (2, 2, 2, 1));
        assert_eq!(c.conclusion, "16");
        assert_eq!(c.premises, "64");
    }

    #[test]
    fn grid_is_a_cartesian_product() {
        assert_eq!(grid(&[2..=3, 1..=3]).len(), 6);
    }
}
