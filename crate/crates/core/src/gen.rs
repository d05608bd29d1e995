//! Formula corpora: exhaustive enumeration by connective count and seeded
//! random generation of formulas and normal forms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::normalize::{Base, Conj, Factor, Nf, Sum};
use crate::syntax::{Atom, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
    Imp,
}

impl Connective {
    pub const ALL: [Connective; 3] = [Connective::And, Connective::Or, Connective::Imp];

    pub fn build(self, a: Formula, b: Formula) -> Formula {
        match self {
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
            Connective::Imp => Formula::imp(a, b),
        }
    }
}

/// `n` propositional atoms named `p, q, r, s, t, …`.
pub fn atoms(n: usize) -> Vec<Formula> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    (0..n)
        .map(|i| match NAMES.get(i) {
            Some(name) => Formula::atom(*name),
            None => Formula::atom(format!("a{i}")),
        })
        .collect()
}

fn levels(leaves: &[Formula], connectives: &[Connective], n: usize) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = vec![leaves.to_vec()];
    for k in 1..=n {
        let mut level = Vec::new();
        for c in connectives {
            for i in 0..k {
                for a in &levels[i] {
                    for b in &levels[k - 1 - i] {
                        level.push(c.build(a.clone(), b.clone()));
                    }
                }
            }
        }
        levels.push(level);
    }
    levels
}

/// Every formula built from `leaves` with exactly `n` binary connectives.
pub fn formulas_with(leaves: &[Formula], connectives: &[Connective], n: usize) -> Vec<Formula> {
    levels(leaves, connectives, n).swap_remove(n)
}

/// Every formula built from `leaves` with at most `max` connectives, by
/// increasing connective count.
pub fn enumerate(leaves: &[Formula], connectives: &[Connective], max: usize) -> Vec<Formula> {
    levels(leaves, connectives, max).into_iter().flatten().collect()
}

/// A uniformly shaped random formula with exactly `n` connectives.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, leaves: &[Formula], connectives: &[Connective], n: usize) -> Formula {
    if n == 0 {
        return leaves.choose(rng).expect("at least one leaf").clone();
    }
    let left = rng.gen_range(0..n);
    let c = *connectives.choose(rng).expect("at least one connective");
    let a = random_formula(rng, leaves, connectives, left);
    let b = random_formula(rng, leaves, connectives, n - 1 - left);
    c.build(a, b)
}

/// A random formula with between 0 and `max` connectives.
pub fn random_formula_upto<R: Rng + ?Sized>(
    rng: &mut R,
    leaves: &[Formula],
    connectives: &[Connective],
    max: usize,
) -> Formula {
    let n = rng.gen_range(0..=max);
    random_formula(rng, leaves, connectives, n)
}

/// Shape limits for random normal forms.
#[derive(Clone, Debug)]
pub struct NfShape {
    pub atoms: Vec<Atom>,
    pub depth: usize,
    pub max_factors: usize,
    pub max_summands: usize,
}

impl Default for NfShape {
    fn default() -> Self {
        NfShape {
            atoms: ["p", "q", "r", "s"].into_iter().map(Atom::prop).collect(),
            depth: 2,
            max_factors: 3,
            max_summands: 3,
        }
    }
}

impl NfShape {
    fn shallower(&self) -> NfShape {
        NfShape { depth: self.depth.saturating_sub(1), ..self.clone() }
    }
}

pub fn random_conj<R: Rng + ?Sized>(rng: &mut R, shape: &NfShape) -> Conj {
    let n = rng.gen_range(0..=shape.max_factors);
    Conj::of((0..n).map(|_| random_factor(rng, shape)).collect())
}

pub fn random_factor<R: Rng + ?Sized>(rng: &mut R, shape: &NfShape) -> Factor {
    if shape.depth == 0 {
        return Factor::prime(shape.atoms.choose(rng).expect("atoms").clone());
    }
    let inner = shape.shallower();
    Factor::new(random_base(rng, shape), random_conj(rng, &inner))
}

pub fn random_base<R: Rng + ?Sized>(rng: &mut R, shape: &NfShape) -> Base {
    if shape.depth == 0 || rng.gen_bool(0.7) {
        Base::Prime(shape.atoms.choose(rng).expect("atoms").clone())
    } else {
        Base::Sum(random_sum(rng, &shape.shallower()))
    }
}

pub fn random_sum<R: Rng + ?Sized>(rng: &mut R, shape: &NfShape) -> Sum {
    let n = rng.gen_range(2..=shape.max_summands.max(2));
    Sum::new((0..n).map(|_| random_conj(rng, shape)).collect()).expect("two or more summands")
}

pub fn random_nf<R: Rng + ?Sized>(rng: &mut R, shape: &NfShape) -> Nf {
    if rng.gen_bool(0.5) {
        Nf::Conj(random_conj(rng, shape))
    } else {
        Nf::Sum(random_sum(rng, shape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn catalan(n: u64) -> u64 {
        (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn enumeration_counts() {
        let leaves = atoms(2);
        for n in 0..=4u64 {
            let expected = catalan(n) * 3u64.pow(n as u32) * 2u64.pow(n as u32 + 1);
            assert_eq!(formulas_with(&leaves, &Connective::ALL, n as usize).len() as u64, expected);
        }
        let all = enumerate(&leaves, &[Connective::Imp], 3);
        assert_eq!(all.len(), 2 + 4 + 16 + 80);
        assert!(all.iter().all(|f| f.connectives() <= 3));
    }

    #[test]
    fn random_formulas_have_the_requested_size() {
        let mut rng = StdRng::seed_from_u64(7);
        let leaves = atoms(4);
        for n in 0..20 {
            assert_eq!(random_formula(&mut rng, &leaves, &Connective::ALL, n).connectives(), n);
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let shape = NfShape::default();
        let a = random_nf(&mut StdRng::seed_from_u64(3), &shape);
        let b = random_nf(&mut StdRng::seed_from_u64(3), &shape);
        assert_eq!(a, b);
    }
}
