//! Exact comparison of products of powers `∏ bᵢ^eᵢ` whose expansion would
//! be far too large to build.
//!
//! Equality is decided exactly by rewriting all bases over a coprime base.
//! Order is decided with fixed-point base-2 logarithms and a rigorous
//! error bound; if the two sides are too close for that bound the answer
//! is `None`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Fractional bits kept for each logarithm.
const FRAC_BITS: u64 = 64;
/// Working precision of the squaring loop.
const WORK_BITS: u64 = FRAC_BITS + 80;

pub type PowerProduct = Vec<(BigUint, BigUint)>;

pub fn compare_power_products(lhs: &[(BigUint, BigUint)], rhs: &[(BigUint, BigUint)]) -> Option<Ordering> {
    let lhs = prune(lhs);
    let rhs = prune(rhs);
    let bases: Vec<BigUint> = lhs.iter().chain(&rhs).map(|(b, _)| b.clone()).collect();
    let basis = coprime_basis(&bases);
    let l = exponent_vector(&lhs, &basis);
    let r = exponent_vector(&rhs, &basis);
    if l == r {
        return Some(Ordering::Equal);
    }
    let mut diff = BigInt::zero();
    let mut slack = BigInt::zero();
    for (k, q) in basis.iter().enumerate() {
        let lg = BigInt::from(log2_fixed(q));
        let (le, re) = (BigInt::from(l[k].clone()), BigInt::from(r[k].clone()));
        diff += (&le - &re) * lg;
        // each fixed-point logarithm is off by less than two units
        slack += (le + re) * 2;
    }
    if diff > slack {
        Some(Ordering::Greater)
    } else if -&diff > slack {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Drops factors equal to 1.
fn prune(p: &[(BigUint, BigUint)]) -> PowerProduct {
    p.iter().filter(|(b, e)| !b.is_one() && !e.is_zero()).cloned().collect()
}

/// Pairwise coprime numbers, each greater than 1, that generate every
/// input base multiplicatively.
fn coprime_basis(bases: &[BigUint]) -> Vec<BigUint> {
    let mut basis: Vec<BigUint> = Vec::new();
    let mut pending: Vec<BigUint> = bases.iter().filter(|b| **b > BigUint::one()).cloned().collect();
    while let Some(x) = pending.pop() {
        if x.is_one() || basis.contains(&x) {
            continue;
        }
        match basis.iter().position(|y| !x.gcd(y).is_one()) {
            None => basis.push(x),
            Some(k) => {
                let y = basis.swap_remove(k);
                let g = x.gcd(&y);
                for part in [&x / &g, &y / &g, g] {
                    if !part.is_one() {
                        pending.push(part);
                    }
                }
            }
        }
    }
    basis.sort();
    basis
}

fn exponent_vector(p: &[(BigUint, BigUint)], basis: &[BigUint]) -> Vec<BigUint> {
    let mut v = vec![BigUint::zero(); basis.len()];
    for (b, e) in p {
        let mut rest = b.clone();
        for (k, q) in basis.iter().enumerate() {
            let mut m = 0u64;
            while (&rest % q).is_zero() {
                rest /= q;
                m += 1;
            }
            v[k] += e * m;
        }
        debug_assert!(rest.is_one(), "basis does not generate {b}");
    }
    v
}

/// `⌊log₂ q · 2^FRAC_BITS⌋`, up to an error below two units.
fn log2_fixed(q: &BigUint) -> BigUint {
    let int_part = q.bits() - 1;
    // x = q / 2^int_part in [1, 2), held with WORK_BITS fractional bits
    let mut x: BigUint = if int_part >= WORK_BITS {
        q >> (int_part - WORK_BITS)
    } else {
        q << (WORK_BITS - int_part)
    };
    let two = BigUint::one() << (WORK_BITS + 1);
    let mut frac = BigUint::zero();
    for _ in 0..FRAC_BITS {
        x = (&x * &x) >> WORK_BITS;
        frac <<= 1;
        if x >= two {
            x >>= 1;
            frac += 1u32;
        }
    }
    (BigUint::from(int_part) << FRAC_BITS) + frac
}
