//! Deterministic randomness for verification suites.
//!
//! Every randomized check draws from a ChaCha stream seeded explicitly, so
//! a report can be reproduced byte for byte from its recorded seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Mono, Poly, VarSet};
use crate::rat::{rat, Rat};
use crate::ratfunc::RatFunc;

/// Default suite seed ("NAMB").
pub const DEFAULT_SEED: u64 = 0x4E41_4D42;

pub fn suite_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random rational: numerator in `[-bound, bound]`, denominator in
/// `[1, bound]`.
pub fn random_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    rat(num) / rat(den)
}

/// A sparse random polynomial: up to `max_terms` monomials of total degree
/// at most `max_degree`, with small integer coefficients.  Suites use these
/// as test functions; degree two with a handful of terms already separates
/// the identities under test while keeping exact arithmetic fast.
pub fn random_poly<R: Rng>(vars: &VarSet, rng: &mut R, max_degree: u32, max_terms: usize) -> Poly {
    let n = vars.len();
    let n_terms = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..deg {
            if n == 0 {
                break;
            }
            exps[rng.gen_range(0..n)] += 1;
        }
        let coeff = rat(rng.gen_range(-3..=3i64));
        terms.push((Mono(exps), coeff));
    }
    Poly::from_terms(vars, terms).expect("exponent vectors match the variable set")
}

/// A random polynomial that is guaranteed nonzero.
pub fn random_nonzero_poly<R: Rng>(
    vars: &VarSet,
    rng: &mut R,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let p = random_poly(vars, rng, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random polynomial test function, as a rational function.
pub fn random_function<R: Rng>(
    vars: &VarSet,
    rng: &mut R,
    max_degree: u32,
    max_terms: usize,
) -> RatFunc {
    RatFunc::from_poly(random_poly(vars, rng, max_degree, max_terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_reproduces_the_same_stream() {
        let vars = VarSet::new(&["x", "y"]).unwrap();
        let mut a = suite_rng(42);
        let mut b = suite_rng(42);
        for _ in 0..10 {
            assert_eq!(random_poly(&vars, &mut a, 2, 3), random_poly(&vars, &mut b, 2, 3));
            assert_eq!(random_rat(&mut a, 5), random_rat(&mut b, 5));
        }
    }

    #[test]
    fn degree_and_term_bounds_are_respected() {
        let vars = VarSet::new(&["x", "y", "z"]).unwrap();
        let mut rng = suite_rng(DEFAULT_SEED);
        for _ in 0..50 {
            let p = random_poly(&vars, &mut rng, 2, 3);
            assert!(p.total_degree() <= 2);
            assert!(p.terms().count() <= 3);
        }
    }
}
