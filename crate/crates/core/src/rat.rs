//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rat` is always stored reduced with a positive denominator, prints as
//! `p/q` (the `/q` omitted when the denominator is one) and parses the same
//! grammar back.  `GaussRat` is a pair of `Rat`s under complex arithmetic.

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::{One, Zero};

pub type Rat = BigRational;
pub type GaussRat = Complex<BigRational>;

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact quotient `n/d`; panics on `d == 0`.
pub fn ratq(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Gaussian rational from real and imaginary parts.
pub fn gauss(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

/// Gaussian rational from integer real and imaginary parts.
pub fn gaussi(re: i64, im: i64) -> GaussRat {
    Complex::new(rat(re), rat(im))
}

/// Exact small power with a non-negative exponent.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Complex conjugate.
pub fn gauss_conj(z: &GaussRat) -> GaussRat {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// True when the imaginary part is exactly zero.
pub fn is_real(z: &GaussRat) -> bool {
    z.im.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let r = ratq(4, -6);
        assert_eq!(r, ratq(-2, 3));
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(ratq(0, 7), rat(0));
        assert_eq!(rat(0).to_string(), "0");
    }

    #[test]
    fn display_omits_unit_denominator_and_round_trips() {
        assert_eq!(ratq(6, 2).to_string(), "3");
        assert_eq!(Rat::from_str("3/2").unwrap(), ratq(3, 2));
        assert_eq!(Rat::from_str("-7").unwrap(), rat(-7));
        assert!(Rat::from_str("0.5").is_err(), "float literals must be rejected");
    }

    #[test]
    fn gaussian_inverse_is_exact() {
        let z = gauss(ratq(1, 2), rat(-3));
        let w = GaussRat::one() / z.clone();
        assert_eq!(z * w, GaussRat::one());
    }

    #[test]
    fn gaussian_conjugation_flips_imaginary_part() {
        let z = gaussi(2, 5);
        let c = gauss_conj(&z);
        assert_eq!(c, gaussi(2, -5));
        assert!(is_real(&(z.clone() * c)));
    }
}
