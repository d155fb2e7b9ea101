//! Rational functions: reduced fractions of sparse polynomials.
//!
//! Every value is kept in canonical form — numerator and denominator
//! coprime, denominator monic under graded lex, zero stored as 0/1 — so
//! equality is structural and printing is reproducible.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly, VarSet};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Build from a fraction of polynomials, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { num: Poly::zero_on(num.vars()), den: Poly::constant_on(num.vars(), Rat::one()) };
        }
        let g = gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        // Normalize: monic denominator.
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = Rat::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::constant_on(p.vars(), Rat::one());
        RatFunc { num: p, den }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn constant_on(vars: &VarSet, c: Rat) -> Self {
        Self::from_poly(Poly::constant_on(vars, c))
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::from_poly(Poly::var(vars, i))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        if self.num.vars().is_empty() {
            self.den.vars()
        } else {
            self.num.vars()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::reduced(Poly::zero_on(self.num.vars()), Poly::one());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    /// Exact partial derivative (quotient rule).
    pub fn partial(&self, v: usize) -> RatFunc {
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return RatFunc::reduced(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        RatFunc::reduced(num, den)
    }

    /// Exact evaluation; errors when the point hits the denominator locus.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DomainDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Substitute rational-function images for all variables.
    pub fn compose(&self, images: &[RatFunc]) -> Result<RatFunc> {
        // Clear denominators: for num = sum c_m prod x_i^{e_i}, substitute
        // images as fractions and bring to a common denominator by scaling
        // each term with the complementary powers.
        let subst_poly = |p: &Poly| -> Result<RatFunc> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut term = RatFunc::constant(c.clone());
                for (v, &e) in m.0.iter().enumerate() {
                    for _ in 0..e {
                        term = &term * &images[v];
                    }
                }
                acc = &acc + &term;
            }
            Ok(acc)
        };
        if images.len() != self.num.vars().len() {
            return Err(Error::Arity { expected: self.num.vars().len(), got: images.len() });
        }
        let n = subst_poly(&self.num)?;
        let d = subst_poly(&self.den)?;
        if d.is_zero() {
            return Err(Error::DomainDenominator);
        }
        Ok(&n / &d)
    }

    /// Substitute rational values for a subset of variables.
    pub fn subst_partial(&self, assignments: &[(usize, Rat)]) -> Result<RatFunc> {
        let den = self.den.subst_partial(assignments);
        if den.is_zero() {
            return Err(Error::DomainDenominator);
        }
        Ok(RatFunc::reduced(self.num.subst_partial(assignments), den))
    }

    /// Re-index variables into a larger variable set (see `Poly::map_vars`).
    pub fn map_vars(&self, target: &VarSet, positions: &[usize]) -> Result<RatFunc> {
        Ok(RatFunc::reduced(
            self.num.map_vars(target, positions)?,
            self.den.map_vars(target, positions)?,
        ))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::reduced(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::reduced(num, den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            // A constant denominator is 1 after normalization.
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    fn vars() -> VarSet {
        VarSet::new(&["x", "y"]).unwrap()
    }

    fn x(vs: &VarSet) -> RatFunc {
        RatFunc::var(vs, 0)
    }
    fn y(vs: &VarSet) -> RatFunc {
        RatFunc::var(vs, 1)
    }

    #[test]
    fn construction_reduces_and_makes_denominator_monic() {
        let vs = vars();
        let xp = Poly::var(&vs, 0);
        // (2x) / 4 -> x/2
        let r = RatFunc::new(xp.scale(&rat(2)), Poly::constant_on(&vs, rat(4))).unwrap();
        assert_eq!(r, x(&vs).scale(&ratq(1, 2)));
        // (x^2-1)/(x-1) -> x+1
        let num = &xp.pow(2) - &Poly::constant_on(&vs, rat(1));
        let den = &xp - &Poly::constant_on(&vs, rat(1));
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &(&xp + &Poly::constant_on(&vs, rat(1))));
        // 1/(2x) -> denominator becomes monic, numerator absorbs the scale
        let r = RatFunc::new(Poly::constant_on(&vs, rat(1)), xp.scale(&rat(2))).unwrap();
        assert_eq!(r.num().constant_value(), Some(ratq(1, 2)));
        assert_eq!(r.den(), &xp);
    }

    #[test]
    fn field_arithmetic_cancels_exactly() {
        let vs = vars();
        let r = &x(&vs) / &y(&vs);
        let s = &y(&vs) / &x(&vs);
        assert!((&(&r * &s) - &RatFunc::one()).is_zero());
        let sum = &r + &s; // (x^2+y^2)/(x*y)
        let expect = RatFunc::new(
            &Poly::var(&vs, 0).pow(2) + &Poly::var(&vs, 1).pow(2),
            &Poly::var(&vs, 0) * &Poly::var(&vs, 1),
        )
        .unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn quotient_rule_differentiates_fractions() {
        let vs = vars();
        // d/dx (y/x) = -y/x^2
        let r = &y(&vs) / &x(&vs);
        let d = r.partial(0);
        let expect = RatFunc::new(-Poly::var(&vs, 1), Poly::var(&vs, 0).pow(2)).unwrap();
        assert_eq!(d, expect);
        // d/dy (y/x) = 1/x
        assert_eq!(r.partial(1), x(&vs).recip().unwrap());
    }

    #[test]
    fn eval_rejects_denominator_zeros() {
        let vs = vars();
        let r = &RatFunc::one() / &x(&vs);
        assert_eq!(r.eval(&[rat(4), rat(0)]).unwrap(), ratq(1, 4));
        assert!(matches!(r.eval(&[rat(0), rat(1)]), Err(Error::DomainDenominator)));
    }

    #[test]
    fn compose_threads_fractions_through_fractions() {
        let vs = vars();
        // f = 1/x composed with x -> x*y gives 1/(x*y)
        let f = &RatFunc::one() / &x(&vs);
        let g = f.compose(&[&x(&vs) * &y(&vs), y(&vs)]).unwrap();
        let expect = &RatFunc::one() / &(&x(&vs) * &y(&vs));
        assert_eq!(g, expect);
    }

    #[test]
    fn display_wraps_true_fractions_in_parentheses() {
        let vs = vars();
        let f = &(&x(&vs) + &RatFunc::one()) / &y(&vs);
        assert_eq!(f.to_string(), "(x + 1) / (y)");
        assert_eq!(x(&vs).to_string(), "x");
    }
}
