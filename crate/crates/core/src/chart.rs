//! Coordinate charts: a named variable list plus the polynomials that are
//! required to stay nonzero on the chart domain (e.g. `x` for the domain
//! `x != 0`).  Sampling respects the excluded locus so evaluation never
//! divides by zero by construction.

use num::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Poly, VarSet};
use crate::rat::{rat, Rat};
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug)]
pub struct Chart {
    vars: VarSet,
    nonzero: Vec<Poly>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Ok(Chart { vars: VarSet::new(names)?, nonzero: Vec::new() })
    }

    pub fn with_nonzero<S: AsRef<str>>(names: &[S], nonzero: Vec<Poly>) -> Result<Self> {
        let vars = VarSet::new(names)?;
        for p in &nonzero {
            if p.vars() != &vars && !p.vars().is_empty() {
                return Err(Error::VarSetMismatch);
            }
            if p.is_zero() {
                return Err(Error::Invalid("excluded-locus polynomial is identically zero".into()));
            }
        }
        Ok(Chart { vars, nonzero })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        self.vars.name(i)
    }

    pub fn nonzero_constraints(&self) -> &[Poly] {
        &self.nonzero
    }

    pub fn coordinate(&self, i: usize) -> RatFunc {
        RatFunc::var(&self.vars, i)
    }

    pub fn coordinate_poly(&self, i: usize) -> Poly {
        Poly::var(&self.vars, i)
    }

    pub fn constant(&self, c: Rat) -> RatFunc {
        RatFunc::constant_on(&self.vars, c)
    }

    /// Check that a point lies in the chart domain.
    pub fn check_point(&self, point: &[Rat]) -> Result<()> {
        if point.len() != self.dim() {
            return Err(Error::Arity { expected: self.dim(), got: point.len() });
        }
        for p in &self.nonzero {
            if p.eval(point)?.is_zero() {
                return Err(Error::DomainExcluded(p.to_string()));
            }
        }
        Ok(())
    }

    /// Draw a random rational point inside the chart domain.
    ///
    /// Coordinates are fractions with numerator in `[-bound, bound]` and
    /// denominator in `[1, bound]`; points on the excluded locus are
    /// redrawn.
    pub fn random_point<R: Rng>(&self, rng: &mut R, bound: i64) -> Vec<Rat> {
        assert!(bound >= 1, "sampling bound must be positive");
        for _ in 0..10_000 {
            let point: Vec<Rat> = (0..self.dim())
                .map(|_| {
                    let num = rng.gen_range(-bound..=bound);
                    let den = rng.gen_range(1..=bound);
                    rat(num) / rat(den)
                })
                .collect();
            if self.check_point(&point).is_ok() {
                return point;
            }
        }
        panic!("could not sample a point off the excluded locus");
    }

    /// The product chart: coordinates of `self` followed by those of
    /// `other`; excluded loci are carried over to the joint variables.
    pub fn product(&self, other: &Chart) -> Result<Chart> {
        let names: Vec<String> = self
            .vars
            .names()
            .iter()
            .chain(other.vars.names())
            .cloned()
            .collect();
        let vars = VarSet::new(&names)?;
        let left: Vec<usize> = (0..self.dim()).collect();
        let right: Vec<usize> = (self.dim()..self.dim() + other.dim()).collect();
        let mut nonzero = Vec::new();
        for p in &self.nonzero {
            nonzero.push(p.map_vars(&vars, &left)?);
        }
        for p in &other.nonzero {
            nonzero.push(p.map_vars(&vars, &right)?);
        }
        Ok(Chart { vars, nonzero })
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.nonzero == other.nonzero
    }
}
