//! Sparse multivariate polynomials over the exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order, so every polynomial has exactly one representation
//! and printing is reproducible byte for byte.  Constants may carry the
//! empty variable set; binary operations unify a constant with the other
//! operand's variables, which is what lets `num_traits::Zero`/`One` work
//! without threading a variable-set context everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{rat_pow, Rat};

/// An ordered list of variable names shared by the polynomials of one chart.
#[derive(Clone, Debug, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Invalid("empty variable name".into()));
            }
            if names[..i].iter().any(|m| m == n) {
                return Err(Error::Invalid(format!("duplicate variable name {n}")));
            }
        }
        Ok(VarSet(Arc::new(names)))
    }

    /// The empty variable set carried by plain scalar constants.
    pub fn scalar() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Exponent vector of one monomial.
///
/// Ordering is graded lexicographic: compare total degree first, then the
/// exponent vectors lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise division; `None` when some exponent would go negative.
    fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial with rational coefficients.
///
/// Invariant: no stored coefficient is zero, and every key has length
/// `vars.len()`.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero_on(vars: &VarSet) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_on(vars: &VarSet, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(vars.len()), c);
        }
        Poly { vars: vars.clone(), terms }
    }

    /// A plain scalar constant (empty variable set).
    pub fn constant(c: Rat) -> Self {
        Self::constant_on(&VarSet::scalar(), c)
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(vars.len(), i), Rat::one());
        Poly { vars: vars.clone(), terms }
    }

    pub fn from_terms(vars: &VarSet, terms: Vec<(Mono, Rat)>) -> Result<Self> {
        let mut p = Poly::zero_on(vars);
        for (m, c) in terms {
            if m.0.len() != vars.len() {
                return Err(Error::VarSetMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Largest term under the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of one exact monomial (zero when absent).
    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Unify the variable sets of two polynomials, promoting scalar
    /// constants to the other side's variables.
    fn unify(a: &Poly, b: &Poly) -> (Poly, Poly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        if a.vars.is_empty() {
            let c = a.constant_value().expect("scalar-set polynomial must be constant");
            return (Poly::constant_on(&b.vars, c), b.clone());
        }
        if b.vars.is_empty() {
            let c = b.constant_value().expect("scalar-set polynomial must be constant");
            return (a.clone(), Poly::constant_on(&a.vars, c));
        }
        panic!("polynomials over different variable sets");
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Poly {
        let mut out = Poly::zero_on(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero_on(&self.vars);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Poly {
        let mut out = Poly::zero_on(&self.vars);
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), cc * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant_on(&self.vars, Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Poly {
        if self.vars.is_empty() {
            // a plain scalar constant: derivative is zero in any direction
            return Poly::zero_on(&self.vars);
        }
        assert!(v < self.vars.len(), "variable index out of range");
        let mut out = Poly::zero_on(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut d = m.clone();
                d.0[v] = e - 1;
                out.add_term(d, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::Arity { expected: self.vars.len(), got: point.len() });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= rat_pow(&point[v], e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute rational values for a subset of the variables.
    pub fn subst_partial(&self, assignments: &[(usize, Rat)]) -> Poly {
        let mut out = Poly::zero_on(&self.vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (v, val) in assignments {
                let e = mono.0[*v];
                if e > 0 {
                    coeff *= rat_pow(val, e);
                    mono.0[*v] = 0;
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Substitute polynomials for all variables.
    pub fn compose_poly(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.vars.len() {
            return Err(Error::Arity { expected: self.vars.len(), got: images.len() });
        }
        let target = images
            .iter()
            .map(|p| p.vars.clone())
            .find(|v| !v.is_empty())
            .unwrap_or_else(VarSet::scalar);
        let mut acc = Poly::zero_on(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant_on(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[v].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-index this polynomial's variables into a larger variable set:
    /// variable `i` becomes `positions[i]` of `target`.
    pub fn map_vars(&self, target: &VarSet, positions: &[usize]) -> Result<Poly> {
        if positions.len() != self.vars.len() {
            return Err(Error::Arity { expected: self.vars.len(), got: positions.len() });
        }
        for &p in positions {
            if p >= target.len() {
                return Err(Error::Dimension("variable position out of range".into()));
            }
        }
        let mut out = Poly::zero_on(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[positions[i]] += exp;
            }
            out.add_term(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Divide all coefficients so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rat::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact polynomial division; `None` when the division is not exact.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (a, d) = Poly::unify(self, d);
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = a.clone();
        let mut q = Poly::zero_on(&a.vars);
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = rc / dc.clone();
            rem = &rem - &d.mul_mono(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// True when this polynomial has a single term.
    fn single_term(&self) -> Option<(&Mono, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    fn mono_content(&self) -> Mono {
        let n = self.vars.len();
        let mut min = vec![u32::MAX; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                min[i] = min[i].min(e);
            }
        }
        if self.terms.is_empty() {
            min = vec![0; n];
        }
        Mono(min)
    }

    /// Total degree truncation: keep terms of total degree <= `d`.
    pub fn truncate_degree(&self, d: u32) -> Poly {
        let mut out = Poly::zero_on(&self.vars);
        for (m, c) in &self.terms {
            if m.degree() <= d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Keep only the terms of exact total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut out = Poly::zero_on(&self.vars);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Poly {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut a, b) = Poly::unify(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let (mut a, b) = Poly::unify(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (a, b) = Poly::unify(self, rhs);
        let mut out = Poly::zero_on(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c.clone())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero_on(&VarSet::scalar())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars.name(v).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars.name(v), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Pseudo-remainder of `a` by `b` viewed as univariate polynomials in
/// variable `v` (coefficients in the remaining variables).
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = lead_coeff_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lead_coeff_in(&r, v);
        let mut shift = Mono::one(r.vars.len());
        shift.0[v] = dr - db;
        r = &(&lb * &r) - &(&b.mul_mono(&shift, &Rat::one()) * &lr);
    }
    r
}

/// Leading coefficient of `p` in variable `v`: the polynomial coefficient of
/// `v^(deg_v p)` with the `v` exponent removed.
fn lead_coeff_in(p: &Poly, v: usize) -> Poly {
    let d = p.degree_in(v);
    let mut out = Poly::zero_on(&p.vars);
    for (m, c) in &p.terms {
        if m.0[v] == d {
            let mut e = m.clone();
            e.0[v] = 0;
            out.add_term(e, c.clone());
        }
    }
    out
}

/// Content of `p` with respect to variable `v`: the gcd of its `v`-degree
/// coefficient polynomials (monic).
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut coeffs: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut e = m.clone();
        let deg = e.0[v];
        e.0[v] = 0;
        coeffs
            .entry(deg)
            .or_insert_with(|| Poly::zero_on(&p.vars))
            .add_term(e, c.clone());
    }
    let mut acc: Option<Poly> = None;
    for (_, c) in coeffs {
        acc = Some(match acc {
            None => c.monic(),
            Some(g) => gcd(&g, &c),
        });
        if acc.as_ref().map(|g| g.is_constant()) == Some(true) {
            return Poly::constant_on(&p.vars, Rat::one());
        }
    }
    acc.unwrap_or_else(|| Poly::zero_on(&p.vars))
}

fn primitive_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content must divide its polynomial")
}

/// Monic greatest common divisor over the rationals.
///
/// Content/primitive-part recursion with a primitive pseudo-remainder
/// sequence in the highest active variable; monomial operands short-circuit.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (a, b) = Poly::unify(a, b);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant_on(&a.vars, Rat::one());
    }
    // Fast path: a single-term operand reduces gcd to monomial content.
    if a.single_term().is_some() || b.single_term().is_some() {
        let ca = a.mono_content();
        let cb = b.mono_content();
        let e: Vec<u32> = ca.0.iter().zip(&cb.0).map(|(x, y)| *x.min(y)).collect();
        let mut out = Poly::zero_on(&a.vars);
        out.add_term(Mono(e), Rat::one());
        return out;
    }
    // Highest variable that actually occurs.
    let v = (0..a.vars.len())
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial must use a variable");
    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let cont = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let part = loop {
        if q.degree_in(v) == 0 {
            break Poly::constant_on(&a.vars, Rat::one());
        }
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break primitive_in(&q, v);
        }
        p = q;
        q = primitive_in(&r, v);
    };
    (&cont * &part).monic()
}
