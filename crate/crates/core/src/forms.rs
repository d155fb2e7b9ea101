//! Differential forms with rational-function coefficients.
//!
//! Storage mirrors `MultiVector`: one canonical term per strictly
//! increasing index tuple.  The interior product by a vector field fills
//! the FIRST slot, and the Lie derivative is the Cartan formula
//! `L_X = i(X) d + d i(X)`.

use std::collections::BTreeMap;

use num::Zero;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::multivector::{sort_indices, MultiVector};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<Vec<usize>, RatFunc>,
}

impl DiffForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        DiffForm { chart: chart.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn from_components(
        chart: &Chart,
        degree: usize,
        terms: Vec<(Vec<usize>, RatFunc)>,
    ) -> Result<Self> {
        let mut form = DiffForm::zero(chart, degree);
        for (idx, c) in terms {
            form.add_term(&idx, c)?;
        }
        Ok(form)
    }

    /// The coordinate differential `dx^i`.
    pub fn coordinate_differential(chart: &Chart, i: usize) -> Self {
        let mut form = DiffForm::zero(chart, 1);
        form.add_term(&[i], RatFunc::constant_on(chart.vars(), Rat::from_integer(1.into())))
            .unwrap();
        form
    }

    /// A 1-form from its coefficient functions.
    pub fn one_form(chart: &Chart, comps: &[RatFunc]) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::Arity { expected: chart.dim(), got: comps.len() });
        }
        let mut form = DiffForm::zero(chart, 1);
        for (i, c) in comps.iter().enumerate() {
            form.add_term(&[i], c.clone())?;
        }
        Ok(form)
    }

    /// The differential of a function, `df`.
    pub fn differential(chart: &Chart, f: &RatFunc) -> Self {
        let comps: Vec<RatFunc> = (0..chart.dim()).map(|i| f.partial(i)).collect();
        Self::one_form(chart, &comps).expect("component count matches the chart")
    }

    fn add_term(&mut self, idx: &[usize], c: RatFunc) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: idx.len() });
        }
        for &i in idx {
            if i >= self.chart.dim() {
                return Err(Error::Dimension(format!(
                    "index {i} out of range for a {}-dimensional chart",
                    self.chart.dim()
                )));
            }
        }
        let Some((sorted, sign)) = sort_indices(idx) else {
            return Ok(());
        };
        let c = if sign < 0 { -c } else { c };
        if c.is_zero() {
            return Ok(());
        }
        match self.comps.entry(sorted) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[usize]) -> RatFunc {
        match sort_indices(idx) {
            None => RatFunc::zero(),
            Some((sorted, sign)) => {
                let c = self.comps.get(&sorted).cloned().unwrap_or_else(RatFunc::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coefficient functions of a 1-form, as a dense vector.
    pub fn as_covector(&self) -> Vec<RatFunc> {
        assert_eq!(self.degree, 1, "covector components require degree 1");
        (0..self.chart.dim()).map(|i| self.component(&[i])).collect()
    }

    fn check_chart(&self, other: &DiffForm) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_chart(other)?;
        if self.degree != other.degree {
            return Err(Error::Arity { expected: self.degree, got: other.degree });
        }
        let mut out = self.clone();
        for (idx, c) in &other.comps {
            out.add_term(idx, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        self.map_components(|c| -c)
    }

    pub fn scale(&self, f: &RatFunc) -> DiffForm {
        if f.is_zero() {
            return DiffForm::zero(&self.chart, self.degree);
        }
        self.map_components(|c| c * f)
    }

    fn map_components(&self, f: impl Fn(&RatFunc) -> RatFunc) -> DiffForm {
        let mut out = DiffForm::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            let v = f(c);
            if !v.is_zero() {
                out.comps.insert(idx.clone(), v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_chart(other)?;
        let mut out = DiffForm::zero(&self.chart, self.degree + other.degree);
        for (ia, ca) in &self.comps {
            for (ib, cb) in &other.comps {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                out.add_term(&idx, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Exterior derivative: `d(c dx^I) = sum_j (dc/dx_j) dx^j ^ dx^I`.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.comps {
            for j in 0..self.chart.dim() {
                let dc = c.partial(j);
                if dc.is_zero() {
                    continue;
                }
                let mut jidx = Vec::with_capacity(idx.len() + 1);
                jidx.push(j);
                jidx.extend_from_slice(idx);
                out.add_term(&jidx, dc).expect("indices are in range");
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    /// First-slot interior product by a vector field:
    /// `(i(X)w)(Y_2, ..., Y_k) = w(X, Y_2, ..., Y_k)`.
    pub fn interior(&self, x: &MultiVector) -> Result<DiffForm> {
        self.chart_matches_field(x)?;
        if self.degree == 0 {
            return Err(Error::Dimension("interior product of a function".into()));
        }
        let xc = x.as_vector_components();
        let mut out = DiffForm::zero(&self.chart, self.degree - 1);
        for (idx, c) in &self.comps {
            for (t, &i) in idx.iter().enumerate() {
                if xc[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(t);
                let mut coeff = c * &xc[i];
                if t % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(&rest, coeff)?;
            }
        }
        Ok(out)
    }

    fn chart_matches_field(&self, x: &MultiVector) -> Result<()> {
        if x.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        if x.degree() != 1 {
            return Err(Error::Arity { expected: 1, got: x.degree() });
        }
        Ok(())
    }

    /// Lie derivative along a vector field by the Cartan formula.
    pub fn lie_derivative(&self, x: &MultiVector) -> Result<DiffForm> {
        self.chart_matches_field(x)?;
        let from_d = self.d().interior(x)?;
        if self.degree == 0 {
            return Ok(from_d);
        }
        Ok(from_d.add(&self.interior(x)?.d())?)
    }

    /// Pair a 1-form with a vector field: `a(X)`.
    pub fn pair_vector(&self, x: &MultiVector) -> Result<RatFunc> {
        self.chart_matches_field(x)?;
        if self.degree != 1 {
            return Err(Error::Arity { expected: 1, got: self.degree });
        }
        let xc = x.as_vector_components();
        let mut out = RatFunc::zero();
        for (idx, c) in &self.comps {
            out = &out + &(c * &xc[idx[0]]);
        }
        Ok(out)
    }
}

impl std::fmt::Display for DiffForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis: Vec<String> =
                idx.iter().map(|&i| format!("d{}", self.chart.name(i))).collect();
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}
