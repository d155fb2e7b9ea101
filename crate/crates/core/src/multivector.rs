//! Multivector fields (k-vectors) with rational-function components.
//!
//! Components are stored on strictly increasing index tuples, so
//! `P = sum_I c_I d/dx_{i_1} ^ ... ^ d/dx_{i_k}` has one canonical term per
//! increasing `I` and zero components are dropped.  The pairing convention
//! throughout is `(X_1 ^ ... ^ X_k)(a_1, ..., a_k) = det[a_r(X_s)]`, and the
//! interior product fills the FIRST slot:
//! `(i(a)P)(b_2, ..., b_k) = P(a, b_2, ..., b_k)`.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::matrix::{in_span, rowspace_basis, Matrix};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// All strictly increasing `k`-tuples from `{0, ..., n-1}` in
/// lexicographic order.
pub fn increasing_multi_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance to the next increasing tuple
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sort an index tuple into increasing order, tracking the permutation
/// sign; `None` when an index repeats (the wedge vanishes).
pub fn sort_indices(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiVector {
    chart: Chart,
    degree: usize,
    comps: BTreeMap<Vec<usize>, RatFunc>,
}

impl MultiVector {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        MultiVector { chart: chart.clone(), degree, comps: BTreeMap::new() }
    }

    /// Build from (index tuple, coefficient) pairs; tuples are sorted with
    /// sign and repeated indices are dropped.
    pub fn from_components(
        chart: &Chart,
        degree: usize,
        terms: Vec<(Vec<usize>, RatFunc)>,
    ) -> Result<Self> {
        let mut mv = MultiVector::zero(chart, degree);
        for (idx, c) in terms {
            mv.add_term(&idx, c)?;
        }
        Ok(mv)
    }

    /// The coordinate vector field `d/dx_i`.
    pub fn basis_vector(chart: &Chart, i: usize) -> Self {
        let mut mv = MultiVector::zero(chart, 1);
        mv.add_term(&[i], RatFunc::constant_on(chart.vars(), Rat::one())).unwrap();
        mv
    }

    /// A vector field from its component functions.
    pub fn vector_field(chart: &Chart, comps: &[RatFunc]) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::Arity { expected: chart.dim(), got: comps.len() });
        }
        let mut mv = MultiVector::zero(chart, 1);
        for (i, c) in comps.iter().enumerate() {
            mv.add_term(&[i], c.clone())?;
        }
        Ok(mv)
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
            return Ok(()); // repeated index: the term vanishes
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

    /// Component on one increasing index tuple (zero when absent).  The
    /// zero is produced on the chart's variables so it can be evaluated at
    /// chart points.
    pub fn component(&self, idx: &[usize]) -> RatFunc {
        let zero = || RatFunc::constant_on(self.chart.vars(), Rat::zero());
        match sort_indices(idx) {
            None => zero(),
            Some((sorted, sign)) => {
                let c = self.comps.get(&sorted).cloned().unwrap_or_else(zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Component functions of a degree-1 multivector, as a dense vector.
    pub fn as_vector_components(&self) -> Vec<RatFunc> {
        assert_eq!(self.degree, 1, "vector components require degree 1");
        (0..self.chart.dim()).map(|i| self.component(&[i])).collect()
    }

    fn check_chart(&self, other: &MultiVector) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector> {
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

    pub fn sub(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiVector {
        self.map_components(|c| -c)
    }

    pub fn scale(&self, f: &RatFunc) -> MultiVector {
        if f.is_zero() {
            return MultiVector::zero(&self.chart, self.degree);
        }
        self.map_components(|c| c * f)
    }

    fn map_components(&self, f: impl Fn(&RatFunc) -> RatFunc) -> MultiVector {
        let mut out = MultiVector::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            let v = f(c);
            if !v.is_zero() {
                out.comps.insert(idx.clone(), v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_chart(other)?;
        let mut out = MultiVector::zero(&self.chart, self.degree + other.degree);
        for (ia, ca) in &self.comps {
            for (ib, cb) in &other.comps {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                out.add_term(&idx, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// First-slot interior product with a covector given by its coefficient
    /// functions: `(i(a)P)(b_2, ..., b_k) = P(a, b_2, ..., b_k)`.
    pub fn interior(&self, covector: &[RatFunc]) -> Result<MultiVector> {
        if covector.len() != self.chart.dim() {
            return Err(Error::Arity { expected: self.chart.dim(), got: covector.len() });
        }
        if self.degree == 0 {
            return Err(Error::Dimension("interior product of a scalar".into()));
        }
        let mut out = MultiVector::zero(&self.chart, self.degree - 1);
        for (idx, c) in &self.comps {
            for (t, &i) in idx.iter().enumerate() {
                if covector[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(t);
                let mut coeff = c * &covector[i];
                if t % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(&rest, coeff)?;
            }
        }
        Ok(out)
    }

    /// Iterated interior product by a decomposable form `dx^{h_1} ^ ...`,
    /// applied first slot first: `i(dx^{h_m}) ... i(dx^{h_1}) P`.
    pub fn interior_coordinate_form(&self, h: &[usize]) -> Result<MultiVector> {
        let mut cur = self.clone();
        for &j in h {
            let mut cov = vec![RatFunc::zero(); self.chart.dim()];
            cov[j] = RatFunc::constant_on(self.chart.vars(), Rat::one());
            cur = cur.interior(&cov)?;
        }
        Ok(cur)
    }

    /// Full pairing with `k` covectors: `P(a_1, ..., a_k)`.
    pub fn pair(&self, covectors: &[Vec<RatFunc>]) -> Result<RatFunc> {
        if covectors.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: covectors.len() });
        }
        let mut cur = self.clone();
        for a in covectors {
            cur = cur.interior(a)?;
        }
        Ok(cur.component(&[]))
    }

    /// The map `(a_1, ..., a_{k-1}) -> i(a_{k-1}) ... i(a_1) P`, a vector
    /// field pairing the remaining LAST slot.
    pub fn sharp(&self, covectors: &[Vec<RatFunc>]) -> Result<MultiVector> {
        if covectors.len() + 1 != self.degree {
            return Err(Error::Arity { expected: self.degree - 1, got: covectors.len() });
        }
        let mut cur = self.clone();
        for a in covectors {
            cur = cur.interior(a)?;
        }
        Ok(cur)
    }

    /// Exact evaluation of all components at a chart point.
    pub fn eval_components(&self, point: &[Rat]) -> Result<BTreeMap<Vec<usize>, Rat>> {
        self.chart.check_point(point)?;
        let mut out = BTreeMap::new();
        for (idx, c) in &self.comps {
            let v = c.eval(point)?;
            if !v.is_zero() {
                out.insert(idx.clone(), v);
            }
        }
        Ok(out)
    }

    /// Lie derivative along a vector field `X` (degree-1 multivector):
    /// `L_X P = X(c_I) dx_I + sum over slots of c_I (... ^ [X, d/dx_i] ^ ...)`
    /// with `[X, d/dx_i] = -sum_j (dX^j/dx_i) d/dx_j`.
    pub fn lie_derivative(&self, x: &MultiVector) -> Result<MultiVector> {
        self.check_chart(x)?;
        if x.degree != 1 {
            return Err(Error::Arity { expected: 1, got: x.degree });
        }
        let xc = x.as_vector_components();
        let n = self.chart.dim();
        let mut out = MultiVector::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            // transport of the coefficient: X(c)
            let mut xc_of_c = RatFunc::zero();
            for j in 0..n {
                if !xc[j].is_zero() {
                    xc_of_c = &xc_of_c + &(&xc[j] * &c.partial(j));
                }
            }
            out.add_term(idx, xc_of_c)?;
            // slot-by-slot bracket terms
            for (t, &i) in idx.iter().enumerate() {
                for (j, xj) in xc.iter().enumerate() {
                    let d = xj.partial(i);
                    if d.is_zero() {
                        continue;
                    }
                    let mut repl = idx.clone();
                    repl[t] = j;
                    out.add_term(&repl, -(c * &d))?;
                }
            }
        }
        Ok(out)
    }

    /// Action of a vector field on a function: `X(f) = sum X^j df/dx_j`.
    pub fn apply_to_function(&self, f: &RatFunc) -> Result<RatFunc> {
        if self.degree != 1 {
            return Err(Error::Arity { expected: 1, got: self.degree });
        }
        let mut out = RatFunc::zero();
        for (idx, c) in &self.comps {
            out = &out + &(c * &f.partial(idx[0]));
        }
        Ok(out)
    }

    /// Lie bracket of two vector fields.
    pub fn vf_bracket(&self, other: &MultiVector) -> Result<MultiVector> {
        self.check_chart(other)?;
        if self.degree != 1 || other.degree != 1 {
            return Err(Error::Arity { expected: 1, got: self.degree.max(other.degree) });
        }
        other.lie_derivative(self)
    }

    /// Apply a linear map to every factor simultaneously (the k-th
    /// exterior power of `f`): `e_{j_1} ^ ... ^ e_{j_k}` maps to
    /// `f(e_{j_1}) ^ ... ^ f(e_{j_k})`, with `f(e_j) = sum_k f[(k, j)] e_k`.
    /// Coefficient functions are carried along unchanged.
    pub fn apply_linear_map(&self, f: &Matrix<RatFunc>) -> Result<MultiVector> {
        let n = self.chart.dim();
        if f.nrows() != n || f.ncols() != n {
            return Err(Error::Dimension("linear map must be square of the chart dimension".into()));
        }
        let mut out = MultiVector::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            // expand the product of columns f[., idx[t]]
            let mut partial: Vec<(Vec<usize>, RatFunc)> = vec![(Vec::new(), c.clone())];
            for &j in idx {
                let mut next = Vec::new();
                for (prefix, coeff) in &partial {
                    for k in 0..n {
                        let entry = &f[(k, j)];
                        if entry.is_zero() {
                            continue;
                        }
                        let mut ext = prefix.clone();
                        ext.push(k);
                        next.push((ext, coeff * entry));
                    }
                }
                partial = next;
            }
            for (full, coeff) in partial {
                out.add_term(&full, coeff)?;
            }
        }
        Ok(out)
    }

    /// Apply a linear map as a derivation over the factors (one slot at a
    /// time): `e_{j_1} ^ ... ^ e_{j_k}` maps to
    /// `sum_t e_{j_1} ^ ... ^ f(e_{j_t}) ^ ... ^ e_{j_k}`.
    /// Coefficient functions are carried along unchanged.
    pub fn slot_matrix_action(&self, f: &Matrix<RatFunc>) -> Result<MultiVector> {
        let n = self.chart.dim();
        if f.nrows() != n || f.ncols() != n {
            return Err(Error::Dimension("linear map must be square of the chart dimension".into()));
        }
        let mut out = MultiVector::zero(&self.chart, self.degree);
        for (idx, c) in &self.comps {
            for t in 0..idx.len() {
                for k in 0..n {
                    let entry = &f[(k, idx[t])];
                    if entry.is_zero() {
                        continue;
                    }
                    let mut repl = idx.clone();
                    repl[t] = k;
                    out.add_term(&repl, c * entry)?;
                }
            }
        }
        Ok(out)
    }

    /// Contraction vector fields `i(dx^H) P` over all increasing
    /// `(k-1)`-tuples `H`; the rows of the induced span.
    fn contraction_vectors(&self) -> Vec<(Vec<usize>, Vec<RatFunc>)> {
        if self.degree == 0 {
            return Vec::new();
        }
        let n = self.chart.dim();
        let mut out = Vec::new();
        for h in increasing_multi_indices(n, self.degree - 1) {
            let v = self
                .interior_coordinate_form(&h)
                .expect("coordinate interior cannot fail");
            let comps = v.as_vector_components();
            if comps.iter().any(|c| !c.is_zero()) {
                out.push((h, comps));
            }
        }
        out
    }

    /// Decomposability over the rational-function field by the wedge
    /// criterion: `P` is decomposable iff `i(dx^H)P ^ P = 0` for every
    /// increasing `(k-1)`-tuple `H`.  Returns a witness `(H, J, value)`
    /// on failure: the tuple `H` and a nonzero component `J` of the wedge.
    pub fn decomposability_witness(&self) -> Option<(Vec<usize>, Vec<usize>, RatFunc)> {
        if self.is_zero() || self.degree <= 1 {
            return None;
        }
        for (h, comps) in self.contraction_vectors() {
            let v = MultiVector::vector_field(&self.chart, &comps).expect("component count");
            let w = v.wedge(self).expect("same chart");
            if let Some((idx, c)) = w.comps.iter().next() {
                return Some((h, idx.clone(), c.clone()));
            }
        }
        None
    }

    pub fn is_decomposable(&self) -> bool {
        self.decomposability_witness().is_none()
    }

    /// Basis (over the rational-function field) of the span of all
    /// contraction vector fields — for a nonzero decomposable `P`, the
    /// `k`-dimensional distribution of its factors.
    pub fn factor_span(&self) -> Vec<Vec<RatFunc>> {
        let rows: Vec<Vec<RatFunc>> =
            self.contraction_vectors().into_iter().map(|(_, v)| v).collect();
        rowspace_basis(&rows, self.chart.dim())
    }

    /// Involutivity of the factor span: every pairwise Lie bracket of the
    /// basis fields must stay inside the span.  Returns the indices of an
    /// offending pair on failure.
    pub fn involutivity_witness(&self) -> Option<(usize, usize)> {
        let basis = self.factor_span();
        for a in 0..basis.len() {
            for b in (a + 1)..basis.len() {
                let xa = MultiVector::vector_field(&self.chart, &basis[a]).expect("dim");
                let xb = MultiVector::vector_field(&self.chart, &basis[b]).expect("dim");
                let br = xa.vf_bracket(&xb).expect("degree 1");
                if !in_span(&basis, &br.as_vector_components()) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_involutive(&self) -> bool {
        self.involutivity_witness().is_none()
    }

    /// Rank of the tensor at one chart point: the dimension of the span of
    /// the contraction vectors evaluated there.
    pub fn rank_at_point(&self, point: &[Rat]) -> Result<usize> {
        self.chart.check_point(point)?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (_, comps) in self.contraction_vectors() {
            let mut row = Vec::with_capacity(comps.len());
            for c in comps {
                row.push(c.eval(point)?);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(0);
        }
        Ok(Matrix::from_rows(rows)?.rank())
    }
}

impl std::fmt::Display for MultiVector {
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
                idx.iter().map(|&i| format!("d/d{}", self.chart.name(i))).collect();
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}) {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    fn chart3() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn one(chart: &Chart) -> RatFunc {
        RatFunc::constant_on(chart.vars(), rat(1))
    }

    fn dx(chart: &Chart, i: usize) -> Vec<RatFunc> {
        let mut v = vec![RatFunc::zero(); chart.dim()];
        v[i] = one(chart);
        v
    }

    #[test]
    fn index_enumeration_and_sign_normalization() {
        assert_eq!(
            increasing_multi_indices(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(sort_indices(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_indices(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_indices(&[1, 1]), None);
    }

    #[test]
    fn wedge_is_antisymmetric_and_kills_repeats() {
        let ch = chart3();
        let e0 = MultiVector::basis_vector(&ch, 0);
        let e1 = MultiVector::basis_vector(&ch, 1);
        let a = e0.wedge(&e1).unwrap();
        let b = e1.wedge(&e0).unwrap();
        assert_eq!(a, b.neg());
        assert!(e0.wedge(&e0).unwrap().is_zero());
    }

    #[test]
    fn interior_fills_the_first_slot() {
        let ch = chart3();
        let e0 = MultiVector::basis_vector(&ch, 0);
        let e1 = MultiVector::basis_vector(&ch, 1);
        let p = e0.wedge(&e1).unwrap();
        // i(dx) (d/dx ^ d/dy) = d/dy
        assert_eq!(p.interior(&dx(&ch, 0)).unwrap(), e1);
        // i(dy) (d/dx ^ d/dy) = -d/dx
        assert_eq!(p.interior(&dx(&ch, 1)).unwrap(), e0.neg());
    }

    #[test]
    fn pairing_matches_the_determinant_formula() {
        let ch = chart3();
        // P = (x) d/dx^d/dy^d/dz
        let x = ch.coordinate(0);
        let p = MultiVector::from_components(&ch, 3, vec![(vec![0, 1, 2], x.clone())]).unwrap();
        // generic covectors a, b, c with polynomial entries
        let covs: Vec<Vec<RatFunc>> = vec![
            vec![ch.coordinate(0), ch.coordinate(1), ch.coordinate(2)],
            vec![one(&ch), ch.constant(rat(2)), ch.constant(rat(3))],
            vec![ch.coordinate(2), RatFunc::zero(), one(&ch)],
        ];
        let lhs = p.pair(&covs).unwrap();
        // determinant oracle: P(a,b,c) = x * det[a; b; c]
        let det = Matrix::from_rows(covs).unwrap().det();
        assert_eq!(lhs, &x * &det);
    }

    #[test]
    fn sharp_pairs_the_last_slot() {
        let ch = chart3();
        let p = MultiVector::from_components(&ch, 3, vec![(vec![0, 1, 2], one(&ch))]).unwrap();
        // sharp(dx, dy) leaves the field pairing the last slot: d/dz
        let v = p.sharp(&[dx(&ch, 0), dx(&ch, 1)]).unwrap();
        assert_eq!(v, MultiVector::basis_vector(&ch, 2));
        // consistency: pairing the result with dz equals P(dx, dy, dz)
        assert_eq!(v.pair(&[dx(&ch, 2)]).unwrap(), p.pair(&[dx(&ch, 0), dx(&ch, 1), dx(&ch, 2)]).unwrap());
    }

    #[test]
    fn lie_derivative_matches_hand_computed_brackets() {
        let ch = chart3();
        // X = x d/dy; P = d/dx ^ d/dy: L_X P = [X,d/dx]^d/dy + d/dx^[X,d/dy] = 0
        let x_field = MultiVector::from_components(&ch, 1, vec![(vec![1], ch.coordinate(0))]).unwrap();
        let p = MultiVector::basis_vector(&ch, 0).wedge(&MultiVector::basis_vector(&ch, 1)).unwrap();
        assert!(p.lie_derivative(&x_field).unwrap().is_zero());
        // [x d/dy, y d/dx] = x d/dx - y d/dy
        let y_field = MultiVector::from_components(&ch, 1, vec![(vec![0], ch.coordinate(1))]).unwrap();
        let br = x_field.vf_bracket(&y_field).unwrap();
        let expect = MultiVector::from_components(
            &ch,
            1,
            vec![(vec![0], ch.coordinate(0)), (vec![1], -ch.coordinate(1))],
        )
        .unwrap();
        assert_eq!(br, expect);
    }

    #[test]
    fn decomposable_and_nondecomposable_trivectors_are_told_apart() {
        let ch5 = Chart::new(&["x1", "x2", "x3", "x4", "x5"]).unwrap();
        let mk = |idx: Vec<usize>| {
            MultiVector::from_components(
                &ch5,
                3,
                vec![(idx, RatFunc::constant_on(ch5.vars(), rat(1)))],
            )
            .unwrap()
        };
        let dec = mk(vec![0, 1, 2]);
        assert!(dec.is_decomposable());
        let sum = mk(vec![0, 1, 2]).add(&mk(vec![0, 3, 4])).unwrap();
        assert!(!sum.is_decomposable());
        // but d/d1^d/d2^d/d3 + d/d1^d/d2^d/d4 = d/d1^d/d2^(d/d3+d/d4) is decomposable
        let dec2 = mk(vec![0, 1, 2]).add(&mk(vec![0, 1, 3])).unwrap();
        assert!(dec2.is_decomposable());
        assert_eq!(dec2.factor_span().len(), 3);
    }

    #[test]
    fn involutivity_detects_the_twisted_plane_field() {
        // d/d1 ^ d/d2 ^ (d/d3 + x2 d/d4): decomposable but not involutive,
        // because [d/d2, d/d3 + x2 d/d4] = d/d4 escapes the span.
        let ch = Chart::new(&["x1", "x2", "x3", "x4"]).unwrap();
        let e = |i: usize| MultiVector::basis_vector(&ch, i);
        let twisted = e(2)
            .add(&e(3).scale(&ch.coordinate(1)))
            .unwrap();
        let p = e(0).wedge(&e(1)).unwrap().wedge(&twisted).unwrap();
        assert!(p.is_decomposable());
        assert!(!p.is_involutive());
        // the straight version is involutive
        let q = e(0).wedge(&e(1)).unwrap().wedge(&e(2)).unwrap();
        assert!(q.is_involutive());
    }

    #[test]
    fn rank_at_point_sees_vanishing_loci() {
        let ch = chart3();
        // P = x d/dx^d/dy: rank 2 where x != 0, rank 0 at x = 0
        let p = MultiVector::from_components(&ch, 2, vec![(vec![0, 1], ch.coordinate(0))]).unwrap();
        assert_eq!(p.rank_at_point(&[rat(2), rat(0), rat(0)]).unwrap(), 2);
        assert_eq!(p.rank_at_point(&[rat(0), rat(5), rat(1)]).unwrap(), 0);
        let z: Vec<Rat> = vec![Rat::zero(); 3];
        assert_eq!(MultiVector::zero(&ch, 2).rank_at_point(&z).unwrap(), 0);
    }
}
