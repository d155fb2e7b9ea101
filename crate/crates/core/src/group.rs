//! Lie groups presented on a single rational coordinate chart.
//!
//! The multiplication law is written in "doubled" variables: the first
//! factor keeps the chart's coordinate names and the second factor gets a
//! primed copy of each name.  Law, inversion and unit are exact rational
//! data, so the group axioms, the translation Jacobians and the product
//! rule for a multivector field can all be decided symbolically — an
//! identity of rational functions either holds on the whole chart domain
//! or it does not.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::forms::DiffForm;
use crate::liealg::{linear_tensor, LieAlgebra};
use crate::matrix::Matrix;
use crate::multivector::{increasing_multi_indices, MultiVector};
use crate::nambu::form_bracket;
use crate::poly::{Mono, Poly, VarSet};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use num::Zero;

/// A copy of the chart with every coordinate name suffixed, carrying the
/// same excluded locus.
fn suffixed_chart(chart: &Chart, suffix: &str) -> Result<Chart> {
    let names: Vec<String> =
        (0..chart.dim()).map(|i| format!("{}{}", chart.name(i), suffix)).collect();
    let vars = VarSet::new(&names)?;
    let identity: Vec<usize> = (0..chart.dim()).collect();
    let nonzero = chart
        .nonzero_constraints()
        .iter()
        .map(|p| p.map_vars(&vars, &identity))
        .collect::<Result<Vec<_>>>()?;
    Chart::with_nonzero(&names, nonzero)
}

/// The chart for a pair of group elements: the first factor keeps the
/// coordinate names and the second factor gets a trailing prime on each.
pub fn doubled_chart(chart: &Chart) -> Result<Chart> {
    chart.product(&suffixed_chart(chart, "'")?)
}

fn restrict_poly(p: &Poly, target: &VarSet, positions: &[usize]) -> Result<Poly> {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut e = vec![0u32; target.len()];
        for (v, &exp) in m.0.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let Some(r) = positions.iter().position(|&q| q == v) else {
                return Err(Error::Invalid(format!(
                    "function depends on {}, which the restriction drops",
                    p.vars().name(v)
                )));
            };
            e[r] = exp;
        }
        terms.push((Mono(e), c.clone()));
    }
    Poly::from_terms(target, terms)
}

/// Rewrite a function that only involves the listed variables as a function
/// on `target` (the reverse of `map_vars`).
fn restrict(f: &RatFunc, target: &Chart, positions: &[usize]) -> Result<RatFunc> {
    RatFunc::new(
        restrict_poly(f.num(), target.vars(), positions)?,
        restrict_poly(f.den(), target.vars(), positions)?,
    )
}

/// A Lie group whose underlying manifold is one chart domain and whose
/// multiplication is rational in the coordinates of the two factors.
#[derive(Debug, Clone)]
pub struct ChartGroup {
    chart: Chart,
    doubled: Chart,
    law: Vec<RatFunc>,
    unit: Vec<Rat>,
    inverse: Vec<RatFunc>,
}

impl ChartGroup {
    /// `law` components live on `doubled_chart(&chart)` (first factor
    /// unprimed, second factor primed); `inverse` components live on the
    /// chart itself.  Only arities and variable sets are validated here;
    /// the group axioms are checked by [`ChartGroup::axioms_witness`].
    pub fn new(
        chart: Chart,
        law: Vec<RatFunc>,
        unit: Vec<Rat>,
        inverse: Vec<RatFunc>,
    ) -> Result<Self> {
        let n = chart.dim();
        let doubled = doubled_chart(&chart)?;
        if law.len() != n {
            return Err(Error::Arity { expected: n, got: law.len() });
        }
        if unit.len() != n {
            return Err(Error::Arity { expected: n, got: unit.len() });
        }
        if inverse.len() != n {
            return Err(Error::Arity { expected: n, got: inverse.len() });
        }
        if law.iter().any(|f| f.vars() != doubled.vars()) {
            return Err(Error::VarSetMismatch);
        }
        if inverse.iter().any(|f| f.vars() != chart.vars()) {
            return Err(Error::VarSetMismatch);
        }
        chart.check_point(&unit)?;
        Ok(ChartGroup { chart, doubled, law, unit, inverse })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The chart of pairs on which the law components live.
    pub fn doubled(&self) -> &Chart {
        &self.doubled
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn law(&self) -> &[RatFunc] {
        &self.law
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn inversion(&self) -> &[RatFunc] {
        &self.inverse
    }

    /// Multiply two chart points.
    pub fn multiply_points(&self, a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>> {
        self.chart.check_point(a)?;
        self.chart.check_point(b)?;
        let pair: Vec<Rat> = a.iter().chain(b).cloned().collect();
        let out = self.law.iter().map(|f| f.eval(&pair)).collect::<Result<Vec<_>>>()?;
        self.chart.check_point(&out)?;
        Ok(out)
    }

    pub fn invert_point(&self, a: &[Rat]) -> Result<Vec<Rat>> {
        self.chart.check_point(a)?;
        let out = self.inverse.iter().map(|f| f.eval(a)).collect::<Result<Vec<_>>>()?;
        self.chart.check_point(&out)?;
        Ok(out)
    }

    /// First group-axiom failure, if any.  The unit laws, associativity and
    /// the two inversion laws are all checked as identities of rational
    /// functions (associativity over a tripled chart), so `None` is a proof
    /// on the chart domain.
    pub fn axioms_witness(&self) -> Result<Option<String>> {
        let n = self.dim();
        let freeze_second: Vec<(usize, Rat)> =
            (0..n).map(|j| (n + j, self.unit[j].clone())).collect();
        let freeze_first: Vec<(usize, Rat)> =
            (0..n).map(|j| (j, self.unit[j].clone())).collect();
        for i in 0..n {
            if self.law[i].subst_partial(&freeze_second)? != self.doubled.coordinate(i) {
                return Ok(Some(format!(
                    "right unit law fails in coordinate {}",
                    self.chart.name(i)
                )));
            }
            if self.law[i].subst_partial(&freeze_first)? != self.doubled.coordinate(n + i) {
                return Ok(Some(format!(
                    "left unit law fails in coordinate {}",
                    self.chart.name(i)
                )));
            }
        }

        let tripled = self.doubled.product(&suffixed_chart(&self.chart, "''")?)?;
        let first_two: Vec<usize> = (0..2 * n).collect();
        let last_two: Vec<usize> = (n..3 * n).collect();
        let ab = self
            .law
            .iter()
            .map(|f| f.map_vars(tripled.vars(), &first_two))
            .collect::<Result<Vec<_>>>()?;
        let bc = self
            .law
            .iter()
            .map(|f| f.map_vars(tripled.vars(), &last_two))
            .collect::<Result<Vec<_>>>()?;
        let ab_then_c: Vec<RatFunc> =
            ab.into_iter().chain((0..n).map(|j| tripled.coordinate(2 * n + j))).collect();
        let a_then_bc: Vec<RatFunc> =
            (0..n).map(|j| tripled.coordinate(j)).chain(bc).collect();
        for i in 0..n {
            if self.law[i].compose(&ab_then_c)? != self.law[i].compose(&a_then_bc)? {
                return Ok(Some(format!(
                    "associativity fails in coordinate {}",
                    self.chart.name(i)
                )));
            }
        }

        let id: Vec<RatFunc> = (0..n).map(|j| self.chart.coordinate(j)).collect();
        let right_inv: Vec<RatFunc> = id.iter().chain(self.inverse.iter()).cloned().collect();
        let left_inv: Vec<RatFunc> = self.inverse.iter().chain(id.iter()).cloned().collect();
        for i in 0..n {
            let unit = self.chart.constant(self.unit[i].clone());
            if self.law[i].compose(&right_inv)? != unit {
                return Ok(Some(format!(
                    "g * inv(g) misses the unit in coordinate {}",
                    self.chart.name(i)
                )));
            }
            if self.law[i].compose(&left_inv)? != unit {
                return Ok(Some(format!(
                    "inv(g) * g misses the unit in coordinate {}",
                    self.chart.name(i)
                )));
            }
        }
        Ok(None)
    }

    pub fn is_group(&self) -> Result<bool> {
        Ok(self.axioms_witness()?.is_none())
    }

    /// A field of the group chart re-read as a field of the doubled chart,
    /// with coefficients pulled back from the chosen factor.
    fn lift(&self, p: &MultiVector, positions: &[usize]) -> Result<MultiVector> {
        let terms = p
            .components()
            .map(|(idx, c)| Ok((idx.clone(), c.map_vars(self.doubled.vars(), positions)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiVector::from_components(&self.doubled, p.degree(), terms)
    }

    /// Tangent map of translation by the other factor, as a matrix over the
    /// doubled chart.  Differentiating the law in the second factor gives
    /// left translation; in the first factor, right translation.  Only the
    /// unprimed block is populated — the tangent indices of a group field
    /// stay below the chart dimension.
    fn translation_jacobian(&self, second_factor: bool) -> Matrix<RatFunc> {
        let n = self.dim();
        let zero = RatFunc::constant_on(self.doubled.vars(), Rat::zero());
        Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j < n {
                self.law[i].partial(if second_factor { n + j } else { j })
            } else {
                zero.clone()
            }
        })
    }

    /// Residual of the product rule for a multivector field: the components
    /// of `p` at a product of points, minus the left translate of `p` at
    /// the second factor, minus the right translate of `p` at the first —
    /// all as one field over the doubled chart.
    pub fn multiplicativity_residual(&self, p: &MultiVector) -> Result<MultiVector> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        let n = self.dim();
        let at_product = MultiVector::from_components(
            &self.doubled,
            p.degree(),
            p.components()
                .map(|(idx, c)| Ok((idx.clone(), c.compose(&self.law)?)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let first: Vec<usize> = (0..n).collect();
        let second: Vec<usize> = (n..2 * n).collect();
        let left_push =
            self.lift(p, &second)?.apply_linear_map(&self.translation_jacobian(true))?;
        let right_push =
            self.lift(p, &first)?.apply_linear_map(&self.translation_jacobian(false))?;
        at_product.sub(&left_push)?.sub(&right_push)
    }

    /// First nonzero component of the product-rule residual, if any.
    pub fn multiplicativity_witness(
        &self,
        p: &MultiVector,
    ) -> Result<Option<(Vec<usize>, RatFunc)>> {
        let r = self.multiplicativity_residual(p)?;
        let first = r.components().next().map(|(idx, c)| (idx.clone(), c.clone()));
        Ok(first)
    }

    pub fn is_multiplicative(&self, p: &MultiVector) -> Result<bool> {
        Ok(self.multiplicativity_residual(p)?.is_zero())
    }

    fn frame_matrix(&self, left: bool) -> Result<Matrix<RatFunc>> {
        let n = self.dim();
        // For left translation differentiate the law in the second factor
        // and freeze that factor at the unit; for right translation swap
        // the roles of the factors.
        let (diff_offset, keep): (usize, Vec<usize>) =
            if left { (n, (0..n).collect()) } else { (0, (n..2 * n).collect()) };
        let freeze: Vec<(usize, Rat)> = (0..n)
            .map(|j| (if left { n + j } else { j }, self.unit[j].clone()))
            .collect();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let d = self.law[i].partial(diff_offset + j).subst_partial(&freeze)?;
                row.push(restrict(&d, &self.chart, &keep)?);
            }
            rows.push(row);
        }
        Matrix::from_rows(rows)
    }

    /// Differential of left translation at the unit: column `j` is the
    /// left-invariant vector field extending `d/dx_j` at the unit.
    pub fn left_frame_matrix(&self) -> Result<Matrix<RatFunc>> {
        self.frame_matrix(true)
    }

    /// Differential of right translation at the unit (columns extend the
    /// coordinate frame right-invariantly).
    pub fn right_frame_matrix(&self) -> Result<Matrix<RatFunc>> {
        self.frame_matrix(false)
    }

    pub fn left_invariant_frame(&self) -> Result<Vec<MultiVector>> {
        let a = self.left_frame_matrix()?;
        (0..self.dim())
            .map(|j| {
                let comps: Vec<RatFunc> = (0..self.dim()).map(|i| a[(i, j)].clone()).collect();
                MultiVector::vector_field(&self.chart, &comps)
            })
            .collect()
    }

    /// The coframe of left-invariant one-forms dual to the left-invariant
    /// frame: the rows of the inverse frame matrix.
    pub fn left_invariant_coframe(&self) -> Result<Vec<DiffForm>> {
        let a = self.left_frame_matrix()?;
        let inv = a
            .inverse()
            .ok_or_else(|| Error::Invalid("left frame matrix is singular".into()))?;
        // Inversion can leave untouched entries on the scalar variable set;
        // anchor everything back onto the chart before building forms.
        let zero = self.chart.constant(Rat::zero());
        (0..self.dim())
            .map(|i| {
                let comps: Vec<RatFunc> = inv.row(i).iter().map(|f| f + &zero).collect();
                DiffForm::one_form(&self.chart, &comps)
            })
            .collect()
    }

    pub fn vanishes_at_unit(&self, p: &MultiVector) -> Result<bool> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(p.eval_components(&self.unit)?.values().all(|v| v.is_zero()))
    }

    /// The two-part multiplicativity criterion for a connected group: the
    /// field must vanish at the unit, and the bracket of every increasing
    /// tuple of coframe one-forms must again be left-invariant, i.e. have
    /// constant coefficients in the coframe.
    pub fn coframe_criterion(&self, p: &MultiVector) -> Result<CoframeCriterion> {
        let vanishes_at_unit = self.vanishes_at_unit(p)?;
        let frame = self.left_invariant_frame()?;
        let coframe = self.left_invariant_coframe()?;
        let mut coefficients = Vec::new();
        for tuple in increasing_multi_indices(self.dim(), p.degree()) {
            let alphas: Vec<DiffForm> = tuple.iter().map(|&i| coframe[i].clone()).collect();
            let bracket = form_bracket(p, &alphas)?;
            let cs = frame
                .iter()
                .map(|x| bracket.pair_vector(x))
                .collect::<Result<Vec<_>>>()?;
            coefficients.push((tuple, cs));
        }
        Ok(CoframeCriterion { vanishes_at_unit, coefficients })
    }

    /// Structure constants of the Lie algebra from the mixed second
    /// partials of the law at the unit,
    /// `c^k_ij = d2 m^k / dx_i dx'_j - d2 m^k / dx_j dx'_i`.
    /// Basis names are the uppercased coordinate names.
    pub fn lie_algebra(&self) -> Result<LieAlgebra> {
        let n = self.dim();
        let ee: Vec<Rat> = self.unit.iter().chain(self.unit.iter()).cloned().collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut comps = Vec::new();
                for k in 0..n {
                    let a = self.law[k].partial(i).partial(n + j).eval(&ee)?;
                    let b = self.law[k].partial(j).partial(n + i).eval(&ee)?;
                    let c = a - b;
                    if !c.is_zero() {
                        comps.push((k, c));
                    }
                }
                if !comps.is_empty() {
                    entries.push((i, j, comps));
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| self.chart.name(i).to_uppercase()).collect();
        LieAlgebra::new(&names, &entries)
    }

    /// First-order part at the unit of a field that vanishes there, written
    /// on a Lie-algebra chart of the same dimension (typically
    /// `self.lie_algebra()?.chart()`).
    pub fn linear_approximation(&self, p: &MultiVector, target: &Chart) -> Result<MultiVector> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch);
        }
        if target.dim() != self.dim() {
            return Err(Error::Dimension(
                "linearization chart must match the group dimension".into(),
            ));
        }
        let mut terms = Vec::new();
        for (idx, c) in p.components() {
            for a in 0..self.dim() {
                let v = c.partial(a).eval(&self.unit)?;
                if !v.is_zero() {
                    terms.push((a, idx.clone(), v));
                }
            }
        }
        linear_tensor(target, p.degree(), &terms)
    }

    /// Direct product of two chart groups.
    pub fn product(&self, other: &ChartGroup) -> Result<ChartGroup> {
        let na = self.dim();
        let nb = other.dim();
        let n = na + nb;
        let chart = self.chart.product(&other.chart)?;
        let doubled = doubled_chart(&chart)?;
        let a_pos: Vec<usize> = (0..na).chain(n..n + na).collect();
        let b_pos: Vec<usize> = (na..n).chain(n + na..2 * n).collect();
        let mut law = Vec::with_capacity(n);
        for f in &self.law {
            law.push(f.map_vars(doubled.vars(), &a_pos)?);
        }
        for f in &other.law {
            law.push(f.map_vars(doubled.vars(), &b_pos)?);
        }
        let unit: Vec<Rat> = self.unit.iter().chain(other.unit.iter()).cloned().collect();
        let first: Vec<usize> = (0..na).collect();
        let second: Vec<usize> = (na..n).collect();
        let mut inverse = Vec::with_capacity(n);
        for f in &self.inverse {
            inverse.push(f.map_vars(chart.vars(), &first)?);
        }
        for f in &other.inverse {
            inverse.push(f.map_vars(chart.vars(), &second)?);
        }
        ChartGroup::new(chart, law, unit, inverse)
    }
}

/// Outcome of [`ChartGroup::coframe_criterion`].
#[derive(Debug, Clone)]
pub struct CoframeCriterion {
    pub vanishes_at_unit: bool,
    /// For each increasing coframe tuple, the coframe coefficients of the
    /// bracket of those one-forms.
    pub coefficients: Vec<(Vec<usize>, Vec<RatFunc>)>,
}

impl CoframeCriterion {
    pub fn coefficients_constant(&self) -> bool {
        self.coefficients.iter().all(|(_, cs)| cs.iter().all(|c| c.is_constant()))
    }

    pub fn passed(&self) -> bool {
        self.vanishes_at_unit && self.coefficients_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratq};

    /// The solvable group of scalings and translations of the plane: the
    /// first coordinate scales, the other two translate.
    fn scaling_group() -> ChartGroup {
        let vs = VarSet::new(&["x", "y", "z"]).unwrap();
        let chart = Chart::with_nonzero(&["x", "y", "z"], vec![Poly::var(&vs, 0)]).unwrap();
        let d = doubled_chart(&chart).unwrap();
        let law = vec![
            &d.coordinate(0) * &d.coordinate(3),
            &(&d.coordinate(0) * &d.coordinate(4)) + &d.coordinate(1),
            &(&d.coordinate(0) * &d.coordinate(5)) + &d.coordinate(2),
        ];
        let x = chart.coordinate(0);
        let inverse = vec![
            x.recip().unwrap(),
            -&(&chart.coordinate(1) / &x),
            -&(&chart.coordinate(2) / &x),
        ];
        ChartGroup::new(chart, law, vec![rat(1), rat(0), rat(0)], inverse).unwrap()
    }

    /// Heisenberg group with `p` translation pairs: coordinates
    /// `x_1..x_p, y, z_1..z_p`, law `z_i -> z_i + z_i' + x_i y'`.
    fn heisenberg(p: usize) -> ChartGroup {
        let names: Vec<String> = if p == 1 {
            vec!["x".into(), "y".into(), "z".into()]
        } else {
            let mut v: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
            v.push("y".into());
            v.extend((1..=p).map(|i| format!("z{i}")));
            v
        };
        let chart = Chart::new(&names).unwrap();
        let n = 2 * p + 1;
        let d = doubled_chart(&chart).unwrap();
        let mut law = Vec::new();
        for i in 0..=p {
            law.push(&d.coordinate(i) + &d.coordinate(n + i));
        }
        for i in 0..p {
            let z = p + 1 + i;
            let translate = &d.coordinate(z) + &d.coordinate(n + z);
            law.push(&translate + &(&d.coordinate(i) * &d.coordinate(n + p)));
        }
        let unit = vec![rat(0); n];
        let mut inverse: Vec<RatFunc> = (0..=p).map(|i| -&chart.coordinate(i)).collect();
        for i in 0..p {
            let z = p + 1 + i;
            inverse.push(&(-&chart.coordinate(z)) + &(&chart.coordinate(i) * &chart.coordinate(p)));
        }
        ChartGroup::new(chart, law, unit, inverse).unwrap()
    }

    fn additive_line() -> ChartGroup {
        let chart = Chart::new(&["s"]).unwrap();
        let d = doubled_chart(&chart).unwrap();
        ChartGroup::new(
            chart.clone(),
            vec![&d.coordinate(0) + &d.coordinate(1)],
            vec![rat(0)],
            vec![-&chart.coordinate(0)],
        )
        .unwrap()
    }

    fn volume(chart: &Chart, f: RatFunc) -> MultiVector {
        MultiVector::from_components(chart, 3, vec![(vec![0, 1, 2], f)]).unwrap()
    }

    #[test]
    fn rejects_malformed_group_data() {
        let chart = Chart::new(&["x", "y", "z"]).unwrap();
        let d = doubled_chart(&chart).unwrap();
        let too_short = vec![&d.coordinate(0) + &d.coordinate(3)];
        assert!(ChartGroup::new(
            chart.clone(),
            too_short,
            vec![rat(0), rat(0), rat(0)],
            vec![chart.coordinate(0), chart.coordinate(1), chart.coordinate(2)],
        )
        .is_err());

        // unit outside the chart domain
        let vs = VarSet::new(&["x"]).unwrap();
        let punctured = Chart::with_nonzero(&["x"], vec![Poly::var(&vs, 0)]).unwrap();
        let dd = doubled_chart(&punctured).unwrap();
        assert!(ChartGroup::new(
            punctured.clone(),
            vec![&dd.coordinate(0) * &dd.coordinate(1)],
            vec![rat(0)],
            vec![punctured.coordinate(0)],
        )
        .is_err());
    }

    #[test]
    fn group_axioms_hold_exactly_and_flag_a_nonassociative_law() {
        assert_eq!(scaling_group().axioms_witness().unwrap(), None);
        assert_eq!(heisenberg(1).axioms_witness().unwrap(), None);

        // same unit and inversion shape, but the y-law picks up a term
        // x^2 x' that breaks associativity
        let chart = Chart::new(&["x", "y"]).unwrap();
        let d = doubled_chart(&chart).unwrap();
        let xx = &d.coordinate(0) * &d.coordinate(0);
        let law = vec![
            &d.coordinate(0) + &d.coordinate(2),
            &(&d.coordinate(1) + &d.coordinate(3)) + &(&xx * &d.coordinate(2)),
        ];
        let cx = chart.coordinate(0);
        let x3 = &(&cx * &cx) * &cx;
        let inverse = vec![-&cx, &x3 - &chart.coordinate(1)];
        let broken = ChartGroup::new(chart, law, vec![rat(0), rat(0)], inverse).unwrap();
        assert_eq!(
            broken.axioms_witness().unwrap(),
            Some("associativity fails in coordinate y".into())
        );
    }

    #[test]
    fn point_arithmetic_follows_the_law() {
        let g = scaling_group();
        let prod = g.multiply_points(&[rat(2), rat(1), rat(1)], &[rat(3), rat(0), rat(1)]).unwrap();
        assert_eq!(prod, vec![rat(6), rat(1), rat(3)]);
        let inv = g.invert_point(&[rat(2), rat(1), rat(1)]).unwrap();
        assert_eq!(inv, vec![ratq(1, 2), ratq(-1, 2), ratq(-1, 2)]);
        assert_eq!(
            g.multiply_points(&[rat(2), rat(1), rat(1)], &inv).unwrap(),
            vec![rat(1), rat(0), rat(0)]
        );
    }

    #[test]
    fn scaling_group_frames_scale_the_coordinate_directions() {
        let g = scaling_group();
        let x = g.chart().coordinate(0);

        let a = g.left_frame_matrix().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(a[(i, j)], x);
                } else {
                    assert!(a[(i, j)].is_zero());
                }
            }
        }

        let coframe = g.left_invariant_coframe().unwrap();
        let inv_x = x.recip().unwrap();
        for (i, theta) in coframe.iter().enumerate() {
            for j in 0..3 {
                if i == j {
                    assert_eq!(theta.component(&[j]), inv_x);
                } else {
                    assert!(theta.component(&[j]).is_zero());
                }
            }
        }

        // right translation instead extends d/dx to the Euler field
        let b = g.right_frame_matrix().unwrap();
        assert_eq!(b[(0, 0)], x);
        assert_eq!(b[(1, 0)], g.chart().coordinate(1));
        assert_eq!(b[(2, 0)], g.chart().coordinate(2));
        assert_eq!(b[(1, 1)], g.chart().constant(rat(1)));
        assert_eq!(b[(2, 2)], g.chart().constant(rat(1)));
        assert!(b[(0, 1)].is_zero() && b[(2, 1)].is_zero());

        let alg = g.lie_algebra().unwrap();
        assert_eq!(alg.basis_name(0), "X");
        assert_eq!(alg.bracket_basis(0, 1), vec![rat(0), rat(1), rat(0)]);
        assert_eq!(alg.bracket_basis(0, 2), vec![rat(0), rat(0), rat(1)]);
        assert_eq!(alg.bracket_basis(1, 2), vec![rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn multiplicative_volume_scalings_solve_a_functional_equation() {
        let g = scaling_group();
        let x = g.chart().coordinate(0);
        let x3 = &(&x * &x) * &x;

        // The law multiplies the first coordinates and both translations
        // push a volume by x^3 resp. x', so f d/dx^d/dy^d/dz obeys the
        // product rule exactly when f(x x') = x^3 f(x') + x' f(x).
        let f = (&x3 - &x).scale(&ratq(1, 2));
        assert!(g.is_multiplicative(&volume(g.chart(), f)).unwrap());

        let d = g.doubled();
        let leak = -&(&(&(&d.coordinate(0) * &d.coordinate(0)) * &d.coordinate(0))
            * &d.coordinate(3));
        assert_eq!(
            g.multiplicativity_witness(&volume(g.chart(), x3)).unwrap(),
            Some((vec![0, 1, 2], leak))
        );
    }

    #[test]
    fn unit_value_and_coframe_brackets_classify_volume_scalings() {
        let g = scaling_group();
        let x = g.chart().coordinate(0);
        let x3 = &(&x * &x) * &x;
        let f3 = (&x3 - &x).scale(&ratq(1, 2));

        let good = g.coframe_criterion(&volume(g.chart(), f3)).unwrap();
        assert!(good.vanishes_at_unit);
        assert_eq!(good.coefficients.len(), 1);
        assert_eq!(good.coefficients[0].0, vec![0, 1, 2]);
        assert_eq!(good.coefficients[0].1[0], g.chart().constant(rat(1)));
        assert!(good.coefficients[0].1[1].is_zero());
        assert!(good.coefficients[0].1[2].is_zero());
        assert!(good.passed());

        // x^3 keeps the coframe brackets invariant but misses the unit
        // value; x^2 vanishes nowhere relevant AND bends the coefficient.
        let cubic = g.coframe_criterion(&volume(g.chart(), x3)).unwrap();
        assert!(!cubic.vanishes_at_unit);
        assert!(cubic.coefficients_constant());
        assert_eq!(cubic.coefficients[0].1[0], g.chart().constant(rat(2)));
        assert!(!cubic.passed());

        let quadratic = g.coframe_criterion(&volume(g.chart(), &x * &x)).unwrap();
        assert!(!quadratic.coefficients_constant());
        assert_eq!(quadratic.coefficients[0].1[0], x.recip().unwrap());
        assert!(!quadratic.passed());
    }

    #[test]
    fn heisenberg_frames_brackets_and_linearization() {
        let g = heisenberg(1);
        assert_eq!(g.axioms_witness().unwrap(), None);

        let alg = g.lie_algebra().unwrap();
        assert_eq!(alg.basis_name(2), "Z");
        assert_eq!(alg.bracket_basis(0, 1), vec![rat(0), rat(0), rat(1)]);
        assert_eq!(alg.bracket_basis(0, 2), vec![rat(0), rat(0), rat(0)]);
        assert_eq!(alg.bracket_basis(1, 2), vec![rat(0), rat(0), rat(0)]);

        let coframe = g.left_invariant_coframe().unwrap();
        assert_eq!(coframe[0].component(&[0]), g.chart().constant(rat(1)));
        assert!(coframe[0].component(&[1]).is_zero());
        assert_eq!(coframe[2].component(&[1]), -&g.chart().coordinate(0));
        assert_eq!(coframe[2].component(&[2]), g.chart().constant(rat(1)));

        let b = g.right_frame_matrix().unwrap();
        assert_eq!(b[(2, 0)], g.chart().coordinate(1));
        assert_eq!(b[(2, 2)], g.chart().constant(rat(1)));
        assert!(b[(2, 1)].is_zero());

        let p = volume(g.chart(), -&g.chart().coordinate(1));
        assert!(g.is_multiplicative(&p).unwrap());

        let crit = g.coframe_criterion(&p).unwrap();
        assert!(crit.vanishes_at_unit);
        assert!(crit.coefficients[0].1[0].is_zero());
        assert_eq!(crit.coefficients[0].1[1], g.chart().constant(rat(-1)));
        assert!(crit.coefficients[0].1[2].is_zero());
        assert!(crit.passed());

        let lin = g.linear_approximation(&p, alg.chart()).unwrap();
        let expected = linear_tensor(alg.chart(), 3, &[(1, vec![0, 1, 2], rat(-1))]).unwrap();
        assert_eq!(lin, expected);
    }

    #[test]
    fn wider_heisenberg_volume_leaks_under_left_translation() {
        let g = heisenberg(3);
        assert_eq!(g.axioms_witness().unwrap(), None);

        // the shape that is multiplicative at p = 1: y d/dx1 ^ d/dz1 ^ d/dy
        let p = MultiVector::from_components(
            g.chart(),
            3,
            vec![(vec![0, 3, 4], -&g.chart().coordinate(3))],
        )
        .unwrap();

        // Left translation extends d/dy to d/dy + sum_i x_i d/dz_i, and for
        // p > 1 the extra directions survive the wedge with d/dz_1.
        let d = g.doubled();
        let leak = -&(&d.coordinate(1) * &d.coordinate(10));
        assert_eq!(
            g.multiplicativity_witness(&p).unwrap(),
            Some((vec![0, 4, 5], leak))
        );
    }

    #[test]
    fn products_carry_the_factor_laws_and_invariant_volumes() {
        let g = heisenberg(1).product(&additive_line()).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.axioms_witness().unwrap(), None);

        let d = g.doubled();
        let expected_z = &(&d.coordinate(2) + &d.coordinate(6))
            + &(&d.coordinate(0) * &d.coordinate(5));
        assert_eq!(g.law()[2], expected_z);
        assert_eq!(g.law()[3], &d.coordinate(3) + &d.coordinate(7));

        let alg = g.lie_algebra().unwrap();
        assert_eq!(alg.bracket_basis(0, 1), vec![rat(0), rat(0), rat(1), rat(0)]);
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert!(alg.bracket_basis(i, j).iter().all(|c| c.is_zero()));
        }

        let s = g.chart().coordinate(3);
        let p = MultiVector::from_components(g.chart(), 3, vec![(vec![1, 2, 3], s)]).unwrap();
        assert!(g.is_multiplicative(&p).unwrap());
        assert!(g.coframe_criterion(&p).unwrap().passed());

        let lin = g.linear_approximation(&p, alg.chart()).unwrap();
        assert_eq!(lin, linear_tensor(alg.chart(), 3, &[(3, vec![1, 2, 3], rat(1))]).unwrap());
    }
}
