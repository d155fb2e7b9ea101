//! Finite-dimensional Lie algebras with exact rational structure constants,
//! and the linear multivector calculus on them: adjoint/coadjoint actions,
//! cocycle and coboundary tensors, cores of linear tensors, the induced
//! bracket on the dual space, and exact searches for compatible linear
//! structures built over an ideal.
//!
//! A Lie algebra carries a chart with one linear coordinate per basis
//! element, so a [`MultiVector`] over that chart with constant coefficients
//! is an element of the exterior algebra, while one with homogeneous linear
//! coefficients is a linear tensor on the algebra.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::matrix::{in_span, rowspace_basis, Matrix};
use crate::multivector::{increasing_multi_indices, MultiVector};
use crate::poly::{Mono, Poly};
use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// The standard basis of `Q^m` as dense vectors.
pub fn standard_basis(m: usize) -> Vec<Vec<Rat>> {
    (0..m)
        .map(|i| {
            let mut v = vec![Rat::zero(); m];
            v[i] = Rat::one();
            v
        })
        .collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A vector with constant entries as a degree-1 multivector on a chart.
pub fn constant_vector(chart: &Chart, v: &[Rat]) -> Result<MultiVector> {
    let comps: Vec<RatFunc> = v.iter().map(|c| chart.constant(c.clone())).collect();
    MultiVector::vector_field(chart, &comps)
}

/// The wedge of several constant vectors.
pub fn wedge_of_vectors(chart: &Chart, vs: &[Vec<Rat>]) -> Result<MultiVector> {
    if vs.is_empty() {
        return Err(Error::Dimension("cannot wedge an empty list of vectors".into()));
    }
    let mut out = constant_vector(chart, &vs[0])?;
    for v in &vs[1..] {
        out = out.wedge(&constant_vector(chart, v)?)?;
    }
    Ok(out)
}

/// Build a tensor with homogeneous linear coefficients from terms
/// `(a, J, c)`, each contributing `c * x_a` on the index tuple `J`.
pub fn linear_tensor(
    chart: &Chart,
    degree: usize,
    terms: &[(usize, Vec<usize>, Rat)],
) -> Result<MultiVector> {
    let m = chart.dim();
    let mut parts = Vec::new();
    for (a, idx, c) in terms {
        if *a >= m {
            return Err(Error::Dimension(format!("coordinate index {a} out of range")));
        }
        let p = Poly::from_terms(chart.vars(), vec![(Mono::var(m, *a), c.clone())])?;
        parts.push((idx.clone(), RatFunc::from_poly(p)));
    }
    MultiVector::from_components(chart, degree, parts)
}

/// A Lie algebra over the rationals given by its structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    chart: Chart,
    names: Vec<String>,
    table: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebra {
    /// Build from bracket entries `(i, j, [(k, c), ...])` meaning
    /// `[e_i, e_j] = sum c e_k`.  Entries with `i > j` are accepted and
    /// flipped; unlisted pairs commute; listing a pair twice is an error.
    pub fn new<S: AsRef<str>>(
        names: &[S],
        brackets: &[(usize, usize, Vec<(usize, Rat)>)],
    ) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::Invalid("a Lie algebra needs at least one basis element".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let coords: Vec<String> = names.iter().map(|s| s.to_lowercase()).collect();
        let chart = Chart::new(&coords)
            .map_err(|_| Error::Invalid("basis names must be nonempty and distinct up to case".into()))?;
        let mut table = vec![vec![vec![Rat::zero(); m]; m]; m];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, comps) in brackets {
            let (i, j, flip) = if i < j { (*i, *j, false) } else { (*j, *i, true) };
            if i == j {
                return Err(Error::Invalid("a basis element always commutes with itself".into()));
            }
            if j >= m {
                return Err(Error::Dimension(format!("basis index {j} out of range")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Invalid(format!(
                    "bracket of {} and {} is listed twice",
                    names[i], names[j]
                )));
            }
            let mut v = vec![Rat::zero(); m];
            for (k, c) in comps {
                if *k >= m {
                    return Err(Error::Dimension(format!("basis index {k} out of range")));
                }
                v[*k] += if flip { -c.clone() } else { c.clone() };
            }
            table[j][i] = v.iter().map(|c| -c.clone()).collect();
            table[i][j] = v;
        }
        Ok(LieAlgebra { chart, names, table })
    }

    /// An abelian algebra (all brackets vanish).
    pub fn abelian<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names, &[])
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    /// `[e_i, e_j]` as a dense component vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        self.table[i][j].clone()
    }

    fn bracket_unchecked(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = vec![Rat::zero(); m];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let scale = xi * yj;
                for k in 0..m {
                    let c = &self.table[i][j][k];
                    if !c.is_zero() {
                        out[k] += &scale * c;
                    }
                }
            }
        }
        out
    }

    /// The bracket of two vectors given by components.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        let m = self.dim();
        if x.len() != m {
            return Err(Error::Arity { expected: m, got: x.len() });
        }
        if y.len() != m {
            return Err(Error::Arity { expected: m, got: y.len() });
        }
        Ok(self.bracket_unchecked(x, y))
    }

    /// The matrix of `ad_x = [x, .]` in the standard basis (columns are the
    /// images of the basis vectors).
    pub fn ad_matrix(&self, x: &[Rat]) -> Result<Matrix<Rat>> {
        let m = self.dim();
        if x.len() != m {
            return Err(Error::Arity { expected: m, got: x.len() });
        }
        Ok(Matrix::from_fn(m, m, |k, j| {
            let mut acc = Rat::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    acc += xi * &self.table[i][j][k];
                }
            }
            acc
        }))
    }

    /// The coadjoint action on covector components: `coad_x b = -b o ad_x`,
    /// i.e. minus the transpose of `ad_x`.
    pub fn coad_matrix(&self, x: &[Rat]) -> Result<Matrix<Rat>> {
        Ok(self.ad_matrix(x)?.transpose().scale(&-Rat::one()))
    }

    /// `ad_x` lifted to constant functions on the algebra chart, ready to
    /// act on multivectors.
    fn ad_matrix_fn(&self, x: &[Rat]) -> Result<Matrix<RatFunc>> {
        let ad = self.ad_matrix(x)?;
        let m = self.dim();
        Ok(Matrix::from_fn(m, m, |k, j| self.chart.constant(ad[(k, j)].clone())))
    }

    /// First triple `i < j < k` where the Jacobi identity fails, with the
    /// residual `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize, Vec<Rat>)> {
        let m = self.dim();
        let basis = standard_basis(m);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut r = self.bracket_unchecked(&self.table[i][j], &basis[k]);
                    let r2 = self.bracket_unchecked(&self.table[j][k], &basis[i]);
                    let r3 = self.bracket_unchecked(&self.table[k][i], &basis[j]);
                    for t in 0..m {
                        r[t] += &r2[t] + &r3[t];
                    }
                    if r.iter().any(|c| !c.is_zero()) {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_witness().is_none()
    }

    fn check_subspace(&self, basis: &[Vec<Rat>]) -> Result<()> {
        for v in basis {
            if v.len() != self.dim() {
                return Err(Error::Arity { expected: self.dim(), got: v.len() });
            }
        }
        Ok(())
    }

    /// First pair (subspace indices) whose bracket leaves the span.
    pub fn subalgebra_witness(&self, basis: &[Vec<Rat>]) -> Result<Option<(usize, usize)>> {
        self.check_subspace(basis)?;
        for (i, v) in basis.iter().enumerate() {
            for (j, w) in basis.iter().enumerate().skip(i + 1) {
                if !in_span(basis, &self.bracket_unchecked(v, w)) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_subalgebra(&self, basis: &[Vec<Rat>]) -> Result<bool> {
        Ok(self.subalgebra_witness(basis)?.is_none())
    }

    /// First pair `(i, j)` with `[e_i, v_j]` outside the span of the given
    /// subspace basis.
    pub fn ideal_witness(&self, basis: &[Vec<Rat>]) -> Result<Option<(usize, usize)>> {
        self.check_subspace(basis)?;
        let full = standard_basis(self.dim());
        for (i, e) in full.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                if !in_span(basis, &self.bracket_unchecked(e, v)) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_ideal(&self, basis: &[Vec<Rat>]) -> Result<bool> {
        Ok(self.ideal_witness(basis)?.is_none())
    }
}

/// Require every coefficient of a tensor on the algebra chart to be a
/// homogeneous linear polynomial in the coordinates.
pub fn validate_linear_tensor(alg: &LieAlgebra, pi: &MultiVector) -> Result<()> {
    if pi.chart() != alg.chart() {
        return Err(Error::ChartMismatch);
    }
    for (idx, c) in pi.components() {
        let ok = c.is_polynomial() && *c.num() == c.num().homogeneous_part(1);
        if !ok {
            return Err(Error::NotLinear(format!(
                "component on {idx:?} is not homogeneous linear: {c}"
            )));
        }
    }
    Ok(())
}

/// The constant coefficient tensors of a linear tensor: entry `a` is the
/// value attached to the basis vector `e_a`, obtained by differentiating
/// every coefficient along the coordinate `x_a`.
pub fn coefficient_tensors(alg: &LieAlgebra, pi: &MultiVector) -> Result<Vec<MultiVector>> {
    validate_linear_tensor(alg, pi)?;
    let mut out = Vec::new();
    for a in 0..alg.dim() {
        let mut terms = Vec::new();
        for (idx, c) in pi.components() {
            let d = c.partial(a);
            if !d.is_zero() {
                terms.push((idx.clone(), d));
            }
        }
        out.push(MultiVector::from_components(alg.chart(), pi.degree(), terms)?);
    }
    Ok(out)
}

/// The coboundary of a constant multivector `q`: the linear tensor whose
/// value at `X` is `ad_X q` (a derivation over the factors of `q`).
pub fn coboundary_tensor(alg: &LieAlgebra, q: &MultiVector) -> Result<MultiVector> {
    if q.chart() != alg.chart() {
        return Err(Error::ChartMismatch);
    }
    for (idx, c) in q.components() {
        if !c.is_constant() {
            return Err(Error::NotConstant(format!(
                "coboundary input must have constant coefficients; component on {idx:?} is {c}"
            )));
        }
    }
    let m = alg.dim();
    let mut out = MultiVector::zero(alg.chart(), q.degree());
    let basis = standard_basis(m);
    for a in 0..m {
        let acted = q.slot_matrix_action(&alg.ad_matrix_fn(&basis[a])?)?;
        out = out.add(&acted.scale(&alg.chart.coordinate(a)))?;
    }
    Ok(out)
}

/// Residual of the cocycle condition on a basis pair:
/// `ad_i(pi_j) - ad_j(pi_i) - pi_{[e_i, e_j]}`.
pub fn cocycle_residual(alg: &LieAlgebra, pi: &MultiVector, i: usize, j: usize) -> Result<MultiVector> {
    let coef = coefficient_tensors(alg, pi)?;
    cocycle_residual_from(alg, &coef, i, j)
}

fn cocycle_residual_from(
    alg: &LieAlgebra,
    coef: &[MultiVector],
    i: usize,
    j: usize,
) -> Result<MultiVector> {
    let m = alg.dim();
    let basis = standard_basis(m);
    let mut r = coef[j].slot_matrix_action(&alg.ad_matrix_fn(&basis[i])?)?;
    r = r.sub(&coef[i].slot_matrix_action(&alg.ad_matrix_fn(&basis[j])?)?)?;
    for k in 0..m {
        let c = &alg.table[i][j][k];
        if !c.is_zero() {
            r = r.sub(&coef[k].scale(&alg.chart.constant(c.clone())))?;
        }
    }
    Ok(r)
}

/// First basis pair where the cocycle condition fails.
pub fn cocycle_witness(alg: &LieAlgebra, pi: &MultiVector) -> Result<Option<(usize, usize)>> {
    let coef = coefficient_tensors(alg, pi)?;
    let m = alg.dim();
    for i in 0..m {
        for j in i + 1..m {
            if !cocycle_residual_from(alg, &coef, i, j)?.is_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_cocycle(alg: &LieAlgebra, pi: &MultiVector) -> Result<bool> {
    Ok(cocycle_witness(alg, pi)?.is_none())
}

/// The bracket induced on covectors by a linear tensor: the value pairs
/// against a vector `X` as the tensor of `X` applied to the covectors.
/// The structure constants are read off the coefficient tensors once.
#[derive(Clone, Debug)]
pub struct DualBracket {
    dim: usize,
    order: usize,
    table: BTreeMap<Vec<usize>, Vec<Rat>>,
}

impl DualBracket {
    pub fn new(alg: &LieAlgebra, pi: &MultiVector) -> Result<Self> {
        let coef = coefficient_tensors(alg, pi)?;
        let m = alg.dim();
        let n = pi.degree();
        let mut table: BTreeMap<Vec<usize>, Vec<Rat>> = BTreeMap::new();
        for (k, t) in coef.iter().enumerate() {
            for (idx, c) in t.components() {
                let v = c.constant_value().expect("coefficient tensors are constant");
                table.entry(idx.clone()).or_insert_with(|| vec![Rat::zero(); m])[k] = v;
            }
        }
        Ok(DualBracket { dim: m, order: n, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Values on increasing tuples of basis covectors (absent tuples map to
    /// zero): key `J` holds the components of the bracket of `e^J`.
    pub fn table(&self) -> &BTreeMap<Vec<usize>, Vec<Rat>> {
        &self.table
    }

    /// Apply to covectors given by dense components.
    pub fn apply(&self, covectors: &[Vec<Rat>]) -> Result<Vec<Rat>> {
        if covectors.len() != self.order {
            return Err(Error::Arity { expected: self.order, got: covectors.len() });
        }
        for c in covectors {
            if c.len() != self.dim {
                return Err(Error::Arity { expected: self.dim, got: c.len() });
            }
        }
        let n = self.order;
        let mut out = vec![Rat::zero(); self.dim];
        for (idx, val) in &self.table {
            let det = Matrix::from_fn(n, n, |r, s| covectors[r][idx[s]].clone()).det();
            if det.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                if !val[k].is_zero() {
                    out[k] += &det * &val[k];
                }
            }
        }
        Ok(out)
    }
}

/// One-shot evaluation of the dual bracket.
pub fn dual_bracket(alg: &LieAlgebra, pi: &MultiVector, covectors: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    DualBracket::new(alg, pi)?.apply(covectors)
}

/// First failure of the fundamental identity of the dual bracket over basis
/// covectors: `[b_1..b_{n-1}, [a_1..a_n]] = sum_t [a_1..[b, a_t]..a_n]`.
/// Both sides are multilinear and alternating within each block, so
/// increasing tuples are exhaustive.
pub fn dual_identity_witness(
    alg: &LieAlgebra,
    pi: &MultiVector,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let br = DualBracket::new(alg, pi)?;
    let m = alg.dim();
    let n = br.order();
    if n < 2 {
        return Err(Error::Dimension("the identity needs a bracket of order at least 2".into()));
    }
    let duals = standard_basis(m);
    for beta_idx in increasing_multi_indices(m, n - 1) {
        let betas: Vec<Vec<Rat>> = beta_idx.iter().map(|&b| duals[b].clone()).collect();
        for alpha_idx in increasing_multi_indices(m, n) {
            let alphas: Vec<Vec<Rat>> = alpha_idx.iter().map(|&a| duals[a].clone()).collect();
            let inner = br.apply(&alphas)?;
            let mut args = betas.clone();
            args.push(inner);
            let lhs = br.apply(&args)?;
            let mut rhs = vec![Rat::zero(); m];
            for t in 0..n {
                let mut nested = betas.clone();
                nested.push(alphas[t].clone());
                let turned = br.apply(&nested)?;
                let mut outer = alphas.clone();
                outer[t] = turned;
                let term = br.apply(&outer)?;
                for k in 0..m {
                    rhs[k] += &term[k];
                }
            }
            if lhs != rhs {
                return Ok(Some((beta_idx.clone(), alpha_idx)));
            }
        }
    }
    Ok(None)
}

/// Cross-check of the cocycle condition through the dual pairing:
/// `<[a_1..a_n], [X, Y]> = sum_t (<[..coad_Y a_t..], X> - <[..coad_X a_t..], Y>)`
/// over basis covectors and basis pairs.  Returns the first failing
/// `(alpha tuple, (i, j))`.
pub fn pairing_identity_witness(
    alg: &LieAlgebra,
    pi: &MultiVector,
) -> Result<Option<(Vec<usize>, (usize, usize))>> {
    let br = DualBracket::new(alg, pi)?;
    let m = alg.dim();
    let n = br.order();
    let duals = standard_basis(m);
    let coads: Vec<Matrix<Rat>> = standard_basis(m)
        .iter()
        .map(|e| alg.coad_matrix(e))
        .collect::<Result<_>>()?;
    for alpha_idx in increasing_multi_indices(m, n) {
        let alphas: Vec<Vec<Rat>> = alpha_idx.iter().map(|&a| duals[a].clone()).collect();
        let base = br.apply(&alphas)?;
        for i in 0..m {
            for j in i + 1..m {
                let lhs = dot(&base, &alg.table[i][j]);
                let mut rhs = Rat::zero();
                for t in 0..n {
                    let mut with_j = alphas.clone();
                    with_j[t] = coads[j].matvec(&alphas[t]);
                    rhs += br.apply(&with_j)?[i].clone();
                    let mut with_i = alphas.clone();
                    with_i[t] = coads[i].matvec(&alphas[t]);
                    rhs -= br.apply(&with_i)?[j].clone();
                }
                if lhs != rhs {
                    return Ok(Some((alpha_idx, (i, j))));
                }
            }
        }
    }
    Ok(None)
}

/// The volume of an ideal as a constant multivector; errors when the
/// subspace is not an ideal or the basis is dependent.
pub fn ideal_volume(alg: &LieAlgebra, h_basis: &[Vec<Rat>]) -> Result<MultiVector> {
    if let Some((i, j)) = alg.ideal_witness(h_basis)? {
        return Err(Error::NotAnIdeal(format!(
            "bracket of {} with subspace vector {} leaves the span",
            alg.basis_name(i),
            j
        )));
    }
    let lambda0 = wedge_of_vectors(alg.chart(), h_basis)?;
    if lambda0.is_zero() {
        return Err(Error::Dimension("ideal basis is linearly dependent".into()));
    }
    Ok(lambda0)
}

fn proportionality_factor(a: &MultiVector, b: &MultiVector) -> Result<Rat> {
    let (idx, c) = b
        .components()
        .next()
        .ok_or_else(|| Error::Invalid("cannot take a factor against the zero tensor".into()))?;
    let cb = c.constant_value().ok_or(Error::NotConstant("nonconstant reference tensor".into()))?;
    let ca = a
        .component(idx)
        .constant_value()
        .ok_or(Error::NotConstant("nonconstant tensor".into()))?;
    let f = ca / cb;
    let scaled = b.scale(&RatFunc::constant_on(b.chart().vars(), f.clone()));
    if a.sub(&scaled)?.is_zero() {
        Ok(f)
    } else {
        Err(Error::NotProportional(format!("{a} is not a multiple of {b}")))
    }
}

/// The character `g` with `ad_X L0 = g(X) L0` on the volume `L0` of an
/// ideal, as components on the basis.  For an ideal the adjoint action
/// preserves the top exterior power, so the factor always exists; the
/// character is also required to vanish on brackets, which fails only for
/// inconsistent structure tables.
pub fn volume_character(alg: &LieAlgebra, h_basis: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    let lambda0 = ideal_volume(alg, h_basis)?;
    let m = alg.dim();
    let basis = standard_basis(m);
    let mut gamma = Vec::with_capacity(m);
    for e in &basis {
        let acted = lambda0.slot_matrix_action(&alg.ad_matrix_fn(e)?)?;
        if acted.is_zero() {
            gamma.push(Rat::zero());
        } else {
            gamma.push(proportionality_factor(&acted, &lambda0)?);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if !dot(&gamma, &alg.table[i][j]).is_zero() {
                return Err(Error::Invalid(
                    "the volume character fails to vanish on brackets; the structure table is inconsistent"
                        .into(),
                ));
            }
        }
    }
    Ok(gamma)
}

/// How the core of a linear tensor sits against its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreKind {
    /// The common factor space has the same dimension as the order; the
    /// tensor is a linear function times the core volume.
    Volume,
    /// The common factor space has dimension one below the order; the
    /// tensor wedges a varying vector onto the core volume.
    WedgeFactor,
    /// The factor span has dimension one above the order; the tensor is a
    /// contraction of the core volume by a varying covector.
    Contraction,
}

impl std::fmt::Display for CoreKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoreKind::Volume => write!(f, "volume"),
            CoreKind::WedgeFactor => write!(f, "wedge-factor"),
            CoreKind::Contraction => write!(f, "contraction"),
        }
    }
}

/// The factor spaces of a linear tensor and the core subspace they select.
#[derive(Clone, Debug)]
pub struct CoreAnalysis {
    pub order: usize,
    /// Vectors lying in the factor span at every point (exact kernel of the
    /// wedge maps against each coefficient tensor).
    pub intersection: Vec<Vec<Rat>>,
    /// The span of the factor spaces over all points (row space of all
    /// coordinate contractions of the coefficient tensors).
    pub sum: Vec<Vec<Rat>>,
    pub kind: CoreKind,
    pub core: Vec<Vec<Rat>>,
    pub core_is_ideal: bool,
}

/// Compute the factor spaces of a nonzero linear tensor and classify its
/// core.  When the intersection has full order the core is the
/// intersection; otherwise an intersection one below the order or a sum one
/// above it qualifies, preferring a candidate that is an ideal.
pub fn core_of_linear(alg: &LieAlgebra, pi: &MultiVector) -> Result<CoreAnalysis> {
    validate_linear_tensor(alg, pi)?;
    if pi.is_zero() {
        return Err(Error::Invalid("the zero tensor has no core".into()));
    }
    let n = pi.degree();
    let m = alg.dim();
    if n == 0 {
        return Err(Error::Dimension("a core needs a tensor of positive degree".into()));
    }
    let coef = coefficient_tensors(alg, pi)?;

    // Intersection: w is a common factor iff w ^ pi_a = 0 for every
    // coefficient tensor, an exact linear condition on w.
    let tuples = increasing_multi_indices(m, n + 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for t in coef.iter().filter(|t| !t.is_zero()) {
        let wedges: Vec<MultiVector> = (0..m)
            .map(|i| MultiVector::basis_vector(alg.chart(), i).wedge(t))
            .collect::<Result<_>>()?;
        for idx in &tuples {
            let row: Vec<Rat> = wedges
                .iter()
                .map(|w| w.component(idx).constant_value().expect("constant wedge"))
                .collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let intersection = if rows.is_empty() {
        standard_basis(m)
    } else {
        Matrix::from_rows(rows)?.kernel_basis()
    };

    // Sum: every coordinate contraction of a coefficient tensor lies in the
    // factor span somewhere, and together they span the union.
    let mut vecs: Vec<Vec<Rat>> = Vec::new();
    for t in coef.iter().filter(|t| !t.is_zero()) {
        for h in increasing_multi_indices(m, n - 1) {
            let v = t.interior_coordinate_form(&h)?;
            let comps: Vec<Rat> = v
                .as_vector_components()
                .iter()
                .map(|c| c.constant_value().expect("constant contraction"))
                .collect();
            if comps.iter().any(|c| !c.is_zero()) {
                vecs.push(comps);
            }
        }
    }
    let sum = rowspace_basis(&vecs, m);

    let (kind, core) = if intersection.len() == n {
        (CoreKind::Volume, intersection.clone())
    } else {
        let b_ok = n >= 2 && intersection.len() + 1 == n;
        let c_ok = sum.len() == n + 1;
        let b_ideal = b_ok && alg.is_ideal(&intersection)?;
        let c_ideal = c_ok && alg.is_ideal(&sum)?;
        if b_ideal {
            (CoreKind::WedgeFactor, intersection.clone())
        } else if c_ideal {
            (CoreKind::Contraction, sum.clone())
        } else if b_ok {
            (CoreKind::WedgeFactor, intersection.clone())
        } else if c_ok {
            (CoreKind::Contraction, sum.clone())
        } else {
            return Err(Error::Invalid(format!(
                "no admissible core: order {}, common factors of dimension {}, factor span of dimension {}",
                n,
                intersection.len(),
                sum.len()
            )));
        }
    };
    let core_is_ideal = alg.is_ideal(&core)?;
    Ok(CoreAnalysis { order: n, intersection, sum, kind, core, core_is_ideal })
}

/// Everything needed to decide whether a linear tensor makes the algebra a
/// Nambu-Lie algebra: the cocycle condition, an ideal core, and the tensor
/// itself being a Nambu structure.
#[derive(Clone, Debug)]
pub struct NambuLieReport {
    pub order: usize,
    pub cocycle_witness: Option<(usize, usize)>,
    pub core: CoreAnalysis,
    pub dual_identity_witness: Option<(Vec<usize>, Vec<usize>)>,
    /// Pointwise decomposability over the function field (informative only
    /// for order two, where it is not required).
    pub decomposable: bool,
    /// Involutivity of the factor span (informative only for order two).
    pub involutive: bool,
}

impl NambuLieReport {
    /// Is the tensor a Nambu structure?  Order two needs only the induced
    /// Jacobi identity; higher orders also need pointwise decomposability
    /// and an involutive factor span.
    pub fn tensor_is_nambu(&self) -> bool {
        self.dual_identity_witness.is_none()
            && (self.order == 2 || (self.decomposable && self.involutive))
    }

    pub fn passed(&self) -> bool {
        self.cocycle_witness.is_none() && self.core.core_is_ideal && self.tensor_is_nambu()
    }
}

pub fn verify_nambu_lie_algebra(alg: &LieAlgebra, pi: &MultiVector) -> Result<NambuLieReport> {
    validate_linear_tensor(alg, pi)?;
    if pi.degree() < 2 {
        return Err(Error::Dimension("a Nambu structure has order at least 2".into()));
    }
    Ok(NambuLieReport {
        order: pi.degree(),
        cocycle_witness: cocycle_witness(alg, pi)?,
        core: core_of_linear(alg, pi)?,
        dual_identity_witness: dual_identity_witness(alg, pi)?,
        decomposable: pi.is_decomposable(),
        involutive: pi.is_involutive(),
    })
}

/// Result of an exact ansatz search: the raw parameter kernel, a reduced
/// basis of the spanned tensor space, and which basis tensors fully verify
/// as Nambu-Lie structures.
#[derive(Clone, Debug)]
pub struct AnsatzSearch {
    pub order: usize,
    /// The character of the ideal volume under the adjoint action.
    pub character: Vec<Rat>,
    pub parameter_basis: Vec<Vec<Rat>>,
    pub tensors: Vec<MultiVector>,
    pub certified: Vec<bool>,
}

fn constraint_kernel(rows: Vec<Vec<Rat>>, ncols: usize) -> Result<Vec<Vec<Rat>>> {
    let rows: Vec<Vec<Rat>> = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    if rows.is_empty() {
        return Ok(standard_basis(ncols));
    }
    Ok(Matrix::from_rows(rows)?.kernel_basis())
}

fn linear_function(chart: &Chart, coeffs: &[Rat]) -> Result<RatFunc> {
    let m = chart.dim();
    let terms: Vec<(Mono, Rat)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| (Mono::var(m, a), c.clone()))
        .collect();
    Ok(RatFunc::from_poly(Poly::from_terms(chart.vars(), terms)?))
}

/// Flatten a linear tensor to coefficients over `(index tuple, coordinate)`
/// columns, tuple-major.
fn flatten_linear(alg: &LieAlgebra, tuples: &[Vec<usize>], t: &MultiVector) -> Vec<Rat> {
    let m = alg.dim();
    let mut row = Vec::with_capacity(tuples.len() * m);
    for idx in tuples {
        let comp = t.component(idx);
        let p = comp.num().clone();
        for a in 0..m {
            row.push(p.coeff(&Mono::var(m, a)));
        }
    }
    row
}

fn unflatten_linear(
    alg: &LieAlgebra,
    degree: usize,
    tuples: &[Vec<usize>],
    row: &[Rat],
) -> Result<MultiVector> {
    let m = alg.dim();
    let mut parts = Vec::new();
    for (ti, idx) in tuples.iter().enumerate() {
        let terms: Vec<(Mono, Rat)> = (0..m)
            .filter(|a| !row[ti * m + a].is_zero())
            .map(|a| (Mono::var(m, a), row[ti * m + a].clone()))
            .collect();
        if !terms.is_empty() {
            let p = Poly::from_terms(alg.chart().vars(), terms)?;
            parts.push((idx.clone(), RatFunc::from_poly(p)));
        }
    }
    MultiVector::from_components(alg.chart(), degree, parts)
}

/// Reduced-echelon basis of the span of linear tensors of a common degree.
pub fn tensor_space_basis(
    alg: &LieAlgebra,
    degree: usize,
    tensors: &[MultiVector],
) -> Result<Vec<MultiVector>> {
    let m = alg.dim();
    let tuples = increasing_multi_indices(m, degree);
    let mut rows = Vec::new();
    for t in tensors {
        validate_linear_tensor(alg, t)?;
        if t.degree() != degree {
            return Err(Error::Arity { expected: degree, got: t.degree() });
        }
        rows.push(flatten_linear(alg, &tuples, t));
    }
    let reduced = rowspace_basis(&rows, tuples.len() * m);
    reduced.iter().map(|row| unflatten_linear(alg, degree, &tuples, row)).collect()
}

/// Is a linear tensor in the span of the given linear tensors?
pub fn tensor_in_span(alg: &LieAlgebra, basis: &[MultiVector], t: &MultiVector) -> Result<bool> {
    validate_linear_tensor(alg, t)?;
    let tuples = increasing_multi_indices(alg.dim(), t.degree());
    let mut rows = Vec::new();
    for b in basis {
        validate_linear_tensor(alg, b)?;
        if b.degree() != t.degree() {
            return Err(Error::Arity { expected: t.degree(), got: b.degree() });
        }
        rows.push(flatten_linear(alg, &tuples, b));
    }
    Ok(in_span(&rows, &flatten_linear(alg, &tuples, t)))
}

fn finish_search(
    alg: &LieAlgebra,
    order: usize,
    character: Vec<Rat>,
    parameter_basis: Vec<Vec<Rat>>,
    raw: Vec<MultiVector>,
) -> Result<AnsatzSearch> {
    let nonzero: Vec<MultiVector> = raw.into_iter().filter(|t| !t.is_zero()).collect();
    let tensors = tensor_space_basis(alg, order, &nonzero)?;
    let certified = tensors
        .iter()
        .map(|t| verify_nambu_lie_algebra(alg, t).map(|r| r.passed()).unwrap_or(false))
        .collect();
    Ok(AnsatzSearch { order, character, parameter_basis, tensors, certified })
}

/// Search for structures `pi_X = phi(X) L0` of order equal to the ideal
/// dimension: the cocycle condition reduces to the exact linear system
/// `phi([e_i, e_j]) = phi(e_j) g(e_i) - phi(e_i) g(e_j)` on the covector
/// `phi`, with `g` the volume character.
pub fn search_volume_ansatz(alg: &LieAlgebra, h_basis: &[Vec<Rat>]) -> Result<AnsatzSearch> {
    let lambda0 = ideal_volume(alg, h_basis)?;
    let gamma = volume_character(alg, h_basis)?;
    let n = h_basis.len();
    if n < 2 {
        return Err(Error::Dimension("the ideal must have dimension at least 2".into()));
    }
    let m = alg.dim();
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut row = alg.bracket_basis(i, j);
            row[j] -= &gamma[i];
            row[i] += &gamma[j];
            rows.push(row);
        }
    }
    let params = constraint_kernel(rows, m)?;
    let mut raw = Vec::new();
    for phi in &params {
        raw.push(lambda0.scale(&linear_function(alg.chart(), phi)?));
    }
    finish_search(alg, n, gamma, params, raw)
}

/// Greedy completion of a subspace by standard basis vectors; returns the
/// indices of the added vectors.
fn complement_indices(h_basis: &[Vec<Rat>], m: usize) -> Vec<usize> {
    let mut span: Vec<Vec<Rat>> = h_basis.to_vec();
    let mut out = Vec::new();
    for (i, e) in standard_basis(m).into_iter().enumerate() {
        if !in_span(&span, &e) {
            span.push(e);
            out.push(i);
        }
    }
    out
}

/// The change-of-basis matrix whose columns are the ideal basis followed by
/// the standard complement, and its inverse.
fn mixed_basis(h_basis: &[Vec<Rat>], comp_idx: &[usize], m: usize) -> (Matrix<Rat>, Matrix<Rat>) {
    let d = h_basis.len();
    let bmat = Matrix::from_fn(m, m, |r, c| {
        if c < d {
            h_basis[c][r].clone()
        } else if comp_idx[c - d] == r {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let binv = bmat.inverse().expect("ideal basis plus complement is invertible");
    (bmat, binv)
}

/// Search for structures `pi_X = chi(X) ^ L0` of order one above the ideal
/// dimension.  Changing `chi` by a map into the ideal does not change the
/// tensor or the constraint, so `chi` is parametrized with values in a
/// standard complement; the constraint demands
/// `chi([X,Y]) - [X, chi(Y)] + [Y, chi(X)] - g(X) chi(Y) + g(Y) chi(X)`
/// to fall back into the ideal.
pub fn search_wedge_ansatz(alg: &LieAlgebra, h_basis: &[Vec<Rat>]) -> Result<AnsatzSearch> {
    let lambda0 = ideal_volume(alg, h_basis)?;
    let gamma = volume_character(alg, h_basis)?;
    let d = h_basis.len();
    let n = d + 1;
    let m = alg.dim();
    if n > m {
        return Ok(AnsatzSearch {
            order: n,
            character: gamma,
            parameter_basis: Vec::new(),
            tensors: Vec::new(),
            certified: Vec::new(),
        });
    }
    let comp_idx = complement_indices(h_basis, m);
    let mc = comp_idx.len();
    let (_, binv) = mixed_basis(h_basis, &comp_idx, m);
    let pcount = m * mc;
    let basis = standard_basis(m);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            // residual vector for the unit parameter chi(e_a) = e_Q
            let mut per_param: Vec<Vec<Rat>> = Vec::with_capacity(pcount);
            for a in 0..m {
                for q in 0..mc {
                    let cq = comp_idx[q];
                    let mut v = vec![Rat::zero(); m];
                    let c_a = &alg.table[i][j][a];
                    if !c_a.is_zero() {
                        v[cq] += c_a;
                    }
                    if a == j {
                        let br = alg.bracket_unchecked(&basis[i], &basis[cq]);
                        for k in 0..m {
                            v[k] -= &br[k];
                        }
                        v[cq] -= &gamma[i];
                    }
                    if a == i {
                        let br = alg.bracket_unchecked(&basis[j], &basis[cq]);
                        for k in 0..m {
                            v[k] += &br[k];
                        }
                        v[cq] += &gamma[j];
                    }
                    per_param.push(binv.matvec(&v));
                }
            }
            for r in 0..mc {
                rows.push(per_param.iter().map(|coords| coords[d + r].clone()).collect());
            }
        }
    }
    let params = constraint_kernel(rows, pcount)?;
    let mut raw = Vec::new();
    for p in &params {
        let mut tensor = MultiVector::zero(alg.chart(), n);
        for a in 0..m {
            let mut x_of_a = vec![Rat::zero(); m];
            for q in 0..mc {
                x_of_a[comp_idx[q]] = p[a * mc + q].clone();
            }
            if x_of_a.iter().all(|c| c.is_zero()) {
                continue;
            }
            let wedge = constant_vector(alg.chart(), &x_of_a)?.wedge(&lambda0)?;
            tensor = tensor.add(&wedge.scale(&alg.chart().coordinate(a)))?;
        }
        raw.push(tensor);
    }
    finish_search(alg, n, gamma, params, raw)
}

/// Search for structures `pi_X = i(alpha(X)) L0` of order one below the
/// ideal dimension.  Only the restriction of `alpha(X)` to the ideal enters
/// the tensor or the constraint, so `alpha` takes values in the span of the
/// dual basis of the ideal (extended by zero on a standard complement); the
/// constraint demands
/// `coad_X(alpha(Y)) - coad_Y(alpha(X)) - alpha([X,Y]) + g(X) alpha(Y) - g(Y) alpha(X)`
/// to annihilate the ideal.
pub fn search_contraction_ansatz(alg: &LieAlgebra, h_basis: &[Vec<Rat>]) -> Result<AnsatzSearch> {
    let lambda0 = ideal_volume(alg, h_basis)?;
    let gamma = volume_character(alg, h_basis)?;
    let d = h_basis.len();
    if d < 3 {
        return Err(Error::Dimension(
            "the ideal must have dimension at least 3 to contract down to order 2".into(),
        ));
    }
    let n = d - 1;
    let m = alg.dim();
    let comp_idx = complement_indices(h_basis, m);
    let (_, binv) = mixed_basis(h_basis, &comp_idx, m);
    // dual basis of the ideal, extended by zero on the complement
    let etas: Vec<Vec<Rat>> = (0..d).map(|s| binv.row(s).to_vec()).collect();
    let basis = standard_basis(m);
    let coads: Vec<Matrix<Rat>> = basis.iter().map(|e| alg.coad_matrix(e)).collect::<Result<_>>()?;
    let pcount = m * d;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            // covector residual for the unit parameter alpha(e_a) = eta^s
            let mut per_param: Vec<Vec<Rat>> = Vec::with_capacity(pcount);
            for a in 0..m {
                for s in 0..d {
                    let mut e = vec![Rat::zero(); m];
                    let c_a = &alg.table[i][j][a];
                    if !c_a.is_zero() {
                        for k in 0..m {
                            e[k] -= c_a * &etas[s][k];
                        }
                    }
                    if a == j {
                        let moved = coads[i].matvec(&etas[s]);
                        for k in 0..m {
                            e[k] += &moved[k] + &gamma[i] * &etas[s][k];
                        }
                    }
                    if a == i {
                        let moved = coads[j].matvec(&etas[s]);
                        for k in 0..m {
                            e[k] -= &moved[k] + &gamma[j] * &etas[s][k];
                        }
                    }
                    per_param.push(e);
                }
            }
            for h in h_basis {
                rows.push(per_param.iter().map(|e| dot(e, h)).collect());
            }
        }
    }
    let params = constraint_kernel(rows, pcount)?;
    let mut raw = Vec::new();
    for p in &params {
        let mut tensor = MultiVector::zero(alg.chart(), n);
        for a in 0..m {
            let mut beta = vec![Rat::zero(); m];
            for s in 0..d {
                if p[a * d + s].is_zero() {
                    continue;
                }
                for k in 0..m {
                    beta[k] += &p[a * d + s] * &etas[s][k];
                }
            }
            if beta.iter().all(|c| c.is_zero()) {
                continue;
            }
            let cov: Vec<RatFunc> = beta.iter().map(|c| alg.chart().constant(c.clone())).collect();
            let contracted = lambda0.interior(&cov)?;
            tensor = tensor.add(&contracted.scale(&alg.chart().coordinate(a)))?;
        }
        raw.push(tensor);
    }
    finish_search(alg, n, gamma, params, raw)
}

/// Basis of the annihilator of a subspace inside the dual.
pub fn annihilator_basis(dim: usize, k_basis: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    for v in k_basis {
        if v.len() != dim {
            return Err(Error::Arity { expected: dim, got: v.len() });
        }
    }
    if k_basis.is_empty() {
        return Ok(standard_basis(dim));
    }
    Ok(Matrix::from_rows(k_basis.to_vec())?.kernel_basis())
}

/// Does the annihilator of a subspace sit inside the dual bracket as an
/// ideal?  Checks every bracket with one argument from the annihilator
/// basis and the rest basis covectors; returns the first offending
/// `(annihilator index, other covector indices)`.
pub fn annihilator_ideal_witness(
    alg: &LieAlgebra,
    pi: &MultiVector,
    k_basis: &[Vec<Rat>],
) -> Result<Option<(usize, Vec<usize>)>> {
    let br = DualBracket::new(alg, pi)?;
    let m = alg.dim();
    let n = br.order();
    if n < 1 {
        return Err(Error::Dimension("the bracket must take at least one argument".into()));
    }
    let ann = annihilator_basis(m, k_basis)?;
    let duals = standard_basis(m);
    for (r, a) in ann.iter().enumerate() {
        for rest in increasing_multi_indices(m, n - 1) {
            let mut args = vec![a.clone()];
            for &t in &rest {
                args.push(duals[t].clone());
            }
            let out = br.apply(&args)?;
            if k_basis.iter().any(|kv| !dot(&out, kv).is_zero()) {
                return Ok(Some((r, rest)));
            }
        }
    }
    Ok(None)
}

pub fn is_annihilator_ideal(
    alg: &LieAlgebra,
    pi: &MultiVector,
    k_basis: &[Vec<Rat>],
) -> Result<bool> {
    Ok(annihilator_ideal_witness(alg, pi, k_basis)?.is_none())
}
