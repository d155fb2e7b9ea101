//! Exact computations on unitary matrix groups.
//!
//! Tangent vectors at a matrix group element are matrices; left and right
//! translation act by matrix multiplication.  A tangent multivector is a
//! formal sum of wedges of such matrices, canonicalized by multilinear
//! expansion over the real coordinates of matrix space (real and imaginary
//! part of each entry), so zero tests and comparisons are exact.  Group
//! elements are produced exactly by the Cayley transform of skew-Hermitian
//! matrices with Gaussian-rational entries.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multivector::{sort_indices, MultiVector};
use crate::rat::{gauss, gauss_conj, rat, ratq, GaussRat, Rat};
use crate::seeded::random_rat;

pub fn conj_transpose(m: &Matrix<GaussRat>) -> Matrix<GaussRat> {
    Matrix::from_fn(m.ncols(), m.nrows(), |i, j| gauss_conj(&m[(j, i)]))
}

pub fn is_unitary(m: &Matrix<GaussRat>) -> bool {
    m.nrows() == m.ncols()
        && conj_transpose(m).matmul(m) == Matrix::<GaussRat>::identity(m.nrows())
}

pub fn is_skew_hermitian(m: &Matrix<GaussRat>) -> bool {
    m.nrows() == m.ncols() && conj_transpose(m) == m.scale(&-GaussRat::one())
}

pub fn commutator(a: &Matrix<GaussRat>, b: &Matrix<GaussRat>) -> Matrix<GaussRat> {
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    Matrix::from_fn(a.nrows(), a.ncols(), |i, j| ab[(i, j)].clone() - ba[(i, j)].clone())
}

/// Cayley transform `(I - A)(I + A)^{-1}` of a skew-Hermitian matrix.  The
/// result is unitary with exact Gaussian-rational entries; unitarity is
/// asserted rather than assumed.
pub fn cayley_unitary(a: &Matrix<GaussRat>) -> Result<Matrix<GaussRat>> {
    if !is_skew_hermitian(a) {
        return Err(Error::Invalid("Cayley transform needs a skew-Hermitian matrix".into()));
    }
    let n = a.nrows();
    let id = Matrix::<GaussRat>::identity(n);
    let plus = Matrix::from_fn(n, n, |i, j| id[(i, j)].clone() + a[(i, j)].clone());
    let minus = Matrix::from_fn(n, n, |i, j| id[(i, j)].clone() - a[(i, j)].clone());
    // I + A is invertible: its kernel would be an eigenvector of A with
    // eigenvalue -1, impossible for a skew-Hermitian matrix.
    let inv = plus
        .inverse()
        .ok_or_else(|| Error::Invalid("I + A is singular".into()))?;
    let u = minus.matmul(&inv);
    if !is_unitary(&u) {
        return Err(Error::Invalid("Cayley transform produced a non-unitary matrix".into()));
    }
    Ok(u)
}

/// A unitary sample: the Cayley transform of a skew-Hermitian matrix whose
/// entry numerators and denominators are bounded by 10.
pub fn sample_unitary<R: Rng>(rng: &mut R, n: usize) -> Matrix<GaussRat> {
    let mut a = Matrix::<GaussRat>::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = gauss(Rat::zero(), random_rat(rng, 10));
        for j in (i + 1)..n {
            let z = gauss(random_rat(rng, 10), random_rat(rng, 10));
            a[(i, j)] = z.clone();
            a[(j, i)] = -gauss_conj(&z);
        }
    }
    cayley_unitary(&a).expect("skew-Hermitian by construction")
}

/// The chart of real matrix coordinates: entry `(i, j)` owns the
/// coordinates `re{i}{j}` and `im{i}{j}`, in that order.
pub fn matrix_coordinate_chart(n: usize) -> Chart {
    let mut names = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            names.push(format!("re{i}{j}"));
            names.push(format!("im{i}{j}"));
        }
    }
    Chart::new(&names).expect("generated names are distinct")
}

fn sparse_flatten(m: &Matrix<GaussRat>) -> Vec<(usize, Rat)> {
    let n = m.nrows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let z = &m[(i, j)];
            if !z.re.is_zero() {
                out.push((2 * (n * i + j), z.re.clone()));
            }
            if !z.im.is_zero() {
                out.push((2 * (n * i + j) + 1, z.im.clone()));
            }
        }
    }
    out
}

/// A formal sum of wedges of tangent matrices at a common base point.
#[derive(Debug, Clone)]
pub struct TangentMultivector {
    base: Matrix<GaussRat>,
    degree: usize,
    terms: Vec<(Rat, Vec<Matrix<GaussRat>>)>,
}

impl TangentMultivector {
    pub fn new(
        base: Matrix<GaussRat>,
        degree: usize,
        terms: Vec<(Rat, Vec<Matrix<GaussRat>>)>,
    ) -> Result<Self> {
        let n = base.nrows();
        if base.ncols() != n {
            return Err(Error::Dimension("base point must be a square matrix".into()));
        }
        for (_, factors) in &terms {
            if factors.len() != degree {
                return Err(Error::Arity { expected: degree, got: factors.len() });
            }
            if factors.iter().any(|f| f.nrows() != n || f.ncols() != n) {
                return Err(Error::Dimension("wedge factor size mismatch".into()));
            }
        }
        Ok(TangentMultivector { base, degree, terms })
    }

    pub fn wedge_of(base: Matrix<GaussRat>, factors: Vec<Matrix<GaussRat>>) -> Result<Self> {
        let degree = factors.len();
        TangentMultivector::new(base, degree, vec![(Rat::one(), factors)])
    }

    pub fn base(&self) -> &Matrix<GaussRat> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.base.nrows()
    }

    /// Append one factor to every wedge term.
    pub fn wedge_with(&self, factor: &Matrix<GaussRat>) -> Result<TangentMultivector> {
        let terms = self
            .terms
            .iter()
            .map(|(c, fs)| {
                let mut fs = fs.clone();
                fs.push(factor.clone());
                (c.clone(), fs)
            })
            .collect();
        TangentMultivector::new(self.base.clone(), self.degree + 1, terms)
    }

    /// Differential of left translation: every factor becomes `g * V`, and
    /// the base moves to `g * base`.
    pub fn push_left(&self, g: &Matrix<GaussRat>) -> Result<TangentMultivector> {
        if g.nrows() != self.size() || g.ncols() != self.size() {
            return Err(Error::Dimension("translation size mismatch".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, fs)| (c.clone(), fs.iter().map(|v| g.matmul(v)).collect()))
            .collect();
        TangentMultivector::new(g.matmul(&self.base), self.degree, terms)
    }

    /// Differential of right translation: factors become `V * g`.
    pub fn push_right(&self, g: &Matrix<GaussRat>) -> Result<TangentMultivector> {
        if g.nrows() != self.size() || g.ncols() != self.size() {
            return Err(Error::Dimension("translation size mismatch".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, fs)| (c.clone(), fs.iter().map(|v| v.matmul(g)).collect()))
            .collect();
        TangentMultivector::new(self.base.matmul(g), self.degree, terms)
    }

    pub fn sub(&self, other: &TangentMultivector) -> Result<TangentMultivector> {
        if self.degree != other.degree || self.base != other.base {
            return Err(Error::Invalid(
                "tangent multivectors live at different points".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, fs)| (-c.clone(), fs.clone())));
        TangentMultivector::new(self.base.clone(), self.degree, terms)
    }

    /// Canonical expansion over the real matrix coordinates (the chart of
    /// [`matrix_coordinate_chart`]): sorted index tuples with exact
    /// rational coefficients.
    pub fn canonical_components(&self) -> BTreeMap<Vec<usize>, Rat> {
        let mut out: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
        for (coeff, factors) in &self.terms {
            let flats: Vec<Vec<(usize, Rat)>> = factors.iter().map(sparse_flatten).collect();
            let mut partial: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), coeff.clone())];
            for flat in &flats {
                let mut next = Vec::new();
                for (prefix, c) in &partial {
                    for (pos, v) in flat {
                        let mut ext = prefix.clone();
                        ext.push(*pos);
                        next.push((ext, c * v));
                    }
                }
                partial = next;
            }
            for (idx, c) in partial {
                let Some((sorted, sign)) = sort_indices(&idx) else { continue };
                let signed = if sign < 0 { -c } else { c };
                *out.entry(sorted).or_insert_with(Rat::zero) += signed;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_components().is_empty()
    }

    pub fn equals(&self, other: &TangentMultivector) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// The canonical value as a constant-coefficient field on the chart of
    /// real matrix coordinates, so that pointwise rank and decomposability
    /// reuse the field machinery.
    pub fn as_coordinate_field(&self) -> Result<MultiVector> {
        let chart = matrix_coordinate_chart(self.size());
        let terms = self
            .canonical_components()
            .into_iter()
            .map(|(idx, c)| (idx, chart.constant(c)))
            .collect();
        MultiVector::from_components(&chart, self.degree, terms)
    }
}

/// The translated wedge difference `L_g Λ - R_g Λ` at `g`, for a wedge `Λ`
/// of Lie-algebra matrices (tangent vectors at the unit).  Tensors of this
/// shape satisfy the product rule automatically.
pub fn coboundary_tensor_at(
    factors: &[Matrix<GaussRat>],
    g: &Matrix<GaussRat>,
) -> Result<TangentMultivector> {
    let left: Vec<Matrix<GaussRat>> = factors.iter().map(|x| g.matmul(x)).collect();
    let right: Vec<Matrix<GaussRat>> = factors.iter().map(|x| x.matmul(g)).collect();
    TangentMultivector::new(
        g.clone(),
        factors.len(),
        vec![(Rat::one(), left), (-Rat::one(), right)],
    )
}

/// Only the left translate of a wedge — not multiplicative in general, so
/// it serves as a negative control for the pointwise product-rule check.
pub fn left_translated_wedge_at(
    factors: &[Matrix<GaussRat>],
    g: &Matrix<GaussRat>,
) -> Result<TangentMultivector> {
    TangentMultivector::wedge_of(g.clone(), factors.iter().map(|x| g.matmul(x)).collect())
}

/// Does the tensor vanish at this group element?  The vanishing locus is a
/// closed subgroup for multiplicative tensors.
pub fn vanishing_membership<F>(tensor: F, g: &Matrix<GaussRat>) -> Result<bool>
where
    F: Fn(&Matrix<GaussRat>) -> Result<TangentMultivector>,
{
    if !is_unitary(g) {
        return Err(Error::Invalid("membership test outside the unitary group".into()));
    }
    Ok(tensor(g)?.is_zero())
}

/// Exact product-rule residual at one pair of unitary points:
/// `P(g1 g2) - L_{g1} P(g2) - R_{g2} P(g1)`.
pub fn check_multiplicative_at<F>(
    tensor: F,
    g1: &Matrix<GaussRat>,
    g2: &Matrix<GaussRat>,
) -> Result<TangentMultivector>
where
    F: Fn(&Matrix<GaussRat>) -> Result<TangentMultivector>,
{
    if !is_unitary(g1) || !is_unitary(g2) {
        return Err(Error::Invalid("product-rule check outside the unitary group".into()));
    }
    let prod = g1.matmul(g2);
    tensor(&prod)?
        .sub(&tensor(g2)?.push_left(g1)?)?
        .sub(&tensor(g1)?.push_right(g2)?)
}

/// Anti-Hermitian basis of the algebra of the 2x2 unitary group:
/// `X1 = (i/2) I` is central and the other three bracket cyclically,
/// `[X2, X3] = X4`, `[X3, X4] = X2`, `[X4, X2] = X3`.
pub fn u2_basis() -> Vec<Matrix<GaussRat>> {
    let zero = GaussRat::zero();
    let ih = gauss(Rat::zero(), ratq(1, 2));
    let mih = gauss(Rat::zero(), ratq(-1, 2));
    let half = gauss(ratq(1, 2), Rat::zero());
    let mhalf = gauss(ratq(-1, 2), Rat::zero());
    let rows = |a: GaussRat, b: GaussRat, c: GaussRat, d: GaussRat| {
        Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
    };
    vec![
        rows(ih.clone(), zero.clone(), zero.clone(), ih.clone()),
        rows(zero.clone(), mih.clone(), mih.clone(), zero.clone()),
        rows(zero.clone(), mhalf, half, zero.clone()),
        rows(mih, zero.clone(), zero, ih),
    ]
}

/// Coefficients of a 2x2 skew-Hermitian matrix in the `u2_basis` order.
pub fn u2_coordinates(a: &Matrix<GaussRat>) -> Result<Vec<Rat>> {
    if a.nrows() != 2 || !is_skew_hermitian(a) {
        return Err(Error::Invalid("coordinates need a 2x2 skew-Hermitian matrix".into()));
    }
    let x1 = a[(0, 0)].im.clone() + a[(1, 1)].im.clone();
    let x2 = rat(-2) * a[(0, 1)].im.clone();
    let x3 = rat(-2) * a[(0, 1)].re.clone();
    let x4 = a[(1, 1)].im.clone() - a[(0, 0)].im.clone();
    Ok(vec![x1, x2, x3, x4])
}

/// Linear combination of algebra basis matrices with rational coefficients.
pub fn algebra_combination(
    basis: &[Matrix<GaussRat>],
    coords: &[Rat],
) -> Result<Matrix<GaussRat>> {
    if basis.len() != coords.len() {
        return Err(Error::Arity { expected: basis.len(), got: coords.len() });
    }
    if basis.is_empty() {
        return Err(Error::Invalid("empty basis".into()));
    }
    let n = basis[0].nrows();
    let mut out = Matrix::<GaussRat>::zeros(n, basis[0].ncols());
    for (b, c) in basis.iter().zip(coords) {
        let scaled = b.scale(&gauss(c.clone(), Rat::zero()));
        out = Matrix::from_fn(out.nrows(), out.ncols(), |i, j| {
            out[(i, j)].clone() + scaled[(i, j)].clone()
        });
    }
    Ok(out)
}
