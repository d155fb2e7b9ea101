//! Built-in example catalog.
//!
//! Each entry bundles a structure (a tensor on a chart, a Lie algebra with
//! a linear tensor, a chart group with a candidate multiplicative tensor,
//! or a matrix-group tensor) together with its documented expectations:
//! which checks must pass and which must fail.  The negative controls and
//! the wide Heisenberg entry document genuine failures, so a run "meets
//! expectations" exactly when every check's outcome equals its documented
//! flag.  All entries are addressable by stable string identifiers.

use num::{One, Zero};
use rand::Rng;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::group::{doubled_chart, ChartGroup};
use crate::liealg::{
    linear_tensor, pairing_identity_witness, standard_basis, verify_nambu_lie_algebra, CoreKind,
    LieAlgebra,
};
use crate::matgroup::{
    cayley_unitary, check_multiplicative_at, coboundary_tensor_at, conj_transpose, sample_unitary,
    u2_basis, vanishing_membership,
};
use crate::matrix::Matrix;
use crate::multivector::MultiVector;
use crate::nambu::{find_fi_witness, linear_structure_from_constant, verify_nambu_structure};
use crate::poly::{Poly, VarSet};
use crate::rat::{gauss, rat, ratq, GaussRat, Rat};
use crate::ratfunc::RatFunc;
use crate::seeded::{random_rat, suite_rng};

// ---------------------------------------------------------------------
// Example constructors
// ---------------------------------------------------------------------

/// The solvable group of simultaneous scalings and translations of a
/// plane: `(x, y, z) * (x', y', z') = (x x', x y' + y, x z' + z)` with
/// `x != 0`.
pub fn scaling_group() -> ChartGroup {
    let vs = VarSet::new(&["x", "y", "z"]).expect("distinct names");
    let chart = Chart::with_nonzero(&["x", "y", "z"], vec![Poly::var(&vs, 0)]).expect("chart");
    let d = doubled_chart(&chart).expect("doubled chart");
    let law = vec![
        &d.coordinate(0) * &d.coordinate(3),
        &(&d.coordinate(0) * &d.coordinate(4)) + &d.coordinate(1),
        &(&d.coordinate(0) * &d.coordinate(5)) + &d.coordinate(2),
    ];
    let x = chart.coordinate(0);
    let inverse = vec![
        x.recip().expect("x is a chart coordinate"),
        -&(&chart.coordinate(1) / &x),
        -&(&chart.coordinate(2) / &x),
    ];
    ChartGroup::new(chart, law, vec![rat(1), rat(0), rat(0)], inverse).expect("group data")
}

/// The unique odd cubic `x(x^2 - 1)/2`: the volume scaling that makes the
/// scaling group's tensor multiplicative (it vanishes at the unit and its
/// coframe brackets have constant coefficients).
pub fn scaling_cubic(chart: &Chart) -> RatFunc {
    let x = chart.coordinate(0);
    let sq = &x * &x;
    &(&x * &(&sq - &chart.constant(Rat::one()))) * &chart.constant(ratq(1, 2))
}

/// `f(x) . d/dx ^ d/dy ^ d/dz` on a 3-coordinate chart.
pub fn scaled_volume(chart: &Chart, f: RatFunc) -> MultiVector {
    MultiVector::from_components(chart, 3, vec![(vec![0, 1, 2], f)]).expect("components")
}

/// The generalized Heisenberg group with `p` translation pairs:
/// coordinates `x_1..x_p, y, z_1..z_p` and law `z_i -> z_i + z_i' + x_i y'`.
/// For `p = 1` the coordinates are plain `x, y, z`.
pub fn heisenberg_group(p: usize) -> ChartGroup {
    assert!(p >= 1, "at least one translation pair");
    let names: Vec<String> = if p == 1 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        let mut v: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
        v.push("y".into());
        v.extend((1..=p).map(|i| format!("z{i}")));
        v
    };
    let chart = Chart::new(&names).expect("chart");
    let n = 2 * p + 1;
    let d = doubled_chart(&chart).expect("doubled chart");
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
    ChartGroup::new(chart, law, unit, inverse).expect("group data")
}

/// `y . d/dx_1 ^ d/dz_1 ^ d/dy` on the Heisenberg chart (component form:
/// the `(x_1, y, z_1)` coefficient is `-y`).
pub fn heisenberg_tensor(chart: &Chart, p: usize) -> MultiVector {
    let y = chart.coordinate(p);
    let idx = if p == 1 { vec![0, 1, 2] } else { vec![0, p, p + 1] };
    MultiVector::from_components(chart, 3, vec![(idx, -&y)]).expect("components")
}

/// The additive line as a one-coordinate chart group.
pub fn additive_line() -> ChartGroup {
    let chart = Chart::new(&["s"]).expect("chart");
    let d = doubled_chart(&chart).expect("doubled chart");
    ChartGroup::new(
        chart.clone(),
        vec![&d.coordinate(0) + &d.coordinate(1)],
        vec![rat(0)],
        vec![-&chart.coordinate(0)],
    )
    .expect("group data")
}

/// The Heisenberg group times a line (the multiplicative half-line in
/// exponential coordinates), with the tensor `s . d/dy ^ d/dz ^ d/ds`.
pub fn heisenberg_line_product() -> (ChartGroup, MultiVector) {
    let group = heisenberg_group(1).product(&additive_line()).expect("product group");
    let s = group.chart().coordinate(3);
    let tensor =
        MultiVector::from_components(group.chart(), 3, vec![(vec![1, 2, 3], s)]).expect("components");
    (group, tensor)
}

/// The four-dimensional algebra of the 2x2 unitary group: a central
/// element `X1` plus a cyclic triple, `[X2, X3] = X4`, `[X3, X4] = X2`,
/// `[X4, X2] = X3`.
pub fn unitary2_algebra() -> LieAlgebra {
    LieAlgebra::new(
        &["X1", "X2", "X3", "X4"],
        &[
            (1, 2, vec![(3, Rat::one())]),
            (2, 3, vec![(1, Rat::one())]),
            (1, 3, vec![(2, -Rat::one())]),
        ],
    )
    .expect("structure constants")
}

/// Basis of the traceless ideal (the cyclic triple) inside
/// [`unitary2_algebra`].
pub fn traceless_subspace() -> Vec<Vec<Rat>> {
    standard_basis(4)[1..].to_vec()
}

/// `x^1 . d/dx^1 ^ d/dx^2 ^ d/dx^3 ^ d/dx^4`: the full central volume on
/// the unitary algebra.
pub fn central_volume() -> MultiVector {
    linear_tensor(unitary2_algebra().chart(), 4, &[(0, vec![0, 1, 2, 3], Rat::one())])
        .expect("linear tensor")
}

/// `x^1 . d/dx^2 ^ d/dx^3 ^ d/dx^4`: the volume of the traceless ideal,
/// scaled by the central coordinate.
pub fn traceless_volume() -> MultiVector {
    linear_tensor(unitary2_algebra().chart(), 3, &[(0, vec![1, 2, 3], Rat::one())])
        .expect("linear tensor")
}

/// The adjoint coboundary of `X4 ^ X2 ^ X1` on the unitary algebra:
/// `x^2 . d/dx^1 ^ d/dx^2 ^ d/dx^3 - x^4 . d/dx^1 ^ d/dx^3 ^ d/dx^4`.
pub fn adjoint_contraction() -> MultiVector {
    linear_tensor(
        unitary2_algebra().chart(),
        3,
        &[(1, vec![0, 1, 2], Rat::one()), (3, vec![0, 2, 3], -Rat::one())],
    )
    .expect("linear tensor")
}

/// A chart named `x1..xm` carrying the constant coordinate volume.
pub fn coordinate_volume(m: usize) -> (Chart, MultiVector) {
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let chart = Chart::new(&names).expect("chart");
    let idx: Vec<usize> = (0..m).collect();
    let vol = MultiVector::from_components(&chart, m, vec![(idx, chart.constant(Rat::one()))])
        .expect("components");
    (chart, vol)
}

/// The wedge of the first `order` coordinate directions on an `m`-chart.
pub fn coordinate_wedge(m: usize, order: usize) -> (Chart, MultiVector) {
    let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let chart = Chart::new(&names).expect("chart");
    let idx: Vec<usize> = (0..order).collect();
    let w = MultiVector::from_components(&chart, order, vec![(idx, chart.constant(Rat::one()))])
        .expect("components");
    (chart, w)
}

/// The linear structure obtained from the constant volume on an
/// `m`-dimensional chart by fixing the last bracket slot to the radial
/// squared norm: components `sum_j eps^{i_1..i_{m-1} j} x^j`.
pub fn euclidean_contraction(m: usize) -> (Chart, MultiVector) {
    let (chart, vol) = coordinate_volume(m);
    let p = linear_structure_from_constant(&vol).expect("constant volume");
    (chart, p)
}

/// Negative control: decomposable but with a non-involutive factor span,
/// `d/dx1 ^ d/dx2 ^ (d/dx3 + x2 d/dx4)`.
pub fn noninvolutive_control() -> (Chart, MultiVector) {
    let chart = Chart::new(&["x1", "x2", "x3", "x4"]).expect("chart");
    let p = MultiVector::from_components(
        &chart,
        3,
        vec![
            (vec![0, 1, 2], chart.constant(Rat::one())),
            (vec![0, 1, 3], chart.coordinate(1)),
        ],
    )
    .expect("components");
    (chart, p)
}

/// Negative control: a sum of two coordinate wedges whose factor span is
/// five-dimensional, `d/dx1 ^ d/dx2 ^ d/dx3 + d/dx1 ^ d/dx4 ^ d/dx5`.
pub fn nondecomposable_control() -> (Chart, MultiVector) {
    let chart = Chart::new(&["x1", "x2", "x3", "x4", "x5"]).expect("chart");
    let p = MultiVector::from_components(
        &chart,
        3,
        vec![
            (vec![0, 1, 2], chart.constant(Rat::one())),
            (vec![0, 3, 4], chart.constant(Rat::one())),
        ],
    )
    .expect("components");
    (chart, p)
}

/// Wedge factors `(X4, X2, X1)` of the translated-difference trivector on
/// the 2x2 unitary group.
pub fn unitary_coboundary_factors() -> Vec<Matrix<GaussRat>> {
    let b = u2_basis();
    vec![b[3].clone(), b[1].clone(), b[0].clone()]
}

/// Documented negative expectation: on the 2x2 unitary group there is no
/// multiplicative tensor whose linear approximation is the full central
/// volume.  The obstruction is global (the scaling function a full-core
/// structure would need cannot exist on the compact group), so it is
/// recorded here as an expectation rather than checked by machinery.
pub const FULL_CORE_UNITARY_NOTE: &str =
    "no multiplicative structure on the 2x2 unitary group has the full central volume \
     as its linear approximation; the algebra-level search still returns that volume, \
     and the absence of a group-level counterpart is expected";

// ---------------------------------------------------------------------
// Entry reports
// ---------------------------------------------------------------------

/// One verification outcome together with its documented expectation.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
    /// The documented expectation for this check.
    pub expected: bool,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn as_expected(&self) -> bool {
        self.passed == self.expected
    }
}

/// The outcome of running one catalog entry.
#[derive(Clone, Debug)]
pub struct EntryReport {
    pub id: &'static str,
    pub checks: Vec<CheckRecord>,
}

impl EntryReport {
    /// Every check came out as documented (failures included).
    pub fn meets_expectations(&self) -> bool {
        self.checks.iter().all(CheckRecord::as_expected)
    }

    /// Every check passed outright.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn record(name: &'static str, expected: bool, passed: bool) -> CheckRecord {
    CheckRecord { name, passed, expected, witness: None }
}

fn record_with(
    name: &'static str,
    expected: bool,
    passed: bool,
    witness: Option<String>,
) -> CheckRecord {
    CheckRecord { name, passed, expected, witness: if passed { None } else { witness } }
}

const ENTRIES: &[(&str, &str)] = &[
    ("jacobian-volume", "order-3 coordinate volume bracket on a 3-dimensional chart"),
    ("jacobian-wedge-5", "order-3 coordinate wedge on a 5-dimensional chart"),
    ("euclidean-cross-product", "linear order-2 contraction of the constant volume on R^3"),
    ("euclidean-vector-product", "linear order-3 contraction of the constant volume on R^4"),
    ("u2-central-volume", "full central linear volume on the 2x2 unitary algebra"),
    ("u2-traceless-volume", "central volume of the traceless ideal of the 2x2 unitary algebra"),
    ("u2-adjoint-contraction", "adjoint-coboundary contraction on the 2x2 unitary algebra"),
    ("heisenberg-linear", "linear volume on the 3-dimensional nilpotent algebra"),
    ("solvable-linear", "linear volume on the 3-dimensional scaling algebra"),
    ("product-linear", "linear volume on the nilpotent-plus-line algebra"),
    ("g3-solvable", "scaling group with the odd cubic volume tensor"),
    ("heisenberg-1-1", "3-dimensional nilpotent group with its coordinate-scaled volume"),
    (
        "heisenberg-1-3",
        "7-dimensional nilpotent group with the same tensor; the product rule is documented to fail",
    ),
    ("h11-line-product", "nilpotent group times a line with a line-scaled volume"),
    ("u2-coboundary", "2x2 unitary group with the translated-difference trivector at sampled points"),
    (
        "negative-noninvolutive",
        "control: decomposable trivector with a non-involutive factor span; documented to fail",
    ),
    (
        "negative-nondecomposable",
        "control: sum of coordinate wedges with a 5-dimensional factor span; documented to fail",
    ),
];

/// Stable identifiers of all catalog entries, in report order.
pub fn catalog_ids() -> Vec<&'static str> {
    ENTRIES.iter().map(|(id, _)| *id).collect()
}

/// One-line description of an entry.
pub fn entry_summary(id: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(i, _)| *i == id).map(|(_, s)| *s)
}

/// Run one entry's verification suite.  `suite_size` bounds the seeded
/// parts (identity suites; sampled matrix-group pairs).
pub fn run_entry(id: &str, seed: u64, suite_size: usize) -> Result<EntryReport> {
    let mut rng = suite_rng(seed);
    match id {
        "jacobian-volume" => {
            let (_, p) = coordinate_volume(3);
            Ok(tensor_entry("jacobian-volume", &p, true, true, &mut rng, suite_size))
        }
        "jacobian-wedge-5" => {
            let (_, p) = coordinate_wedge(5, 3);
            Ok(tensor_entry("jacobian-wedge-5", &p, true, true, &mut rng, suite_size))
        }
        "euclidean-cross-product" => {
            let (_, p) = euclidean_contraction(3);
            let alg = LieAlgebra::abelian(&["x1", "x2", "x3"]).expect("abelian");
            algebra_entry(
                "euclidean-cross-product",
                &alg,
                &p,
                (CoreKind::Contraction, 3),
                &mut rng,
                suite_size,
            )
        }
        "euclidean-vector-product" => {
            let (_, p) = euclidean_contraction(4);
            let alg = LieAlgebra::abelian(&["x1", "x2", "x3", "x4"]).expect("abelian");
            algebra_entry(
                "euclidean-vector-product",
                &alg,
                &p,
                (CoreKind::Contraction, 4),
                &mut rng,
                suite_size,
            )
        }
        "u2-central-volume" => algebra_entry(
            "u2-central-volume",
            &unitary2_algebra(),
            &central_volume(),
            (CoreKind::Volume, 4),
            &mut rng,
            suite_size,
        ),
        "u2-traceless-volume" => algebra_entry(
            "u2-traceless-volume",
            &unitary2_algebra(),
            &traceless_volume(),
            (CoreKind::Volume, 3),
            &mut rng,
            suite_size,
        ),
        "u2-adjoint-contraction" => algebra_entry(
            "u2-adjoint-contraction",
            &unitary2_algebra(),
            &adjoint_contraction(),
            (CoreKind::Contraction, 4),
            &mut rng,
            suite_size,
        ),
        "heisenberg-linear" => {
            let alg = heisenberg_group(1).lie_algebra()?;
            let pi = heisenberg_tensor(alg.chart(), 1);
            algebra_entry("heisenberg-linear", &alg, &pi, (CoreKind::Volume, 3), &mut rng, suite_size)
        }
        "solvable-linear" => {
            let alg = scaling_group().lie_algebra()?;
            let pi = linear_tensor(alg.chart(), 3, &[(0, vec![0, 1, 2], Rat::one())])?;
            algebra_entry("solvable-linear", &alg, &pi, (CoreKind::Volume, 3), &mut rng, suite_size)
        }
        "product-linear" => {
            let (group, _) = heisenberg_line_product();
            let alg = group.lie_algebra()?;
            let pi = linear_tensor(alg.chart(), 3, &[(3, vec![1, 2, 3], Rat::one())])?;
            algebra_entry("product-linear", &alg, &pi, (CoreKind::Volume, 3), &mut rng, suite_size)
        }
        "g3-solvable" => {
            let group = scaling_group();
            let p = scaled_volume(group.chart(), scaling_cubic(group.chart()));
            let alg = group.lie_algebra()?;
            let lin = linear_tensor(alg.chart(), 3, &[(0, vec![0, 1, 2], Rat::one())])?;
            group_entry(
                "g3-solvable",
                &group,
                &p,
                GroupExpectations { multiplicative: true, cocycle: true, core_ideal: true },
                &lin,
                (CoreKind::Volume, 3),
                &mut rng,
                suite_size,
            )
        }
        "heisenberg-1-1" => {
            let group = heisenberg_group(1);
            let p = heisenberg_tensor(group.chart(), 1);
            let alg = group.lie_algebra()?;
            let lin = heisenberg_tensor(alg.chart(), 1);
            group_entry(
                "heisenberg-1-1",
                &group,
                &p,
                GroupExpectations { multiplicative: true, cocycle: true, core_ideal: true },
                &lin,
                (CoreKind::Volume, 3),
                &mut rng,
                suite_size,
            )
        }
        "heisenberg-1-3" => {
            let group = heisenberg_group(3);
            let p = heisenberg_tensor(group.chart(), 3);
            let alg = group.lie_algebra()?;
            let lin = heisenberg_tensor(alg.chart(), 3);
            // The tensor is a perfectly good Nambu structure that vanishes
            // at the unit, but left translation spreads d/dy across the
            // extra z-directions, so the product rule leaks, the coframe
            // brackets pick up non-constant coefficients, and the common
            // factor span of the linearization is no longer an ideal.
            group_entry(
                "heisenberg-1-3",
                &group,
                &p,
                GroupExpectations { multiplicative: false, cocycle: false, core_ideal: false },
                &lin,
                (CoreKind::Volume, 3),
                &mut rng,
                suite_size,
            )
        }
        "h11-line-product" => {
            let (group, p) = heisenberg_line_product();
            let alg = group.lie_algebra()?;
            let lin = linear_tensor(alg.chart(), 3, &[(3, vec![1, 2, 3], Rat::one())])?;
            group_entry(
                "h11-line-product",
                &group,
                &p,
                GroupExpectations { multiplicative: true, cocycle: true, core_ideal: true },
                &lin,
                (CoreKind::Volume, 3),
                &mut rng,
                suite_size,
            )
        }
        "u2-coboundary" => Ok(unitary_entry(&mut rng, suite_size.max(1))),
        "negative-noninvolutive" => {
            let (_, p) = noninvolutive_control();
            Ok(tensor_entry("negative-noninvolutive", &p, true, false, &mut rng, suite_size))
        }
        "negative-nondecomposable" => {
            let (_, p) = nondecomposable_control();
            Ok(tensor_entry("negative-nondecomposable", &p, false, true, &mut rng, suite_size))
        }
        _ => Err(Error::Invalid(format!(
            "unknown catalog entry {id:?}; known entries: {}",
            catalog_ids().join(", ")
        ))),
    }
}

/// Run every entry with a shared seed.
pub fn run_all(seed: u64, suite_size: usize) -> Vec<EntryReport> {
    catalog_ids()
        .iter()
        .map(|id| run_entry(id, seed, suite_size).expect("builtin identifiers resolve"))
        .collect()
}

fn tensor_entry<R: Rng>(
    id: &'static str,
    p: &MultiVector,
    expect_decomposable: bool,
    expect_involutive: bool,
    rng: &mut R,
    suite_size: usize,
) -> EntryReport {
    let mut checks = Vec::new();
    let positive = expect_decomposable && expect_involutive;
    let decomposable = p.decomposability_witness();
    checks.push(record_with(
        "decomposable over the function field",
        expect_decomposable,
        decomposable.is_none(),
        decomposable.map(|(h, idx, r)| format!("contraction {h:?} against {idx:?} leaves {r}")),
    ));
    let involutive = p.involutivity_witness();
    checks.push(record_with(
        "factor span is involutive",
        expect_involutive,
        involutive.is_none(),
        involutive.map(|(i, j)| format!("bracket of factor fields {i} and {j} escapes the span")),
    ));
    if positive {
        let v = verify_nambu_structure(p, rng, suite_size);
        checks.push(record("skew-symmetry suite", true, v.skew.passed()));
        checks.push(record("derivation suite", true, v.leibniz.passed()));
        checks.push(record("fundamental identity suite", true, v.fundamental_identity.passed()));
    } else {
        // For controls, the deterministic coordinate-tuple search tells the
        // two failure modes apart: a non-involutive span always yields a
        // polynomial violation, while the non-decomposable sum still
        // brackets coordinates to constants.
        let witness = find_fi_witness(p);
        checks.push(record_with(
            "no fundamental-identity violation on coordinate tuples",
            expect_involutive,
            witness.is_none(),
            witness.map(|(f, g, r)| format!("tuple {f:?} / {g:?} leaves residual {r}")),
        ));
    }
    EntryReport { id, checks }
}

fn algebra_entry<R: Rng>(
    id: &'static str,
    alg: &LieAlgebra,
    pi: &MultiVector,
    expected_core: (CoreKind, usize),
    rng: &mut R,
    suite_size: usize,
) -> Result<EntryReport> {
    let mut checks = Vec::new();
    checks.push(record("bracket table satisfies the Jacobi identity", true, alg.is_lie_algebra()));
    let report = verify_nambu_lie_algebra(alg, pi)?;
    checks.push(record_with(
        "tensor is a cocycle",
        true,
        report.cocycle_witness.is_none(),
        report.cocycle_witness.map(|(i, j)| format!("condition fails on basis pair ({i}, {j})")),
    ));
    let pairing = pairing_identity_witness(alg, pi)?;
    checks.push(record_with(
        "pairing identity holds on basis tuples",
        true,
        pairing.is_none(),
        pairing.map(|(a, (i, j))| format!("tuple {a:?} against basis pair ({i}, {j})")),
    ));
    checks.push(record(
        "core kind and dimension match the documented classification",
        true,
        report.core.kind == expected_core.0 && report.core.core.len() == expected_core.1,
    ));
    checks.push(record("core is an ideal", true, report.core.core_is_ideal));
    checks.push(record_with(
        "dual bracket satisfies the fundamental identity",
        true,
        report.dual_identity_witness.is_none(),
        report
            .dual_identity_witness
            .map(|(b, a)| format!("outer tuple {b:?} against inner tuple {a:?}")),
    ));
    let v = verify_nambu_structure(pi, rng, suite_size);
    checks.push(record("tensor verifies as a Nambu structure", true, v.passed()));
    Ok(EntryReport { id, checks })
}

struct GroupExpectations {
    multiplicative: bool,
    cocycle: bool,
    core_ideal: bool,
}

#[allow(clippy::too_many_arguments)]
fn group_entry<R: Rng>(
    id: &'static str,
    group: &ChartGroup,
    p: &MultiVector,
    expect: GroupExpectations,
    expected_linearization: &MultiVector,
    expected_core: (CoreKind, usize),
    rng: &mut R,
    suite_size: usize,
) -> Result<EntryReport> {
    let mut checks = Vec::new();
    let axioms = group.axioms_witness()?;
    checks.push(record_with("group axioms hold", true, axioms.is_none(), axioms));

    let v = verify_nambu_structure(p, rng, suite_size);
    checks.push(record("tensor verifies as a Nambu structure", true, v.passed()));
    checks.push(record("tensor vanishes at the unit", true, group.vanishes_at_unit(p)?));

    let residual = group.multiplicativity_witness(p)?;
    checks.push(record_with(
        "tensor satisfies the product rule",
        expect.multiplicative,
        residual.is_none(),
        residual.map(|(idx, c)| format!("residual component {idx:?} is {c}")),
    ));

    let criterion = group.coframe_criterion(p)?;
    let nonconstant = criterion
        .coefficients
        .iter()
        .find_map(|(idx, cs)| cs.iter().find(|c| !c.is_constant()).map(|c| (idx.clone(), c.clone())));
    checks.push(record_with(
        "coframe brackets have constant coefficients",
        expect.multiplicative,
        criterion.vanishes_at_unit && nonconstant.is_none(),
        nonconstant.map(|(idx, c)| format!("bracket of coframe tuple {idx:?} has coefficient {c}")),
    ));

    let alg = group.lie_algebra()?;
    let lin = group.linear_approximation(p, alg.chart())?;
    checks.push(record(
        "linear approximation matches the documented tensor",
        true,
        lin == *expected_linearization,
    ));
    let report = verify_nambu_lie_algebra(&alg, &lin)?;
    checks.push(record_with(
        "linearization is a cocycle",
        expect.cocycle,
        report.cocycle_witness.is_none(),
        report.cocycle_witness.map(|(i, j)| format!("condition fails on basis pair ({i}, {j})")),
    ));
    checks.push(record(
        "linearized core kind and dimension match the documented classification",
        true,
        report.core.kind == expected_core.0 && report.core.core.len() == expected_core.1,
    ));
    checks.push(record("linearized core is an ideal", expect.core_ideal, report.core.core_is_ideal));
    checks.push(record(
        "linearized dual bracket satisfies the fundamental identity",
        true,
        report.dual_identity_witness.is_none(),
    ));
    Ok(EntryReport { id, checks })
}

fn unitary_entry<R: Rng>(rng: &mut R, pairs: usize) -> EntryReport {
    let factors = unitary_coboundary_factors();
    let tensor = |g: &Matrix<GaussRat>| coboundary_tensor_at(&factors, g);
    let mut checks = Vec::new();

    let id2 = Matrix::<GaussRat>::identity(2);
    checks.push(record(
        "tensor vanishes at the unit",
        true,
        tensor(&id2).map(|t| t.is_zero()).unwrap_or(false),
    ));

    let mut product_rule = true;
    let mut product_witness = None;
    let mut decomposable = true;
    let mut samples: Vec<Matrix<GaussRat>> = Vec::new();
    for k in 0..pairs {
        let g1 = sample_unitary(rng, 2);
        let g2 = sample_unitary(rng, 2);
        match check_multiplicative_at(&tensor, &g1, &g2) {
            Ok(residual) => {
                if !residual.is_zero() && product_rule {
                    product_rule = false;
                    product_witness = Some(format!("nonzero residual at sampled pair {k}"));
                }
            }
            Err(e) => {
                product_rule = false;
                product_witness.get_or_insert(format!("pair {k}: {e}"));
            }
        }
        samples.push(g1);
        samples.push(g2);
    }
    checks.push(record_with(
        "tensor satisfies the product rule at sampled pairs",
        true,
        product_rule,
        product_witness,
    ));

    for g in &samples {
        let ok = tensor(g)
            .and_then(|t| t.as_coordinate_field())
            .map(|f| f.is_decomposable())
            .unwrap_or(false);
        if !ok {
            decomposable = false;
            break;
        }
    }
    checks.push(record("values are decomposable at sampled points", true, decomposable));

    // Central elements populate the vanishing locus; it must close under
    // products and inverses.
    let mut members: Vec<Matrix<GaussRat>> = vec![id2];
    for _ in 0..3 {
        let lambda = gauss(Rat::zero(), random_rat(rng, 10));
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { lambda.clone() } else { GaussRat::zero() });
        members.push(cayley_unitary(&a).expect("scalar skew-Hermitian"));
    }
    let mut closed = members
        .iter()
        .all(|g| vanishing_membership(&tensor, g).unwrap_or(false));
    'outer: for a in &members {
        for b in &members {
            let prod = a.matmul(b);
            let inv = conj_transpose(a);
            if !vanishing_membership(&tensor, &prod).unwrap_or(false)
                || !vanishing_membership(&tensor, &inv).unwrap_or(false)
            {
                closed = false;
                break 'outer;
            }
        }
    }
    checks.push(record("vanishing locus closes under products and inverses", true, closed));

    EntryReport { id: "u2-coboundary", checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DualBracket;
    use crate::seeded::DEFAULT_SEED;

    #[test]
    fn every_entry_meets_its_documented_expectations() {
        for report in run_all(DEFAULT_SEED, 3) {
            assert!(
                report.meets_expectations(),
                "{}: {:?}",
                report.id,
                report
                    .checks
                    .iter()
                    .filter(|c| !c.as_expected())
                    .map(|c| (c.name, c.passed, c.witness.clone()))
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn documented_failures_really_fail_and_nothing_else_does() {
        let wide = run_entry("heisenberg-1-3", DEFAULT_SEED, 2).unwrap();
        let failing: Vec<&str> =
            wide.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(
            failing,
            vec![
                "tensor satisfies the product rule",
                "coframe brackets have constant coefficients",
                "linearization is a cocycle",
                "linearized core is an ideal",
            ]
        );

        let twisted = run_entry("negative-noninvolutive", DEFAULT_SEED, 2).unwrap();
        let failing: Vec<&str> =
            twisted.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(
            failing,
            vec![
                "factor span is involutive",
                "no fundamental-identity violation on coordinate tuples",
            ]
        );
        assert!(twisted.checks.iter().any(|c| !c.passed && c.witness.is_some()));

        let split = run_entry("negative-nondecomposable", DEFAULT_SEED, 2).unwrap();
        let failing: Vec<&str> =
            split.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failing, vec!["decomposable over the function field"]);

        for id in ["g3-solvable", "heisenberg-1-1", "h11-line-product", "u2-coboundary"] {
            assert!(run_entry(id, DEFAULT_SEED, 2).unwrap().all_passed(), "{id}");
        }
    }

    #[test]
    fn unknown_identifiers_are_rejected_with_the_known_list() {
        let err = run_entry("no-such-entry", DEFAULT_SEED, 1).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("no-such-entry"));
        assert!(msg.contains("g3-solvable"));
    }

    #[test]
    fn coframe_brackets_at_the_unit_match_the_dual_brackets() {
        // Two independent routes to the same n-ary table: expand the
        // coframe brackets (constant coefficients) or read the linear
        // approximation's coefficient tensors.
        let cases: Vec<(ChartGroup, MultiVector)> = vec![
            {
                let g = scaling_group();
                let p = scaled_volume(g.chart(), scaling_cubic(g.chart()));
                (g, p)
            },
            {
                let g = heisenberg_group(1);
                let p = heisenberg_tensor(g.chart(), 1);
                (g, p)
            },
        ];
        for (group, p) in cases {
            let alg = group.lie_algebra().unwrap();
            let lin = group.linear_approximation(&p, alg.chart()).unwrap();
            let dual = DualBracket::new(&alg, &lin).unwrap();
            let criterion = group.coframe_criterion(&p).unwrap();
            assert!(criterion.passed());
            for (idx, coeffs) in &criterion.coefficients {
                let zero = vec![Rat::zero(); alg.dim()];
                let table_row = dual.table().get(idx).unwrap_or(&zero);
                let expanded: Vec<Rat> = coeffs
                    .iter()
                    .map(|c| c.constant_value().expect("constant by the criterion"))
                    .collect();
                assert_eq!(&expanded, table_row, "tuple {idx:?}");
            }
        }
    }

    #[test]
    fn scaling_vanishing_slice_is_a_closed_subgroup() {
        // The tensor vanishes exactly where the cubic does: x = 1 and
        // x = -1 (x = 0 is outside the chart).  Substituting x = -1 into
        // the group law shows products and inverses stay in the locus.
        let group = scaling_group();
        let f = scaling_cubic(group.chart());
        assert!(f.subst_partial(&[(0, rat(-1))]).unwrap().is_zero());
        assert!(f.subst_partial(&[(0, rat(1))]).unwrap().is_zero());
        assert!(!f.subst_partial(&[(0, rat(2))]).unwrap().is_zero());

        let x_of_product = &group.law()[0];
        let n = group.dim();
        let on_slice = x_of_product.subst_partial(&[(0, rat(-1)), (n, rat(-1))]).unwrap();
        assert_eq!(on_slice.constant_value(), Some(rat(1)));
        let x_of_inverse = &group.inversion()[0];
        let inv_on_slice = x_of_inverse.subst_partial(&[(0, rat(-1))]).unwrap();
        assert_eq!(inv_on_slice.constant_value(), Some(rat(-1)));

        // The tensor itself is multiplicative, and the point x = 2 outside
        // the locus really carries a nonzero value.
        let p = scaled_volume(group.chart(), f);
        assert!(group.multiplicativity_witness(&p).unwrap().is_none());
        let at_two = p.eval_components(&[rat(2), rat(0), rat(0)]).unwrap();
        assert_eq!(at_two.get(&vec![0, 1, 2]), Some(&rat(3)));
    }
}
