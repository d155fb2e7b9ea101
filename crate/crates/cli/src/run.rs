//! Drivers that turn parsed inputs into run reports.
//!
//! Every function here is deterministic for a fixed input and seed: the
//! random suites all draw from a counter-based generator seeded
//! explicitly, and every collection rendered into a report iterates in a
//! canonical order.

use nambu_core::catalog;
use nambu_core::chart::Chart;
use nambu_core::check::SuiteResult;
use nambu_core::error::Error as CoreError;
use nambu_core::group::ChartGroup;
use nambu_core::liealg::{
    cocycle_witness, core_of_linear, dual_identity_witness, pairing_identity_witness,
    search_contraction_ansatz, search_volume_ansatz, search_wedge_ansatz, standard_basis,
    validate_linear_tensor, CoreAnalysis, LieAlgebra,
};
use nambu_core::matgroup::{check_multiplicative_at, coboundary_tensor_at, sample_unitary};
use nambu_core::matrix::Matrix;
use nambu_core::multivector::MultiVector;
use nambu_core::nambu::{fi_residual, find_fi_witness, verify_form_bracket_properties, verify_nambu_structure};
use nambu_core::rat::{GaussRat, Rat};
use nambu_core::seeded::{random_function, suite_rng};
use num::{One, Zero};

use crate::file::{Payload, StructureFile};
use crate::report::{RunReport, Verdict};

/// A problem with the input itself, as opposed to a failed check.  The
/// caller reports it on stderr and exits with status 2.
pub type InputError = String;

fn core_input(e: CoreError) -> InputError {
    e.to_string()
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

// ---------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------

fn tuple_names(chart: &Chart, idx: &[usize]) -> String {
    let names: Vec<&str> = idx.iter().map(|&i| chart.name(i)).collect();
    format!("[{}]", names.join(", "))
}

fn render_tensor(t: &MultiVector) -> String {
    let parts: Vec<String> = t
        .components()
        .map(|(idx, c)| format!("{} -> {}", tuple_names(t.chart(), idx), c))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("; ")
    }
}

fn render_rat_vector(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// A vector in algebra coordinates as a combination of basis names.
fn render_algebra_vector(alg: &LieAlgebra, v: &[Rat]) -> String {
    let mut parts = Vec::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(alg.basis_name(i).to_string());
        } else {
            parts.push(format!("{}*{}", c, alg.basis_name(i)));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn push_suite(report: &mut RunReport, suite: &SuiteResult) {
    report.push(
        format!("{} ({} checks)", suite.label, suite.checks),
        verdict(suite.passed()),
        suite.failures.first().cloned(),
    );
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

fn tensor_records(
    report: &mut RunReport,
    tensor: &MultiVector,
    seed: u64,
    suite_size: usize,
) {
    let mut rng = suite_rng(seed);
    let v = verify_nambu_structure(tensor, &mut rng, suite_size);
    report.push(
        "decomposable over the function field",
        verdict(v.decomposability_witness.is_none()),
        v.decomposability_witness.as_ref().map(|(a, b, f)| {
            format!(
                "components {} and {} leave the cross-term {}",
                tuple_names(tensor.chart(), a),
                tuple_names(tensor.chart(), b),
                f
            )
        }),
    );
    report.push(
        "factor span is involutive",
        verdict(v.involutivity_witness.is_none()),
        v.involutivity_witness
            .map(|(i, j)| format!("the bracket of factors {i} and {j} leaves the span")),
    );
    push_suite(report, &v.skew);
    push_suite(report, &v.leibniz);
    push_suite(report, &v.fundamental_identity);
    for suite in verify_form_bracket_properties(tensor, &mut rng, suite_size) {
        push_suite(report, &suite);
    }
}

fn jacobi_record(report: &mut RunReport, alg: &LieAlgebra) {
    let witness = alg.jacobi_witness().map(|(i, j, k, resid)| {
        format!(
            "fails on ({}, {}, {}) with residual {}",
            alg.basis_name(i),
            alg.basis_name(j),
            alg.basis_name(k),
            render_rat_vector(&resid)
        )
    });
    report.push(
        "bracket table satisfies the Jacobi identity",
        verdict(witness.is_none()),
        witness,
    );
}

fn linear_records(
    report: &mut RunReport,
    alg: &LieAlgebra,
    tensor: &MultiVector,
    prefix: &str,
) -> Result<(), InputError> {
    let pair = |w: Option<(usize, usize)>| {
        w.map(|(i, j)| {
            format!("condition fails on basis pair ({}, {})", alg.basis_name(i), alg.basis_name(j))
        })
    };
    let w = cocycle_witness(alg, tensor).map_err(core_input)?;
    report.push(format!("{prefix}tensor is a cocycle"), verdict(w.is_none()), pair(w));
    match core_of_linear(alg, tensor) {
        Ok(analysis) => {
            report.push(
                format!("{prefix}core classification"),
                Verdict::Pass,
                Some(render_core(alg, &analysis)),
            );
            report.push(
                format!("{prefix}core is an ideal"),
                verdict(analysis.core_is_ideal),
                None,
            );
        }
        Err(CoreError::Invalid(m)) => {
            report.push(format!("{prefix}core classification"), Verdict::Fail, Some(m));
            report.push(format!("{prefix}core is an ideal"), Verdict::Fail, None);
        }
        Err(e) => return Err(core_input(e)),
    }
    let w = dual_identity_witness(alg, tensor).map_err(core_input)?;
    report.push(
        format!("{prefix}dual bracket satisfies the fundamental identity"),
        verdict(w.is_none()),
        w.map(|(xs, ys)| {
            format!(
                "fails on tuples {} against {}",
                tuple_names(alg.chart(), &xs),
                tuple_names(alg.chart(), &ys)
            )
        }),
    );
    let w = pairing_identity_witness(alg, tensor).map_err(core_input)?;
    report.push(
        format!("{prefix}pairing identity holds on basis tuples"),
        verdict(w.is_none()),
        w.map(|(tuple, (i, j))| {
            format!(
                "fails on tuple {} against basis pair ({}, {})",
                tuple_names(alg.chart(), &tuple),
                alg.basis_name(i),
                alg.basis_name(j)
            )
        }),
    );
    Ok(())
}

fn render_core(alg: &LieAlgebra, analysis: &CoreAnalysis) -> String {
    let basis: Vec<String> =
        analysis.core.iter().map(|v| render_algebra_vector(alg, v)).collect();
    format!(
        "{} kind, dimension {}, spanned by {}",
        analysis.kind,
        analysis.core.len(),
        basis.join(", ")
    )
}

fn group_records(
    report: &mut RunReport,
    group: &ChartGroup,
    tensor: &MultiVector,
    seed: u64,
    suite_size: usize,
) -> Result<(), InputError> {
    let axioms = group.axioms_witness().map_err(core_input)?;
    report.push("group axioms hold", verdict(axioms.is_none()), axioms);
    tensor_records(report, tensor, seed, suite_size);
    let at_unit = group.vanishes_at_unit(tensor).map_err(core_input)?;
    report.push("tensor vanishes at the unit", verdict(at_unit), None);
    let w = group.multiplicativity_witness(tensor).map_err(core_input)?;
    report.push(
        "tensor satisfies the product rule",
        verdict(w.is_none()),
        w.map(|(idx, f)| {
            format!("residual component {} is {}", tuple_names(group.doubled(), &idx), f)
        }),
    );
    let criterion = group.coframe_criterion(tensor).map_err(core_input)?;
    let witness = criterion.coefficients.iter().find_map(|(idx, cs)| {
        cs.iter().enumerate().find(|(_, c)| !c.is_constant()).map(|(row, c)| {
            format!(
                "bracket of coframe tuple {} has non-constant coefficient {} on row {}",
                tuple_names(group.chart(), idx),
                c,
                row
            )
        })
    });
    report.push(
        "coframe brackets have constant coefficients",
        verdict(criterion.coefficients_constant()),
        witness,
    );
    let alg = group.lie_algebra().map_err(core_input)?;
    let lin = group.linear_approximation(tensor, alg.chart()).map_err(core_input)?;
    report.push(
        "linear approximation at the unit",
        Verdict::Pass,
        Some(render_tensor(&lin)),
    );
    if lin.is_zero() {
        report.push("linearization is a cocycle", Verdict::Pass, None);
        report.push(
            "linearized core classification",
            Verdict::Fail,
            Some("the linear approximation vanishes identically".to_string()),
        );
        return Ok(());
    }
    linear_records(report, &alg, &lin, "linearized ")?;
    Ok(())
}

fn matrix_records(
    report: &mut RunReport,
    size: usize,
    factors: &[Matrix<GaussRat>],
    seed: u64,
    samples: usize,
) -> Result<(), InputError> {
    let tensor = |g: &Matrix<GaussRat>| coboundary_tensor_at(factors, g);
    let at_unit = tensor(&Matrix::identity(size)).map_err(core_input)?;
    report.push("tensor vanishes at the unit", verdict(at_unit.is_zero()), None);

    let mut rng = suite_rng(seed);
    let mut product_witness = None;
    let mut decomposability_witness = None;
    for k in 0..samples {
        let g1 = sample_unitary(&mut rng, size);
        let g2 = sample_unitary(&mut rng, size);
        let residual = check_multiplicative_at(&tensor, &g1, &g2).map_err(core_input)?;
        if product_witness.is_none() && !residual.is_zero() {
            let comps = residual.canonical_components();
            let first = comps.iter().next();
            product_witness = Some(format!(
                "sample pair {k}: residual component {:?}",
                first.map(|(idx, c)| (idx.clone(), c.to_string()))
            ));
        }
        for (slot, g) in [(0usize, &g1), (1usize, &g2)] {
            if decomposability_witness.is_some() {
                continue;
            }
            let field = tensor(g).map_err(core_input)?.as_coordinate_field().map_err(core_input)?;
            if let Some((a, b, f)) = field.decomposability_witness() {
                decomposability_witness = Some(format!(
                    "sample pair {k}, slot {slot}: components {:?} and {:?} leave cross-term {}",
                    a, b, f
                ));
            }
        }
    }
    report.push(
        format!("tensor satisfies the product rule at {samples} sampled pairs"),
        verdict(product_witness.is_none()),
        product_witness,
    );
    report.push(
        format!("values are decomposable at {samples} sampled pairs"),
        verdict(decomposability_witness.is_none()),
        decomposability_witness,
    );
    Ok(())
}

pub fn verify_report(
    file: &StructureFile,
    input: String,
    source: &[u8],
    seed: u64,
    suite_size: Option<usize>,
) -> Result<RunReport, InputError> {
    let size = match &file.payload {
        Payload::MatrixTensor { samples, .. } => suite_size.or(*samples).unwrap_or(25),
        _ => suite_size.unwrap_or(5),
    };
    let mut report = RunReport::new(input, source, seed, size);
    report.push(
        format!("parsed as kind `{}`", file.kind_name),
        Verdict::Pass,
        file.name.clone(),
    );
    match &file.payload {
        Payload::Tensor { tensor } => {
            tensor_records(&mut report, tensor, seed, size);
        }
        Payload::Algebra { algebra } => {
            jacobi_record(&mut report, algebra);
        }
        Payload::Linear { algebra, tensor } => {
            jacobi_record(&mut report, algebra);
            validate_linear_tensor(algebra, tensor).map_err(core_input)?;
            linear_records(&mut report, algebra, tensor, "")?;
            tensor_records(&mut report, tensor, seed, size);
        }
        Payload::Group { group, tensor } => {
            group_records(&mut report, group, tensor, seed, size)?;
        }
        Payload::MatrixTensor { size: n, factors, .. } => {
            matrix_records(&mut report, *n, factors, seed, size)?;
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------
// examples
// ---------------------------------------------------------------------

fn entry_records(report: &mut RunReport, entry: &catalog::EntryReport, prefix: &str) {
    for check in &entry.checks {
        let verdict = if !check.as_expected() {
            Verdict::Fail
        } else if check.passed {
            Verdict::Pass
        } else {
            Verdict::ExpectedFail
        };
        report.push(format!("{prefix}{}", check.name), verdict, check.witness.clone());
    }
}

pub fn examples_report(
    target: Option<&str>,
    seed: u64,
    suite_size: Option<usize>,
) -> Result<RunReport, InputError> {
    let size = suite_size.unwrap_or(5);
    match target {
        Some(id) => {
            let entry = catalog::run_entry(id, seed, size).map_err(core_input)?;
            let mut report = RunReport::new(id.to_string(), id.as_bytes(), seed, size);
            entry_records(&mut report, &entry, "");
            Ok(report)
        }
        None => {
            let ids = catalog::catalog_ids().join("\n");
            let mut report = RunReport::new("catalog".to_string(), ids.as_bytes(), seed, size);
            for entry in catalog::run_all(seed, size) {
                entry_records(&mut report, &entry, &format!("{}: ", entry.id));
            }
            Ok(report)
        }
    }
}

// ---------------------------------------------------------------------
// search
// ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchCase {
    A,
    B,
    C,
}

pub fn search_report(
    file: &StructureFile,
    input: String,
    source: &[u8],
    ideal: &str,
    case: SearchCase,
    seed: u64,
) -> Result<RunReport, InputError> {
    let algebra = match &file.payload {
        Payload::Algebra { algebra } => algebra,
        Payload::Linear { algebra, .. } => algebra,
        _ => return Err("search needs a lie-algebra (or linear-nambu) file".to_string()),
    };
    let subspace = parse_ideal_argument(algebra, ideal)?;
    if let Some((i, j)) = algebra.ideal_witness(&subspace).map_err(core_input)? {
        // The subspace rows are unit vectors, so the witness column maps
        // back to an algebra basis index.
        let vj = subspace[j].iter().position(|c| !c.is_zero()).expect("unit vector");
        return Err(format!(
            "the subspace is not an ideal: the bracket [{}, {}] = {} leaves it",
            algebra.basis_name(i),
            algebra.basis_name(vj),
            render_algebra_vector(algebra, &algebra.bracket_basis(i, vj)),
        ));
    }
    let search = match case {
        SearchCase::A => search_volume_ansatz(algebra, &subspace),
        SearchCase::B => search_wedge_ansatz(algebra, &subspace),
        SearchCase::C => search_contraction_ansatz(algebra, &subspace),
    }
    .map_err(core_input)?;

    let mut report = RunReport::new(input, source, seed, 0);
    report.push(
        format!("ansatz order {}", search.order),
        Verdict::Pass,
        Some(format!("ideal character {}", render_rat_vector(&search.character))),
    );
    report.push(
        format!("solution space dimension {}", search.parameter_basis.len()),
        Verdict::Pass,
        None,
    );
    for (k, v) in search.parameter_basis.iter().enumerate() {
        report.push(format!("parameter vector {k}"), Verdict::Pass, Some(render_rat_vector(v)));
    }
    for (k, t) in search.tensors.iter().enumerate() {
        let certified = search.certified.get(k).copied().unwrap_or(false);
        let status = if certified {
            "certified Nambu-Lie structure"
        } else {
            "not certified as a Nambu-Lie structure"
        };
        report.push(
            format!("tensor {k} ({status})"),
            Verdict::Pass,
            Some(render_tensor(t)),
        );
    }
    Ok(report)
}

fn parse_ideal_argument(alg: &LieAlgebra, ideal: &str) -> Result<Vec<Vec<Rat>>, InputError> {
    if ideal == "all" {
        return Ok(standard_basis(alg.dim()));
    }
    let mut subspace = Vec::new();
    for name in ideal.split(',') {
        let name = name.trim();
        let Some(i) = alg.basis_names().iter().position(|n| n == name) else {
            return Err(format!(
                "unknown basis element `{name}` in --ideal; the basis is {}",
                alg.basis_names().join(", ")
            ));
        };
        let mut v = vec![Rat::zero(); alg.dim()];
        v[i] = Rat::one();
        if subspace.contains(&v) {
            return Err(format!("basis element `{name}` listed twice in --ideal"));
        }
        subspace.push(v);
    }
    Ok(subspace)
}

// ---------------------------------------------------------------------
// fi-check
// ---------------------------------------------------------------------

pub fn fi_report(
    file: &StructureFile,
    input: String,
    source: &[u8],
    seed: u64,
    suite_size: Option<usize>,
) -> Result<RunReport, InputError> {
    let tensor = match &file.payload {
        Payload::Tensor { tensor } => tensor,
        Payload::Linear { tensor, .. } => tensor,
        Payload::Group { tensor, .. } => tensor,
        _ => return Err("fi-check needs a file carrying a tensor".to_string()),
    };
    let size = suite_size.unwrap_or(5);
    let mut report = RunReport::new(input, source, seed, size);
    let witness = find_fi_witness(tensor);
    report.push(
        "fundamental identity on coordinate tuples",
        verdict(witness.is_none()),
        witness.map(|(fs, gs, r)| {
            format!(
                "tuples {} and {} give residual {}",
                tuple_names(tensor.chart(), &fs),
                tuple_names(tensor.chart(), &gs),
                r
            )
        }),
    );
    let n = tensor.degree();
    let vars = tensor.chart().vars();
    let mut rng = suite_rng(seed);
    let mut random_witness = None;
    for k in 0..size {
        let fs: Vec<_> = (0..n - 1).map(|_| random_function(vars, &mut rng, 2, 3)).collect();
        let gs: Vec<_> = (0..n).map(|_| random_function(vars, &mut rng, 2, 3)).collect();
        let r = fi_residual(tensor, &fs, &gs).map_err(core_input)?;
        if random_witness.is_none() && !r.is_zero() {
            random_witness = Some(format!("seeded tuple {k} gives residual {r}"));
        }
    }
    report.push(
        format!("fundamental identity on {size} seeded random tuples"),
        verdict(random_witness.is_none()),
        random_witness,
    );
    Ok(report)
}

// ---------------------------------------------------------------------
// core
// ---------------------------------------------------------------------

pub fn core_report(
    file: &StructureFile,
    input: String,
    source: &[u8],
    seed: u64,
) -> Result<RunReport, InputError> {
    let (algebra, tensor) = match &file.payload {
        Payload::Linear { algebra, tensor } => (algebra, tensor),
        _ => return Err("core needs a linear-nambu file".to_string()),
    };
    validate_linear_tensor(algebra, tensor).map_err(core_input)?;
    let mut report = RunReport::new(input, source, seed, 0);
    match core_of_linear(algebra, tensor) {
        Ok(analysis) => {
            report.push(
                "core classification",
                Verdict::Pass,
                Some(render_core(algebra, &analysis)),
            );
            let intersection: Vec<String> =
                analysis.intersection.iter().map(|v| render_algebra_vector(algebra, v)).collect();
            let sum: Vec<String> =
                analysis.sum.iter().map(|v| render_algebra_vector(algebra, v)).collect();
            report.push(
                "factor intersection",
                Verdict::Pass,
                Some(if intersection.is_empty() { "0".into() } else { intersection.join(", ") }),
            );
            report.push(
                "factor sum",
                Verdict::Pass,
                Some(if sum.is_empty() { "0".into() } else { sum.join(", ") }),
            );
            report.push("core is an ideal", verdict(analysis.core_is_ideal), None);
        }
        Err(CoreError::Invalid(m)) => {
            report.push("core classification", Verdict::Fail, Some(m));
        }
        Err(e) => return Err(core_input(e)),
    }
    Ok(report)
}
