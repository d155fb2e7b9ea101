//! Brackets attached to an n-vector field: the bracket of functions
//! `{f_1, ..., f_n} = P(df_1, ..., df_n)`, Hamiltonian vector fields,
//! the induced bracket of 1-forms, and exact verification suites for the
//! identities these are expected to satisfy.

use num::Zero;
use rand::Rng;

use crate::chart::Chart;
use crate::check::SuiteResult;
use crate::error::{Error, Result};
use crate::forms::DiffForm;
use crate::matrix::Matrix;
use crate::multivector::{increasing_multi_indices, MultiVector};
use crate::rat::{rat, Rat};
use crate::ratfunc::RatFunc;
use crate::seeded::random_function;

/// The gradient covector of a function on a chart.
pub fn gradient(chart: &Chart, f: &RatFunc) -> Vec<RatFunc> {
    (0..chart.dim()).map(|i| f.partial(i)).collect()
}

/// `{f_1, ..., f_n} = P(df_1, ..., df_n)`.
pub fn nambu_bracket(p: &MultiVector, fs: &[RatFunc]) -> Result<RatFunc> {
    if fs.len() != p.degree() {
        return Err(Error::Arity { expected: p.degree(), got: fs.len() });
    }
    let covs: Vec<Vec<RatFunc>> = fs.iter().map(|f| gradient(p.chart(), f)).collect();
    p.pair(&covs)
}

/// The Hamiltonian vector field of `n-1` functions:
/// `X_{f}(g) = {f_1, ..., f_{n-1}, g}`.
pub fn hamiltonian_field(p: &MultiVector, fs: &[RatFunc]) -> Result<MultiVector> {
    if fs.len() + 1 != p.degree() {
        return Err(Error::Arity { expected: p.degree() - 1, got: fs.len() });
    }
    let covs: Vec<Vec<RatFunc>> = fs.iter().map(|f| gradient(p.chart(), f)).collect();
    p.sharp(&covs)
}

/// Residual of the fundamental identity on one argument tuple:
/// `X_f({g_1,...,g_n}) - sum_k {g_1, ..., X_f(g_k), ..., g_n}`.
pub fn fi_residual(p: &MultiVector, fs: &[RatFunc], gs: &[RatFunc]) -> Result<RatFunc> {
    let n = p.degree();
    if gs.len() != n {
        return Err(Error::Arity { expected: n, got: gs.len() });
    }
    let xf = hamiltonian_field(p, fs)?;
    let lhs = xf.apply_to_function(&nambu_bracket(p, gs)?)?;
    let mut rhs = RatFunc::zero();
    for k in 0..n {
        let mut args = gs.to_vec();
        args[k] = xf.apply_to_function(&gs[k])?;
        rhs = &rhs + &nambu_bracket(p, &args)?;
    }
    Ok(&lhs - &rhs)
}

/// Search for a fundamental-identity violation among coordinate-function
/// tuples: all increasing `(n-1)`-tuples for the Hamiltonian slot crossed
/// with all increasing `n`-tuples for the bracket slot, in lexicographic
/// order.  Returns `(f indices, g indices, residual)` for the first
/// nonzero residual.
pub fn find_fi_witness(p: &MultiVector) -> Option<(Vec<usize>, Vec<usize>, RatFunc)> {
    let n = p.degree();
    let m = p.chart().dim();
    let coord = |i: usize| p.chart().coordinate(i);
    for f_idx in increasing_multi_indices(m, n - 1) {
        let fs: Vec<RatFunc> = f_idx.iter().map(|&i| coord(i)).collect();
        for g_idx in increasing_multi_indices(m, n) {
            let gs: Vec<RatFunc> = g_idx.iter().map(|&i| coord(i)).collect();
            let r = fi_residual(p, &fs, &gs).expect("coordinate tuples have the right arity");
            if !r.is_zero() {
                return Some((f_idx, g_idx, r));
            }
        }
    }
    None
}

/// Skew-symmetry suite: on random polynomial tuples, swapping two slots
/// negates the bracket and a repeated slot kills it.
pub fn verify_skew<R: Rng>(p: &MultiVector, rng: &mut R, suite_size: usize) -> SuiteResult {
    let n = p.degree();
    let vars = p.chart().vars().clone();
    let mut result = SuiteResult::new("bracket skew-symmetry");
    for _ in 0..suite_size {
        let fs: Vec<RatFunc> = (0..n).map(|_| random_function(&vars, rng, 2, 3)).collect();
        if n < 2 {
            continue;
        }
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        let base = nambu_bracket(p, &fs).expect("arity");
        let mut swapped = fs.clone();
        swapped.swap(i, j);
        let other = nambu_bracket(p, &swapped).expect("arity");
        result.record((&base + &other).is_zero(), || {
            format!("swapping slots {i} and {j} did not negate the bracket: {base} vs {other}")
        });
        let mut repeated = fs.clone();
        repeated[j] = repeated[i].clone();
        let rep = nambu_bracket(p, &repeated).expect("arity");
        result.record(rep.is_zero(), || {
            format!("repeated argument in slots {i} and {j} gave nonzero bracket {rep}")
        });
    }
    result
}

/// Leibniz suite: the bracket is a derivation in its last slot,
/// `{f_1, ..., f_{n-1}, gh} = g {f..., h} + h {f..., g}`.
pub fn verify_leibniz<R: Rng>(p: &MultiVector, rng: &mut R, suite_size: usize) -> SuiteResult {
    let n = p.degree();
    let vars = p.chart().vars().clone();
    let mut result = SuiteResult::new("Leibniz rule");
    for _ in 0..suite_size {
        let fs: Vec<RatFunc> = (0..n - 1).map(|_| random_function(&vars, rng, 2, 3)).collect();
        let g = random_function(&vars, rng, 2, 3);
        let h = random_function(&vars, rng, 2, 3);
        let with = |last: RatFunc| -> RatFunc {
            let mut args = fs.clone();
            args.push(last);
            nambu_bracket(p, &args).expect("arity")
        };
        let lhs = with(&g * &h);
        let rhs = &(&g * &with(h.clone())) + &(&h * &with(g.clone()));
        result.record(lhs == rhs, || {
            format!("product rule violated on g = {g}, h = {h}: {lhs} vs {rhs}")
        });
    }
    result
}

/// Fundamental-identity suite on random polynomial tuples.
pub fn verify_fundamental_identity<R: Rng>(
    p: &MultiVector,
    rng: &mut R,
    suite_size: usize,
) -> SuiteResult {
    let n = p.degree();
    let vars = p.chart().vars().clone();
    let mut result = SuiteResult::new("fundamental identity");
    for _ in 0..suite_size {
        let fs: Vec<RatFunc> = (0..n - 1).map(|_| random_function(&vars, rng, 2, 3)).collect();
        let gs: Vec<RatFunc> = (0..n).map(|_| random_function(&vars, rng, 2, 3)).collect();
        let r = fi_residual(p, &fs, &gs).expect("arity");
        result.record(r.is_zero(), || {
            let f_str: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
            let g_str: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
            format!(
                "residual {r} on f = ({}), g = ({})",
                f_str.join(", "),
                g_str.join(", ")
            )
        });
    }
    result
}

/// Full verification of the defining conditions for an n-vector field to
/// induce a well-behaved n-ary bracket: exact decomposability and
/// involutivity over the function field, plus randomized exact identity
/// suites.
#[derive(Clone, Debug)]
pub struct NambuVerification {
    pub decomposability_witness: Option<(Vec<usize>, Vec<usize>, RatFunc)>,
    pub involutivity_witness: Option<(usize, usize)>,
    pub skew: SuiteResult,
    pub leibniz: SuiteResult,
    pub fundamental_identity: SuiteResult,
}

impl NambuVerification {
    pub fn passed(&self) -> bool {
        self.decomposability_witness.is_none()
            && self.involutivity_witness.is_none()
            && self.skew.passed()
            && self.leibniz.passed()
            && self.fundamental_identity.passed()
    }
}

pub fn verify_nambu_structure<R: Rng>(
    p: &MultiVector,
    rng: &mut R,
    suite_size: usize,
) -> NambuVerification {
    NambuVerification {
        decomposability_witness: p.decomposability_witness(),
        involutivity_witness: p.involutivity_witness(),
        skew: verify_skew(p, rng, suite_size),
        leibniz: verify_leibniz(p, rng, suite_size),
        fundamental_identity: verify_fundamental_identity(p, rng, suite_size),
    }
}

/// The bracket of `n` 1-forms induced by `P`:
///
/// `{a_1, ..., a_n} = d(P(a)) + sum_k (-1)^{n+k} i(#(a_khat)) da_k`
/// `                = sum_k (-1)^{n+k} L_{#(a_khat)} a_k - (n-1) d(P(a))`,
///
/// where `#(a_khat)` is the vector field pairing the last slot of `P`
/// against all forms but `a_k`.  Both expressions are computed and must
/// agree exactly; this cross-validates the sharp map, the interior
/// product, and the Lie derivative against each other.
pub fn form_bracket(p: &MultiVector, alphas: &[DiffForm]) -> Result<DiffForm> {
    let n = p.degree();
    if alphas.len() != n {
        return Err(Error::Arity { expected: n, got: alphas.len() });
    }
    let chart = p.chart();
    for a in alphas {
        if a.chart() != chart {
            return Err(Error::ChartMismatch);
        }
        if a.degree() != 1 {
            return Err(Error::Arity { expected: 1, got: a.degree() });
        }
    }
    let covs: Vec<Vec<RatFunc>> = alphas.iter().map(|a| a.as_covector()).collect();
    let p_alpha = p.pair(&covs)?;
    let d_p_alpha = DiffForm::differential(chart, &p_alpha);
    let mut expr_a = d_p_alpha.clone();
    let mut expr_b = d_p_alpha.scale(&chart.constant(rat(1 - n as i64)));
    for k in 0..n {
        let rest: Vec<Vec<RatFunc>> = covs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.clone())
            .collect();
        let xk = p.sharp(&rest)?;
        // sign (-1)^{n+k} for 1-based k
        let positive = (n + k + 1) % 2 == 0;
        let term_a = alphas[k].d().interior(&xk)?;
        let term_b = alphas[k].lie_derivative(&xk)?;
        expr_a = if positive { expr_a.add(&term_a)? } else { expr_a.sub(&term_a)? };
        expr_b = if positive { expr_b.add(&term_b)? } else { expr_b.sub(&term_b)? };
    }
    if expr_a != expr_b {
        return Err(Error::Invalid(
            "internal inconsistency: the two form-bracket expressions disagree".into(),
        ));
    }
    Ok(expr_a)
}

/// Residual of compatibility with exact forms:
/// `{df_1, ..., df_n} - d{f_1, ..., f_n}`.
pub fn exact_forms_residual(p: &MultiVector, fs: &[RatFunc]) -> Result<DiffForm> {
    let chart = p.chart();
    let alphas: Vec<DiffForm> = fs.iter().map(|f| DiffForm::differential(chart, f)).collect();
    let lhs = form_bracket(p, &alphas)?;
    let rhs = DiffForm::differential(chart, &nambu_bracket(p, fs)?);
    lhs.sub(&rhs)
}

/// Residual of the function-scaling rule on the first slot:
/// `{f a_1, a_2, ..., a_n} - f {a} - P(df, a_2, ..., a_n) a_1`.
pub fn scaling_residual(p: &MultiVector, f: &RatFunc, alphas: &[DiffForm]) -> Result<DiffForm> {
    if alphas.len() != p.degree() {
        return Err(Error::Arity { expected: p.degree(), got: alphas.len() });
    }
    let mut scaled = alphas.to_vec();
    scaled[0] = alphas[0].scale(f);
    let lhs = form_bracket(p, &scaled)?;
    let f_bracket = form_bracket(p, alphas)?.scale(f);
    let mut covs = vec![gradient(p.chart(), f)];
    covs.extend(alphas[1..].iter().map(|a| a.as_covector()));
    let coefficient = p.pair(&covs)?;
    lhs.sub(&f_bracket)?.sub(&alphas[0].scale(&coefficient))
}

/// Residual of the Hamiltonian transport rule:
/// `{df_1, ..., df_{n-1}, a} - L_{X_f} a`.
pub fn hamiltonian_lie_residual(
    p: &MultiVector,
    fs: &[RatFunc],
    alpha: &DiffForm,
) -> Result<DiffForm> {
    let chart = p.chart();
    let mut alphas: Vec<DiffForm> =
        fs.iter().map(|f| DiffForm::differential(chart, f)).collect();
    alphas.push(alpha.clone());
    let lhs = form_bracket(p, &alphas)?;
    let x = hamiltonian_field(p, fs)?;
    lhs.sub(&alpha.lie_derivative(&x)?)
}

/// Residual of the derivation property of Hamiltonian Lie derivatives over
/// the form bracket:
/// `L_{X_f}{a_1,...,a_n} - sum_k {a_1, ..., L_{X_f} a_k, ..., a_n}`.
pub fn derivation_residual(
    p: &MultiVector,
    fs: &[RatFunc],
    alphas: &[DiffForm],
) -> Result<DiffForm> {
    let n = p.degree();
    if alphas.len() != n {
        return Err(Error::Arity { expected: n, got: alphas.len() });
    }
    let x = hamiltonian_field(p, fs)?;
    let lhs = form_bracket(p, alphas)?.lie_derivative(&x)?;
    let mut rhs = DiffForm::zero(p.chart(), 1);
    for k in 0..n {
        let mut modified = alphas.to_vec();
        modified[k] = alphas[k].lie_derivative(&x)?;
        rhs = rhs.add(&form_bracket(p, &modified)?)?;
    }
    lhs.sub(&rhs)
}

/// Residual of the fundamental identity for 1-forms with CLOSED outer
/// arguments:
/// `{b_1,...,b_{n-1},{a_1,...,a_n}} - sum_k {a_1,...,{b,a_k},...,a_n}`.
///
/// Errors with `NotClosed` when some `b_i` is not closed — the identity is
/// only asserted for closed outer forms.
pub fn closed_fi_residual(
    p: &MultiVector,
    betas: &[DiffForm],
    alphas: &[DiffForm],
) -> Result<DiffForm> {
    let n = p.degree();
    if betas.len() + 1 != n {
        return Err(Error::Arity { expected: n - 1, got: betas.len() });
    }
    if alphas.len() != n {
        return Err(Error::Arity { expected: n, got: alphas.len() });
    }
    for b in betas {
        if !b.is_closed() {
            return Err(Error::NotClosed(b.to_string()));
        }
    }
    let inner = form_bracket(p, alphas)?;
    let mut outer_args = betas.to_vec();
    outer_args.push(inner);
    let lhs = form_bracket(p, &outer_args)?;
    let mut rhs = DiffForm::zero(p.chart(), 1);
    for k in 0..n {
        let mut inner_args = betas.to_vec();
        inner_args.push(alphas[k].clone());
        let mut modified = alphas.to_vec();
        modified[k] = form_bracket(p, &inner_args)?;
        rhs = rhs.add(&form_bracket(p, &modified)?)?;
    }
    lhs.sub(&rhs)
}

/// Randomized exact suites for the form-bracket properties.
pub fn verify_form_bracket_properties<R: Rng>(
    p: &MultiVector,
    rng: &mut R,
    suite_size: usize,
) -> Vec<SuiteResult> {
    let n = p.degree();
    let chart = p.chart().clone();
    let vars = chart.vars().clone();
    let random_one_form = |rng: &mut R| -> DiffForm {
        let comps: Vec<RatFunc> =
            (0..chart.dim()).map(|_| random_function(&vars, rng, 1, 2)).collect();
        DiffForm::one_form(&chart, &comps).expect("component count")
    };
    let mut skew = SuiteResult::new("form-bracket skew-symmetry");
    let mut exactness = SuiteResult::new("form-bracket on exact forms");
    let mut scaling = SuiteResult::new("form-bracket function scaling");
    let mut transport = SuiteResult::new("form-bracket Hamiltonian transport");
    let mut derivation = SuiteResult::new("Hamiltonian derivation of the form-bracket");
    let mut closed_fi = SuiteResult::new("form-bracket fundamental identity (closed outer forms)");
    for _ in 0..suite_size {
        let alphas: Vec<DiffForm> = (0..n).map(|_| random_one_form(rng)).collect();
        if n >= 2 {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            let base = form_bracket(p, &alphas).expect("arity");
            let mut swapped = alphas.clone();
            swapped.swap(i, j);
            let other = form_bracket(p, &swapped).expect("arity");
            skew.record(base.add(&other).map(|s| s.is_zero()).unwrap_or(false), || {
                format!("swapping form slots {i} and {j} did not negate the bracket")
            });
        }
        let fs: Vec<RatFunc> = (0..n).map(|_| random_function(&vars, rng, 2, 3)).collect();
        let r = exact_forms_residual(p, &fs).expect("arity");
        exactness.record(r.is_zero(), || format!("residual {r}"));
        let f = random_function(&vars, rng, 2, 2);
        let r = scaling_residual(p, &f, &alphas).expect("arity");
        scaling.record(r.is_zero(), || format!("residual {r} on f = {f}"));
        let r = hamiltonian_lie_residual(p, &fs[..n - 1], &alphas[0]).expect("arity");
        transport.record(r.is_zero(), || format!("residual {r}"));
        let r = derivation_residual(p, &fs[..n - 1], &alphas).expect("arity");
        derivation.record(r.is_zero(), || format!("residual {r}"));
        // closed outer forms: differentials plus a constant-coefficient form
        let betas: Vec<DiffForm> = (0..n - 1)
            .map(|_| {
                let exact = DiffForm::differential(&chart, &random_function(&vars, rng, 2, 2));
                let constant: Vec<RatFunc> = (0..chart.dim())
                    .map(|_| RatFunc::constant_on(&vars, rat(rng.gen_range(-2..=2i64))))
                    .collect();
                exact
                    .add(&DiffForm::one_form(&chart, &constant).expect("component count"))
                    .expect("degree 1")
            })
            .collect();
        let r = closed_fi_residual(p, &betas, &alphas).expect("closed by construction");
        closed_fi.record(r.is_zero(), || format!("residual {r}"));
    }
    vec![skew, exactness, scaling, transport, derivation, closed_fi]
}

/// Fix the LAST argument of the bracket to a given function: the
/// `(n-1)`-vector field `Q` with `Q(a_1, ..., a_{n-1}) = P(a_1, ..., a_{n-1}, df)`.
pub fn fix_last_argument(p: &MultiVector, f: &RatFunc) -> Result<MultiVector> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::Dimension("cannot fix an argument of a scalar".into()));
    }
    let m = p.chart().dim();
    let grad = gradient(p.chart(), f);
    let mut terms = Vec::new();
    for idx in increasing_multi_indices(m, n - 1) {
        let mut c = RatFunc::zero();
        for (j, g) in grad.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut full = idx.clone();
            full.push(j);
            c = &c + &(&p.component(&full) * g);
        }
        if !c.is_zero() {
            terms.push((idx, c));
        }
    }
    MultiVector::from_components(p.chart(), n - 1, terms)
}

/// The linear `(n-1)`-vector field induced by a constant `n`-vector on a
/// linear chart by fixing the last argument to the radial squared norm:
/// components `Q^{i_1 ... i_{n-1}} = sum_j k^{i_1 ... i_{n-1} j} x^j`.
pub fn linear_structure_from_constant(k: &MultiVector) -> Result<MultiVector> {
    for (_, c) in k.components() {
        if !c.is_constant() {
            return Err(Error::NotConstant(c.to_string()));
        }
    }
    let chart = k.chart();
    let half = RatFunc::constant_on(chart.vars(), rat(1) / rat(2));
    let mut radial = RatFunc::zero();
    for i in 0..chart.dim() {
        let x = chart.coordinate(i);
        radial = &radial + &(&x * &x);
    }
    fix_last_argument(k, &(&half * &radial))
}

/// The product of `n` vectors in an `(n+1)`-dimensional space, determined
/// by `<v_1 x ... x v_n, w> = det[v_1; ...; v_n; w]`.
pub fn vector_product(vs: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    let n = vs.len();
    let dim = n + 1;
    for v in vs {
        if v.len() != dim {
            return Err(Error::Arity { expected: dim, got: v.len() });
        }
    }
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut rows: Vec<Vec<Rat>> = vs.to_vec();
        let mut e = vec![Rat::zero(); dim];
        e[j] = rat(1);
        rows.push(e);
        out.push(Matrix::from_rows(rows)?.det());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeded::suite_rng;

    fn chart3() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    /// The standard volume trivector on a 3-dimensional chart.
    fn volume3(ch: &Chart) -> MultiVector {
        MultiVector::from_components(
            ch,
            3,
            vec![(vec![0, 1, 2], RatFunc::constant_on(ch.vars(), rat(1)))],
        )
        .unwrap()
    }

    #[test]
    fn bracket_of_coordinates_is_the_jacobian_determinant() {
        let ch = chart3();
        let p = volume3(&ch);
        let x = ch.coordinate(0);
        let y = ch.coordinate(1);
        let z = ch.coordinate(2);
        assert_eq!(nambu_bracket(&p, &[x.clone(), y.clone(), z.clone()]).unwrap(), ch.constant(rat(1)));
        // {x^2, y, z} = 2x
        assert_eq!(
            nambu_bracket(&p, &[&x * &x, y.clone(), z.clone()]).unwrap(),
            x.scale(&rat(2))
        );
        // hand-checked Jacobian: {xy, y+z, z} = y
        assert_eq!(
            nambu_bracket(&p, &[&x * &y, &y + &z, z.clone()]).unwrap(),
            y
        );
    }

    #[test]
    fn hamiltonian_field_generates_the_bracket() {
        let ch = chart3();
        let p = volume3(&ch);
        let x = ch.coordinate(0);
        let y = ch.coordinate(1);
        let xf = hamiltonian_field(&p, &[x.clone(), y.clone()]).unwrap();
        // X_{x,y} = d/dz on the volume structure
        assert_eq!(xf, MultiVector::basis_vector(&ch, 2));
        // X(g) = {x, y, g}
        let g = &(&x * &x) * &y;
        assert_eq!(
            xf.apply_to_function(&g).unwrap(),
            nambu_bracket(&p, &[x, y, g]).unwrap()
        );
    }

    #[test]
    fn identity_suites_pass_on_a_volume_structure() {
        let ch = chart3();
        let p = volume3(&ch);
        let mut rng = suite_rng(1);
        assert!(verify_skew(&p, &mut rng, 6).passed());
        assert!(verify_leibniz(&p, &mut rng, 6).passed());
        assert!(verify_fundamental_identity(&p, &mut rng, 6).passed());
        assert!(verify_nambu_structure(&p, &mut rng, 4).passed());
    }

    #[test]
    fn twisted_three_vector_fails_fi_with_the_documented_witness() {
        // d/d1 ^ d/d2 ^ (d/d3 + c d/d4), with c the SECOND coordinate:
        // decomposable but non-involutive, so the fundamental identity must
        // fail.
        let ch = Chart::new(&["x1", "x2", "x3", "x4"]).unwrap();
        let c1 = ch.coordinate(1);
        let p = MultiVector::from_components(
            &ch,
            3,
            vec![
                (vec![0, 1, 2], ch.constant(rat(1))),
                (vec![0, 1, 3], c1),
            ],
        )
        .unwrap();
        // frozen residual: f = (x1, x3), g = (x1, x2, x4) gives exactly -1
        let fs = [ch.coordinate(0), ch.coordinate(2)];
        let gs = [ch.coordinate(0), ch.coordinate(1), ch.coordinate(3)];
        let r = fi_residual(&p, &fs, &gs).unwrap();
        assert_eq!(r, ch.constant(rat(-1)));
        // the exhaustive coordinate search also finds a witness, and its
        // reported residual matches a recomputation
        let (f_idx, g_idx, res) = find_fi_witness(&p).expect("a violation must exist");
        let fs: Vec<RatFunc> = f_idx.iter().map(|&i| ch.coordinate(i)).collect();
        let gs: Vec<RatFunc> = g_idx.iter().map(|&i| ch.coordinate(i)).collect();
        assert_eq!(fi_residual(&p, &fs, &gs).unwrap(), res);
        assert!(!res.is_zero());
        // and the full verification rejects the tensor
        let mut rng = suite_rng(2);
        let v = verify_nambu_structure(&p, &mut rng, 4);
        assert!(v.involutivity_witness.is_some());
        assert!(!v.passed());
    }

    #[test]
    fn form_bracket_properties_hold_on_a_scaled_volume() {
        // f P for P the volume trivector is again a valid structure; use a
        // coordinate factor to exercise non-constant coefficients.
        let ch = chart3();
        let p = volume3(&ch).scale(&ch.coordinate(0));
        let mut rng = suite_rng(3);
        for suite in verify_form_bracket_properties(&p, &mut rng, 2) {
            assert!(suite.passed(), "{suite}");
        }
    }

    #[test]
    fn fixing_the_radial_function_linearizes_a_constant_tensor() {
        // take the canonical volume 4-vector on R^4; fixing the radial
        // squared norm gives the linear 3-vector with components
        // Q^{ijk} = sum_l eps^{ijkl} x^l
        let ch = Chart::new(&["x1", "x2", "x3", "x4"]).unwrap();
        let k = MultiVector::from_components(
            &ch,
            4,
            vec![(vec![0, 1, 2, 3], ch.constant(rat(1)))],
        )
        .unwrap();
        let q = linear_structure_from_constant(&k).unwrap();
        assert_eq!(q.degree(), 3);
        // Q^{123} = x^4, Q^{124} = -x^3, Q^{134} = x^2, Q^{234} = -x^1
        assert_eq!(q.component(&[0, 1, 2]), ch.coordinate(3));
        assert_eq!(q.component(&[0, 1, 3]), -ch.coordinate(2));
        assert_eq!(q.component(&[0, 2, 3]), ch.coordinate(1));
        assert_eq!(q.component(&[1, 2, 3]), -ch.coordinate(0));
        // the induced structure is a valid bracket
        let mut rng = suite_rng(4);
        assert!(verify_nambu_structure(&q, &mut rng, 3).passed());
    }

    #[test]
    fn vector_product_extends_the_cross_product() {
        // e1 x e2 = e3 in R^3
        let e = |j: usize, dim: usize| {
            let mut v = vec![Rat::zero(); dim];
            v[j] = rat(1);
            v
        };
        assert_eq!(vector_product(&[e(0, 3), e(1, 3)]).unwrap(), e(2, 3));
        // e1 x e2 x e3 = e4 in R^4
        assert_eq!(vector_product(&[e(0, 4), e(1, 4), e(2, 4)]).unwrap(), e(3, 4));
        // antisymmetry: e2 x e1 = -e3
        let mut neg_e3 = e(2, 3);
        neg_e3[2] = rat(-1);
        assert_eq!(vector_product(&[e(1, 3), e(0, 3)]).unwrap(), neg_e3);
    }
}
