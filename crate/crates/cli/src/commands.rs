use std::path::Path;

use finmarkov::causal::{default_timing, validate_model};
use finmarkov::ci::{ci_residual, DerivationError};
use finmarkov::exchange::{build_ah_joint, grid_generators, invariance_residuals, verify_ah_lemmas_on};
use finmarkov::finstoch::{cs_check, param_cs_check, CsReport, CsTolerance};
use finmarkov::markov::{factorize, local_markov_checks, ordered_markov_checks, recompose, BoxCheck};
use finmarkov::noise::{outsource, pushforward_residual};
use finmarkov::{AhSpec, CausalModel, Derivation, Error, ParamKernel, TimingFunction};

use crate::input::{read_json, read_kernel, read_state, write_json, InputError};
use crate::report::Report;

fn model_error(path: &Path, e: Error) -> InputError {
    InputError::at(path, None, e)
}

/// Loads a model and rejects it unless it is DAG-like.
fn read_model(path: &Path) -> Result<CausalModel, InputError> {
    let m: CausalModel = read_json(path)?;
    if let Some(v) = validate_model(&m).first() {
        return Err(InputError::at(path, Some(field_of_violation(&v.kind)), v));
    }
    Ok(m)
}

fn field_of_violation(kind: &finmarkov::causal::ViolationKind) -> &'static str {
    use finmarkov::causal::ViolationKind::*;
    match kind {
        DuplicateWire | UndeclaredWire => "wires",
        EmptyOutputs | NotAnOutput | RepeatedOutput => "outputs",
        _ => "boxes",
    }
}

fn pair(state: &Path, model: &Path) -> String {
    format!("{} with {}", state.display(), model.display())
}

pub fn validate_model_cmd(path: &Path) -> Result<Report, InputError> {
    let m: CausalModel = read_json(path)?;
    let mut r = Report::new();
    let violations = validate_model(&m);
    if violations.is_empty() {
        r.push(true, format!("model boxes={} wires={}", m.boxes().len(), m.wires().len()), None);
    }
    for v in violations {
        r.push(false, format!("model {v}"), None);
    }
    Ok(r)
}

pub fn check_ci_cmd(
    state: &Path,
    x: &[String],
    y: &[String],
    given: &[String],
    atol: f64,
) -> Result<Report, InputError> {
    let p = read_state(state)?;
    let res = ci_residual(&p, x, y, given).map_err(|e| InputError::new("--x/--y/--given", None, e))?;
    let mut name = format!("ci {}⊥{}", x.join(","), y.join(","));
    if !given.is_empty() {
        name += &format!("|{}", given.join(","));
    }
    let mut r = Report::new();
    r.residual(name, res, atol);
    Ok(r)
}

fn box_lines(r: &mut Report, checks: &[BoxCheck], atol: f64) {
    for c in checks {
        r.residual(c.to_string(), c.residual, atol);
    }
}

fn read_timing(path: &Path, m: &CausalModel) -> Result<TimingFunction, InputError> {
    let tau: TimingFunction = read_json(path)?;
    tau.validate(m).map_err(|e| InputError::at(path, None, e))?;
    Ok(tau)
}

fn timing_for(timing: Option<&Path>, m: &CausalModel, model: &Path) -> Result<TimingFunction, InputError> {
    match timing {
        Some(t) => read_timing(t, m),
        None => default_timing(m).map_err(|e| model_error(model, e)),
    }
}

pub fn check_markov_cmd(
    state: &Path,
    model: &Path,
    timing: Option<&Path>,
    ordered: bool,
    atol: f64,
) -> Result<Report, InputError> {
    let p = read_state(state)?;
    let m = read_model(model)?;
    let checks = if ordered || timing.is_some() {
        let tau = timing_for(timing, &m, model)?;
        ordered_markov_checks(&p, &m, &tau)
    } else {
        local_markov_checks(&p, &m)
    }
    .map_err(|e| InputError::new(pair(state, model), None, e))?;
    let mut r = Report::new();
    box_lines(&mut r, &checks, atol);
    Ok(r)
}

pub fn factorize_cmd(
    state: &Path,
    model: &Path,
    timing: Option<&Path>,
    output: &Path,
    atol: f64,
) -> Result<Report, InputError> {
    let p = read_state(state)?;
    let m = read_model(model)?;
    let tau = timing_for(timing, &m, model)?;
    let ctx = |e| InputError::new(pair(state, model), None, e);
    let asg = factorize(&p, &m, &tau).map_err(ctx)?;
    let res = recompose(&m, &asg).and_then(|q| q.max_abs_diff(&p)).map_err(ctx)?;
    write_json(output, &asg)?;
    let mut r = Report::new();
    r.residual("factorize recompose", res, atol);
    Ok(r)
}

pub fn build_ah_cmd(spec: &Path, expose: bool, output: &Path) -> Result<Report, InputError> {
    let s: AhSpec = read_json(spec)?;
    let p = build_ah_joint(&s, expose).map_err(|e| InputError::at(spec, None, e))?;
    write_json(output, &p)?;
    let mut r = Report::new();
    r.push(
        true,
        format!("build-ah {}x{} wires={} entries={}", s.rows(), s.cols(), p.wires().len(), p.len()),
        None,
    );
    Ok(r)
}

pub fn verify_ah_cmd(spec: &Path, atol: f64) -> Result<Report, InputError> {
    let s: AhSpec = read_json(spec)?;
    let ctx = |e| InputError::at(spec, None, e);
    let exposed = build_ah_joint(&s, true).map_err(ctx)?;
    let lemmas = verify_ah_lemmas_on(&exposed, s.rows(), s.cols(), atol).map_err(ctx)?;
    let mut r = Report::new();
    r.residual("ah entries⊥|latents", lemmas.entries_given_latents.residual, atol);
    r.residual("ah entry⊥rest|own-latents", lemmas.entry_given_own_latents.residual, atol);
    r.residual("ah rows,columns⊥|T", lemmas.rows_columns_given_tail.residual, atol);

    let m = s.model();
    let tau = default_timing(&m).map_err(ctx)?;
    box_lines(&mut r, &ordered_markov_checks(&exposed, &m, &tau).map_err(ctx)?, atol);

    let observed = build_ah_joint(&s, false).map_err(ctx)?;
    let gens = grid_generators(s.rows(), s.cols());
    let res = invariance_residuals(&observed, &gens).map_err(ctx)?;
    for (g, res) in gens.iter().zip(res) {
        r.residual(format!("exchangeable {g}"), res, atol);
    }
    Ok(r)
}

pub fn check_exchangeable_cmd(
    state: &Path,
    rows: usize,
    cols: usize,
    atol: f64,
) -> Result<Report, InputError> {
    let p = read_state(state)?;
    let gens = grid_generators(rows, cols);
    let res = invariance_residuals(&p, &gens).map_err(|e| InputError::at(state, Some("wire_names"), e))?;
    let mut r = Report::new();
    for (g, res) in gens.iter().zip(res) {
        r.residual(format!("exchangeable {g}"), res, atol);
    }
    Ok(r)
}

pub fn replay_cmd(path: &Path) -> Result<Report, InputError> {
    let d: Derivation = read_json(path)?;
    let n = d.axioms.len();
    let mut r = Report::new();
    let failure = d.validate().err();
    match &failure {
        Some(DerivationError::Axiom { index, reason }) => {
            r.push(false, format!("axiom {index}: {reason}"), None);
            return Ok(r);
        }
        _ => r.push(true, format!("axioms count={n}"), None),
    }
    for (k, step) in d.steps.iter().enumerate() {
        let label = format!("step {} {}: {}", n + k, step.rule, step.conclusion);
        match &failure {
            Some(DerivationError::Step { step: bad, reason, .. }) if *bad == k => {
                r.push(false, format!("{label} ({reason})"), None);
                break;
            }
            _ => r.push(true, label, None),
        }
    }
    Ok(r)
}

pub fn noise_outsource_cmd(
    kernel: &Path,
    order: &[String],
    output: Option<&Path>,
    atol: f64,
) -> Result<Report, InputError> {
    let f = read_kernel(kernel)?;
    let ctx = |e| InputError::at(kernel, None, e);
    let y = match f.cod() {
        [y] => y.clone(),
        _ => return Err(InputError::at(kernel, Some("cod"), "expected exactly one output factor")),
    };
    let order: Vec<String> = if order.is_empty() { y.elements().to_vec() } else { order.to_vec() };
    let out = outsource(&f, &order).map_err(|e| InputError::new("--order", None, e))?;
    let mut r = Report::new();
    r.residual("pushforward", pushforward_residual(&out.quantiles, &f).map_err(ctx)?, atol);
    r.push(out.quantiles.is_monotone(&order), "monotone", None);
    r.push(out.quantiles.values_in(&y), format!("values-in {}", y.label()), None);
    let recombined = out.recombined().map_err(ctx)?;
    r.residual("recombined", recombined.max_abs_diff(&f).map_err(ctx)?, atol);
    if let Some(path) = output {
        write_json(path, &out.quantiles)?;
    }
    Ok(r)
}

fn cs_lines(r: &mut Report, rep: &CsReport) {
    r.push(rep.antecedent_holds, "cs antecedent", Some(rep.antecedent_residual));
    r.push(rep.consequent_holds, "cs as-equal", Some(rep.consequent_residual));
    r.push(rep.implication_holds(), "cs implication", None);
}

pub fn check_cs_cmd(
    p: &Path,
    f: &Path,
    g: &Path,
    parametric: bool,
    atol: Option<f64>,
) -> Result<Report, InputError> {
    let (pk, fk, gk) = (read_kernel(p)?, read_kernel(f)?, read_kernel(g)?);
    let mut tol = CsTolerance::default();
    if let Some(a) = atol {
        tol.consequent = a;
    }
    let ctx = |e| InputError::new(format!("{}, {}, {}", p.display(), f.display(), g.display()), None, e);
    let rep = if parametric {
        let wrap = |k, path: &Path| ParamKernel::new(k).map_err(|e| InputError::at(path, Some("dom"), e));
        param_cs_check(&wrap(pk, p)?, &wrap(fk, f)?, &wrap(gk, g)?, tol)
    } else {
        cs_check(&pk, &fk, &gk, tol)
    }
    .map_err(ctx)?;
    let mut r = Report::new();
    cs_lines(&mut r, &rep);
    Ok(r)
}
