//! Conditional independence on finite joint states.
//!
//! `X ⊥ Y | W` holds when the `(X, W, Y)` marginal equals the composite of
//! the `W` marginal with the conditionals of `X` and of `Y` given `W`. The
//! conditionals always exist here, so the existential definition is decided
//! constructively.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finstoch::{conditional, index, JointState, Kernel};

fn check_disjoint<S: AsRef<str>>(p: &JointState, groups: &[&[S]]) -> Result<()> {
    let mut seen = HashSet::new();
    for group in groups {
        for w in group.iter() {
            let w = w.as_ref();
            p.position(w)?;
            if !seen.insert(w) {
                return Err(Error::WireOverlap(w.to_string()));
            }
        }
    }
    Ok(())
}

/// Max-abs residual of the factorization `p(parts, w) = p(w) Π_i p(part_i | w)`.
pub fn mutual_ci_residual<S: AsRef<str>>(p: &JointState, parts: &[Vec<S>], given: &[S]) -> Result<f64> {
    let mut groups: Vec<&[S]> = parts.iter().map(Vec::as_slice).collect();
    groups.push(given);
    check_disjoint(p, &groups)?;

    let w: Vec<&str> = given.iter().map(AsRef::as_ref).collect();
    let n_given = w.len();
    let mut all: Vec<&str> = w.clone();
    for part in parts {
        all.extend(part.iter().map(AsRef::as_ref));
    }
    let joint = p.marginalize(&all)?;
    let weight = p.marginalize(&w)?;

    // One conditional kernel W -> part per part.
    let conds: Vec<Kernel> = parts
        .iter()
        .map(|part| {
            let mut keep = w.clone();
            keep.extend(part.iter().map(AsRef::as_ref));
            let given_idx: Vec<usize> = (0..n_given).collect();
            conditional(p.marginalize(&keep)?.kernel(), &given_idx)
        })
        .collect::<Result<_>>()?;

    let part_sizes: Vec<usize> = conds.iter().map(Kernel::n_cols).collect();
    let n_parts: usize = index::product(&part_sizes);
    let mut digits = vec![0usize; part_sizes.len()];
    let mut residual: f64 = 0.0;
    for (flat, &actual) in joint.probs().iter().enumerate() {
        let wi = flat / n_parts;
        index::decode(flat % n_parts, &part_sizes, &mut digits);
        let predicted = conds.iter().zip(&digits).fold(weight.probs()[wi], |acc, (k, &d)| acc * k.get(wi, d));
        residual = residual.max((actual - predicted).abs());
    }
    Ok(residual)
}

/// Residual of `x ⊥ y | given` in `p`; wires outside the three sets are
/// marginalized first.
pub fn ci_residual<S: AsRef<str>>(p: &JointState, x: &[S], y: &[S], given: &[S]) -> Result<f64> {
    let parts = [x.iter().map(AsRef::as_ref).collect::<Vec<&str>>(), y.iter().map(AsRef::as_ref).collect()];
    let given: Vec<&str> = given.iter().map(AsRef::as_ref).collect();
    mutual_ci_residual(p, &parts, &given)
}

pub fn check_ci<S: AsRef<str>>(p: &JointState, x: &[S], y: &[S], given: &[S], atol: f64) -> Result<bool> {
    Ok(ci_residual(p, x, y, given)? <= atol)
}

pub fn check_mutual_ci<S: AsRef<str>>(
    p: &JointState,
    parts: &[Vec<S>],
    given: &[S],
    atol: f64,
) -> Result<bool> {
    Ok(mutual_ci_residual(p, parts, given)? <= atol)
}

/// Residual of a symbolic statement whose symbols name wires of `p`.
pub fn statement_residual(p: &JointState, s: &super::CIStatement) -> Result<f64> {
    fn v(set: &super::Symbols) -> Vec<&str> {
        set.iter().map(String::as_str).collect()
    }
    ci_residual(p, &v(&s.left), &v(&s.right), &v(&s.given))
}
