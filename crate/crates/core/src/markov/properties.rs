use std::collections::BTreeSet;
use std::fmt;

use crate::causal::{non_descendants, past, CausalModel, TimingFunction};
use crate::ci::ci_residual;
use crate::error::{Error, Result};
use crate::finstoch::JointState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovKind {
    Local,
    Ordered,
}

/// One box's condition `Out(b) ⊥ others | In(b)` with its residual in `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCheck {
    pub kind: MarkovKind,
    pub box_name: String,
    pub outputs: Vec<String>,
    pub others: Vec<String>,
    pub given: Vec<String>,
    pub residual: f64,
}

impl BoxCheck {
    /// Conditions with nothing on the right hold vacuously.
    pub fn is_trivial(&self) -> bool {
        self.others.is_empty()
    }
}

impl fmt::Display for BoxCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            MarkovKind::Local => "local",
            MarkovKind::Ordered => "ordered",
        };
        let others = if self.others.is_empty() { "∅".to_string() } else { self.others.join(",") };
        write!(f, "{kind} {}: {}⊥{others}", self.box_name, self.outputs.join(","))?;
        if !self.given.is_empty() {
            write!(f, "|{}", self.given.join(","))?;
        }
        Ok(())
    }
}

/// `p` must be a state over exactly the model's wires.
pub(crate) fn check_wires(p: &JointState, m: &CausalModel) -> Result<()> {
    let have: BTreeSet<&str> = p.wires().iter().map(String::as_str).collect();
    let want: BTreeSet<&str> = m.wires().iter().map(String::as_str).collect();
    if have != want {
        let missing: Vec<&str> = want.difference(&have).copied().collect();
        let extra: Vec<&str> = have.difference(&want).copied().collect();
        return Err(Error::WireMismatch(format!(
            "state is missing [{}] and has extra [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }
    Ok(())
}

fn box_checks(
    p: &JointState,
    m: &CausalModel,
    kind: MarkovKind,
    context: impl Fn(&str) -> Result<BTreeSet<String>>,
) -> Result<Vec<BoxCheck>> {
    m.ensure_valid()?;
    check_wires(p, m)?;
    m.boxes()
        .iter()
        .map(|b| {
            let mut others = context(&b.name)?;
            for w in b.inputs.iter().chain(&b.outputs) {
                others.remove(w);
            }
            let others: Vec<String> = others.into_iter().collect();
            let residual =
                if others.is_empty() { 0.0 } else { ci_residual(p, &b.outputs, &others, &b.inputs)? };
            Ok(BoxCheck {
                kind,
                box_name: b.name.clone(),
                outputs: b.outputs.clone(),
                others,
                given: b.inputs.clone(),
                residual,
            })
        })
        .collect()
}

/// `Out(b) ⊥ NonDesc(b) ∖ In(b) | In(b)` for every box.
pub fn local_markov_checks(p: &JointState, m: &CausalModel) -> Result<Vec<BoxCheck>> {
    box_checks(p, m, MarkovKind::Local, |b| non_descendants(m, b))
}

/// `Out(b) ⊥ Past(b) ∖ (In(b) ∪ Out(b)) | In(b)` for every box.
pub fn ordered_markov_checks(p: &JointState, m: &CausalModel, tau: &TimingFunction) -> Result<Vec<BoxCheck>> {
    tau.validate(m)?;
    box_checks(p, m, MarkovKind::Ordered, |b| past(m, tau, b))
}

pub fn check_local_markov(p: &JointState, m: &CausalModel, atol: f64) -> Result<bool> {
    Ok(local_markov_checks(p, m)?.iter().all(|c| c.residual <= atol))
}

pub fn check_ordered_markov(
    p: &JointState,
    m: &CausalModel,
    tau: &TimingFunction,
    atol: f64,
) -> Result<bool> {
    Ok(ordered_markov_checks(p, m, tau)?.iter().all(|c| c.residual <= atol))
}
