use std::collections::HashSet;

use super::index::sizes;
use super::{FinSet, Kernel};
use crate::error::{Error, Result};

/// A state with one named wire per codomain factor.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    kernel: Kernel,
    wires: Vec<String>,
}

impl JointState {
    pub fn new(kernel: Kernel, wires: Vec<String>) -> Result<Self> {
        if !kernel.is_state() {
            return Err(Error::DomainMismatch(format!(
                "joint state needs an empty domain, found {}",
                kernel.signature()
            )));
        }
        if wires.len() != kernel.cod().len() {
            return Err(Error::WireMismatch(format!(
                "{} wire names for {} factors",
                wires.len(),
                kernel.cod().len()
            )));
        }
        let mut seen = HashSet::new();
        for w in &wires {
            if !seen.insert(w.as_str()) {
                return Err(Error::WireMismatch(format!("duplicate wire `{w}`")));
            }
        }
        Ok(JointState { kernel, wires })
    }

    /// Joint state from flat row-major probabilities.
    pub fn from_probs<S: Into<String>>(
        wires: impl IntoIterator<Item = (S, FinSet)>,
        probs: Vec<f64>,
    ) -> Result<Self> {
        let (names, carriers): (Vec<String>, Vec<FinSet>) =
            wires.into_iter().map(|(n, c)| (n.into(), c)).unzip();
        JointState::new(Kernel::state(carriers, probs)?, names)
    }

    pub(crate) fn from_parts(carriers: Vec<FinSet>, wires: Vec<String>, data: Vec<f64>) -> Self {
        JointState { kernel: Kernel::from_parts(Vec::new(), carriers, data), wires }
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn into_kernel(self) -> Kernel {
        self.kernel
    }

    pub fn wires(&self) -> &[String] {
        &self.wires
    }

    pub fn carriers(&self) -> &[FinSet] {
        self.kernel.cod()
    }

    pub fn probs(&self) -> &[f64] {
        self.kernel.data()
    }

    pub fn sizes(&self) -> Vec<usize> {
        sizes(self.kernel.cod())
    }

    pub fn len(&self) -> usize {
        self.kernel.n_cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, wire: &str) -> Result<usize> {
        self.wires.iter().position(|w| w == wire).ok_or_else(|| Error::UnknownWire(wire.to_string()))
    }

    pub fn positions<S: AsRef<str>>(&self, wires: &[S]) -> Result<Vec<usize>> {
        wires.iter().map(|w| self.position(w.as_ref())).collect()
    }

    pub fn carrier(&self, wire: &str) -> Result<&FinSet> {
        Ok(&self.carriers()[self.position(wire)?])
    }

    /// Probability of a tuple given by element indices in wire order.
    pub fn prob(&self, digits: &[usize]) -> f64 {
        self.kernel.get(0, super::index::encode(digits, &self.sizes()))
    }

    /// Sums out every wire not in `keep`; kept wires appear in `keep` order.
    pub fn marginalize<S: AsRef<str>>(&self, keep: &[S]) -> Result<JointState> {
        let idx = self.positions(keep)?;
        check_distinct(keep)?;
        Ok(JointState {
            kernel: self.kernel.marginal(&idx)?,
            wires: keep.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// Permutes the wires into `order`, which must list every wire once.
    pub fn reindex<S: AsRef<str>>(&self, order: &[S]) -> Result<JointState> {
        if order.len() != self.wires.len() {
            return Err(Error::WireMismatch(format!(
                "reindex order has {} wires, state has {}",
                order.len(),
                self.wires.len()
            )));
        }
        self.marginalize(order)
    }

    /// Replaces the wire names without touching the data.
    pub fn rename(&self, wires: Vec<String>) -> Result<JointState> {
        JointState::new(self.kernel.clone(), wires)
    }

    /// Largest entrywise difference after aligning `other` to this wire order.
    pub fn max_abs_diff(&self, other: &JointState) -> Result<f64> {
        let aligned = other.reindex(&self.wires)?;
        self.kernel.max_abs_diff(&aligned.kernel)
    }

    /// Number of entries a joint over these carriers would have, without
    /// overflow.
    pub fn entry_count(carriers: &[FinSet]) -> u128 {
        carriers.iter().map(|c| c.len() as u128).product()
    }
}

fn check_distinct<S: AsRef<str>>(wires: &[S]) -> Result<()> {
    let mut seen = HashSet::new();
    for w in wires {
        if !seen.insert(w.as_ref()) {
            return Err(Error::WireOverlap(w.as_ref().to_string()));
        }
    }
    Ok(())
}
