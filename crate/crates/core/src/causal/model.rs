use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box with named input and output wires. Port order fixes the factor
/// order of the kernel assigned to the box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelBox {
    pub name: String,
    #[serde(rename = "in", default)]
    pub inputs: Vec<String>,
    #[serde(rename = "out")]
    pub outputs: Vec<String>,
}

impl ModelBox {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        inputs: impl IntoIterator<Item = S>,
        outputs: impl IntoIterator<Item = S>,
    ) -> Self {
        ModelBox {
            name: name.into(),
            inputs: inputs.into_iter().map(Into::into).collect(),
            outputs: outputs.into_iter().map(Into::into).collect(),
        }
    }
}

/// Generalized causal model with globally named wires.
///
/// Deserialization does not validate; use [`validate_model`] to collect
/// violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CausalModel {
    wires: Vec<String>,
    boxes: Vec<ModelBox>,
    outputs: Vec<String>,
}

/// Which DAG-like requirement a model breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    DuplicateWire,
    DuplicateBox,
    EmptyOutputs,
    UndeclaredWire,
    RepeatedPort,
    MultipleProducers,
    OverallInput,
    NotAnOutput,
    RepeatedOutput,
    Cycle,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::DuplicateWire => "duplicate-wire",
            ViolationKind::DuplicateBox => "duplicate-box",
            ViolationKind::EmptyOutputs => "empty-outputs",
            ViolationKind::UndeclaredWire => "undeclared-wire",
            ViolationKind::RepeatedPort => "repeated-port",
            ViolationKind::MultipleProducers => "multiple-producers",
            ViolationKind::OverallInput => "overall-input",
            ViolationKind::NotAnOutput => "not-an-output",
            ViolationKind::RepeatedOutput => "repeated-output",
            ViolationKind::Cycle => "cycle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending wire or box.
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} `{}`: {}", self.kind.name(), self.subject, self.detail)
    }
}

impl CausalModel {
    /// Model whose overall outputs are all wires in lexicographic order.
    pub fn new<S: Into<String>>(wires: impl IntoIterator<Item = S>, boxes: Vec<ModelBox>) -> Self {
        let wires: Vec<String> = wires.into_iter().map(Into::into).collect();
        let mut outputs = wires.clone();
        outputs.sort();
        outputs.dedup();
        CausalModel { wires, boxes, outputs }
    }

    pub fn with_outputs<S: Into<String>>(
        wires: impl IntoIterator<Item = S>,
        boxes: Vec<ModelBox>,
        outputs: impl IntoIterator<Item = S>,
    ) -> Self {
        CausalModel {
            wires: wires.into_iter().map(Into::into).collect(),
            boxes,
            outputs: outputs.into_iter().map(Into::into).collect(),
        }
    }

    pub fn wires(&self) -> &[String] {
        &self.wires
    }

    pub fn boxes(&self) -> &[ModelBox] {
        &self.boxes
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn get_box(&self, name: &str) -> Result<&ModelBox> {
        self.boxes.iter().find(|b| b.name == name).ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn has_wire(&self, name: &str) -> bool {
        self.wires.iter().any(|w| w == name)
    }

    /// The box producing `wire`, if exactly one is found first.
    pub fn producer(&self, wire: &str) -> Option<&ModelBox> {
        self.boxes.iter().find(|b| b.outputs.iter().any(|w| w == wire))
    }

    /// Boxes in a topological order, ties broken by declaration order.
    /// Fails on cycles and on inputs without a producer.
    pub fn topological_order(&self) -> Result<Vec<&ModelBox>> {
        let producer: BTreeMap<&str, usize> = self
            .boxes
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.outputs.iter().map(move |w| (w.as_str(), i)))
            .collect();
        let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(self.boxes.len());
        for b in &self.boxes {
            let mut d = BTreeSet::new();
            for w in &b.inputs {
                let &p = producer
                    .get(w.as_str())
                    .ok_or_else(|| Error::InvalidModel(format!("wire `{w}` has no producer")))?;
                d.insert(p);
            }
            deps.push(d);
        }
        let mut done = vec![false; self.boxes.len()];
        let mut order = Vec::with_capacity(self.boxes.len());
        while order.len() < self.boxes.len() {
            let next = (0..self.boxes.len())
                .find(|&i| !done[i] && deps[i].iter().all(|&d| done[d]))
                .ok_or_else(|| Error::InvalidModel("the model has a cycle".into()))?;
            done[next] = true;
            order.push(&self.boxes[next]);
        }
        Ok(order)
    }

    /// Errors with the first violation, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        match validate_model(self).into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidModel(v.to_string())),
        }
    }
}

/// Every DAG-like violation in `m`; empty iff the model is valid.
pub fn validate_model(m: &CausalModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, subject: &str, detail: String| {
        out.push(Violation { kind, subject: subject.to_string(), detail })
    };

    let mut declared = BTreeSet::new();
    for w in &m.wires {
        if !declared.insert(w.as_str()) {
            push(ViolationKind::DuplicateWire, w, "declared more than once".into());
        }
    }
    let mut names = BTreeSet::new();
    let mut producers: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut consumed = BTreeSet::new();
    for b in &m.boxes {
        if !names.insert(b.name.as_str()) {
            push(ViolationKind::DuplicateBox, &b.name, "box names must be distinct".into());
        }
        if b.outputs.is_empty() {
            push(ViolationKind::EmptyOutputs, &b.name, "a box needs at least one output".into());
        }
        for (side, ports) in [("input", &b.inputs), ("output", &b.outputs)] {
            let mut seen = BTreeSet::new();
            for w in ports {
                if !declared.contains(w.as_str()) {
                    push(
                        ViolationKind::UndeclaredWire,
                        w,
                        format!("{side} of box `{}` is not a declared wire", b.name),
                    );
                }
                if !seen.insert(w.as_str()) {
                    push(
                        ViolationKind::RepeatedPort,
                        &b.name,
                        format!("wire `{w}` is listed twice as {side}"),
                    );
                }
            }
        }
        for w in &b.outputs {
            producers.entry(w).or_default().push(&b.name);
        }
        consumed.extend(b.inputs.iter().map(String::as_str));
    }

    let mut listed: BTreeMap<&str, usize> = BTreeMap::new();
    for w in &m.outputs {
        *listed.entry(w).or_default() += 1;
    }
    for w in &m.wires {
        match producers.get(w.as_str()).map(Vec::len).unwrap_or(0) {
            0 => push(ViolationKind::OverallInput, w, "no box produces this wire".into()),
            1 => {}
            _ => push(
                ViolationKind::MultipleProducers,
                w,
                format!("produced by {}", producers[w.as_str()].join(", ")),
            ),
        }
        match listed.get(w.as_str()).copied().unwrap_or(0) {
            0 if consumed.contains(w.as_str()) => {
                push(ViolationKind::NotAnOutput, w, "consumed but not an overall output".into())
            }
            0 => push(ViolationKind::NotAnOutput, w, "not an overall output".into()),
            1 => {}
            k => push(ViolationKind::RepeatedOutput, w, format!("listed {k} times among overall outputs")),
        }
    }
    for w in m.outputs.iter().filter(|w| !declared.contains(w.as_str())) {
        push(ViolationKind::UndeclaredWire, w, "overall output is not a declared wire".into());
    }

    // Cycle detection only makes sense once every input has a producer.
    if m.boxes.iter().flat_map(|b| &b.inputs).all(|w| producers.contains_key(w.as_str())) {
        if let Err(e) = m.topological_order() {
            let on_cycle = cycle_members(m);
            let subject = on_cycle.first().cloned().unwrap_or_default();
            let detail = if on_cycle.is_empty() {
                e.to_string()
            } else {
                format!("boxes {} lie on a directed cycle", on_cycle.join(", "))
            };
            push(ViolationKind::Cycle, &subject, detail);
        }
    }
    out
}

/// Boxes that reach themselves through at least one wire.
fn cycle_members(m: &CausalModel) -> Vec<String> {
    let mut out = Vec::new();
    for b in &m.boxes {
        let mut stack: Vec<&ModelBox> = consumers_of(m, b);
        let mut seen = BTreeSet::new();
        while let Some(c) = stack.pop() {
            if c.name == b.name {
                out.push(b.name.clone());
                break;
            }
            if seen.insert(c.name.as_str()) {
                stack.extend(consumers_of(m, c));
            }
        }
    }
    out
}

pub(crate) fn consumers_of<'a>(m: &'a CausalModel, b: &ModelBox) -> Vec<&'a ModelBox> {
    m.boxes.iter().filter(|c| c.inputs.iter().any(|w| b.outputs.contains(w))).collect()
}
