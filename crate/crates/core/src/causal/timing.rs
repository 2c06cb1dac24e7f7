use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::graph::box_edges;
use super::model::CausalModel;
use crate::error::{Error, Result};

/// Box name to positive time, with `b → c` implying `τ(b) < τ(c)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimingFunction(BTreeMap<String, u32>);

impl TimingFunction {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, u32)>) -> Self {
        TimingFunction(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn get(&self, b: &str) -> Option<u32> {
        self.0.get(b).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Checks coverage, positivity and strict increase along every edge.
    pub fn validate(&self, m: &CausalModel) -> Result<()> {
        for b in m.boxes() {
            match self.get(&b.name) {
                None => return Err(Error::InvalidTiming(format!("box `{}` has no time", b.name))),
                Some(0) => return Err(Error::InvalidTiming(format!("box `{}` has time 0", b.name))),
                Some(_) => {}
            }
        }
        if let Some(extra) = self.0.keys().find(|k| m.get_box(k).is_err()) {
            return Err(Error::InvalidTiming(format!("`{extra}` is not a box of the model")));
        }
        for (b, c) in box_edges(m) {
            let (tb, tc) = (self.0[&b.name], self.0[&c.name]);
            if tb >= tc {
                return Err(Error::InvalidTiming(format!(
                    "`{}` feeds `{}` but τ({}) = {tb} ≥ {tc} = τ({})",
                    b.name, c.name, b.name, c.name
                )));
            }
        }
        Ok(())
    }
}

/// Union of `Out(c)` over all boxes `c` with `τ(c) ≤ τ(b)`.
pub fn past(m: &CausalModel, tau: &TimingFunction, b: &str) -> Result<BTreeSet<String>> {
    tau.validate(m)?;
    m.get_box(b)?;
    let tb = tau.0[b];
    Ok(m.boxes().iter().filter(|c| tau.0[&c.name] <= tb).flat_map(|c| c.outputs.iter().cloned()).collect())
}

/// Longest-path layering: `τ(b)` is one more than the longest chain of
/// boxes feeding into `b`.
pub fn default_timing(m: &CausalModel) -> Result<TimingFunction> {
    let order = m.topological_order()?;
    let mut tau: BTreeMap<String, u32> = BTreeMap::new();
    for b in order {
        let t = m
            .boxes()
            .iter()
            .filter(|c| c.outputs.iter().any(|w| b.inputs.contains(w)))
            .map(|c| tau[&c.name])
            .max()
            .map_or(1, |t| t + 1);
        tau.insert(b.name.clone(), t);
    }
    Ok(TimingFunction(tau))
}

/// Every valid timing function with values in `1..=max_time`.
pub fn enumerate_timings(m: &CausalModel, max_time: u32) -> Vec<TimingFunction> {
    let names: Vec<&str> = m.boxes().iter().map(|b| b.name.as_str()).collect();
    let mut out = Vec::new();
    let mut times = vec![1u32; names.len()];
    if max_time == 0 {
        return out;
    }
    loop {
        let tau = TimingFunction::new(names.iter().copied().zip(times.iter().copied()));
        if tau.validate(m).is_ok() {
            out.push(tau);
        }
        let mut i = 0;
        loop {
            if i == times.len() {
                return out;
            }
            times[i] += 1;
            if times[i] <= max_time {
                break;
            }
            times[i] = 1;
            i += 1;
        }
    }
}
