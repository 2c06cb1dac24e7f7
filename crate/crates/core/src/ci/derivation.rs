use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rules::{check_instance, Rule};
use super::statement::CIStatement;

/// A rule-by-rule proof of conditional independence statements.
///
/// Premise indices address one list: axioms first (`0..axioms.len()`), then
/// the conclusions of earlier steps (`axioms.len() + k` for step `k`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Derivation {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    /// Declared symbols. When nonempty, every statement must stay inside it.
    #[serde(default)]
    pub symbols: Vec<String>,
    pub axioms: Vec<CIStatement>,
    #[serde(default)]
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub conclusion: CIStatement,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DerivationError {
    #[error("axiom {index}: {reason}")]
    Axiom { index: usize, reason: String },
    #[error("step {step} ({rule}): {reason}")]
    Step { step: usize, rule: Rule, reason: String },
}

impl Derivation {
    /// Statement at a premise index.
    pub fn statement(&self, index: usize) -> Option<&CIStatement> {
        if index < self.axioms.len() {
            self.axioms.get(index)
        } else {
            self.steps.get(index - self.axioms.len()).map(|s| &s.conclusion)
        }
    }

    pub fn conclusions(&self) -> impl Iterator<Item = &CIStatement> {
        self.steps.iter().map(|s| &s.conclusion)
    }

    /// Checks every step in order and reports the first one that is not a
    /// correct rule instance.
    pub fn validate(&self) -> Result<(), DerivationError> {
        let declared: BTreeSet<&str> = self.symbols.iter().map(String::as_str).collect();
        let undeclared = |s: &CIStatement| {
            if declared.is_empty() {
                return None;
            }
            s.symbols().find(|sym| !declared.contains(sym.as_str())).cloned()
        };
        for (index, a) in self.axioms.iter().enumerate() {
            if let Some(sym) = undeclared(a) {
                return Err(DerivationError::Axiom { index, reason: format!("undeclared symbol `{sym}`") });
            }
        }
        for (k, step) in self.steps.iter().enumerate() {
            let fail = |reason: String| DerivationError::Step { step: k, rule: step.rule, reason };
            let available = self.axioms.len() + k;
            let mut premises = Vec::with_capacity(step.premises.len());
            for &i in &step.premises {
                if i >= available {
                    return Err(fail(format!("premise {i} is not an earlier statement")));
                }
                premises.push(self.statement(i).expect("index checked"));
            }
            if let Some(sym) = undeclared(&step.conclusion) {
                return Err(fail(format!("undeclared symbol `{sym}`")));
            }
            check_instance(step.rule, &premises, &step.conclusion).map_err(fail)?;
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

pub fn validate_derivation(d: &Derivation) -> bool {
    d.is_valid()
}
