use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labeled finite set with ordered, distinct element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFinSet")]
pub struct FinSet {
    label: String,
    elements: Vec<String>,
}

#[derive(Deserialize)]
struct RawFinSet {
    label: String,
    elements: Vec<String>,
}

impl TryFrom<RawFinSet> for FinSet {
    type Error = Error;

    fn try_from(raw: RawFinSet) -> Result<Self> {
        FinSet::new(raw.label, raw.elements)
    }
}

impl FinSet {
    pub fn new<L, I, S>(label: L, elements: I) -> Result<Self>
    where
        L: Into<String>,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let label = label.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::InvalidFinSet { label, reason: "empty carrier".into() });
        }
        let mut seen = HashSet::with_capacity(elements.len());
        for e in &elements {
            if e.is_empty() {
                return Err(Error::InvalidFinSet { label, reason: "empty element name".into() });
            }
            if !seen.insert(e.as_str()) {
                return Err(Error::InvalidFinSet { label, reason: format!("duplicate element `{e}`") });
            }
        }
        Ok(FinSet { label, elements })
    }

    /// The set `{0, 1, ..., n-1}` with decimal element names.
    pub fn range(label: impl Into<String>, n: usize) -> Result<Self> {
        FinSet::new(label, (0..n).map(|i| i.to_string()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; carriers are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }

    pub fn relabel(&self, label: impl Into<String>) -> FinSet {
        FinSet { label: label.into(), elements: self.elements.clone() }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.label, self.elements.join(","))
    }
}
