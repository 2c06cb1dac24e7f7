use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbols = BTreeSet<String>;

/// A symbolic claim `left ⊥ right | given` over opaque symbols.
///
/// Sides are sets; a comma inside a side denotes a tensor product. Symbol
/// sets are kept sorted, so equal statements compare and hash equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStatement")]
pub struct CIStatement {
    pub left: Symbols,
    pub right: Symbols,
    #[serde(default)]
    pub given: Symbols,
}

#[derive(Deserialize)]
struct RawStatement {
    left: Vec<String>,
    right: Vec<String>,
    #[serde(default)]
    given: Vec<String>,
}

impl TryFrom<RawStatement> for CIStatement {
    type Error = Error;

    fn try_from(raw: RawStatement) -> Result<Self> {
        CIStatement::new(raw.left, raw.right, raw.given)
    }
}

pub(crate) fn symbols<I, S>(items: I) -> Symbols
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}

impl CIStatement {
    pub fn new<L, R, G, S1, S2, S3>(left: L, right: R, given: G) -> Result<Self>
    where
        L: IntoIterator<Item = S1>,
        R: IntoIterator<Item = S2>,
        G: IntoIterator<Item = S3>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
    {
        CIStatement::from_sets(symbols(left), symbols(right), symbols(given))
    }

    pub fn from_sets(left: Symbols, right: Symbols, given: Symbols) -> Result<Self> {
        let s = CIStatement { left, right, given };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<()> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::InvalidStatement(format!("{self}: empty side")));
        }
        let overlap = self
            .left
            .intersection(&self.right)
            .chain(self.left.intersection(&self.given))
            .chain(self.right.intersection(&self.given))
            .next();
        if let Some(sym) = overlap {
            return Err(Error::InvalidStatement(format!("{self}: symbol `{sym}` appears twice")));
        }
        Ok(())
    }

    /// `right ⊥ left | given`.
    pub fn swapped(&self) -> CIStatement {
        CIStatement { left: self.right.clone(), right: self.left.clone(), given: self.given.clone() }
    }

    /// Every symbol mentioned.
    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.left.iter().chain(&self.right).chain(&self.given)
    }

    /// `left ∪ right`, the set being split.
    pub fn union(&self) -> Symbols {
        self.left.union(&self.right).cloned().collect()
    }
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &Symbols| s.iter().map(String::as_str).collect::<Vec<_>>().join(",");
        write!(f, "{}⊥{}", join(&self.left), join(&self.right))?;
        if !self.given.is_empty() {
            write!(f, "|{}", join(&self.given))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_sides() {
        assert!(CIStatement::new(["X"], ["Y"], ["W"]).is_ok());
        assert!(CIStatement::new(["X"], ["Y"], Vec::<String>::new()).is_ok());
        assert!(CIStatement::new(Vec::<String>::new(), ["Y"], ["W"]).is_err());
        assert!(CIStatement::new(["X"], ["X"], ["W"]).is_err());
        assert!(CIStatement::new(["X"], ["Y"], ["Y"]).is_err());
    }

    #[test]
    fn display_and_canonical_order() {
        let s = CIStatement::new(["b", "a"], ["c"], ["d"]).unwrap();
        assert_eq!(s.to_string(), "a,b⊥c|d");
        assert_eq!(s, CIStatement::new(["a", "b"], ["c"], ["d"]).unwrap());
        assert_eq!(CIStatement::new(["x"], ["y"], Vec::<&str>::new()).unwrap().to_string(), "x⊥y");
    }

    #[test]
    fn json_is_validated() {
        let bad = r#"{"left":["x"],"right":["x"],"given":[]}"#;
        assert!(serde_json::from_str::<CIStatement>(bad).is_err());
        let ok = r#"{"left":["x"],"right":["y"]}"#;
        assert!(serde_json::from_str::<CIStatement>(ok).is_ok());
    }
}
