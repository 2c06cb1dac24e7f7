//! Rule-instance matching for the semigraphoid rules plus the partition and
//! copy rules.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::statement::{CIStatement, Symbols};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `X ⊥ Y | W ⟹ Y ⊥ X | W`
    Symmetry,
    /// `X1,X2 ⊥ Y1,Y2 | W ⟹ X1 ⊥ Y1 | W`
    Decomposition,
    /// `X1,X2 ⊥ Y1,Y2 | W ⟹ X1 ⊥ Y1 | W,X2,Y2`
    WeakUnion,
    /// `X ⊥ Y | Z,W` and `X ⊥ Z | W` ⟹ `X ⊥ Z,Y | W`
    Contraction,
    /// Two-block splits of one set with a common conditioner imply
    /// independence of any grouping of the blocks of their meet.
    Partition,
    /// `X ⊥ Y | W ⟹ X ⊥ Y,W' | W` for formal copies `W'` of conditioned
    /// symbols.
    CopyAxiom,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Symmetry => "symmetry",
            Rule::Decomposition => "decomposition",
            Rule::WeakUnion => "weak_union",
            Rule::Contraction => "contraction",
            Rule::Partition => "partition",
            Rule::CopyAxiom => "copy_axiom",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Name of the formal copy of a symbol.
pub fn copy_symbol(sym: &str) -> String {
    format!("{sym}'")
}

fn arity(rule: Rule, n: usize) -> Result<(), String> {
    let ok = match rule {
        Rule::Contraction => n == 2,
        Rule::Partition => n >= 1,
        _ => n == 1,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{rule} cannot take {n} premise(s)"))
    }
}

fn fmt_set(s: &Symbols) -> String {
    format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))
}

/// Checks that `conclusion` follows from `premises` by one application of `rule`.
pub fn check_instance(rule: Rule, premises: &[&CIStatement], c: &CIStatement) -> Result<(), String> {
    arity(rule, premises.len())?;
    match rule {
        Rule::Symmetry => {
            let p = premises[0];
            if c.left == p.right && c.right == p.left && c.given == p.given {
                Ok(())
            } else {
                Err(format!("{c} is not the mirror image of {p}"))
            }
        }
        Rule::Decomposition => {
            let p = premises[0];
            if c.given != p.given {
                return Err(format!("decomposition must keep the conditioner {}", fmt_set(&p.given)));
            }
            if !c.left.is_subset(&p.left) || !c.right.is_subset(&p.right) {
                return Err(format!("{c} does not keep a subset of each side of {p}"));
            }
            Ok(())
        }
        Rule::WeakUnion => {
            let p = premises[0];
            if !p.given.is_subset(&c.given) {
                return Err(format!("weak union must keep the conditioner {}", fmt_set(&p.given)));
            }
            let moved: Symbols = c.given.difference(&p.given).cloned().collect();
            if moved.is_empty() {
                return Err("weak union moves nothing into the conditioner".into());
            }
            let sides = p.union();
            if !moved.is_subset(&sides) {
                return Err(format!(
                    "moved symbols {} do not come from {}",
                    fmt_set(&moved),
                    fmt_set(&sides)
                ));
            }
            let left: Symbols = p.left.difference(&moved).cloned().collect();
            let right: Symbols = p.right.difference(&moved).cloned().collect();
            if c.left != left || c.right != right {
                return Err(format!(
                    "expected {}⊥{} after moving {}",
                    fmt_set(&left),
                    fmt_set(&right),
                    fmt_set(&moved)
                ));
            }
            Ok(())
        }
        Rule::Contraction => {
            let (a, b) = (premises[0], premises[1]);
            if contraction_matches(a, b, c) || contraction_matches(b, a, c) {
                Ok(())
            } else {
                Err(format!("{c} is not the contraction of {a} and {b}"))
            }
        }
        Rule::Partition => check_partition(premises, c),
        Rule::CopyAxiom => {
            let p = premises[0];
            if c.left != p.left || c.given != p.given || !p.right.is_subset(&c.right) {
                return Err(format!("{c} must extend the right side of {p} only"));
            }
            let added: Symbols = c.right.difference(&p.right).cloned().collect();
            if added.is_empty() {
                return Err("copy axiom adds no copies".into());
            }
            for sym in &added {
                let original = sym.strip_suffix('\'').filter(|o| p.given.contains(*o));
                if original.is_none() {
                    return Err(format!("`{sym}` is not a copy of a conditioned symbol"));
                }
                if p.symbols().any(|s| s == sym) {
                    return Err(format!("copy `{sym}` already occurs in {p}"));
                }
            }
            Ok(())
        }
    }
}

/// `xy = X ⊥ Y | Z,W`, `xz = X ⊥ Z | W`, `c = X ⊥ Z,Y | W`.
fn contraction_matches(xy: &CIStatement, xz: &CIStatement, c: &CIStatement) -> bool {
    if xy.left != xz.left || c.left != xy.left || c.given != xz.given {
        return false;
    }
    let zw: Symbols = xz.right.union(&xz.given).cloned().collect();
    if xy.given != zw {
        return false;
    }
    let zy: Symbols = xz.right.union(&xy.right).cloned().collect();
    c.right == zy
}

fn check_partition(premises: &[&CIStatement], c: &CIStatement) -> Result<(), String> {
    let ground = premises[0].union();
    for p in premises {
        if p.given != c.given {
            return Err(format!("premise {p} does not share the conditioner of {c}"));
        }
        if p.union() != ground {
            return Err(format!("premise {p} splits a different set"));
        }
    }
    if c.union() != ground {
        return Err(format!("{c} must split {}", fmt_set(&ground)));
    }
    // Blocks of the meet: symbols grouped by which side of every premise
    // they fall on.
    let signature = |sym: &String| -> Vec<bool> { premises.iter().map(|p| p.left.contains(sym)).collect() };
    let mut blocks: Vec<(Vec<bool>, BTreeSet<String>)> = Vec::new();
    for sym in &ground {
        let sig = signature(sym);
        match blocks.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, b)) => {
                b.insert(sym.clone());
            }
            None => blocks.push((sig, BTreeSet::from([sym.clone()]))),
        }
    }
    for (_, block) in &blocks {
        let in_left = block.iter().filter(|s| c.left.contains(*s)).count();
        if in_left != 0 && in_left != block.len() {
            return Err(format!("{c} splits the meet block {}", fmt_set(block)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(l: &[&str], r: &[&str], g: &[&str]) -> CIStatement {
        CIStatement::new(l.iter().copied(), r.iter().copied(), g.iter().copied()).unwrap()
    }

    #[test]
    fn symmetry_and_decomposition() {
        let p = st(&["a", "b"], &["c", "d"], &["w"]);
        assert!(check_instance(Rule::Symmetry, &[&p], &st(&["c", "d"], &["a", "b"], &["w"])).is_ok());
        assert!(check_instance(Rule::Symmetry, &[&p], &p).is_err());
        assert!(check_instance(Rule::Decomposition, &[&p], &st(&["a"], &["d"], &["w"])).is_ok());
        assert!(check_instance(Rule::Decomposition, &[&p], &st(&["a"], &["d"], &[])).is_err());
        assert!(check_instance(Rule::Decomposition, &[&p], &st(&["c"], &["d"], &["w"])).is_err());
    }

    #[test]
    fn weak_union_moves_from_sides_only() {
        let p = st(&["a", "b"], &["c"], &["w"]);
        assert!(check_instance(Rule::WeakUnion, &[&p], &st(&["a"], &["c"], &["w", "b"])).is_ok());
        assert!(check_instance(Rule::WeakUnion, &[&p], &st(&["a"], &["c"], &["w", "z"])).is_err());
        // Conditioner gains `b` but the left side dropped `a` instead.
        assert!(check_instance(Rule::WeakUnion, &[&p], &st(&["b"], &["c"], &["w", "a", "z"])).is_err());
        assert!(check_instance(Rule::WeakUnion, &[&p], &p).is_err());
    }

    #[test]
    fn contraction_in_either_order() {
        let xy = st(&["x"], &["y"], &["z", "w"]);
        let xz = st(&["x"], &["z"], &["w"]);
        let c = st(&["x"], &["y", "z"], &["w"]);
        assert!(check_instance(Rule::Contraction, &[&xy, &xz], &c).is_ok());
        assert!(check_instance(Rule::Contraction, &[&xz, &xy], &c).is_ok());
        let wrong = st(&["x"], &["y", "z"], &["w", "v"]);
        assert!(check_instance(Rule::Contraction, &[&xy, &xz], &wrong).is_err());
        assert!(check_instance(Rule::Contraction, &[&xy], &c).is_err());
    }

    #[test]
    fn partition_rule() {
        let rows = st(&["a", "b"], &["c", "d"], &["w"]);
        let cols = st(&["a", "c"], &["b", "d"], &["w"]);
        assert!(
            check_instance(Rule::Partition, &[&rows, &cols], &st(&["a"], &["b", "c", "d"], &["w"])).is_ok()
        );
        assert!(
            check_instance(Rule::Partition, &[&rows, &cols], &st(&["a", "d"], &["b", "c"], &["w"])).is_ok()
        );
        // Conclusion must cover the whole set.
        assert!(check_instance(Rule::Partition, &[&rows, &cols], &st(&["a"], &["b"], &["w"])).is_err());
        // A single premise only licenses its own blocks.
        assert!(check_instance(Rule::Partition, &[&rows], &st(&["a"], &["b", "c", "d"], &["w"])).is_err());
        let other = st(&["a"], &["b", "c"], &["w"]);
        assert!(
            check_instance(Rule::Partition, &[&rows, &other], &st(&["a"], &["b", "c", "d"], &["w"])).is_err()
        );
    }

    #[test]
    fn copy_axiom() {
        let p = st(&["x"], &["y"], &["w"]);
        assert!(check_instance(Rule::CopyAxiom, &[&p], &st(&["x"], &["y", "w'"], &["w"])).is_ok());
        assert!(check_instance(Rule::CopyAxiom, &[&p], &st(&["x"], &["y", "v'"], &["w"])).is_err());
        assert!(check_instance(Rule::CopyAxiom, &[&p], &st(&["x"], &["y", "w"], &[])).is_err());
        assert_eq!(copy_symbol("w"), "w'");
    }
}
