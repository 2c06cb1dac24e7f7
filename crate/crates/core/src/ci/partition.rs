use std::collections::BTreeSet;

use super::check::mutual_ci_residual;
use crate::error::{Error, Result};
use crate::finstoch::JointState;

/// Outcome of checking both premises and the conclusion of the partition
/// lemma. No implication is assumed: each of the three is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionReport {
    pub premises: (bool, bool),
    pub conclusion: bool,
    pub residuals: (f64, f64, f64),
}

impl PartitionReport {
    /// Whether the lemma's guarantee is respected by this instance.
    pub fn consistent(&self) -> bool {
        !(self.premises.0 && self.premises.1) || self.conclusion
    }
}

fn ground<S: AsRef<str>>(partition: &[Vec<S>]) -> Result<BTreeSet<String>> {
    let mut all = BTreeSet::new();
    for block in partition {
        if block.is_empty() {
            return Err(Error::NotAPartition("empty block".into()));
        }
        for w in block {
            if !all.insert(w.as_ref().to_string()) {
                return Err(Error::NotAPartition(format!("`{}` appears in two blocks", w.as_ref())));
            }
        }
    }
    Ok(all)
}

/// Common refinement: every nonempty intersection of a block of `p1` with a
/// block of `p2`, in `p1`-major order.
pub fn meet<S: AsRef<str>>(p1: &[Vec<S>], p2: &[Vec<S>]) -> Result<Vec<Vec<String>>> {
    if ground(p1)? != ground(p2)? {
        return Err(Error::NotAPartition("the two partitions cover different wires".into()));
    }
    let mut out = Vec::new();
    for a in p1 {
        for b in p2 {
            let block: Vec<String> = a
                .iter()
                .map(AsRef::as_ref)
                .filter(|w| b.iter().any(|v| v.as_ref() == *w))
                .map(str::to_string)
                .collect();
            if !block.is_empty() {
                out.push(block);
            }
        }
    }
    Ok(out)
}

/// Evaluates mutual independence over `p1`, over `p2` and over their meet,
/// all conditioned on `given`.
pub fn check_partition_lemma<S: AsRef<str>>(
    p: &JointState,
    p1: &[Vec<S>],
    p2: &[Vec<S>],
    given: &[S],
    atol: f64,
) -> Result<PartitionReport> {
    let m = meet(p1, p2)?;
    let r1 = mutual_ci_residual(p, p1, given)?;
    let r2 = mutual_ci_residual(p, p2, given)?;
    let given: Vec<&str> = given.iter().map(AsRef::as_ref).collect();
    let m: Vec<Vec<&str>> = m.iter().map(|b| b.iter().map(String::as_str).collect()).collect();
    let r3 = mutual_ci_residual(p, &m, &given)?;
    Ok(PartitionReport {
        premises: (r1 <= atol, r2 <= atol),
        conclusion: r3 <= atol,
        residuals: (r1, r2, r3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finstoch::FinSet;

    #[test]
    fn meet_of_rows_and_columns_is_cells() {
        let rows = vec![vec!["a", "b"], vec!["c", "d"]];
        let cols = vec![vec!["a", "c"], vec!["b", "d"]];
        let m = meet(&rows, &cols).unwrap();
        assert_eq!(m, vec![vec!["a"], vec!["b"], vec!["c"], vec!["d"]]);
        assert_eq!(meet(&rows, &rows).unwrap(), vec![vec!["a", "b"], vec!["c", "d"]]);
    }

    #[test]
    fn rejects_non_partitions() {
        let rows = vec![vec!["a", "b"], vec!["c"]];
        assert!(matches!(meet(&rows, &[vec!["a", "b"]]), Err(Error::NotAPartition(_))));
        assert!(matches!(meet(&[vec!["a", "a"]], &[vec!["a"]]), Err(Error::NotAPartition(_))));
        assert!(matches!(meet(&[vec![], vec!["a"]], &[vec!["a"]]), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn identical_partitions_report_the_premise() {
        // x = y copies of one coin, z independent.
        let bit = |l| FinSet::range(l, 2).unwrap();
        let mut t = vec![0.0; 8];
        for c in 0..2 {
            for z in 0..2 {
                t[c * 4 + c * 2 + z] = 0.5 * if z == 0 { 0.3 } else { 0.7 };
            }
        }
        let p = JointState::from_probs([("x", bit("X")), ("y", bit("Y")), ("z", bit("Z"))], t).unwrap();
        let good = vec![vec!["x", "y"], vec!["z"]];
        let r = check_partition_lemma(&p, &good, &good, &[], 1e-12).unwrap();
        assert_eq!((r.premises, r.conclusion), ((true, true), true));
        let bad = vec![vec!["x"], vec!["y", "z"]];
        let r = check_partition_lemma(&p, &bad, &bad, &[], 1e-12).unwrap();
        assert_eq!((r.premises, r.conclusion), ((false, false), false));
        // Premise false on one side: the conclusion is still reported on its own.
        let r = check_partition_lemma(&p, &good, &bad, &[], 1e-12).unwrap();
        assert_eq!(r.premises, (true, false));
        assert!(!r.conclusion);
        assert!(r.consistent());
    }
}
