//! Breadth-first forward chaining over symmetry, decomposition, weak union
//! and contraction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use super::derivation::{Derivation, Step};
use super::rules::Rule;
use super::statement::{CIStatement, Symbols};
use crate::error::Error as CoreError;

#[derive(Debug, Clone)]
struct Entry {
    statement: CIStatement,
    /// `None` for axioms.
    rule: Option<Rule>,
    premises: Vec<usize>,
}

/// Every statement reached from the axioms, each with the rule application
/// that first produced it.
#[derive(Debug, Clone, Default)]
pub struct Closure {
    entries: Vec<Entry>,
    index: HashMap<CIStatement, usize>,
    ground: Symbols,
}

#[derive(Debug, Clone, Error)]
pub enum ClosureError {
    #[error("derivation budget of {budget} statements exhausted")]
    BudgetExceeded { budget: usize, partial: Closure },
    #[error("axiom {index}: {source}")]
    BadAxiom { index: usize, source: CoreError },
}

impl Closure {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, s: &CIStatement) -> bool {
        self.index.contains_key(s)
    }

    pub fn statements(&self) -> impl Iterator<Item = &CIStatement> {
        self.entries.iter().map(|e| &e.statement)
    }

    /// A standalone derivation of `target` from the axioms it depends on.
    pub fn derivation_of(&self, target: &CIStatement) -> Option<Derivation> {
        let root = *self.index.get(target)?;
        let mut needed = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if needed.insert(i) {
                stack.extend(&self.entries[i].premises);
            }
        }
        // Entries only reference earlier entries, so index order is a
        // topological order.
        let (axioms, derived): (Vec<usize>, Vec<usize>) =
            needed.into_iter().partition(|&i| self.entries[i].rule.is_none());
        let mut remap = HashMap::new();
        for (pos, &i) in axioms.iter().chain(&derived).enumerate() {
            remap.insert(i, pos);
        }
        Some(Derivation {
            description: String::new(),
            symbols: self.ground.iter().cloned().collect(),
            axioms: axioms.iter().map(|&i| self.entries[i].statement.clone()).collect(),
            steps: derived
                .iter()
                .map(|&i| {
                    let e = &self.entries[i];
                    Step {
                        rule: e.rule.expect("derived entry"),
                        premises: e.premises.iter().map(|p| remap[p]).collect(),
                        conclusion: e.statement.clone(),
                    }
                })
                .collect(),
        })
    }
}

struct Chainer {
    closure: Closure,
    by_left: HashMap<Symbols, Vec<usize>>,
    queue: VecDeque<usize>,
    budget: usize,
    derived: usize,
}

impl Chainer {
    /// Records a statement if new. Returns false once the budget is spent.
    fn add(&mut self, statement: CIStatement, rule: Option<Rule>, premises: Vec<usize>) -> bool {
        if self.closure.index.contains_key(&statement) {
            return true;
        }
        if rule.is_some() {
            if self.derived >= self.budget {
                return false;
            }
            self.derived += 1;
        }
        let id = self.closure.entries.len();
        self.by_left.entry(statement.left.clone()).or_default().push(id);
        self.closure.index.insert(statement.clone(), id);
        self.closure.entries.push(Entry { statement, rule, premises });
        self.queue.push_back(id);
        true
    }

    fn consequences(&self, id: usize) -> Vec<(CIStatement, Rule, Vec<usize>)> {
        let s = &self.closure.entries[id].statement;
        let mut out = Vec::new();
        out.push((s.swapped(), Rule::Symmetry, vec![id]));

        for (side, other, on_left) in [(&s.left, &s.right, true), (&s.right, &s.left, false)] {
            if side.len() < 2 {
                continue;
            }
            for sym in side {
                let mut smaller = side.clone();
                smaller.remove(sym);
                let (l, r) =
                    if on_left { (smaller.clone(), other.clone()) } else { (other.clone(), smaller.clone()) };
                out.push((
                    CIStatement { left: l.clone(), right: r.clone(), given: s.given.clone() },
                    Rule::Decomposition,
                    vec![id],
                ));
                let mut given = s.given.clone();
                given.insert(sym.clone());
                out.push((CIStatement { left: l, right: r, given }, Rule::WeakUnion, vec![id]));
            }
        }

        // Contraction with `s` in either premise slot. Partners share `left`.
        for &t_id in self.by_left.get(&s.left).into_iter().flatten() {
            let t = &self.closure.entries[t_id].statement;
            // s = X ⊥ Y | Z,W and t = X ⊥ Z | W
            if let Some(c) = contract(s, t) {
                out.push((c, Rule::Contraction, vec![id, t_id]));
            }
            // t = X ⊥ Y | Z,W and s = X ⊥ Z | W
            if t_id != id {
                if let Some(c) = contract(t, s) {
                    out.push((c, Rule::Contraction, vec![t_id, id]));
                }
            }
        }
        out
    }
}

fn contract(xy: &CIStatement, xz: &CIStatement) -> Option<CIStatement> {
    if !xz.right.is_subset(&xy.given) {
        return None;
    }
    let w: Symbols = xy.given.difference(&xz.right).cloned().collect();
    if w != xz.given {
        return None;
    }
    Some(CIStatement { left: xy.left.clone(), right: xy.right.union(&xz.right).cloned().collect(), given: w })
}

/// Closes `axioms` under the semigraphoid rules, deriving at most `budget`
/// new statements. Every axiom must use only symbols from `ground`.
pub fn semigraphoid_closure(
    axioms: &[CIStatement],
    ground: &Symbols,
    budget: usize,
) -> Result<Closure, ClosureError> {
    let mut chainer = Chainer {
        closure: Closure { ground: ground.clone(), ..Closure::default() },
        by_left: HashMap::new(),
        queue: VecDeque::new(),
        budget,
        derived: 0,
    };
    for (index, a) in axioms.iter().enumerate() {
        if let Some(sym) = a.symbols().find(|s| !ground.contains(*s)) {
            return Err(ClosureError::BadAxiom {
                index,
                source: CoreError::InvalidStatement(format!("`{sym}` is not in the ground set")),
            });
        }
        chainer.add(a.clone(), None, Vec::new());
    }
    while let Some(id) = chainer.queue.pop_front() {
        for (statement, rule, premises) in chainer.consequences(id) {
            if !chainer.add(statement, Some(rule), premises) {
                return Err(ClosureError::BudgetExceeded { budget, partial: chainer.closure });
            }
        }
    }
    Ok(chainer.closure)
}
