use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finstoch::{as_residual, JointState, Kernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermTarget {
    Row,
    Column,
    Sequence,
}

/// A permutation of rows, columns or sequence positions. `perm[k - 1]` is
/// the image of `k`; indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPermSpec")]
pub struct PermSpec {
    target: PermTarget,
    perm: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPermSpec {
    target: PermTarget,
    perm: Vec<usize>,
}

impl TryFrom<RawPermSpec> for PermSpec {
    type Error = Error;

    fn try_from(r: RawPermSpec) -> Result<Self> {
        PermSpec::new(r.target, r.perm)
    }
}

impl PermSpec {
    pub fn new(target: PermTarget, perm: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; perm.len()];
        for &k in &perm {
            if k == 0 || k > perm.len() || std::mem::replace(&mut hit[k - 1], true) {
                return Err(Error::ShapeMismatch(format!(
                    "{perm:?} is not a permutation of 1..={}",
                    perm.len()
                )));
            }
        }
        Ok(PermSpec { target, perm })
    }

    /// Swaps `k` and `k + 1` among `1..=len`.
    pub fn transposition(target: PermTarget, len: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= len {
            return Err(Error::ShapeMismatch(format!(
                "no adjacent transposition ({k} {}) in 1..={len}",
                k + 1
            )));
        }
        let mut perm: Vec<usize> = (1..=len).collect();
        perm.swap(k - 1, k);
        PermSpec::new(target, perm)
    }

    pub fn target(&self) -> PermTarget {
        self.target
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    fn image(&self, k: usize) -> usize {
        self.perm[k - 1]
    }
}

impl fmt::Display for PermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.target {
            PermTarget::Row => "row",
            PermTarget::Column => "col",
            PermTarget::Sequence => "seq",
        };
        let p: Vec<String> = self.perm.iter().map(ToString::to_string).collect();
        write!(f, "{t}[{}]", p.join(" "))
    }
}

/// Adjacent transpositions generating the symmetric group on `1..=len`.
pub fn adjacent_transpositions(target: PermTarget, len: usize) -> Vec<PermSpec> {
    (1..len).map(|k| PermSpec::transposition(target, len, k).expect("k < len")).collect()
}

/// Generators of `S_rows × S_cols`.
pub fn grid_generators(rows: usize, cols: usize) -> Vec<PermSpec> {
    let mut g = adjacent_transpositions(PermTarget::Row, rows);
    g.extend(adjacent_transpositions(PermTarget::Column, cols));
    g
}

/// Position of a wire: `S[i,j]` on a grid or `X[i]` in a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Cell(usize, usize),
    Seq(usize),
}

fn parse_index(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&k| k > 0)
}

fn parse_position(wire: &str) -> Option<Position> {
    if let Some(inner) = wire.strip_prefix("S[").and_then(|s| s.strip_suffix(']')) {
        let (i, j) = inner.split_once(',')?;
        return Some(Position::Cell(parse_index(i)?, parse_index(j)?));
    }
    let inner = wire.strip_prefix("X[").and_then(|s| s.strip_suffix(']'))?;
    Some(Position::Seq(parse_index(inner)?))
}

/// Decodes every wire and checks the positions fill a full grid or
/// sequence. Returns positions and the dimensions.
fn layout(wires: &[String]) -> Result<(Vec<Position>, usize, usize)> {
    let pos: Vec<Position> = wires
        .iter()
        .map(|w| {
            parse_position(w).ok_or_else(|| Error::BadWireNaming(format!("`{w}` is neither S[i,j] nor X[i]")))
        })
        .collect::<Result<_>>()?;
    let cells = pos.iter().filter(|p| matches!(p, Position::Cell(..))).count();
    if cells != 0 && cells != pos.len() {
        return Err(Error::BadWireNaming("grid and sequence wires are mixed".into()));
    }
    let (rows, cols) = pos.iter().fold((0, 0), |(r, c), p| match *p {
        Position::Cell(i, j) => (r.max(i), c.max(j)),
        Position::Seq(i) => (r.max(i), 1),
    });
    if rows * cols != pos.len() {
        return Err(Error::BadWireNaming(format!("{} wires do not fill a {rows}×{cols} layout", pos.len())));
    }
    Ok((pos, rows, cols))
}

/// Wire names after moving each position by `sigma`.
fn permuted_names(pos: &[Position], rows: usize, cols: usize, sigma: &PermSpec) -> Result<Vec<String>> {
    let expected = match (sigma.target, pos.first()) {
        (PermTarget::Row, Some(Position::Cell(..))) => rows,
        (PermTarget::Column, Some(Position::Cell(..))) => cols,
        (PermTarget::Sequence, Some(Position::Seq(..))) => rows,
        _ => return Err(Error::BadWireNaming(format!("generator {sigma} does not act on these wires"))),
    };
    if sigma.perm.len() != expected {
        return Err(Error::ShapeMismatch(format!(
            "generator {sigma} acts on {} indices, the layout has {expected}",
            sigma.perm.len()
        )));
    }
    Ok(pos
        .iter()
        .map(|p| match (*p, sigma.target) {
            (Position::Cell(i, j), PermTarget::Row) => format!("S[{},{j}]", sigma.image(i)),
            (Position::Cell(i, j), _) => format!("S[{i},{}]", sigma.image(j)),
            (Position::Seq(i), _) => format!("X[{}]", sigma.image(i)),
        })
        .collect())
}

/// Max-abs difference between `p` and its relabelling under each generator.
pub fn invariance_residuals(p: &JointState, generators: &[PermSpec]) -> Result<Vec<f64>> {
    let (pos, rows, cols) = layout(p.wires())?;
    generators
        .iter()
        .map(|sigma| {
            let moved = p.rename(permuted_names(&pos, rows, cols, sigma)?)?;
            moved.max_abs_diff(p)
        })
        .collect()
}

pub fn check_invariance(p: &JointState, generators: &[PermSpec], atol: f64) -> Result<bool> {
    Ok(invariance_residuals(p, generators)?.iter().all(|&r| r <= atol))
}

/// Almost-sure residuals of `p: A → grid` against its relabellings, with
/// respect to the state `m` on `A`. `wires` names `p`'s output factors.
pub fn as_invariance_residuals(
    p: &Kernel,
    wires: &[String],
    m: &Kernel,
    generators: &[PermSpec],
) -> Result<Vec<f64>> {
    if !m.is_state() || m.cod() != p.dom() {
        return Err(Error::ShapeMismatch(format!(
            "reference {} does not feed kernel {}",
            m.signature(),
            p.signature()
        )));
    }
    if wires.len() != p.cod().len() {
        return Err(Error::ShapeMismatch(format!(
            "{} wire names for {} output factors",
            wires.len(),
            p.cod().len()
        )));
    }
    let (pos, rows, cols) = layout(wires)?;
    let slot: BTreeMap<&str, usize> = wires.iter().enumerate().map(|(k, w)| (w.as_str(), k)).collect();
    generators
        .iter()
        .map(|sigma| {
            let moved = permuted_names(&pos, rows, cols, sigma)?;
            // Output i of the relabelled kernel is the factor that moved onto wires[i].
            let mut perm = vec![0; wires.len()];
            for (k, name) in moved.iter().enumerate() {
                perm[slot[name.as_str()]] = k;
            }
            as_residual(&p.permute_cod(&perm)?, p, m)
        })
        .collect()
}

pub fn check_as_invariance(
    p: &Kernel,
    wires: &[String],
    m: &Kernel,
    generators: &[PermSpec],
    atol: f64,
) -> Result<bool> {
    Ok(as_invariance_residuals(p, wires, m, generators)?.iter().all(|&r| r <= atol))
}
