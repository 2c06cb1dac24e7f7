//! Quantile functions: every finite kernel into an ordered set is a
//! deterministic function of its input and a uniform seed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finstoch::{compose, tensor, FinSet, Kernel};

/// `(previous upper, upper]` maps to `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub upper: f64,
    pub value: String,
}

/// One list of pieces per input row, with increasing `upper`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuantileFunction {
    rows: Vec<Vec<Piece>>,
}

impl QuantileFunction {
    pub fn new(rows: Vec<Vec<Piece>>) -> Self {
        QuantileFunction { rows }
    }

    pub fn rows(&self) -> &[Vec<Piece>] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [Vec<Piece>] {
        &mut self.rows
    }

    /// `g(r, x)`: the first piece whose upper end is at least `r`. Values of
    /// `r` past the last breakpoint map to the last value.
    pub fn evaluate(&self, x: usize, r: f64) -> &str {
        let row = &self.rows[x];
        let k = row.partition_point(|p| p.upper < r).min(row.len() - 1);
        &row[k].value
    }

    /// Values never decrease along `r` under `order`.
    pub fn is_monotone(&self, order: &[String]) -> bool {
        self.rows.iter().all(|row| {
            let ranks: Option<Vec<usize>> =
                row.iter().map(|p| order.iter().position(|o| *o == p.value)).collect();
            ranks.is_some_and(|r| r.windows(2).all(|w| w[0] <= w[1]))
        })
    }

    pub fn values_in(&self, carrier: &FinSet) -> bool {
        self.rows.iter().flatten().all(|p| carrier.index_of(&p.value).is_some())
    }

    /// Breakpoints strictly increase from above 0 in every row.
    pub fn breakpoints_increase(&self) -> bool {
        self.rows.iter().all(|row| {
            !row.is_empty() && row[0].upper > 0.0 && row.windows(2).all(|w| w[0].upper < w[1].upper)
        })
    }
}

fn single_output(f: &Kernel) -> Result<&FinSet> {
    match f.cod() {
        [y] => Ok(y),
        other => Err(Error::ShapeMismatch(format!(
            "expected a kernel into one ordered set, found {} output factors",
            other.len()
        ))),
    }
}

/// Checks that `order` lists each element of `y` exactly once and returns
/// the carrier index of each position.
fn order_indices(y: &FinSet, order: &[String]) -> Result<Vec<usize>> {
    if order.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "order has {} elements, {} has {}",
            order.len(),
            y.label(),
            y.len()
        )));
    }
    let mut seen = vec![false; y.len()];
    order
        .iter()
        .map(|e| {
            let k = y
                .index_of(e)
                .ok_or_else(|| Error::ShapeMismatch(format!("`{e}` is not an element of {}", y.label())))?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::ShapeMismatch(format!("`{e}` appears twice in the order")));
            }
            Ok(k)
        })
        .collect()
}

/// Per input, the cumulative distribution of `f(·|x)` under `order`,
/// skipping zero-mass values.
pub fn quantile_pushback(f: &Kernel, order: &[String]) -> Result<QuantileFunction> {
    let y = single_output(f)?;
    let idx = order_indices(y, order)?;
    let rows = f
        .rows()
        .map(|row| {
            let mut cum = 0.0;
            idx.iter()
                .zip(order)
                .filter(|(&k, _)| row[k] > 0.0)
                .map(|(&k, name)| {
                    cum += row[k];
                    Piece { upper: cum, value: name.clone() }
                })
                .collect()
        })
        .collect();
    Ok(QuantileFunction { rows })
}

/// Max-abs difference between the interval lengths mapped to each value and
/// `f(y|x)`.
pub fn pushforward_residual(qf: &QuantileFunction, f: &Kernel) -> Result<f64> {
    let y = single_output(f)?;
    if qf.rows.len() != f.n_rows() {
        return Err(Error::ShapeMismatch(format!(
            "quantile function has {} rows, kernel has {}",
            qf.rows.len(),
            f.n_rows()
        )));
    }
    let mut worst: f64 = 0.0;
    for (x, row) in qf.rows.iter().enumerate() {
        let mut mass = vec![0.0; y.len()];
        let mut prev = 0.0;
        for p in row {
            let k = y.index_of(&p.value).ok_or_else(|| {
                Error::ShapeMismatch(format!("`{}` is not an element of {}", p.value, y.label()))
            })?;
            mass[k] += p.upper - prev;
            prev = p.upper;
        }
        for (k, m) in mass.iter().enumerate() {
            worst = worst.max((m - f.get(x, k)).abs());
        }
    }
    Ok(worst)
}

pub fn verify_pushforward(qf: &QuantileFunction, f: &Kernel, atol: f64) -> Result<bool> {
    Ok(pushforward_residual(qf, f)? <= atol)
}

/// A seed state on the common refinement of all breakpoints and a
/// deterministic map `X ⊗ R → Y` with `map ∘ (id ⊗ seed) = f`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outsourced {
    pub seed: Kernel,
    pub map: Kernel,
    pub quantiles: QuantileFunction,
}

impl Outsourced {
    /// `map ∘ (id_X ⊗ seed)`.
    pub fn recombined(&self) -> Result<Kernel> {
        let inputs = &self.map.dom()[..self.map.dom().len() - 1];
        compose(&self.map, &tensor(&Kernel::identity(inputs), &self.seed))
    }
}

pub fn outsource(f: &Kernel, order: &[String]) -> Result<Outsourced> {
    let y = single_output(f)?.clone();
    let quantiles = quantile_pushback(f, order)?;
    let mut cuts: Vec<f64> = quantiles.rows.iter().flatten().map(|p| p.upper).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let seed_set = FinSet::new("R", (1..=cuts.len()).map(|k| format!("r{k}")))?;
    let mut lengths = Vec::with_capacity(cuts.len());
    let mut prev = 0.0;
    for &c in &cuts {
        lengths.push(c - prev);
        prev = c;
    }
    // The last cut may differ from 1 by rounding; the seed absorbs it.
    let total: f64 = lengths.iter().sum();
    lengths.iter_mut().for_each(|l| *l /= total);
    let seed = Kernel::state(vec![seed_set.clone()], lengths)?;

    let mut dom = f.dom().to_vec();
    dom.push(seed_set);
    let n_x = f.n_rows();
    let map = Kernel::deterministic(dom, vec![y.clone()], |row| {
        let (x, k) = (row / cuts.len(), row % cuts.len());
        debug_assert!(x < n_x);
        y.index_of(quantiles.evaluate(x, cuts[k])).expect("values come from the carrier")
    });
    Ok(Outsourced { seed, map, quantiles })
}
