use super::index::{self, product, sizes};
use super::{FinSet, DEFAULT_ATOL};
use crate::error::{Error, Result};

/// A Markov kernel between tensor products of finite sets.
///
/// `dom` and `cod` are ordered factor lists; the empty list is the monoidal
/// unit. Entries are stored densely, one row per domain tuple, with tuples
/// flattened row-major (first factor most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    dom: Vec<FinSet>,
    cod: Vec<FinSet>,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// The comonoid and symmetry structure carried by every object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structural {
    Copy,
    Discard,
    Swap,
    Identity,
}

impl Kernel {
    /// Builds a kernel from explicit rows, validating stochasticity at the
    /// default tolerance.
    pub fn new(dom: Vec<FinSet>, cod: Vec<FinSet>, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_atol(dom, cod, rows, DEFAULT_ATOL)
    }

    pub fn with_atol(dom: Vec<FinSet>, cod: Vec<FinSet>, rows: Vec<Vec<f64>>, atol: f64) -> Result<Self> {
        let n_rows = product(&sizes(&dom));
        let n_cols = product(&sizes(&cod));
        if rows.len() != n_rows {
            return Err(Error::InvalidKernel(format!("expected {n_rows} rows, found {}", rows.len())));
        }
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::InvalidKernel(format!(
                    "row {r} has {} entries, expected {n_cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Self::from_flat(dom, cod, data, atol)
    }

    /// Builds a kernel from row-major flat data, validating stochasticity.
    pub fn from_flat(dom: Vec<FinSet>, cod: Vec<FinSet>, data: Vec<f64>, atol: f64) -> Result<Self> {
        let rows = product(&sizes(&dom));
        let cols = product(&sizes(&cod));
        if data.len() != rows * cols {
            return Err(Error::InvalidKernel(format!(
                "expected {} entries, found {}",
                rows * cols,
                data.len()
            )));
        }
        let k = Kernel { dom, cod, rows, cols, data };
        k.validate(atol)?;
        Ok(k)
    }

    /// Builds a kernel without validation. Used for composites of valid
    /// kernels, whose rows are stochastic up to rounding.
    pub(crate) fn from_parts(dom: Vec<FinSet>, cod: Vec<FinSet>, data: Vec<f64>) -> Self {
        let rows = product(&sizes(&dom));
        let cols = product(&sizes(&cod));
        debug_assert_eq!(data.len(), rows * cols);
        Kernel { dom, cod, rows, cols, data }
    }

    /// A state `I -> cod` with the given probabilities.
    pub fn state(cod: Vec<FinSet>, probs: Vec<f64>) -> Result<Self> {
        Self::from_flat(Vec::new(), cod, probs, DEFAULT_ATOL)
    }

    pub fn validate(&self, atol: f64) -> Result<()> {
        for r in 0..self.rows {
            let row = self.row(r);
            if let Some(c) = row.iter().position(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::InvalidKernel(format!(
                    "entry ({r},{c}) = {} is not a probability",
                    row[c]
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > atol {
                return Err(Error::InvalidKernel(format!("row {r} sums to {sum}")));
            }
        }
        Ok(())
    }

    pub fn dom(&self) -> &[FinSet] {
        &self.dom
    }

    pub fn cod(&self) -> &[FinSet] {
        &self.cod
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.cols.max(1))
    }

    pub fn is_state(&self) -> bool {
        self.dom.is_empty()
    }

    /// Largest absolute entrywise difference; errors if the shapes differ.
    pub fn max_abs_diff(&self, other: &Kernel) -> Result<f64> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::DomainMismatch(format!(
                "cannot compare {} with {}",
                self.signature(),
                other.signature()
            )));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Kernel, atol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= atol)
    }

    /// Short description such as `X,Y -> Z`.
    pub fn signature(&self) -> String {
        let side = |fs: &[FinSet]| {
            if fs.is_empty() {
                "I".to_string()
            } else {
                fs.iter().map(|f| f.label()).collect::<Vec<_>>().join(",")
            }
        };
        format!("{} -> {}", side(&self.dom), side(&self.cod))
    }

    // ---- structure -------------------------------------------------------

    /// Deterministic kernel given by a function on flattened tuples.
    pub fn deterministic(dom: Vec<FinSet>, cod: Vec<FinSet>, map: impl Fn(usize) -> usize) -> Self {
        let rows = product(&sizes(&dom));
        let cols = product(&sizes(&cod));
        let mut data = vec![0.0; rows * cols];
        for r in 0..rows {
            let c = map(r);
            assert!(c < cols, "deterministic map out of range");
            data[r * cols + c] = 1.0;
        }
        Kernel::from_parts(dom, cod, data)
    }

    pub fn identity(factors: &[FinSet]) -> Self {
        Kernel::deterministic(factors.to_vec(), factors.to_vec(), |r| r)
    }

    /// `x |-> (x, x)` on a list of factors; the codomain is `factors ++ factors`.
    pub fn copy(factors: &[FinSet]) -> Self {
        let n = product(&sizes(factors));
        let cod: Vec<FinSet> = factors.iter().chain(factors).cloned().collect();
        Kernel::deterministic(factors.to_vec(), cod, |r| r * n + r)
    }

    /// The unique kernel into the unit.
    pub fn discard(factors: &[FinSet]) -> Self {
        Kernel::deterministic(factors.to_vec(), Vec::new(), |_| 0)
    }

    /// `(x, y) |-> (y, x)` for two blocks of factors.
    pub fn swap(left: &[FinSet], right: &[FinSet]) -> Self {
        let nr = product(&sizes(right));
        let nl = product(&sizes(left));
        let dom: Vec<FinSet> = left.iter().chain(right).cloned().collect();
        let cod: Vec<FinSet> = right.iter().chain(left).cloned().collect();
        Kernel::deterministic(dom, cod, |r| {
            let (x, y) = (r / nr, r % nr);
            y * nl + x
        })
    }

    /// Dispatches to the structural morphism of the requested kind. `Swap`
    /// needs a second carrier; the others use only the first.
    pub fn structural(kind: Structural, carrier: &FinSet, second: Option<&FinSet>) -> Result<Self> {
        let one = std::slice::from_ref(carrier);
        Ok(match kind {
            Structural::Copy => Kernel::copy(one),
            Structural::Discard => Kernel::discard(one),
            Structural::Identity => Kernel::identity(one),
            Structural::Swap => {
                let other = second.ok_or_else(|| Error::DomainMismatch("swap needs two carriers".into()))?;
                Kernel::swap(one, std::slice::from_ref(other))
            }
        })
    }

    /// Reorders the codomain factors: output factor `i` is input factor
    /// `perm[i]`.
    pub fn permute_cod(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.cod.len())?;
        let cod: Vec<FinSet> = perm.iter().map(|&i| self.cod[i].clone()).collect();
        let src_sizes = sizes(&self.cod);
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..self.rows {
            data.extend(index::project(self.row(r), &src_sizes, perm));
        }
        Ok(Kernel::from_parts(self.dom.clone(), cod, data))
    }

    /// Reorders the domain factors: new factor `i` is old factor `perm[i]`.
    pub fn permute_dom(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.dom.len())?;
        let dom: Vec<FinSet> = perm.iter().map(|&i| self.dom[i].clone()).collect();
        let old_sizes = sizes(&self.dom);
        let new_sizes = sizes(&dom);
        let mut old_digits = vec![0; old_sizes.len()];
        let mut new_digits = vec![0; new_sizes.len()];
        let mut data = vec![0.0; self.data.len()];
        for r in 0..self.rows {
            index::decode(r, &new_sizes, &mut new_digits);
            for (pos, &src) in perm.iter().enumerate() {
                old_digits[src] = new_digits[pos];
            }
            let old = index::encode(&old_digits, &old_sizes);
            data[r * self.cols..(r + 1) * self.cols].copy_from_slice(self.row(old));
        }
        Ok(Kernel::from_parts(dom, self.cod.clone(), data))
    }

    /// Sums out every codomain factor not listed in `keep`; kept factors
    /// appear in `keep` order.
    pub fn marginal(&self, keep: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.cod.len()];
        for &k in keep {
            if k >= self.cod.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::DomainMismatch(format!(
                    "bad marginal index {k} for {} codomain factors",
                    self.cod.len()
                )));
            }
        }
        let cod: Vec<FinSet> = keep.iter().map(|&i| self.cod[i].clone()).collect();
        let src_sizes = sizes(&self.cod);
        let mut data = Vec::with_capacity(self.rows * product(&sizes(&cod)));
        for r in 0..self.rows {
            data.extend(index::project(self.row(r), &src_sizes, keep));
        }
        Ok(Kernel::from_parts(self.dom.clone(), cod, data))
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::DomainMismatch(format!("permutation of length {} for {n} factors", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::DomainMismatch(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `g ∘ f`: `(g∘f)(z|x) = Σ_y g(z|y) f(y|x)`.
pub fn compose(g: &Kernel, f: &Kernel) -> Result<Kernel> {
    if f.cod != g.dom {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {} after {}",
            g.signature(),
            f.signature()
        )));
    }
    let mut data = vec![0.0; f.rows * g.cols];
    for x in 0..f.rows {
        let out = &mut data[x * g.cols..(x + 1) * g.cols];
        for (y, &fy) in f.row(x).iter().enumerate() {
            if fy == 0.0 {
                continue;
            }
            for (o, &gz) in out.iter_mut().zip(g.row(y)) {
                *o += fy * gz;
            }
        }
    }
    Ok(Kernel::from_parts(f.dom.clone(), g.cod.clone(), data))
}

/// `f ⊗ g`: `(f⊗g)((y,z)|(x,w)) = f(y|x) g(z|w)`.
pub fn tensor(f: &Kernel, g: &Kernel) -> Kernel {
    let dom: Vec<FinSet> = f.dom.iter().chain(&g.dom).cloned().collect();
    let cod: Vec<FinSet> = f.cod.iter().chain(&g.cod).cloned().collect();
    let cols = f.cols * g.cols;
    let mut data = Vec::with_capacity(f.rows * g.rows * cols);
    for x in 0..f.rows {
        for w in 0..g.rows {
            for &a in f.row(x) {
                data.extend(g.row(w).iter().map(|&b| a * b));
            }
        }
    }
    Kernel::from_parts(dom, cod, data)
}

/// Residual of the copy-naturality square `copy∘f = (f⊗f)∘copy`.
pub fn copy_naturality_residual(f: &Kernel) -> f64 {
    let lhs = compose(&Kernel::copy(f.cod()), f).expect("shapes agree");
    let rhs = compose(&tensor(f, f), &Kernel::copy(f.dom())).expect("shapes agree");
    lhs.max_abs_diff(&rhs).expect("shapes agree")
}

/// A kernel is deterministic when copying commutes with it.
pub fn is_deterministic(f: &Kernel, atol: f64) -> bool {
    copy_naturality_residual(f) <= atol
}
