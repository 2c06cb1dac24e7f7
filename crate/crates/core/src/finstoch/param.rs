//! Kernels with an extra parameter input `W` that every composite shares by
//! copying it.

use super::cauchy_schwarz::{antecedent_residual, CsReport, CsTolerance};
use super::kernel::{compose, tensor};
use super::{FinSet, Kernel};
use crate::error::{Error, Result};

/// A morphism `A -> X` of the parametric category, stored as `A ⊗ W -> X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamKernel {
    base: Kernel,
}

impl ParamKernel {
    /// Wraps a kernel whose last domain factor is the parameter.
    pub fn new(base: Kernel) -> Result<Self> {
        if base.dom().is_empty() {
            return Err(Error::ParamMismatch(
                "parametric kernel needs the parameter as its last domain factor".into(),
            ));
        }
        Ok(ParamKernel { base })
    }

    /// A kernel that ignores the parameter: `k ⊗ discard_W`.
    pub fn lift(k: &Kernel, param: &FinSet) -> Self {
        ParamKernel { base: tensor(k, &Kernel::discard(std::slice::from_ref(param))) }
    }

    pub fn base(&self) -> &Kernel {
        &self.base
    }

    pub fn param(&self) -> &FinSet {
        self.base.dom().last().expect("nonempty domain")
    }

    /// Domain factors without the parameter.
    pub fn inputs(&self) -> &[FinSet] {
        let d = self.base.dom();
        &d[..d.len() - 1]
    }

    pub fn cod(&self) -> &[FinSet] {
        self.base.cod()
    }

    /// The ordinary kernel `A -> X` at parameter value `w`.
    pub fn slice(&self, w: usize) -> Kernel {
        let nw = self.param().len();
        let cols = self.base.n_cols();
        let rows = self.base.n_rows() / nw;
        let mut data = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            data.extend_from_slice(self.base.row(a * nw + w));
        }
        Kernel::from_parts(self.inputs().to_vec(), self.cod().to_vec(), data)
    }

    fn same_param(&self, other: &ParamKernel) -> Result<()> {
        if self.param() != other.param() {
            return Err(Error::ParamMismatch(format!(
                "parameters {} and {} differ",
                self.param(),
                other.param()
            )));
        }
        Ok(())
    }
}

/// `(g ∘_W f)(y|a,w) = Σ_x g(y|x,w) f(x|a,w)`, realized as
/// `g ∘ (f ⊗ id_W) ∘ (id_A ⊗ copy_W)`.
pub fn parametric_compose(g: &ParamKernel, f: &ParamKernel) -> Result<ParamKernel> {
    f.same_param(g)?;
    if f.cod() != g.inputs() {
        return Err(Error::DomainMismatch(format!(
            "cannot compose {} after {} over the shared parameter",
            g.base.signature(),
            f.base.signature()
        )));
    }
    let w = std::slice::from_ref(f.param());
    let spread = tensor(&Kernel::identity(f.inputs()), &Kernel::copy(w));
    let first = tensor(&f.base, &Kernel::identity(w));
    let base = compose(&g.base, &compose(&first, &spread)?)?;
    Ok(ParamKernel { base })
}

/// Monoidal product in the parametric category: `A ⊗ B ⊗ W -> X ⊗ Y`.
pub fn parametric_tensor(f: &ParamKernel, g: &ParamKernel) -> Result<ParamKernel> {
    f.same_param(g)?;
    let w = std::slice::from_ref(f.param());
    let a = f.inputs();
    let b = g.inputs();
    let ab_w = tensor(&Kernel::identity(&[a, b].concat()), &Kernel::copy(w));
    let shuffle = tensor(&tensor(&Kernel::identity(a), &Kernel::swap(b, w)), &Kernel::identity(w));
    let base = compose(&tensor(&f.base, &g.base), &compose(&shuffle, &ab_w)?)?;
    Ok(ParamKernel { base })
}

fn param_inner_composite(p: &ParamKernel, u: &ParamKernel, v: &ParamKernel) -> Result<ParamKernel> {
    let copy = ParamKernel::lift(&Kernel::copy(p.cod()), p.param());
    let copied = parametric_compose(&copy, p)?;
    parametric_compose(&parametric_tensor(u, v)?, &copied)
}

/// Max-abs a.s. residual of `f` and `g` with respect to `p` in the
/// parametric category.
pub fn param_as_residual(f: &ParamKernel, g: &ParamKernel, p: &ParamKernel) -> Result<f64> {
    let id = ParamKernel::lift(&Kernel::identity(p.cod()), p.param());
    let lhs = param_inner_composite(p, &id, f)?;
    let rhs = param_inner_composite(p, &id, g)?;
    lhs.base.max_abs_diff(&rhs.base)
}

/// The Cauchy–Schwarz check carried out with parametric composition.
pub fn param_cs_check(
    p: &ParamKernel,
    f: &ParamKernel,
    g: &ParamKernel,
    tol: CsTolerance,
) -> Result<CsReport> {
    if f.base.dom() != g.base.dom() || f.cod() != g.cod() {
        return Err(Error::DomainMismatch("f and g must share their shape".into()));
    }
    let ff = param_inner_composite(p, f, f)?;
    let fg = param_inner_composite(p, f, g)?;
    let gg = param_inner_composite(p, g, g)?;
    let antecedent_residual = antecedent_residual(&ff.base, &fg.base, &gg.base)?;
    let consequent_residual = param_as_residual(f, g, p)?;
    Ok(CsReport {
        antecedent_holds: antecedent_residual <= tol.antecedent,
        consequent_holds: consequent_residual <= tol.consequent,
        antecedent_residual,
        consequent_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bit(label: &str) -> FinSet {
        FinSet::range(label, 2).unwrap()
    }

    fn param_kernel(input: &str, out: &str, rows: Vec<Vec<f64>>) -> ParamKernel {
        ParamKernel::new(Kernel::new(vec![bit(input), bit("W")], vec![bit(out)], rows).unwrap()).unwrap()
    }

    #[test]
    fn unit_parameter_agrees_with_compose() {
        let unit = FinSet::range("W", 1).unwrap();
        let f = Kernel::new(vec![bit("A")], vec![bit("X")], vec![vec![0.3, 0.7], vec![0.6, 0.4]]).unwrap();
        let g = Kernel::new(vec![bit("X")], vec![bit("Y")], vec![vec![0.5, 0.5], vec![0.2, 0.8]]).unwrap();
        let pf = ParamKernel::lift(&f, &unit);
        let pg = ParamKernel::lift(&g, &unit);
        let h = parametric_compose(&pg, &pf).unwrap();
        assert!(h.slice(0).approx_eq(&compose(&g, &f).unwrap(), 1e-15));
    }

    #[test]
    fn slices_multiply_independently() {
        // rows ordered (a, w): (0,0), (0,1), (1,0), (1,1)
        let f = param_kernel("A", "X", vec![vec![0.3, 0.7], vec![1.0, 0.0], vec![0.6, 0.4], vec![0.0, 1.0]]);
        let g = param_kernel("X", "Y", vec![vec![0.5, 0.5], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.4, 0.6]]);
        let h = parametric_compose(&g, &f).unwrap();
        for w in 0..2 {
            let oracle = compose(&g.slice(w), &f.slice(w)).unwrap();
            assert!(h.slice(w).approx_eq(&oracle, 1e-15));
        }
        // w = 1: f is identity on X, g slice is [[0.9,0.1],[0.4,0.6]].
        assert!((h.slice(1).get(1, 1) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn mismatched_parameter_is_rejected() {
        let f = param_kernel("A", "X", vec![vec![0.5, 0.5]; 4]);
        let other = ParamKernel::new(
            Kernel::new(
                vec![bit("X"), FinSet::range("V", 3).unwrap()],
                vec![bit("Y")],
                vec![vec![0.5, 0.5]; 6],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(parametric_compose(&other, &f), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn tensor_slices() {
        let f = param_kernel("A", "X", vec![vec![0.3, 0.7], vec![1.0, 0.0], vec![0.6, 0.4], vec![0.0, 1.0]]);
        let g = param_kernel("B", "Y", vec![vec![0.5, 0.5], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.4, 0.6]]);
        let fg = parametric_tensor(&f, &g).unwrap();
        for w in 0..2 {
            assert!(fg.slice(w).approx_eq(&tensor(&f.slice(w), &g.slice(w)), 1e-15));
        }
    }

    #[test]
    fn parametric_cs_matches_slices() {
        let p = param_kernel("A", "X", vec![vec![0.3, 0.7], vec![1.0, 0.0], vec![0.6, 0.4], vec![1.0, 0.0]]);
        // f and g differ only at x = 1 under w = 1, where p puts no mass.
        let f = param_kernel("X", "Y", vec![vec![0.5, 0.5], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.4, 0.6]]);
        let g = param_kernel("X", "Y", vec![vec![0.5, 0.5], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.0, 1.0]]);
        let r = param_cs_check(&p, &f, &g, CsTolerance::default()).unwrap();
        assert!(r.antecedent_holds && r.consequent_holds);
        for w in 0..2 {
            let s = super::super::cauchy_schwarz::cs_check(
                &p.slice(w),
                &f.slice(w),
                &g.slice(w),
                CsTolerance::default(),
            )
            .unwrap();
            assert!(s.antecedent_holds && s.consequent_holds);
        }
    }
}
