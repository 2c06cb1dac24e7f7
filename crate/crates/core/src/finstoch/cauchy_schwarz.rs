//! Almost-sure equality and the Cauchy–Schwarz implication.

use super::kernel::{compose, tensor};
use super::Kernel;
use crate::error::{Error, Result};

/// Default tolerance on the antecedent composites.
pub const CS_ANTECEDENT_ATOL: f64 = 1e-12;
/// Default tolerance on the a.s. equality consequent. The implication loses
/// a square root: an antecedent residual `e` only bounds the consequent by
/// roughly `sqrt(2e)`.
pub const CS_CONSEQUENT_ATOL: f64 = 1e-6;

fn check_pair(f: &Kernel, g: &Kernel, p: &Kernel) -> Result<()> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DomainMismatch(format!(
            "a.s. comparison of {} with {}",
            f.signature(),
            g.signature()
        )));
    }
    if p.cod() != f.dom() {
        return Err(Error::DomainMismatch(format!(
            "reference {} does not feed {}",
            p.signature(),
            f.signature()
        )));
    }
    Ok(())
}

/// `(id ⊗ f) ∘ copy ∘ p`, the pairing of `p` with `f`.
pub fn pair_with(p: &Kernel, f: &Kernel) -> Result<Kernel> {
    let x = p.cod();
    let copied = compose(&Kernel::copy(x), p)?;
    compose(&tensor(&Kernel::identity(x), f), &copied)
}

/// Max-abs difference between `(id⊗f)∘copy∘p` and `(id⊗g)∘copy∘p`.
pub fn as_residual(f: &Kernel, g: &Kernel, p: &Kernel) -> Result<f64> {
    check_pair(f, g, p)?;
    pair_with(p, f)?.max_abs_diff(&pair_with(p, g)?)
}

/// Whether `f` and `g` agree `p`-almost surely.
pub fn as_equal(f: &Kernel, g: &Kernel, p: &Kernel, atol: f64) -> Result<bool> {
    Ok(as_residual(f, g, p)? <= atol)
}

/// Outcome of evaluating both sides of the Cauchy–Schwarz implication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsReport {
    pub antecedent_holds: bool,
    pub consequent_holds: bool,
    /// Largest pairwise difference among the `(f,f)`, `(f,g)`, `(g,g)` composites.
    pub antecedent_residual: f64,
    pub consequent_residual: f64,
}

impl CsReport {
    /// The implication itself: a true antecedent forces the consequent.
    pub fn implication_holds(&self) -> bool {
        !self.antecedent_holds || self.consequent_holds
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsTolerance {
    pub antecedent: f64,
    pub consequent: f64,
}

impl Default for CsTolerance {
    fn default() -> Self {
        CsTolerance { antecedent: CS_ANTECEDENT_ATOL, consequent: CS_CONSEQUENT_ATOL }
    }
}

/// The composite `(u ⊗ v) ∘ copy ∘ p : A -> Y ⊗ Y`.
pub fn inner_composite(p: &Kernel, u: &Kernel, v: &Kernel) -> Result<Kernel> {
    let copied = compose(&Kernel::copy(p.cod()), p)?;
    compose(&tensor(u, v), &copied)
}

pub(crate) fn antecedent_residual(ff: &Kernel, fg: &Kernel, gg: &Kernel) -> Result<f64> {
    Ok(ff.max_abs_diff(fg)?.max(fg.max_abs_diff(gg)?).max(ff.max_abs_diff(gg)?))
}

/// Evaluates antecedent and consequent of the Cauchy–Schwarz implication for
/// `p: A -> X` and `f, g: X -> Y`.
pub fn cs_check(p: &Kernel, f: &Kernel, g: &Kernel, tol: CsTolerance) -> Result<CsReport> {
    check_pair(f, g, p)?;
    let ff = inner_composite(p, f, f)?;
    let fg = inner_composite(p, f, g)?;
    let gg = inner_composite(p, g, g)?;
    let antecedent_residual = antecedent_residual(&ff, &fg, &gg)?;
    let consequent_residual = as_residual(f, g, p)?;
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
    use crate::finstoch::FinSet;

    fn x3() -> FinSet {
        FinSet::new("X", ["a", "b", "c"]).unwrap()
    }

    fn y2() -> FinSet {
        FinSet::range("Y", 2).unwrap()
    }

    fn kernel(rows: &[[f64; 2]; 3]) -> Kernel {
        Kernel::new(vec![x3()], vec![y2()], rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Independent oracle: rowwise equality on the support of `p`.
    fn support_equal(f: &Kernel, g: &Kernel, p: &Kernel, atol: f64) -> bool {
        (0..p.n_cols()).all(|x| {
            let mass = (0..p.n_rows()).map(|a| p.get(a, x)).fold(0.0, f64::max);
            mass <= atol || f.row(x).iter().zip(g.row(x)).all(|(u, v)| (u - v).abs() <= atol)
        })
    }

    #[test]
    fn equal_kernels_are_as_equal() {
        let f = kernel(&[[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]]);
        let p = Kernel::state(vec![x3()], vec![0.2, 0.3, 0.5]).unwrap();
        assert!(as_equal(&f, &f, &p, 1e-9).unwrap());
        let r = cs_check(&p, &f, &f, CsTolerance::default()).unwrap();
        assert!(r.antecedent_holds && r.consequent_holds);
    }

    #[test]
    fn off_support_difference_is_invisible() {
        let f = kernel(&[[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]]);
        let g = kernel(&[[0.1, 0.9], [0.5, 0.5], [0.0, 1.0]]);
        let p = Kernel::state(vec![x3()], vec![0.4, 0.6, 0.0]).unwrap();
        assert!(as_equal(&f, &g, &p, 1e-9).unwrap());
        assert!(support_equal(&f, &g, &p, 1e-9));
        let r = cs_check(&p, &f, &g, CsTolerance::default()).unwrap();
        assert!(r.antecedent_holds && r.consequent_holds);
    }

    #[test]
    fn on_support_difference_breaks_antecedent() {
        let f = kernel(&[[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]]);
        let g = kernel(&[[0.1, 0.9], [0.6, 0.4], [1.0, 0.0]]);
        let p = Kernel::state(vec![x3()], vec![0.2, 0.3, 0.5]).unwrap();
        assert!(!as_equal(&f, &g, &p, 1e-9).unwrap());
        let r = cs_check(&p, &f, &g, CsTolerance::default()).unwrap();
        assert!(!r.antecedent_holds);
        assert!(!r.consequent_holds);
        // ff - 2fg + gg at y=0: p(b)·(0.5-0.6)^2 = 0.003.
        assert!(r.antecedent_residual >= 0.0015);
        assert!(r.implication_holds());
    }

    #[test]
    fn reference_with_input() {
        // p: A -> X, supported on {a, b} for one input and {a} for the other.
        let a = FinSet::range("A", 2).unwrap();
        let p = Kernel::new(vec![a], vec![x3()], vec![vec![0.5, 0.5, 0.0], vec![1.0, 0.0, 0.0]]).unwrap();
        let f = kernel(&[[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]]);
        let g = kernel(&[[0.1, 0.9], [0.5, 0.5], [0.3, 0.7]]);
        assert!(as_equal(&f, &g, &p, 1e-9).unwrap());
        let h = kernel(&[[0.1, 0.9], [0.7, 0.3], [1.0, 0.0]]);
        assert!(!as_equal(&f, &h, &p, 1e-9).unwrap());
    }

    #[test]
    fn shape_errors() {
        let f = kernel(&[[0.1, 0.9], [0.5, 0.5], [1.0, 0.0]]);
        let p = Kernel::state(vec![y2()], vec![0.5, 0.5]).unwrap();
        assert!(matches!(as_equal(&f, &f, &p, 1e-9), Err(Error::DomainMismatch(_))));
    }
}
