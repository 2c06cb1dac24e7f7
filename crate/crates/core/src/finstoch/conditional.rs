use super::index::{product, sizes};
use super::kernel::{compose, tensor};
use super::{FinSet, Kernel};
use crate::error::{Error, Result};

/// Conditional of `p: A -> cod` given the codomain factors at `given`.
///
/// The result has domain `given-factors ++ A` and codomain the remaining
/// factors in their original order. Rows at zero-mass inputs are uniform.
pub fn conditional(p: &Kernel, given: &[usize]) -> Result<Kernel> {
    let n = p.cod().len();
    let mut is_given = vec![false; n];
    for &g in given {
        if g >= n || std::mem::replace(&mut is_given[g], true) {
            return Err(Error::DomainMismatch(format!(
                "bad conditioning index {g} for {n} codomain factors"
            )));
        }
    }
    let rest: Vec<usize> = (0..n).filter(|i| !is_given[*i]).collect();
    let order: Vec<usize> = given.iter().chain(&rest).copied().collect();
    // Rows of `split` are A; columns are (given, rest).
    let split = p.permute_cod(&order)?;
    let given_sets: Vec<FinSet> = given.iter().map(|&i| p.cod()[i].clone()).collect();
    let rest_sets: Vec<FinSet> = rest.iter().map(|&i| p.cod()[i].clone()).collect();
    let nx = product(&sizes(&given_sets));
    let ny = product(&sizes(&rest_sets));
    let na = p.n_rows();
    let uniform = 1.0 / ny as f64;

    let mut data = vec![0.0; nx * na * ny];
    for x in 0..nx {
        for a in 0..na {
            let src = &split.row(a)[x * ny..(x + 1) * ny];
            let mass: f64 = src.iter().sum();
            let dst = &mut data[(x * na + a) * ny..(x * na + a + 1) * ny];
            if mass > 0.0 {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = s / mass;
                }
            } else {
                dst.fill(uniform);
            }
        }
    }
    let dom: Vec<FinSet> = given_sets.into_iter().chain(p.dom().iter().cloned()).collect();
    Ok(Kernel::from_parts(dom, rest_sets, data))
}

/// Rebuilds `p: A -> cod` from its marginal on the `given` factors and the
/// conditional returned by [`conditional`], by the string-diagram recipe
/// `(id_X ⊗ f) ∘ (copy_X ⊗ id_A) ∘ (m ⊗ id_A) ∘ copy_A`, followed by
/// restoring the original factor order.
pub fn recompose_conditional(marginal: &Kernel, cond: &Kernel, given: &[usize]) -> Result<Kernel> {
    let a = marginal.dom().to_vec();
    let x = marginal.cod().to_vec();
    let copy_a = Kernel::copy(&a);
    let m_then_a = tensor(marginal, &Kernel::identity(&a));
    let copy_x = tensor(&Kernel::copy(&x), &Kernel::identity(&a));
    let apply = tensor(&Kernel::identity(&x), cond);
    let joined = compose(&apply, &compose(&copy_x, &compose(&m_then_a, &copy_a)?)?)?;

    // joined has codomain (given ++ rest); put factors back in place.
    let n = joined.cod().len();
    let mut is_given = vec![false; n];
    given.iter().for_each(|&g| is_given[g] = true);
    let rest: Vec<usize> = (0..n).filter(|i| !is_given[*i]).collect();
    let order: Vec<usize> = given.iter().chain(&rest).copied().collect();
    let mut inverse = vec![0; n];
    for (pos, &orig) in order.iter().enumerate() {
        inverse[orig] = pos;
    }
    joined.permute_cod(&inverse)
}

/// Maximum recomposition error over entries; used by the property suites.
pub fn conditional_residual(p: &Kernel, given: &[usize]) -> Result<f64> {
    let cond = conditional(p, given)?;
    let marginal = p.marginal(given)?;
    recompose_conditional(&marginal, &cond, given)?.max_abs_diff(p)
}
