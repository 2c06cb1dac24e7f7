use crate::causal::{default_timing, CausalModel, ModelBox, TimingFunction};
use crate::error::Result;
use crate::finstoch::{conditional, JointState};

use super::assignment::{recompose, BoxAssignment};
use super::properties::check_wires;

/// Peels boxes of maximal time off `p`, assigning each the conditional of
/// its outputs given its inputs. Ties go to the smallest box name.
///
/// Always returns an assignment. It recomposes to `p` exactly when `p` is
/// compatible with `m`.
pub fn factorize(p: &JointState, m: &CausalModel, tau: &TimingFunction) -> Result<BoxAssignment> {
    m.ensure_valid()?;
    tau.validate(m)?;
    check_wires(p, m)?;

    let mut asg = BoxAssignment::default();
    for w in m.wires() {
        asg.carriers.insert(w.clone(), p.carrier(w)?.clone());
    }
    let mut remaining: Vec<&ModelBox> = m.boxes().iter().collect();
    let mut q = p.clone();
    while !remaining.is_empty() {
        let pick = (0..remaining.len())
            .max_by(|&i, &j| {
                let (a, b) = (remaining[i], remaining[j]);
                tau.get(&a.name).cmp(&tau.get(&b.name)).then_with(|| b.name.cmp(&a.name))
            })
            .expect("nonempty");
        let b = remaining.swap_remove(pick);

        let keep: Vec<&String> = b.inputs.iter().chain(&b.outputs).collect();
        let local = q.marginalize(&keep)?;
        let given: Vec<usize> = (0..b.inputs.len()).collect();
        asg.kernels.insert(b.name.clone(), conditional(local.kernel(), &given)?);

        let rest: Vec<String> = q.wires().iter().filter(|w| !b.outputs.contains(w)).cloned().collect();
        q = q.marginalize(&rest)?;
    }
    Ok(asg)
}

/// Max-abs difference between `p` and the recomposition of its
/// factorization under the default timing.
pub fn compatibility_residual(p: &JointState, m: &CausalModel) -> Result<f64> {
    let tau = default_timing(m)?;
    let asg = factorize(p, m, &tau)?;
    recompose(m, &asg)?.max_abs_diff(p)
}

pub fn check_compatible(p: &JointState, m: &CausalModel, atol: f64) -> Result<bool> {
    Ok(compatibility_residual(p, m)? <= atol)
}
