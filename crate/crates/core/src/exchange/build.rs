use crate::causal::{c_wire, r_wire, s_wire, t_wire};
use crate::error::{Error, Result};
use crate::finstoch::{check_size, FinSet, JointState, Kernel, DEFAULT_STATE_CAP};

use super::spec::AhSpec;

/// Name of the `i`-th sequence wire, 1-based.
pub fn x_wire(i: usize) -> String {
    format!("X[{i}]")
}

fn kron(acc: &[f64], v: &[f64]) -> Vec<f64> {
    acc.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect()
}

fn sorted_names(names: &[String]) -> Vec<String> {
    let mut s = names.to_vec();
    s.sort();
    s
}

/// Exact `Σ_a q(a) Π_i f(x_i | a)` over wires `X[1..n]`, plus the latent
/// `T` when `expose_latent`. Wires are in lexicographic order.
pub fn build_definetti_joint(q: &Kernel, f: &Kernel, n: usize, expose_latent: bool) -> Result<JointState> {
    if !q.is_state() || q.cod().len() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "`q` must be a state on one factor, found {}",
            q.signature()
        )));
    }
    if f.dom() != q.cod() || f.cod().len() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "`f` must map {} to one factor, found {}",
            q.cod()[0].label(),
            f.signature()
        )));
    }
    if n == 0 {
        return Err(Error::ShapeMismatch("sequence length must be positive".into()));
    }
    let (a, x) = (&q.cod()[0], &f.cod()[0]);
    let mut names: Vec<String> = (1..=n).map(x_wire).collect();
    let mut carriers: Vec<FinSet> = vec![x.clone(); n];
    if expose_latent {
        names.insert(0, t_wire());
        carriers.insert(0, a.clone());
    }
    check_size(&carriers, DEFAULT_STATE_CAP)?;

    let mut data = Vec::new();
    let mut mixed = vec![0.0; x.len().pow(n as u32)];
    for ai in 0..a.len() {
        let w = q.get(0, ai);
        let mut block = vec![w];
        for _ in 0..n {
            block = kron(&block, f.row(ai));
        }
        if expose_latent {
            data.extend(block);
        } else {
            mixed.iter_mut().zip(&block).for_each(|(m, b)| *m += b);
        }
    }
    if !expose_latent {
        data = mixed;
    }
    JointState::new(Kernel::from_flat(Vec::new(), carriers, data, 1e-9)?, names.clone())?
        .reindex(&sorted_names(&names))
}

pub fn build_ah_joint(spec: &AhSpec, expose_latents: bool) -> Result<JointState> {
    build_ah_joint_capped(spec, expose_latents, DEFAULT_STATE_CAP)
}

/// Exact weak Aldous–Hoover joint over `S[i,j]` (and `T`, `R[i]`, `C[j]`
/// when exposed) by direct enumeration of the latent configurations.
/// Wires are in lexicographic order.
pub fn build_ah_joint_capped(spec: &AhSpec, expose_latents: bool, cap: usize) -> Result<JointState> {
    let (m, n) = (spec.rows(), spec.cols());
    let (a, b, c, x) = (spec.latent(), spec.row_carrier(), spec.col_carrier(), spec.entry_carrier());

    let mut latent_names = vec![t_wire()];
    let mut latent_carriers = vec![a.clone()];
    latent_names.extend((1..=m).map(r_wire));
    latent_carriers.extend(std::iter::repeat_n(b.clone(), m));
    latent_names.extend((1..=n).map(c_wire));
    latent_carriers.extend(std::iter::repeat_n(c.clone(), n));
    let entry_names: Vec<String> = (1..=m).flat_map(|i| (1..=n).map(move |j| s_wire(i, j))).collect();
    let entry_carriers = vec![x.clone(); m * n];

    let (names, carriers) = if expose_latents {
        (
            [latent_names.clone(), entry_names.clone()].concat(),
            [latent_carriers.clone(), entry_carriers.clone()].concat(),
        )
    } else {
        (entry_names.clone(), entry_carriers.clone())
    };
    check_size(&carriers, cap)?;
    check_size(&latent_carriers, cap)?;

    let (q, f, g, h) = (spec.q(), spec.f(), spec.g(), spec.h());
    let h_row = |bi: usize, ai: usize, ci: usize| (bi * a.len() + ai) * c.len() + ci;
    let block_len = x.len().pow((m * n) as u32);
    let mut data = Vec::new();
    let mut mixed = vec![0.0; if expose_latents { 0 } else { block_len }];

    // Odometer over (a, b_1..b_m, c_1..c_n), last digit fastest.
    let mut digits = vec![0usize; 1 + m + n];
    let sizes: Vec<usize> = latent_carriers.iter().map(FinSet::len).collect();
    loop {
        let ai = digits[0];
        let (bs, cs) = (&digits[1..=m], &digits[m + 1..]);
        let w = q.get(0, ai)
            * bs.iter().map(|&bi| f.get(ai, bi)).product::<f64>()
            * cs.iter().map(|&ci| g.get(ai, ci)).product::<f64>();
        if expose_latents || w != 0.0 {
            let mut block = vec![w];
            if w == 0.0 {
                block = vec![0.0; block_len];
            } else {
                for &bi in bs {
                    for &ci in cs {
                        block = kron(&block, h.row(h_row(bi, ai, ci)));
                    }
                }
            }
            if expose_latents {
                data.extend(block);
            } else {
                mixed.iter_mut().zip(&block).for_each(|(m, b)| *m += b);
            }
        }
        let mut k = digits.len();
        loop {
            if k == 0 {
                if !expose_latents {
                    data = mixed;
                }
                let p = JointState::new(Kernel::from_flat(Vec::new(), carriers, data, 1e-9)?, names.clone())?;
                return p.reindex(&sorted_names(&names));
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < sizes[k] {
                break;
            }
            digits[k] = 0;
        }
    }
}
