use serde::{Deserialize, Serialize};

use crate::causal::{expand_ah_model_rect, CausalModel};
use crate::error::{Error, Result};
use crate::finstoch::{FinSet, Kernel};
use crate::markov::BoxAssignment;

/// Weak Aldous–Hoover data: `q: I → A`, `f: A → B`, `g: A → C`,
/// `h: B ⊗ A ⊗ C → X`, and the truncation `rows × cols`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAhSpec")]
pub struct AhSpec {
    q: Kernel,
    f: Kernel,
    g: Kernel,
    h: Kernel,
    rows: usize,
    cols: usize,
}

#[derive(Deserialize)]
struct RawAhSpec {
    q: Kernel,
    f: Kernel,
    g: Kernel,
    h: Kernel,
    rows: usize,
    cols: usize,
}

impl TryFrom<RawAhSpec> for AhSpec {
    type Error = Error;

    fn try_from(r: RawAhSpec) -> Result<Self> {
        AhSpec::new(r.q, r.f, r.g, r.h, r.rows, r.cols)
    }
}

fn single<'a>(k: &'a Kernel, name: &str) -> Result<&'a FinSet> {
    match k.cod() {
        [x] => Ok(x),
        other => Err(Error::ShapeMismatch(format!(
            "`{name}` must have a single output factor, found {}",
            other.len()
        ))),
    }
}

impl AhSpec {
    pub fn new(q: Kernel, f: Kernel, g: Kernel, h: Kernel, rows: usize, cols: usize) -> Result<Self> {
        if !q.is_state() {
            return Err(Error::ShapeMismatch(format!("`q` must be a state, found {}", q.signature())));
        }
        let a = single(&q, "q")?;
        for (k, name) in [(&f, "f"), (&g, "g")] {
            if k.dom() != std::slice::from_ref(a) {
                return Err(Error::ShapeMismatch(format!(
                    "`{name}` must have domain {}, found {}",
                    a.label(),
                    k.signature()
                )));
            }
        }
        let (b, c) = (single(&f, "f")?, single(&g, "g")?);
        single(&h, "h")?;
        if h.dom() != [b.clone(), a.clone(), c.clone()] {
            return Err(Error::ShapeMismatch(format!(
                "`h` must have domain {}⊗{}⊗{}, found {}",
                b.label(),
                a.label(),
                c.label(),
                h.signature()
            )));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch("rows and cols must be positive".into()));
        }
        Ok(AhSpec { q, f, g, h, rows, cols })
    }

    pub fn q(&self) -> &Kernel {
        &self.q
    }

    pub fn f(&self) -> &Kernel {
        &self.f
    }

    pub fn g(&self) -> &Kernel {
        &self.g
    }

    pub fn h(&self) -> &Kernel {
        &self.h
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Same kernels at a different truncation.
    pub fn resized(&self, rows: usize, cols: usize) -> Result<Self> {
        AhSpec::new(self.q.clone(), self.f.clone(), self.g.clone(), self.h.clone(), rows, cols)
    }

    pub fn latent(&self) -> &FinSet {
        &self.q.cod()[0]
    }

    pub fn row_carrier(&self) -> &FinSet {
        &self.f.cod()[0]
    }

    pub fn col_carrier(&self) -> &FinSet {
        &self.g.cod()[0]
    }

    pub fn entry_carrier(&self) -> &FinSet {
        &self.h.cod()[0]
    }

    /// The plate model at this truncation.
    pub fn model(&self) -> CausalModel {
        expand_ah_model_rect(self.rows, self.cols)
    }

    /// Carriers and kernels for every wire and box of [`AhSpec::model`].
    pub fn assignment(&self) -> BoxAssignment {
        let m = self.model();
        let mut asg = BoxAssignment::default();
        for w in m.wires() {
            let c = match w.as_bytes()[0] {
                b'T' => self.latent(),
                b'R' => self.row_carrier(),
                b'C' => self.col_carrier(),
                _ => self.entry_carrier(),
            };
            asg.carriers.insert(w.clone(), c.clone());
        }
        for b in m.boxes() {
            let k = match b.name.as_bytes()[0] {
                b'a' => &self.q,
                b'b' => &self.f,
                b'g' => &self.g,
                _ => &self.h,
            };
            asg.kernels.insert(b.name.clone(), k.clone());
        }
        asg
    }
}
