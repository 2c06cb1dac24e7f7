//! On-disk form shared by kernels and joint states:
//! `{"dom":[..],"cod":[..],"rows":[[..]],"wire_names":[..]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FinSet, JointState, Kernel, DEFAULT_ATOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelFile {
    #[serde(default)]
    pub dom: Vec<FinSet>,
    pub cod: Vec<FinSet>,
    pub rows: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wire_names: Option<Vec<String>>,
}

impl KernelFile {
    pub fn from_kernel(k: &Kernel) -> Self {
        KernelFile {
            dom: k.dom().to_vec(),
            cod: k.cod().to_vec(),
            rows: k.rows().map(<[f64]>::to_vec).collect(),
            wire_names: None,
        }
    }

    pub fn from_joint(p: &JointState) -> Self {
        KernelFile { wire_names: Some(p.wires().to_vec()), ..KernelFile::from_kernel(p.kernel()) }
    }

    pub fn into_kernel(self, atol: f64) -> Result<Kernel> {
        Kernel::with_atol(self.dom, self.cod, self.rows, atol)
    }

    pub fn into_joint(self, atol: f64) -> Result<JointState> {
        let names = self
            .wire_names
            .clone()
            .ok_or_else(|| Error::WireMismatch("missing field `wire_names`".into()))?;
        JointState::new(self.into_kernel(atol)?, names)
    }
}

impl Serialize for Kernel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KernelFile::from_kernel(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Kernel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        KernelFile::deserialize(d)?.into_kernel(DEFAULT_ATOL).map_err(serde::de::Error::custom)
    }
}

impl Serialize for JointState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KernelFile::from_joint(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for JointState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        KernelFile::deserialize(d)?.into_joint(DEFAULT_ATOL).map_err(serde::de::Error::custom)
    }
}
