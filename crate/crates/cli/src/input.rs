use std::fmt;
use std::fs;
use std::path::Path;

use finmarkov::finstoch::KernelFile;
use finmarkov::{Error, JointState, Kernel, DEFAULT_ATOL};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A problem with the command's inputs, reported with exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    /// File or flag the problem was found in.
    pub source: String,
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    pub fn new(source: impl fmt::Display, field: Option<&str>, message: impl fmt::Display) -> Self {
        InputError {
            source: source.to_string(),
            field: field.map(str::to_string),
            message: message.to_string(),
        }
    }

    pub fn at(path: &Path, field: Option<&str>, message: impl fmt::Display) -> Self {
        InputError::new(path.display(), field, message)
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "{}: field `{field}`: {}", self.source, self.message),
            None => write!(f, "{}: {}", self.source, self.message),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::at(path, None, e))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let field = (field != ".").then_some(field);
        InputError::at(path, field.as_deref(), e.inner())
    })?;
    de.end().map_err(|e| InputError::at(path, None, e))?;
    Ok(value)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| InputError::at(path, None, e))?;
    fs::write(path, text + "\n").map_err(|e| InputError::at(path, None, e))
}

/// The field of a kernel file a validation error points at.
fn kernel_field(e: &Error) -> Option<&'static str> {
    match e {
        Error::InvalidKernel(_) | Error::ShapeMismatch(_) => Some("rows"),
        Error::InvalidFinSet { .. } => Some("cod"),
        Error::WireMismatch(_) | Error::UnknownWire(_) | Error::WireOverlap(_) => Some("wire_names"),
        _ => None,
    }
}

pub fn read_kernel(path: &Path) -> Result<Kernel, InputError> {
    let file: KernelFile = read_json(path)?;
    file.into_kernel(DEFAULT_ATOL).map_err(|e| InputError::at(path, kernel_field(&e), e))
}

pub fn read_state(path: &Path) -> Result<JointState, InputError> {
    let file: KernelFile = read_json(path)?;
    if !file.dom.is_empty() {
        return Err(InputError::at(path, Some("dom"), "a joint state must have an empty domain"));
    }
    file.into_joint(DEFAULT_ATOL).map_err(|e| InputError::at(path, kernel_field(&e), e))
}
