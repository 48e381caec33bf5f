//! Report envelope and its canonical JSON encoding.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every double; non-finite values become `null`. Object keys are
//! sorted, so equal reports serialize to identical bytes.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::{CliError, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub inputs: Value,
    pub results: Value,
    pub flags: BTreeMap<String, bool>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, inputs: Value, results: Value) -> Self {
        Self {
            command: command.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            seed,
            inputs,
            results,
            flags: BTreeMap::new(),
        }
    }

    pub fn flag(mut self, name: &str, value: bool) -> Self {
        self.flags.insert(name.to_string(), value);
        self
    }

    pub fn to_canonical(&self) -> Result<String> {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Canonical);
        self.serialize(&mut ser)
            .map_err(|e| CliError::Report(e.to_string()))?;
        out.push(b'\n');
        String::from_utf8(out).map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))
    }
}

/// Serialize any value into a JSON tree.
pub fn tree<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| CliError::Report(e.to_string()))
}

/// Compact formatter with fixed 17-significant-digit floats.
struct Canonical;

impl Formatter for Canonical {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}
