//! Text pmf files: one `label<TAB>probability` record per line, `#` comments
//! and blank lines ignored.

use std::io::Read;
use std::path::Path;

use entropy_gap::FiniteDistribution;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// A pmf exactly as read, before validation and renormalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfRecord {
    pub source: String,
    pub labels: Vec<String>,
    pub probs: Vec<f64>,
}

impl PmfRecord {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut labels = Vec::new();
        let mut probs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let err = |field, detail: String| CliError::Parse {
                source_name: source.to_string(),
                line: i + 1,
                field,
                detail,
            };
            let mut fields = line.split('\t');
            let label = fields.next().unwrap_or_default().trim();
            if label.is_empty() {
                return Err(err("label", "empty label".into()));
            }
            let prob = fields
                .next()
                .ok_or_else(|| err("probability", "missing tab-separated probability".into()))?
                .trim();
            if let Some(extra) = fields.next() {
                return Err(err("record", format!("unexpected third field {extra:?}")));
            }
            let value: f64 = prob
                .parse()
                .map_err(|_| err("probability", format!("cannot parse {prob:?} as a number")))?;
            labels.push(label.to_string());
            probs.push(value);
        }
        Ok(Self {
            source: source.to_string(),
            labels,
            probs,
        })
    }

    /// Read from a file, or from stdin when `path` is `-`.
    pub fn read(path: &Path) -> Result<Self> {
        let io = |source| CliError::Io {
            path: path.to_path_buf(),
            source,
        };
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(io)?
        };
        Self::parse(&text, &path.display().to_string())
    }

    pub fn to_distribution(&self) -> Result<FiniteDistribution<String>> {
        FiniteDistribution::new(self.labels.clone(), self.probs.clone()).map_err(|source| {
            CliError::Distribution {
                source_name: self.source.clone(),
                source,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records_and_comments() {
        let text = "# header\n\na\t0.25\nb\t7.5e-1\r\n";
        let r = PmfRecord::parse(text, "x.tsv").unwrap();
        assert_eq!(r.labels, vec!["a", "b"]);
        assert_eq!(r.probs, vec![0.25, 0.75]);
    }

    #[test]
    fn diagnostics_name_line_and_field() {
        let e = PmfRecord::parse("a\t0.5\nb\tzero\n", "f.tsv").unwrap_err();
        assert_eq!(
            e.to_string(),
            "f.tsv:2: probability: cannot parse \"zero\" as a number"
        );
        let e = PmfRecord::parse("a 0.5\n", "f.tsv").unwrap_err();
        assert!(e.to_string().starts_with("f.tsv:1: probability"));
        let e = PmfRecord::parse("a\t0.5\nb\t0.4\n", "f.tsv")
            .unwrap()
            .to_distribution()
            .unwrap_err();
        assert!(e.to_string().starts_with("f.tsv: invalid distribution"));
        assert_eq!(e.exit_code(), 2);
    }
}
