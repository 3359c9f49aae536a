//! Line-oriented key-value text format shared by model files, split
//! manifests, and configs.
//!
//! A file is a sequence of `key value value ...` lines. Keys may repeat
//! (list-valued records). Floats are written in Rust's shortest round-trip
//! form, so save/load is lossless and re-serialization is byte-identical.
//! Every file starts with a `format_version` line and a `kind` line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Serializer for the key-value format.
#[derive(Debug)]
pub struct KvWriter {
    out: String,
}

impl KvWriter {
    pub fn new(kind: &str) -> Self {
        let mut w = Self { out: String::new() };
        w.push("format_version", FORMAT_VERSION);
        w.push("kind", kind);
        w
    }

    pub fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        debug_assert!(!key.contains(char::is_whitespace));
        let _ = writeln!(self.out, "{key} {value}");
    }

    pub fn push_list<T: std::fmt::Display>(
        &mut self,
        key: &str,
        values: impl IntoIterator<Item = T>,
    ) {
        let _ = write!(self.out, "{key}");
        for v in values {
            let _ = write!(self.out, " {v}");
        }
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }

    pub fn write_to(self, path: &Path) -> Result<()> {
        std::fs::write(path, self.finish())?;
        Ok(())
    }
}

/// Parsed key-value file with typed accessors that report the offending file
/// and key on failure.
#[derive(Debug)]
pub struct KvFile {
    name: String,
    entries: Vec<(String, Vec<String>)>,
}

impl KvFile {
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace().map(str::to_string);
            let key = parts.next().expect("non-empty line has a first token");
            entries.push((key, parts.collect()));
        }
        let file = Self {
            name: name.to_string(),
            entries,
        };
        let version: u32 = file.get_one("format_version")?;
        if version != FORMAT_VERSION {
            return Err(file.error(format!("unsupported format_version {version}")));
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::FileFormat {
            file: self.name.clone(),
            message: message.into(),
        }
    }

    pub fn expect_kind(&self, kind: &str) -> Result<()> {
        let found: String = self.get_one("kind")?;
        if found != kind {
            return Err(self.error(format!("kind is '{found}', expected '{kind}'")));
        }
        Ok(())
    }

    pub fn kind(&self) -> Result<String> {
        self.get_one("kind")
    }

    fn values(&self, key: &str) -> Result<&[String]> {
        let mut found = None;
        for (k, vals) in &self.entries {
            if k == key {
                if found.is_some() {
                    return Err(self.error(format!("duplicate key '{key}'")));
                }
                found = Some(vals.as_slice());
            }
        }
        found.ok_or_else(|| self.error(format!("missing key '{key}'")))
    }

    /// All value lists recorded under a repeated key, in file order.
    pub fn all(&self, key: &str) -> Vec<&[String]> {
        self.entries
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_slice())
            .collect()
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.iter().any(|(k, _)| k == key)
    }

    /// Every key present in the file, in order.
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// Single scalar value under a unique key.
    pub fn get_one<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let vals = self.values(key)?;
        if vals.len() != 1 {
            return Err(self.error(format!(
                "key '{key}' expects one value, found {}",
                vals.len()
            )));
        }
        vals[0]
            .parse()
            .map_err(|_| self.error(format!("key '{key}': cannot parse '{}'", vals[0])))
    }

    /// Whole value list under a unique key.
    pub fn get_list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let vals = self.values(key)?;
        self.parse_values(key, vals)
    }

    pub fn parse_values<T: std::str::FromStr>(&self, key: &str, vals: &[String]) -> Result<Vec<T>> {
        vals.iter()
            .map(|v| {
                v.parse()
                    .map_err(|_| self.error(format!("key '{key}': cannot parse '{v}'")))
            })
            .collect()
    }
}

/// Joins occupation numbers as a compact comma-separated token, the stable
/// on-disk identity of a Fock state.
pub fn occupation_token(occupations: &[u32]) -> String {
    occupations
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Inverse of [`occupation_token`].
pub fn parse_occupations(token: &str) -> Option<Vec<u32>> {
    token.split(',').map(|p| p.parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_floats_exactly() {
        let mut w = KvWriter::new("test");
        let values = [1.0, -0.0, 1.5e-300, std::f64::consts::PI, 0.1 + 0.2];
        w.push_list("floats", values.iter().copied());
        let text = w.finish();
        let file = KvFile::parse(&text, "mem").unwrap();
        let parsed: Vec<f64> = file.get_list("floats").unwrap();
        for (orig, read) in values.iter().zip(&parsed) {
            assert_eq!(orig.to_bits(), read.to_bits());
        }
    }

    #[test]
    fn reserialization_is_byte_identical() {
        let mut w = KvWriter::new("test");
        w.push("photons", 4u32);
        w.push_list("lambda", [0.25, -1.0 / 3.0]);
        let a = w.finish();

        let file = KvFile::parse(&a, "mem").unwrap();
        let mut w = KvWriter::new("test");
        w.push("photons", file.get_one::<u32>("photons").unwrap());
        w.push_list("lambda", file.get_list::<f64>("lambda").unwrap());
        assert_eq!(a, w.finish());
    }

    #[test]
    fn missing_and_duplicate_keys_report_context() {
        let file = KvFile::parse("format_version 1\nkind t\na 1\na 2\n", "f.txt").unwrap();
        let err = file.get_one::<u32>("a").unwrap_err().to_string();
        assert!(err.contains("duplicate key 'a'"), "{err}");
        let err = file.get_one::<u32>("b").unwrap_err().to_string();
        assert!(err.contains("missing key 'b'") && err.contains("f.txt"), "{err}");
    }

    #[test]
    fn version_mismatch_rejected() {
        let err = KvFile::parse("format_version 99\nkind t\n", "f").unwrap_err();
        assert!(err.to_string().contains("format_version 99"));
    }

    #[test]
    fn occupation_tokens_round_trip() {
        assert_eq!(occupation_token(&[2, 0, 1]), "2,0,1");
        assert_eq!(parse_occupations("2,0,1"), Some(vec![2, 0, 1]));
        assert_eq!(parse_occupations("2,x"), None);
    }
}
