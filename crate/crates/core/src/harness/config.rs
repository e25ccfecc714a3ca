//! `key = value` configuration and grid files.
//!
//! Both formats ignore blank lines and `#` comments.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

use crate::error::{ProlateError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim()
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ProlateError::InvalidArgument(format!("config line {}: expected key = value", k + 1))
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| {
                ProlateError::InvalidArgument(format!("config key {key}: cannot parse {v:?}"))
            }),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// One band limit and an inclusive range of indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridEntry {
    pub c: f64,
    pub n_min: usize,
    pub n_max: usize,
}

impl GridEntry {
    /// `n` from 2 to `max(20, ⌈2c/π⌉ + 15)`.
    pub fn default_range(c: f64) -> Self {
        let top = ((2.0 * c / PI).ceil() as usize + 15).max(20);
        Self { c, n_min: 2, n_max: top }
    }

    pub fn len(&self) -> usize {
        (self.n_max + 1).saturating_sub(self.n_min)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub const DEFAULT_GRID_C: [f64; 5] = [0.5, 1.0, 10.0, 20.0, 100.0];

pub fn default_grid() -> Vec<GridEntry> {
    DEFAULT_GRID_C.iter().map(|&c| GridEntry::default_range(c)).collect()
}

/// Grid file: one `c [n_min n_max]` per line.
pub fn parse_grid(text: &str) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| ProlateError::InvalidArgument(format!("grid line {}: {what}", k + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let c: f64 = fields[0].parse().map_err(|_| bad("bad c"))?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(bad("c must be positive"));
        }
        let entry = match fields.len() {
            1 => GridEntry::default_range(c),
            3 => GridEntry {
                c,
                n_min: fields[1].parse().map_err(|_| bad("bad n_min"))?,
                n_max: fields[2].parse().map_err(|_| bad("bad n_max"))?,
            },
            _ => return Err(bad("expected `c` or `c n_min n_max`")),
        };
        out.push(entry);
    }
    Ok(out)
}

pub fn load_grid(path: &Path) -> Result<Vec<GridEntry>> {
    parse_grid(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let c = Config::parse("# header\nheavy = true\ntol=1e-11 # tight\n\n").unwrap();
        assert_eq!(c.get::<bool>("heavy").unwrap(), Some(true));
        assert_eq!(c.get::<f64>("tol").unwrap(), Some(1e-11));
        assert_eq!(c.get::<f64>("missing").unwrap(), None);
        assert!(c.get::<f64>("heavy").is_err());
        assert!(Config::parse("novalue").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("10\n100 60 70\n# note\n").unwrap();
        assert_eq!(g[0], GridEntry { c: 10.0, n_min: 2, n_max: 22 });
        assert_eq!(g[1].len(), 11);
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid("-1").is_err());
        assert!(parse_grid("1 2").is_err());
        assert_eq!(default_grid()[4].n_max, 79);
        assert_eq!(default_grid()[0].n_max, 20);
    }
}
