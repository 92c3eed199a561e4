//! Run configuration, read from a line-oriented file in the same record
//! style as the relation database.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::field::Ctx;
use crate::relations::Budget;

pub const CONFIG_VERSION: u32 = 1;

/// Environment variable naming the default database file.
pub const DB_ENV: &str = "POLYLOG_DB";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "human" => Ok(Format::Human),
            "structured" => Ok(Format::Structured),
            _ => Err(Error::Precondition(format!("unknown output format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    /// cyclotomic order N of the constant field Q(zeta_N)
    pub order: u32,
    /// if set, the only variable names accepted in expressions
    pub vars: Option<BTreeSet<String>>,
    pub db: Option<PathBuf>,
    pub budget: Budget,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config { order: 1, vars: None, db: None, budget: Budget::default(), format: Format::Human }
    }
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Precondition(format!("config line {line}: {}", msg.into()))
}

impl Config {
    pub fn ctx(&self) -> Result<Ctx> {
        Ctx::new(self.order)
    }

    /// Parses
    ///
    /// ```text
    /// polylog-config 1
    /// field order=4
    /// vars t s
    /// db relations.db
    /// budget degree=2 time=10
    /// format structured
    /// ```
    ///
    /// Every line after the header is optional.
    pub fn parse(src: &str) -> Result<Config> {
        let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, l)) if l == format!("polylog-config {CONFIG_VERSION}") => {}
            Some((n, l)) => return Err(bad(n, format!("unsupported header `{l}`"))),
            None => return Err(bad(0, "empty config")),
        }
        let mut cfg = Config::default();
        for (n, l) in lines {
            let (key, rest) = l.split_once(' ').map_or((l, ""), |(k, r)| (k, r.trim()));
            match key {
                "field" => {
                    let v = rest.strip_prefix("order=").ok_or_else(|| bad(n, "expected `field order=N`"))?;
                    cfg.order = v.parse().map_err(|_| bad(n, "bad field order"))?;
                }
                "vars" => {
                    let names: Vec<&str> = rest.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
                    let set: BTreeSet<String> = names.iter().map(|s| s.to_string()).collect();
                    if set.len() != names.len() {
                        return Err(bad(n, "variables must be distinct"));
                    }
                    cfg.vars = Some(set);
                }
                "db" => cfg.db = Some(PathBuf::from(rest)),
                "budget" => {
                    for kv in rest.split_whitespace() {
                        let (k, v) = kv.split_once('=').ok_or_else(|| bad(n, "expected key=value"))?;
                        let v: u64 = v.parse().map_err(|_| bad(n, format!("bad value for {k}")))?;
                        if v == 0 {
                            return Err(bad(n, "budgets must be positive"));
                        }
                        match k {
                            "degree" => cfg.budget.degree = v as u32,
                            "time" => cfg.budget.time = Duration::from_secs(v),
                            _ => return Err(bad(n, format!("unknown budget `{k}`"))),
                        }
                    }
                }
                "format" => cfg.format = rest.parse()?,
                _ => return Err(bad(n, format!("unknown key `{key}`"))),
            }
        }
        cfg.ctx()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Config> {
        Config::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let c = Config::parse("polylog-config 1\nfield order=4\nvars t s\nbudget degree=1 time=3\nformat structured\n").unwrap();
        assert_eq!(c.order, 4);
        assert_eq!(c.vars.unwrap().len(), 2);
        assert_eq!(c.budget.degree, 1);
        assert_eq!(c.format, Format::Structured);
        assert!(Config::parse("polylog-config 1\nvars t t\n").is_err());
        assert!(Config::parse("polylog-config 1\nbudget time=0\n").is_err());
        assert!(Config::parse("polylog-config 2\n").is_err());
    }
}
