//! Text coefficient files: `# satotate-coeffs v1` followed by `key=value`
//! header lines and one `p a_p` pair per line.
//!
//! ```text
//! # satotate-coeffs v1
//! label=11a1
//! weight=2
//! level=11
//! normalized=false
//! 2 -2
//! 3 -1
//! ```
//!
//! With `normalized=false`, `a_p` is the exact integer Hecke eigenvalue
//! `a_f(p) p^{(k-1)/2}`; with `normalized=true` it is the decimal
//! `2 cos θ_p`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC_LINE: &str = "# satotate-coeffs v1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coefficient {
    Integer(i128),
    Normalized(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub normalized: bool,
    /// Ascending in `p`.
    pub entries: Vec<(u64, Coefficient)>,
}

fn bad(line_no: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("coefficient file line {line_no}: {msg}"))
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let first = lines.by_ref().find(|(_, l)| !l.is_empty());
        match first {
            Some((_, l)) if l == MAGIC_LINE => {}
            Some((n, l)) => return Err(bad(n, format!("expected `{MAGIC_LINE}`, found `{l}`"))),
            None => return Err(Error::Format("empty coefficient file".into())),
        }

        let mut label = None;
        let mut weight = None;
        let mut level = None;
        let mut normalized = None;
        let mut entries: Vec<(u64, Coefficient)> = Vec::new();

        for (n, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((key, value)) = line.split_once('=') {
                if !entries.is_empty() {
                    return Err(bad(n, "header line after data"));
                }
                let value = value.trim();
                match key.trim() {
                    "label" => label = Some(value.to_string()),
                    "weight" => weight = Some(value.parse::<u32>().map_err(|e| bad(n, e))?),
                    "level" => level = Some(value.parse::<u64>().map_err(|e| bad(n, e))?),
                    "normalized" => {
                        normalized = Some(match value {
                            "true" => true,
                            "false" => false,
                            other => return Err(bad(n, format!("normalized must be true|false, got `{other}`"))),
                        })
                    }
                    other => return Err(bad(n, format!("unknown header key `{other}`"))),
                }
                continue;
            }
            let normalized = normalized.ok_or_else(|| bad(n, "data before `normalized=` header"))?;
            let mut parts = line.split_whitespace();
            let (Some(p), Some(a), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad(n, "expected `p a_p`"));
            };
            let p: u64 = p.parse().map_err(|e| bad(n, e))?;
            if let Some(&(prev, _)) = entries.last() {
                if p <= prev {
                    return Err(bad(n, format!("primes not ascending ({prev} then {p})")));
                }
            }
            let coeff = if normalized {
                let v: f64 = a.parse().map_err(|e| bad(n, e))?;
                if !v.is_finite() {
                    return Err(bad(n, "non-finite coefficient"));
                }
                Coefficient::Normalized(v)
            } else {
                Coefficient::Integer(a.parse().map_err(|e| bad(n, e))?)
            };
            entries.push((p, coeff));
        }

        let weight = weight.ok_or_else(|| Error::Format("missing `weight=` header".into()))?;
        if weight < 2 || weight % 2 != 0 {
            return Err(Error::Format(format!("weight must be even and >= 2, got {weight}")));
        }
        let level = level.ok_or_else(|| Error::Format("missing `level=` header".into()))?;
        if level == 0 {
            return Err(Error::Format("level must be positive".into()));
        }
        Ok(Self {
            label: label.unwrap_or_default(),
            weight,
            level,
            normalized: normalized.ok_or_else(|| Error::Format("missing `normalized=` header".into()))?,
            entries,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC_LINE}");
        let _ = writeln!(out, "label={}", self.label);
        let _ = writeln!(out, "weight={}", self.weight);
        let _ = writeln!(out, "level={}", self.level);
        let _ = writeln!(out, "normalized={}", self.normalized);
        for (p, c) in &self.entries {
            let _ = match c {
                Coefficient::Integer(a) => writeln!(out, "{p} {a}"),
                Coefficient::Normalized(a) => writeln!(out, "{p} {a}"),
            };
        }
        out
    }

    pub fn get(&self, p: u64) -> Option<Coefficient> {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .ok()
            .map(|i| self.entries[i].1)
    }
}
