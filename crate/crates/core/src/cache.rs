//! Binary angle cache (`STAN`), little-endian:
//!
//! | field    | type | note            |
//! |----------|------|-----------------|
//! | magic    | 4 B  | `STAN`          |
//! | version  | u32  | 1               |
//! | level    | u64  |                 |
//! | weight   | u32  |                 |
//! | reserved | u32  | written as 0    |
//! | x_max    | u64  |                 |
//! | count    | u64  |                 |
//! | records  |      | `count × (p: u64, theta: f64)` |

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::angles::{AnglePoint, AngleSeries, FormMeta, SourceKind};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"STAN";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 40;
const RECORD_LEN: usize = 16;

pub fn encode(series: &AngleSeries) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + RECORD_LEN * series.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&series.meta.level_q.to_le_bytes());
    out.extend_from_slice(&series.meta.weight_k.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&series.x_max.to_le_bytes());
    out.extend_from_slice(&(series.len() as u64).to_le_bytes());
    for pt in &series.points {
        out.extend_from_slice(&pt.p.to_le_bytes());
        out.extend_from_slice(&pt.theta.to_le_bytes());
    }
    out
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().expect("4 bytes"))
}

fn u64_at(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().expect("8 bytes"))
}

/// Decodes a cache image. `label` is not stored in the format and is
/// supplied by the caller.
pub fn decode(bytes: &[u8], label: &str) -> Result<AngleSeries> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!(
            "angle cache truncated: {} bytes, header needs {HEADER_LEN}",
            bytes.len()
        )));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Format(format!("bad magic {:?}, expected `STAN`", &bytes[..4])));
    }
    let version = u32_at(bytes, 4);
    if version != VERSION {
        return Err(Error::Format(format!(
            "angle cache version mismatch: found {version}, expected {VERSION}"
        )));
    }
    let level = u64_at(bytes, 8);
    let weight = u32_at(bytes, 16);
    let x_max = u64_at(bytes, 24);
    let count = u64_at(bytes, 32);
    let want = count
        .checked_mul(RECORD_LEN as u64)
        .and_then(|r| r.checked_add(HEADER_LEN as u64))
        .ok_or_else(|| Error::Format(format!("record count {count} overflows")))?;
    if (bytes.len() as u64) < want {
        return Err(Error::Format(format!(
            "angle cache truncated: {} bytes, {count} records need {want}",
            bytes.len()
        )));
    }
    if (bytes.len() as u64) > want {
        return Err(Error::Format(format!("{} trailing bytes after records", bytes.len() as u64 - want)));
    }
    if level == 0 {
        return Err(Error::Format("level 0 in angle cache".into()));
    }
    let points = bytes[HEADER_LEN..]
        .chunks_exact(RECORD_LEN)
        .map(|rec| AnglePoint { p: u64_at(rec, 0), theta: f64::from_le_bytes(rec[8..16].try_into().expect("8 bytes")) })
        .collect();
    let meta = FormMeta {
        label: label.to_string(),
        weight_k: weight,
        level_q: level,
        source: SourceKind::Cache,
        cm_asserted_false: true,
    };
    AngleSeries::new(meta, x_max, points).map_err(|e| Error::Format(format!("invalid cache contents: {e}")))
}

/// Writes the cache through a temporary file in the same directory and an
/// atomic rename.
pub fn save_cache(series: &AngleSeries, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::InvalidInput(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(series))?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Reads a cache; the label is taken from the file stem.
pub fn load_cache(path: impl AsRef<Path>) -> Result<AngleSeries> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    decode(&bytes, &label)
}
