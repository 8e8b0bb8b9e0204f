//! Plain-text q-expansion files: one `n a(n)` record per line, `n`
//! ascending, `#` lines ignored.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::{CoefficientTable, NewformSpec};
use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Parse `(n, a(n))` records from text. `path` is only used in messages.
pub fn read_qexp(text: &str, path: &Path) -> Result<Vec<(u64, i128)>> {
    let mut out: Vec<(u64, i128)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno,
            msg,
        };
        let (n, a) = line
            .split_once(' ')
            .ok_or_else(|| err(format!("expected \"n a(n)\", got {line:?}")))?;
        let n: u64 = n.parse().map_err(|e| err(format!("bad index {n:?}: {e}")))?;
        let a: i128 = a.parse().map_err(|e| err(format!("bad coefficient {a:?}: {e}")))?;
        if n == 0 {
            return Err(err("index must be positive".into()));
        }
        if let Some(&(prev, _)) = out.last() {
            if n <= prev {
                return Err(err(format!("index {n} not ascending (previous {prev})")));
            }
        }
        out.push((n, a));
    }
    Ok(out)
}

/// Load a q-expansion file into a table restricted to prime indices.
///
/// The coverage of the resulting table is the largest prime present; every
/// smaller prime must also be present, and the Hasse bound is checked at
/// every unramified prime.
pub fn ingest_qexp(path: impl AsRef<Path>, spec: &NewformSpec) -> Result<CoefficientTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let entries: BTreeMap<u64, i128> = read_qexp(&text, path)?
        .into_iter()
        .filter(|&(n, _)| is_prime(n))
        .collect();
    match entries.keys().next_back().copied() {
        None => Ok(CoefficientTable::empty(spec.clone())),
        Some(last) => CoefficientTable::from_entries(spec.clone(), entries, last),
    }
}

/// Write records in the q-expansion format, with optional header lines.
pub fn write_qexp<W: Write>(
    mut out: W,
    header: &[String],
    records: impl IntoIterator<Item = (u64, i128)>,
) -> std::io::Result<()> {
    for h in header {
        writeln!(out, "# {h}")?;
    }
    for (n, a) in records {
        writeln!(out, "{n} {a}")?;
    }
    Ok(())
}
