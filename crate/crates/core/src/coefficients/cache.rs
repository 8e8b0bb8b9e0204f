//! On-disk coefficient cache.
//!
//! A cache file is a q-expansion file whose first line is
//! `# <label> <k> <N> <x_max>`, where `x_max` is the bound up to which every
//! prime is present. The file name encodes the cache key
//! `(label, k, N, source hash)`.

use std::collections::BTreeMap;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::qexp::{read_qexp, write_qexp};
use super::{CoefficientSource, CoefficientTable, GenerateOptions, NewformSpec};
use crate::error::{Error, Result};

/// What [`CoefficientCache::load_or_generate`] had to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Extended,
    Created,
}

/// First 16 hex digits of SHA-256 over a canonical description of the source.
pub fn source_hash(spec: &NewformSpec) -> Result<String> {
    let mut h = Sha256::new();
    match spec.source() {
        CoefficientSource::EllipticCurve(c) => h.update(format!("elliptic:{c}")),
        CoefficientSource::EtaDelta => h.update("eta-delta"),
        CoefficientSource::QExpansionFile(p) => {
            h.update("qexp:");
            h.update(fs::read(p).map_err(|e| Error::io(p, e))?);
        }
    }
    let digest = h.finalize();
    Ok(digest[..8].iter().map(|b| format!("{b:02x}")).collect())
}

pub fn cache_file_name(spec: &NewformSpec) -> Result<String> {
    Ok(format!(
        "{}_k{}_N{}_{}.qexp",
        spec.label(),
        spec.weight(),
        spec.level(),
        source_hash(spec)?
    ))
}

/// A directory of coefficient caches.
#[derive(Debug, Clone)]
pub struct CoefficientCache {
    dir: PathBuf,
}

impl CoefficientCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, spec: &NewformSpec) -> Result<PathBuf> {
        Ok(self.dir.join(cache_file_name(spec)?))
    }

    /// Load the cached table for `spec`, or `None` if no cache exists.
    pub fn load(&self, spec: &NewformSpec) -> Result<Option<CoefficientTable>> {
        let path = self.path_for(spec)?;
        if !path.exists() {
            return Ok(None);
        }
        read_cache(&path, spec).map(Some)
    }

    /// Return a table covering `x_max`, reusing and extending the cache.
    ///
    /// A cache that already covers `x_max` is returned untouched and the
    /// file is not rewritten.
    pub fn load_or_generate(
        &self,
        spec: &NewformSpec,
        x_max: u64,
        opts: GenerateOptions,
    ) -> Result<(CoefficientTable, CacheStatus)> {
        let path = self.path_for(spec)?;
        let (table, status) = match self.load(spec)? {
            Some(t) if t.coverage() >= x_max => return Ok((t, CacheStatus::Hit)),
            Some(mut t) => {
                t.extend_to(x_max, opts)?;
                (t, CacheStatus::Extended)
            }
            None => (CoefficientTable::generate(spec, x_max, opts)?, CacheStatus::Created),
        };
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        write_cache(&table, &path)?;
        Ok((table, status))
    }
}

pub fn write_cache(table: &CoefficientTable, path: &Path) -> Result<()> {
    let spec = table.spec();
    let header = [format!(
        "{} {} {} {}",
        spec.label(),
        spec.weight(),
        spec.level(),
        table.coverage()
    )];
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_qexp(
        BufWriter::new(file),
        &header,
        table.iter().map(|(p, a, _)| (p, a)),
    )
    .map_err(|e| Error::io(path, e))
}

pub fn read_cache(path: &Path, spec: &NewformSpec) -> Result<CoefficientTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let header = text.lines().next().unwrap_or("");
    let bad_header = |msg: &str| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        msg: format!("{msg}: {header:?}"),
    };
    let fields: Vec<&str> = header
        .strip_prefix("# ")
        .ok_or_else(|| bad_header("missing cache header"))?
        .split(' ')
        .collect();
    let [label, k, n, x_max] = fields[..] else {
        return Err(bad_header("expected \"# label k N x_max\""));
    };
    let k: u32 = k.parse().map_err(|_| bad_header("bad weight"))?;
    let n: u64 = n.parse().map_err(|_| bad_header("bad level"))?;
    let x_max: u64 = x_max.parse().map_err(|_| bad_header("bad x_max"))?;
    if label != spec.label() || k != spec.weight() || n != spec.level() {
        return Err(Error::Data(format!(
            "cache {} belongs to {label} (k={k}, N={n}), not {spec}",
            path.display()
        )));
    }
    let entries: BTreeMap<u64, i128> = read_qexp(&text, path)?.into_iter().collect();
    CoefficientTable::from_entries(spec.clone(), entries, x_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Curve;

    #[test]
    fn hit_does_not_rewrite() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CoefficientCache::new(dir.path());
        let spec = NewformSpec::elliptic_curve("11a1", Curve::new(0, -1, 1, -10, -20), 11).unwrap();
        let opts = GenerateOptions::default();

        let (t1, s1) = cache.load_or_generate(&spec, 100, opts).unwrap();
        assert_eq!(s1, CacheStatus::Created);
        let path = cache.path_for(&spec).unwrap();
        let bytes = fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"# 11a1 2 11 100\n2 -2\n3 -1\n"));

        let (t2, s2) = cache.load_or_generate(&spec, 100, opts).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(t1, t2);
        assert_eq!(fs::read(&path).unwrap(), bytes);

        let (t3, s3) = cache.load_or_generate(&spec, 200, opts).unwrap();
        assert_eq!(s3, CacheStatus::Extended);
        assert_eq!(t3.restricted(100), t1);
    }

    #[test]
    fn key_depends_on_source() {
        let a = NewformSpec::elliptic_curve("e", Curve::new(0, -1, 1, -10, -20), 11).unwrap();
        let b = NewformSpec::elliptic_curve("e", Curve::new(0, -1, 1, 0, 0), 11).unwrap();
        assert_ne!(cache_file_name(&a).unwrap(), cache_file_name(&b).unwrap());
        assert_eq!(cache_file_name(&a).unwrap(), cache_file_name(&a.clone()).unwrap());
    }

    #[test]
    fn mismatched_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.qexp");
        fs::write(&p, "# other 12 1 5\n2 -24\n3 252\n5 4830\n").unwrap();
        assert!(matches!(read_cache(&p, &NewformSpec::delta()), Err(Error::Data(_))));
        fs::write(&p, "2 -24\n").unwrap();
        assert!(matches!(read_cache(&p, &NewformSpec::delta()), Err(Error::Parse { .. })));
    }
}
