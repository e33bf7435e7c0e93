//! On-disk cache for propagated sequences.
//!
//! One file per sequence. Header lines start with `#` and record the
//! recurrence (as JSON) and the initial values; every other line is
//! `index<TAB>numerator/denominator`.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::Zero;

use crate::rational::Rational;
use crate::recurrence::{propagate, Recurrence, RecurrenceError, SolutionSeq};

const MAGIC: &str = "# aperylift sequence v1";
/// Relation indices re-checked on every load, spread evenly over the file.
const SAMPLE_CHECKS: i64 = 24;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cache file {path}: line {line}")]
    Format { path: PathBuf, line: usize },
    #[error("cached values in {path} fail the recurrence at n = {n}")]
    Corrupt { path: PathBuf, n: i64 },
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

#[derive(Clone, Debug)]
pub struct SequenceCache {
    dir: PathBuf,
}

impl SequenceCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SequenceCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.seq"))
    }

    pub fn store(&self, key: &str, seq: &SolutionSeq) -> Result<PathBuf, CacheError> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(key);
        let tmp = path.with_extension("seq.tmp");
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            writeln!(w, "{MAGIC}")?;
            for line in header(seq.recurrence(), seq.initial_values()) {
                writeln!(w, "{line}")?;
            }
            for (n, v) in seq.iter() {
                writeln!(w, "{n}\t{}/{}", v.numer(), v.denom())?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Load the cached sequence for `key` if it was produced by `rec` from
    /// `initial`. Sampled relation residuals are re-checked exactly; a file
    /// written for a different recurrence yields `Ok(None)`.
    pub fn load(
        &self,
        key: &str,
        rec: &Arc<Recurrence>,
        initial: &[Rational],
    ) -> Result<Option<SolutionSeq>, CacheError> {
        let path = self.path_for(key);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let expected = header(rec, initial);
        let mut seen_header = Vec::new();
        let mut values = Vec::new();
        let mut next_index = rec.base_index();
        for (line_no, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            let bad = || CacheError::Format { path: path.clone(), line: line_no + 1 };
            if line_no == 0 {
                if line != MAGIC {
                    return Err(bad());
                }
                continue;
            }
            if line.starts_with('#') {
                seen_header.push(line);
                continue;
            }
            let (idx, value) = line.split_once('\t').ok_or_else(bad)?;
            if idx.parse::<i64>().map_err(|_| bad())? != next_index {
                return Err(bad());
            }
            values.push(value.parse::<Rational>().map_err(|_| bad())?);
            next_index += 1;
        }
        if seen_header != expected {
            return Ok(None);
        }
        if values.len() < rec.order() || values[..rec.order()] != *initial {
            return Err(CacheError::Format { path, line: 0 });
        }
        let seq = SolutionSeq::from_parts(Arc::clone(rec), values);
        let range = seq.relation_range();
        let (lo, hi) = (*range.start(), *range.end());
        if hi >= lo {
            let stride = ((hi - lo) / SAMPLE_CHECKS).max(1);
            let samples = (lo..=hi).step_by(stride as usize).chain(std::iter::once(hi));
            for n in samples {
                if !seq.residual(n)?.is_zero() {
                    return Err(CacheError::Corrupt { path, n });
                }
            }
        }
        Ok(Some(seq))
    }

    /// Cached values when they reach `n_max`, otherwise propagate and store.
    pub fn get_or_propagate(
        &self,
        key: &str,
        rec: &Arc<Recurrence>,
        initial: &[Rational],
        n_max: i64,
    ) -> Result<SolutionSeq, CacheError> {
        if let Some(seq) = self.load(key, rec, initial)? {
            if seq.last_index() >= n_max {
                return Ok(seq.truncated(n_max));
            }
        }
        let seq = propagate(rec, initial, n_max)?;
        self.store(key, &seq)?;
        Ok(seq)
    }
}

fn header(rec: &Recurrence, initial: &[Rational]) -> Vec<String> {
    let rec_json = serde_json::to_string(rec).expect("recurrence serializes");
    let init: Vec<String> = initial.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect();
    vec![format!("# recurrence: {rec_json}"), format!("# initial: {}", init.join(" "))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffExpr;
    use crate::rational::int;

    fn apery() -> Arc<Recurrence> {
        Arc::new(Recurrence::three_term(
            "(n+1)^3".parse::<CoeffExpr>().unwrap(),
            "34n^3+51n^2+27n+5".parse::<CoeffExpr>().unwrap(),
            1,
        ))
    }

    #[test]
    fn round_trip_and_extension() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SequenceCache::new(dir.path());
        let rec = apery();
        let init = [int(0), int(6)];
        let first = cache.get_or_propagate("B", &rec, &init, 40).unwrap();
        let reloaded = cache.load("B", &rec, &init).unwrap().unwrap();
        assert_eq!(first.values(), reloaded.values());
        let shorter = cache.get_or_propagate("B", &rec, &init, 10).unwrap();
        assert_eq!(shorter.values(), &first.values()[..11]);
        let longer = cache.get_or_propagate("B", &rec, &init, 60).unwrap();
        assert_eq!(longer.values(), propagate(&rec, &init, 60).unwrap().values());
    }

    #[test]
    fn different_initial_values_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SequenceCache::new(dir.path());
        let rec = apery();
        cache.get_or_propagate("seq", &rec, &[int(1), int(5)], 10).unwrap();
        assert!(cache.load("seq", &rec, &[int(0), int(6)]).unwrap().is_none());
    }

    #[test]
    fn tampered_values_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SequenceCache::new(dir.path());
        let rec = apery();
        let path = cache.store("A", &propagate(&rec, &[int(1), int(5)], 30).unwrap()).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\n30\t", "\n30\t1");
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.load("A", &rec, &[int(1), int(5)]), Err(CacheError::Corrupt { .. })));
    }
}
