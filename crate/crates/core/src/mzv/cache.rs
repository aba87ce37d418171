use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use dashmap::DashMap;
use thiserror::Error;

use crate::index::Index;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("cache line {line}: {reason}")]
    Format { line: usize, reason: String },
}

/// Memoized ζ values keyed by index and decimal tolerance bucket.
///
/// Only values computed at the bucket's canonical working precision are
/// stored, so a hit is bit-identical to recomputation. Concurrent writers
/// always insert the same value for a key.
#[derive(Debug, Default)]
pub struct ZetaCache {
    values: DashMap<(Index, i32), f64>,
}

impl ZetaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, index: &Index, bucket: i32) -> Option<f64> {
        // DashMap needs an owned key for lookup with a tuple.
        self.values.get(&(index.clone(), bucket)).map(|v| *v)
    }

    pub fn insert(&self, index: Index, bucket: i32, value: f64) {
        self.values.insert((index, bucket), value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries sorted by (bucket, index).
    pub fn entries(&self) -> Vec<(Index, i32, f64)> {
        let mut out: Vec<_> = self
            .values
            .iter()
            .map(|e| (e.key().0.clone(), e.key().1, *e.value()))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Writes `index<TAB>bucket<TAB>hex-float` lines.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CacheError> {
        let mut text = String::new();
        for (index, bucket, value) in self.entries() {
            let entries = index.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            writeln!(text, "{entries}\t{bucket}\t{}", format_hex_float(value)).expect("write to string");
        }
        let mut file = fs::File::create(path)?;
        file.write_all(text.as_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let cache = Self::new();
        cache.merge_file(path)?;
        Ok(cache)
    }

    /// Adds every entry of a saved cache file.
    pub fn merge_file(&self, path: impl AsRef<Path>) -> Result<(), CacheError> {
        let reader = BufReader::new(fs::File::open(path)?);
        for (n, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| CacheError::Format { line: n + 1, reason };
            let fields: Vec<&str> = line.split('\t').collect();
            let [index, bucket, value] = fields[..] else {
                return Err(bad(format!("expected 3 tab-separated fields, got {}", fields.len())));
            };
            let index: Index = index.parse().map_err(|e| bad(format!("{e}")))?;
            let bucket: i32 = bucket.parse().map_err(|e| bad(format!("bad bucket: {e}")))?;
            let value = parse_hex_float(value).ok_or_else(|| bad(format!("bad hex float {value:?}")))?;
            self.insert(index, bucket, value);
        }
        Ok(())
    }
}

/// `0x1.<13 hex digits>p<exp>`, exact for every finite `f64`.
pub fn format_hex_float(x: f64) -> String {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = bits & ((1u64 << 52) - 1);
    if !x.is_finite() {
        return format!("{x}");
    }
    match (exp_bits, mantissa) {
        (0, 0) => format!("{sign}0x0p+0"),
        (0, m) => format!("{sign}0x0.{m:013x}p-1022"),
        (e, m) => format!("{sign}0x1.{m:013x}p{:+}", e - 1023),
    }
}

pub fn parse_hex_float(s: &str) -> Option<f64> {
    let s = s.trim();
    let (negative, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let rest = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X"))?;
    let (mant, exp) = rest.split_once(['p', 'P'])?;
    let exp: i32 = exp.parse().ok()?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() || int_part.len() + frac_part.len() > 15 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let m = u64::from_str_radix(&digits, 16).ok()?;
    if m >= 1u64 << 53 {
        return None;
    }
    let shift = exp - 4 * frac_part.len() as i32;
    // Two steps keep 2^shift representable down to the subnormal range.
    let half = shift / 2;
    let v = (m as f64) * 2f64.powi(half) * 2f64.powi(shift - half);
    Some(if negative { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idx;

    #[test]
    fn hex_float_round_trips() {
        for x in [
            1.0,
            -2.5,
            0.0,
            std::f64::consts::PI,
            1.6449340668482264,
            f64::MIN_POSITIVE,
            5e-324,
            1e300,
        ] {
            let text = format_hex_float(x);
            assert_eq!(parse_hex_float(&text).unwrap().to_bits(), x.to_bits(), "{text}");
        }
        assert_eq!(format_hex_float(1.0), "0x1.0000000000000p+0");
        assert_eq!(format_hex_float(0.5), "0x1.0000000000000p-1");
        assert!(parse_hex_float("1.5").is_none());
    }

    #[test]
    fn save_and_reload_bit_exact() {
        let cache = ZetaCache::new();
        cache.insert(idx![2], -12, 1.6449340668482264);
        cache.insert(idx![1, 2], -12, 1.2020569031595942);
        cache.insert(idx![2, 3], -10, 0.2288103976033);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeta.cache");
        cache.save(&path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("2\t-12\t0x1.a51a6625307d3p+0\n"), "{text}");
        let reloaded = ZetaCache::load(&path).unwrap();
        assert_eq!(reloaded.entries(), cache.entries());
    }

    #[test]
    fn malformed_lines_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cache");
        fs::write(&path, "2\t-12\t0x1.0p+0\n2,1\t-12\n").unwrap();
        match ZetaCache::load(&path) {
            Err(CacheError::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
