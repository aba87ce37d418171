//! Grid values given on the command line.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad value list {text:?}: {reason}")]
pub struct ValuesError {
    pub text: String,
    pub reason: String,
}

/// Parses `"3"`, `"2..5"` (inclusive) or a comma list of either, e.g. `"1,3..4"`.
pub fn parse_values(text: &str) -> Result<Vec<u32>, ValuesError> {
    let err = |reason: String| ValuesError {
        text: text.to_string(),
        reason,
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|e| err(format!("{:?}: {e}", s.trim())));
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(err(format!("empty range {a}..{b}")));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_values("3").unwrap(), vec![3]);
        assert_eq!(parse_values("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_values("0..=1").unwrap(), vec![0, 1]);
        assert_eq!(parse_values("5, 1..2").unwrap(), vec![1, 2, 5]);
        assert!(parse_values("4..2").is_err());
        assert!(parse_values("x").is_err());
        assert!(parse_values("").is_err());
    }
}
